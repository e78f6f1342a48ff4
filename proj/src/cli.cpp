// Copyright 2026 The OSP Partition Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "osp/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "CLI11.hpp"
#include "osp/characterize.hpp"
#include "osp/committee.hpp"
#include "osp/game.hpp"
#include "osp/io.hpp"
#include "osp/random.hpp"
#include "osp/verify.hpp"

namespace osp::cli {

namespace {

struct Options {
  std::uint64_t seed = 0;
  int jobs = 1;
  std::uint64_t cap = 0;  // 0: OSP_CAP or the library default
};

struct Report {
  Json inputs = Json::object();
  Json result = Json::object();
  std::uint64_t evaluations = 0;
  int exit_code = kPass;

  void input(const std::string& path) { inputs[path] = file_digest(path); }
};

std::uint64_t resolve_cap(const Options& o) {
  if (o.cap > 0) return o.cap;
  if (const char* env = std::getenv("OSP_CAP")) {
    try {
      const std::uint64_t v = std::stoull(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::kInvalidArgument,
                std::string("OSP_CAP must be a positive integer, got '") + env + "'");
  }
  return kDefaultCap;
}

VerifyOptions verify_options(const Options& o) {
  return {resolve_cap(o), o.jobs};
}

// A rule file holds either a committee or an outcome table.
SocialChoiceFunction load_rule(const std::string& path, int n, Report& r) {
  r.input(path);
  const Json j = read_json_file(path);
  const Domain domain = Domain::two_alternative(n);
  if (j.is_object() && j.contains("minimal")) {
    const Committee c = committee_from_json(j);
    if (c.n() != n) {
      throw Error(ErrorCode::kParseError, "rule has " + std::to_string(c.n()) +
                                              " agents, arena has " +
                                              std::to_string(n));
    }
    return rule_from_committee(c, domain);
  }
  const ScfTable t = scf_table_from_json(j);
  if (t.n() != n) {
    throw Error(ErrorCode::kParseError, "table has " + std::to_string(t.n()) +
                                            " agents, arena has " +
                                            std::to_string(n));
  }
  return rule_from_table(t, domain);
}

Committee load_committee(const std::string& path, Report& r) {
  r.input(path);
  return committee_from_json(read_json_file(path));
}

Partition load_partition(const std::string& path, Report& r) {
  r.input(path);
  return partition_from_json(read_json_file(path));
}

Arena load_arena(const std::string& path, Report& r) {
  r.input(path);
  Arena arena = arena_from_json(read_json_file(path));
  const auto diags = arena.validate();
  if (!diags.empty()) {
    throw Error(ErrorCode::kInvalidArena,
                "(" + diags.front().invariant + ") " + diags.front().message);
  }
  return arena;
}

std::vector<int> parse_quotas(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParseError, "bad quota list '" + text + "'");
    }
  }
  return out;
}

const char* status_name(ExtractStatus s) {
  switch (s) {
    case ExtractStatus::kEmvr: return "emvr";
    case ExtractStatus::kConstant: return "constant";
    case ExtractStatus::kNotEmvr: return "notEmvr";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Subcommands

void cmd_check_sp(const std::string& path, Report& r) {
  r.input(path);
  const ScfTable f = scf_table_from_json(read_json_file(path));
  const Verdict sp = is_sp(f);
  const ExtractResult ex = extract_committee(f);
  r.evaluations = sp.evaluations;
  r.result["sp"] = verdict_to_json(sp);
  r.result["extract"] = {{"status", status_name(ex.status)}};
  if (ex.committee) {
    r.result["extract"]["committee"] = to_json(*ex.committee);
    if (auto v = ex.committee->constant_value()) {
      r.result["extract"]["constant"] = v->label;
    }
  }
  r.result["agree"] = sp.pass == (ex.status != ExtractStatus::kNotEmvr);
  r.exit_code = sp.pass ? kPass : kFail;
}

void cmd_extract(const std::string& path, Report& r) {
  r.input(path);
  const ExtractResult ex = extract_committee(scf_table_from_json(read_json_file(path)));
  r.result["status"] = status_name(ex.status);
  if (ex.committee) r.result["committee"] = to_json(*ex.committee);
  r.exit_code = ex.status == ExtractStatus::kNotEmvr ? kFail : kPass;
}

void cmd_anonymity(const std::string& cpath, const std::string& ppath, Report& r) {
  const Committee c = load_committee(cpath, r);
  const Partition s = load_partition(ppath, r);
  const bool anon = is_anonymous_rel(c, s);
  const auto q = strong_anonymity_quota(c);
  r.result["anonymous"] = anon;
  r.result["dummies"] = to_json(dummies(c));
  r.result["strongQuota"] = q ? Json(*q) : Json(nullptr);
  r.exit_code = anon ? kPass : kFail;
}

void cmd_decide(const std::string& cpath, const std::string& ppath, bool strong,
                const Options& o, Report& r) {
  const Committee c = load_committee(cpath, r);
  const Partition s = load_partition(ppath, r);
  if (strong) {
    const bool yes = decide_osp_strong(c, s);
    r.result["osp"] = yes;
    r.result["quota"] = *strong_anonymity_quota(c);
    r.exit_code = yes ? kPass : kFail;
    return;
  }
  const auto d = decide_osp_anonymous(c, s, o.jobs);
  r.result["osp"] = d.has_value();
  if (d) {
    r.result["ordering"] = to_json(d->ordering);
    r.result["quotas"] = to_json(d->quotas);
  }
  r.exit_code = d ? kPass : kFail;
}

void cmd_build_game(const std::string& opath, const std::string& quotas,
                    const std::string& out, Report& r) {
  r.input(opath);
  const OrderedPartition s_o = ordered_partition_from_json(read_json_file(opath));
  const QuotaVector q(parse_quotas(quotas));
  const Arena arena = build_quota_game(s_o, q);
  r.result["nodes"] = arena.num_nodes();
  r.result["infoSets"] = arena.num_info_sets();
  r.result["terminals"] = arena.terminals().size();
  if (out.empty()) {
    r.result["arena"] = to_json(arena);
  } else {
    write_json_file(out, to_json(arena));
    r.result["written"] = out;
  }
}

void cmd_verify(const std::string& apath, const std::string& rpath,
                const std::string& ppath, const std::string& report_path,
                const Options& o, Report& r) {
  const Arena arena = load_arena(apath, r);
  const SocialChoiceFunction f = load_rule(rpath, arena.n(), r);
  const Partition s = load_partition(ppath, r);
  const TypeStrategyProfile tsp =
      truth_telling_profile(arena, Domain::two_alternative(arena.n()));
  const Verdict v = osp_implements(arena, tsp, f, s, verify_options(o));
  r.evaluations = v.evaluations;
  r.result["verdict"] = verdict_to_json(v, &arena);
  if (auto* w = std::get_if<DominanceWitness>(&v.witness)) {
    r.result["replays"] = replay(arena, s, *w);
  }
  if (!report_path.empty()) write_json_file(report_path, r.result["verdict"]);
  r.exit_code = v.pass ? kPass : kFail;
}

void cmd_coarsen_test(const std::string& apath, const std::string& rpath,
                      const std::string& ppath, const Options& o, Report& r) {
  const Arena arena = load_arena(apath, r);
  const SocialChoiceFunction f = load_rule(rpath, arena.n(), r);
  const Partition s = load_partition(ppath, r);
  const TypeStrategyProfile tsp =
      truth_telling_profile(arena, Domain::two_alternative(arena.n()));
  const Verdict v = coarsening_check(arena, tsp, f, s, verify_options(o));
  r.evaluations = v.evaluations;
  r.result["coarsenings"] = coarsenings(s).size();
  r.result["verdict"] = verdict_to_json(v, &arena);
  r.exit_code = v.pass ? kPass : kFail;
}

void cmd_certify(const std::string& cpath, const std::string& ppath,
                 const std::string& out, const std::string& report_path,
                 const Options& o, Report& r) {
  const Committee c = load_committee(cpath, r);
  const Partition s = load_partition(ppath, r);
  try {
    const Certificate cert = certify(c, s, verify_options(o));
    r.evaluations = cert.report.evaluations;
    r.result["certificate"] = to_json(cert);
    if (!out.empty()) write_json_file(out, to_json(cert.arena));
    if (!report_path.empty()) write_json_file(report_path, r.result["certificate"]);
    r.exit_code = cert.report.pass ? kPass : kFail;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNotOsp) throw;
    r.result["certificate"] = nullptr;
    r.result["reason"] = e.what();
    r.exit_code = kFail;
  }
}

// ---------------------------------------------------------------------------
// Golden scenarios

Committee example1_committee() { return Committee(5, {{1, 2}, {1, 3}, {2, 4, 5}}); }
Partition example1_partition() { return Partition(5, {{1, 2}, {3}, {4, 5}}); }

OrderedPartition example2_ordering() {
  return OrderedPartition(10, {{1, 2, 3}, {4, 5, 6, 7, 8}, {9, 10}});
}

std::vector<Coalition> example2_expected() {
  return {Coalition{1, 2, 3},
          Coalition{1, 2, 4, 5, 6, 7, 8, 9},
          Coalition{1, 2, 4, 5, 6, 7, 8, 10},
          Coalition{1, 3, 4, 5, 6, 7, 8, 9},
          Coalition{1, 3, 4, 5, 6, 7, 8, 10},
          Coalition{2, 3, 4, 5, 6, 7, 8, 9},
          Coalition{2, 3, 4, 5, 6, 7, 8, 10}};
}

void check(bool ok, Json& checks, const std::string& name) {
  checks[name] = ok;
}

void reproduce_example1(const Options& o, Report& r, Json& checks) {
  const Figure1 fig = figure1_game();
  const Domain domain = Domain::two_alternative(5);
  const Committee c = example1_committee();
  const SocialChoiceFunction f = rule_from_committee(c, domain);
  const VerifyOptions vo = verify_options(o);
  check(induces(fig.arena, fig.tsp, f).pass, checks, "induces");
  const Verdict star = osp_implements(fig.arena, fig.tsp, f, example1_partition(), vo);
  check(star.pass, checks, "ospPartition");
  const Partition finest = Partition::finest(5);
  const Verdict fine = osp_implements(fig.arena, fig.tsp, f, finest, vo);
  bool replays = false;
  if (auto* w = std::get_if<DominanceWitness>(&fine.witness)) {
    replays = replay(fig.arena, finest, *w);
  }
  check(!fine.pass, checks, "finestFails");
  check(replays, checks, "witnessReplays");
  const ExtractResult ex = extract_committee(ScfTable::from_committee(c));
  check(ex.committee && *ex.committee == c, checks, "extractsCommittee");
  r.evaluations = star.evaluations + fine.evaluations;
  r.result["finestWitness"] = verdict_to_json(fine, &fig.arena);
}

void reproduce_example2(const Options& o, Report& r, Json& checks) {
  const Committee c = generate_quota_committee(example2_ordering(), {2, 5, 0});
  check(c.minimal() == example2_expected(), checks, "generator");
  r.result["committee"] = to_json(c);
  const Partition s = example2_ordering().underlying();
  const auto d = decide_osp_anonymous(c, s, o.jobs);
  check(d && d->quotas == QuotaVector{2, 5, 0} && d->ordering == example2_ordering(),
        checks, "decide");
  const Certificate cert = certify(c, s, verify_options(o));
  check(cert.report.pass, checks, "certificate");
  r.evaluations = cert.report.evaluations;
}

void reproduce_prop1(const Options& o, int games, Report& r, Json& checks) {
  const Figure1 fig = figure1_game();
  const Domain d5 = Domain::two_alternative(5);
  const VerifyOptions vo = verify_options(o);
  const Verdict v = coarsening_check(fig.arena, fig.tsp,
                                     rule_from_committee(example1_committee(), d5),
                                     example1_partition(), vo);
  check(v.pass, checks, "fixture");
  r.evaluations += v.evaluations;
  Rng rng(o.seed);
  int passed = 0;
  for (int g = 0; g < games; ++g) {
    const QuotaInstance inst = random_quota_instance(rng, 1, 6);
    const Arena arena = build_quota_game(inst.ordering, inst.quotas);
    const Domain d = Domain::two_alternative(inst.ordering.n());
    const Committee c = generate_quota_committee(inst.ordering, inst.quotas);
    const Verdict w = coarsening_check(arena, truth_telling_profile(arena, d),
                                       rule_from_committee(c, d),
                                       inst.ordering.underlying(), vo);
    r.evaluations += w.evaluations;
    if (w.pass) ++passed;
  }
  r.result["randomGames"] = games;
  r.result["randomPassed"] = passed;
  check(passed == games, checks, "randomQuotaGames");
}

void reproduce_thm3(Report& r, Json& checks) {
  int cases = 0;
  int disagreements = 0;
  for (int n = 1; n <= 6; ++n) {
    const auto partitions = all_partitions(n);
    for (int q = 1; q <= n; ++q) {
      const Committee c = generate_quota_committee(OrderedPartition(n, {Coalition::all(n)}),
                                                   {q - 1});
      for (const Partition& s : partitions) {
        ++cases;
        if (decide_osp_strong(c, s) != decide_osp_anonymous(c, s).has_value()) {
          ++disagreements;
        }
      }
    }
  }
  r.result["cases"] = cases;
  r.result["disagreements"] = disagreements;
  check(disagreements == 0, checks, "agreement");
}

void emit_fixtures(const std::string& dir) {
  std::filesystem::create_directories(dir);
  const auto path = [&](const char* name) {
    return (std::filesystem::path(dir) / name).string();
  };
  write_json_file(path("figure1_arena.json"), to_json(figure1_game().arena));
  write_json_file(path("example1_committee.json"), to_json(example1_committee()));
  write_json_file(path("example1_table.json"),
                  to_json(ScfTable::from_committee(example1_committee())));
  write_json_file(path("example1_partition.json"), to_json(example1_partition()));
  write_json_file(path("finest5_partition.json"), to_json(Partition::finest(5)));
  const Committee c2 = generate_quota_committee(example2_ordering(), {2, 5, 0});
  write_json_file(path("example2_committee.json"), to_json(c2));
  write_json_file(path("example2_partition.json"), to_json(example2_ordering()));
}

void cmd_reproduce(const std::string& example, int games,
                   const std::string& emit_dir, const Options& o, Report& r) {
  Json checks = Json::object();
  if (example == "1") {
    reproduce_example1(o, r, checks);
  } else if (example == "2") {
    reproduce_example2(o, r, checks);
  } else if (example == "prop1") {
    reproduce_prop1(o, games, r, checks);
  } else if (example == "thm3-grid") {
    reproduce_thm3(r, checks);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown example '" + example + "'");
  }
  if (!emit_dir.empty()) emit_fixtures(emit_dir);
  r.result["checks"] = checks;
  std::vector<std::string> failed;
  for (const auto& [name, ok] : checks.items()) {
    if (!ok.get<bool>()) failed.push_back(name);
  }
  r.result["mismatches"] = failed;
  if (!failed.empty()) {
    r.result["error"] = std::string(to_string(ErrorCode::kGoldenMismatch));
    r.exit_code = kFail;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Obvious strategy-proofness relative to a partition"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--seed", o.seed, "Seed for random instances")->capture_default_str();
  app.add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--cap", o.cap, "Enumeration cap (default: OSP_CAP or 2^22)")
      ->check(CLI::PositiveNumber);

  std::string a1, a2, partition, out_path, report_path, quotas, example, emit_dir;
  bool strong = false;
  int games = 10;

  auto* check_sp = app.add_subcommand("check-sp", "Strategy-proofness of an outcome table");
  check_sp->add_option("table", a1)->required();
  auto* extract = app.add_subcommand("extract", "Committee inducing an outcome table");
  extract->add_option("table", a1)->required();
  auto* anonymity = app.add_subcommand("anonymity", "Anonymity relative to a partition");
  anonymity->add_option("committee", a1)->required();
  anonymity->add_option("partition", a2)->required();
  auto* decide = app.add_subcommand("decide", "Decide OSP relative to a partition");
  decide->add_option("committee", a1)->required();
  decide->add_option("partition", a2)->required();
  decide->add_flag("--strong", strong, "Use the strongly anonymous predicate");
  auto* build = app.add_subcommand("build-game", "Build the quota game");
  build->add_option("ordering", a1)->required();
  build->add_option("--quotas", quotas, "Comma-separated quotas")->required();
  build->add_option("--out", out_path, "Arena output file");
  auto* verify = app.add_subcommand("verify", "Check OSP implementation of a rule");
  verify->add_option("arena", a1)->required();
  verify->add_option("rule", a2)->required();
  verify->add_option("--partition", partition)->required();
  verify->add_option("--report", report_path, "Verdict output file");
  auto* coarsen = app.add_subcommand("coarsen-test", "Check every coarser partition");
  coarsen->add_option("arena", a1)->required();
  coarsen->add_option("rule", a2)->required();
  coarsen->add_option("--partition", partition)->required();
  auto* cert = app.add_subcommand("certify", "Build and verify a witness game");
  cert->add_option("committee", a1)->required();
  cert->add_option("partition", a2)->required();
  cert->add_option("--out", out_path, "Arena output file");
  cert->add_option("--report", report_path, "Certificate output file");
  auto* repro = app.add_subcommand("reproduce", "Run a golden scenario");
  repro->add_option("--example", example)->required()
      ->check(CLI::IsMember({"1", "2", "prop1", "thm3-grid"}));
  repro->add_option("--games", games, "Random quota games for prop1")->capture_default_str();
  repro->add_option("--emit-dir", emit_dir, "Also write fixture files here");

  std::vector<std::string> storage = args;
  storage.insert(storage.begin(), "osp");
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kError;
  }

  const auto start = std::chrono::steady_clock::now();
  Report r;
  try {
    if (*check_sp) cmd_check_sp(a1, r);
    else if (*extract) cmd_extract(a1, r);
    else if (*anonymity) cmd_anonymity(a1, a2, r);
    else if (*decide) cmd_decide(a1, a2, strong, o, r);
    else if (*build) cmd_build_game(a1, quotas, out_path, r);
    else if (*verify) cmd_verify(a1, a2, partition, report_path, o, r);
    else if (*coarsen) cmd_coarsen_test(a1, a2, partition, o, r);
    else if (*cert) cmd_certify(a1, a2, out_path, report_path, o, r);
    else if (*repro) cmd_reproduce(example, games, emit_dir, o, r);
  } catch (const Error& e) {
    err << Json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump()
        << '\n';
    return kError;
  }
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start).count();
  Json report = {{"command", args},
                 {"seed", o.seed},
                 {"jobs", o.jobs},
                 {"inputs", r.inputs},
                 {"result", r.result},
                 {"evaluations", r.evaluations},
                 {"exitCode", r.exit_code},
                 {"elapsedMs", ms}};
  out << report.dump(2) << '\n';
  return r.exit_code;
}

}  // namespace osp::cli
