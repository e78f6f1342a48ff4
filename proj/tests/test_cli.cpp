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


#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "osp/cli.hpp"
#include "osp/io.hpp"

using namespace osp;

namespace {

struct Run {
  int code;
  Json report;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  Json report = Json::parse(out.str(), nullptr, false);
  return {code, report, err.str()};
}

const std::string& dir() {
  static const std::string d = [] {
    const auto p = std::filesystem::temp_directory_path() / "osp_test_cli";
    std::filesystem::create_directories(p);
    const Run r = run({"reproduce", "--example", "1", "--emit-dir", p.string()});
    REQUIRE(r.code == cli::kPass);
    return p.string();
  }();
  return d;
}

std::string fx(const std::string& name) { return (std::filesystem::path(dir()) / name).string(); }

std::string put(const std::string& name, const Json& j) {
  write_json_file(fx(name), j);
  return fx(name);
}

Json majority(int n, int q) {
  Json minimal = Json::array();
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
    if (std::popcount(b) == q) minimal.push_back(to_json(Coalition::from_bits(b)));
  }
  return {{"n", n}, {"minimal", minimal}};
}

Json finest(int n) { return to_json(Partition::finest(n)); }

}  // namespace

TEST_CASE("check-sp reports both verdicts") {
  const Run ex1 = run({"check-sp", fx("example1_table.json")});
  CHECK(ex1.code == cli::kPass);
  CHECK(ex1.report["result"]["extract"]["committee"]["minimal"] ==
        Json::parse("[[1,2],[1,3],[2,4,5]]"));
  CHECK(ex1.report["result"]["agree"] == true);
  const Run parity = run({"check-sp", put("parity.json", Json::parse(R"({"00":"y","10":"x","01":"x","11":"y"})"))});
  CHECK(parity.code == cli::kFail);
  CHECK(parity.report["result"]["extract"]["status"] == "notEmvr");
  CHECK(parity.report["result"]["agree"] == true);
  const Run cy = run({"check-sp", put("const_y.json", Json::parse(R"({"00":"y","10":"y","01":"y","11":"y"})"))});
  CHECK(cy.code == cli::kPass);
  CHECK(cy.report["result"]["extract"]["status"] == "constant");
  CHECK(cy.report["result"]["extract"]["constant"] == "y");
}

TEST_CASE("extract") {
  CHECK(run({"extract", fx("example1_table.json")}).code == cli::kPass);
  CHECK(run({"extract", fx("parity.json")}).code == cli::kFail);
}

TEST_CASE("decide") {
  const Run ex2 = run({"decide", fx("example2_committee.json"), fx("example2_partition.json")});
  REQUIRE(ex2.code == cli::kPass);
  CHECK(ex2.report["result"]["quotas"] == Json::parse("[2,5,0]"));
  CHECK(ex2.report["result"]["osp"] == true);
  const std::string maj2 = put("maj32.json", majority(3, 2));
  const std::string maj3 = put("maj33.json", majority(3, 3));
  const std::string fine3 = put("fine3.json", finest(3));
  CHECK(run({"decide", maj2, fine3}).code == cli::kFail);
  CHECK(run({"decide", maj3, fine3}).code == cli::kPass);
  CHECK(run({"decide", maj3, fine3, "--strong"}).code == cli::kPass);
  CHECK(run({"decide", maj2, fine3, "--strong"}).code == cli::kFail);
  const Run pre = run({"decide", fx("example1_committee.json"), fx("example1_partition.json")});
  CHECK(pre.code == cli::kError);
  CHECK(Json::parse(pre.err)["error"] == "PreconditionViolated");
}

TEST_CASE("anonymity") {
  const Run r = run({"anonymity", put("maj32.json", majority(3, 2)), put("fine3.json", finest(3))});
  CHECK(r.code == cli::kPass);
  CHECK(r.report["result"]["strongQuota"] == 2);
  CHECK(run({"anonymity", fx("example1_committee.json"), fx("example1_partition.json")}).code ==
        cli::kFail);
}

TEST_CASE("build-game") {
  const std::string out = fx("ex2_arena.json");
  const Run r = run({"build-game", fx("example2_partition.json"), "--quotas", "2,5,0", "--out", out});
  REQUIRE(r.code == cli::kPass);
  const OrderedPartition s_o = ordered_partition_from_json(read_json_file(fx("example2_partition.json")));
  CHECK(arena_from_json(read_json_file(out)) == build_quota_game(s_o, QuotaVector{2, 5, 0}));
  CHECK(r.report["result"]["nodes"] == build_quota_game(s_o, QuotaVector{2, 5, 0}).num_nodes());
  const std::string whole = put("whole4.json", Json::parse("[[1,2,3,4]]"));
  const Run one = run({"build-game", whole, "--quotas", "1"});
  CHECK(one.report["result"]["terminals"] == 16);
  CHECK(arena_from_json(one.report["result"]["arena"]).validate().empty());
  const Run bad = run({"build-game", whole, "--quotas", "4"});
  CHECK(bad.code == cli::kError);
  CHECK(Json::parse(bad.err)["error"] == "IncompatibleQuotas");
  CHECK(run({"build-game", whole, "--quotas", "1,x"}).code == cli::kError);
}

TEST_CASE("verify") {
  const std::string arena = fx("figure1_arena.json");
  const Run pass = run({"verify", arena, fx("example1_committee.json"), "--partition", fx("example1_partition.json")});
  CHECK(pass.code == cli::kPass);
  const std::string report = fx("verify_report.json");
  const Run fail = run({"verify", arena, fx("example1_committee.json"), "--partition",
                        fx("finest5_partition.json"), "--report", report});
  CHECK(fail.code == cli::kFail);
  CHECK(fail.report["result"]["replays"] == true);
  CHECK(read_json_file(report)["pass"] == false);
  const Run table = run({"verify", arena, fx("example1_table.json"), "--partition", fx("example1_partition.json")});
  CHECK(table.code == cli::kPass);
  const Run capped = run({"--cap", "1", "verify", arena, fx("example1_committee.json"), "--partition",
                          fx("example1_partition.json")});
  CHECK(capped.code == cli::kError);
  CHECK(Json::parse(capped.err)["error"] == "SearchSpaceExceeded");
  ::setenv("OSP_CAP", "1", 1);
  const Run env = run({"verify", arena, fx("example1_committee.json"), "--partition", fx("example1_partition.json")});
  ::unsetenv("OSP_CAP");
  CHECK(env.code == cli::kError);
  const Run jobs = run({"--jobs", "3", "verify", arena, fx("example1_committee.json"), "--partition",
                        fx("finest5_partition.json")});
  CHECK(jobs.report["result"] == fail.report["result"]);
  CHECK(jobs.report["evaluations"] == fail.report["evaluations"]);
}

TEST_CASE("coarsen-test") {
  const Run r = run({"coarsen-test", fx("figure1_arena.json"), fx("example1_committee.json"), "--partition",
                     fx("example1_partition.json")});
  CHECK(r.code == cli::kPass);
  CHECK(r.report["result"]["coarsenings"] == 5);
}

TEST_CASE("certify") {
  const std::string arena = fx("cert_arena.json");
  const std::string report = fx("cert_report.json");
  const Run r = run({"certify", fx("example2_committee.json"), fx("example2_partition.json"), "--out", arena,
                     "--report", report});
  CHECK(r.code == cli::kPass);
  CHECK(arena_from_json(read_json_file(arena)).validate().empty());
  CHECK(read_json_file(report)["quotas"] == Json::parse("[2,5,0]"));
  const Run no = run({"certify", put("maj32.json", majority(3, 2)), put("fine3.json", finest(3))});
  CHECK(no.code == cli::kFail);
}

TEST_CASE("reproduce scenarios") {
  for (const char* e : {"1", "2", "prop1", "thm3-grid"}) {
    const Run r = run({"reproduce", "--example", e});
    CHECK(r.code == cli::kPass);
    CHECK(r.report["result"]["mismatches"].empty());
  }
  CHECK(run({"reproduce", "--example", "3"}).code == cli::kError);
}

TEST_CASE("reports echo commands and input digests and replay identically") {
  const std::vector<std::string> args = {"decide", fx("example2_committee.json"), fx("example2_partition.json")};
  Run a = run(args);
  Run b = run(args);
  CHECK(a.report["command"] == Json(args));
  CHECK(a.report["inputs"][fx("example2_committee.json")] == file_digest(fx("example2_committee.json")));
  a.report.erase("elapsedMs");
  b.report.erase("elapsedMs");
  CHECK(a.report == b.report);
}

TEST_CASE("usage and input errors exit with code 2") {
  CHECK(run({}).code == cli::kError);
  CHECK(run({"frobnicate"}).code == cli::kError);
  CHECK(run({"check-sp"}).code == cli::kError);
  const Run missing = run({"check-sp", fx("nope.json")});
  CHECK(missing.code == cli::kError);
  CHECK(Json::parse(missing.err)["error"] == "ParseError");
  CHECK(run({"--help"}).code == cli::kPass);
}
