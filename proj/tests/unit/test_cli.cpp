// Copyright 2026 The fairnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fairnet/cli.hpp"
#include "fairnet/instance_io.hpp"

using namespace fairnet;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) { return std::string(FAIRNET_TEST_DATA) + "/" + rel; }

fs::path scratch() {
  auto dir = fs::temp_directory_path() / "fairnet_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("solve reports verdicts through exit codes") {
  auto c4 = run({"solve", data("bench_ok/c4.fairnet"), "--algo", "vc-alpha"});
  CHECK(c4.code == kExitFair);
  CHECK(c4.out.find("k: 5\n") != std::string::npos);
  CHECK(c4.out.find("parameters: n=4 max_degree=2 alpha=4 fvs=1 vc=2 r=2") != std::string::npos);

  auto c6 = run({"solve", data("bench_ok/c6.fairnet")});
  CHECK(c6.code == kExitUnfair);
  CHECK(c6.out.find("verdict: unfair") != std::string::npos);

  auto bad = scratch() / "bad.fairnet";
  std::ofstream(bad) << "fairnet v1\nvertices 2\nedge 0 0\n";
  CHECK(run({"solve", bad.string()}).code == kExitInputError);
  CHECK(run({"solve", data("bench_ok/c4.fairnet"), "--algo", "nope"}).code == kExitInputError);
  CHECK(run({"solve", data("bench_ok/c4.fairnet"), "--algo", "regular-fvs", "--k", "4"}).code == kExitUnfair);
}

TEST_CASE("oracle refusals exit with 2") {
  auto r = run({"oracle", data("bench_ok/semimagic.fairnet"), "--cap", "3"});
  CHECK(r.code == kExitRefused);
  CHECK(r.out.find("verdict: refused") != std::string::npos);
}

TEST_CASE("solve output is deterministic") {
  auto a = run({"solve", data("bench_ok/semimagic.fairnet")});
  auto b = run({"solve", data("bench_ok/semimagic.fairnet")});
  CHECK(a.code == kExitFair);
  CHECK(a.out == b.out);
  CHECK(a.out.find("time_ms") == std::string::npos);
}

TEST_CASE("verify") {
  auto dir = scratch();
  const std::string with_cert = (dir / "lo_shu.fairnet").string();
  auto inst = load_instance(data("bench_ok/semimagic.fairnet"));
  inst.certificate = FairnessCertificate{{8, 1, 6, 3, 5, 7, 4, 9, 2, 1, 1, 1, 14, 14, 14}, 15};
  save_instance(with_cert, inst);
  auto ok = run({"verify", with_cert});
  CHECK(ok.code == kExitFair);
  CHECK(ok.out == "verifies: yes\nk: 15\n");

  inst.certificate->labeling[0] = 1;
  inst.certificate->labeling[1] = 8;
  const std::string tampered = (dir / "tampered.fairnet").string();
  save_instance(tampered, inst);
  CHECK(run({"verify", tampered}).code == kExitUnfair);

  CHECK(run({"verify", data("bench_ok/c4.fairnet")}).code == kExitInputError);
}

TEST_CASE("generate") {
  auto stars = run({"generate", "3part-stars", "--w", "1,2,3,1,2,3"});
  CHECK(stars.code == 0);
  auto inst = read_instance(stars.out);
  CHECK(inst.labels == LabelMultiset{1, 2, 3, 1, 2, 3, 6, 6});
  CHECK(inst.metadata.at("three_partition") == "yes");

  auto circ = read_instance(run({"generate", "circulant", "--n", "8", "--r", "4"}).out);
  CHECK(circ.graph.regular_degree() == 4);

  auto a = run({"generate", "random", "--n", "7", "--maxlabel", "5", "--seed", "42"});
  auto b = run({"generate", "random", "--n", "7", "--maxlabel", "5", "--seed", "42"});
  CHECK(a.out == b.out);

  auto x = read_instance(run({"generate", "xsat", "--n", "3", "--clauses", "0,1,2;0,1,2;0,1,2", "--truth", "1,0,0"}).out);
  REQUIRE(x.certificate);
  CHECK(x.certificate_verified);

  const auto out_file = (scratch() / "gen.fairnet").string();
  CHECK(run({"generate", "semimagic", "--out", out_file}).code == 0);
  CHECK(load_instance(out_file).k == 15);

  CHECK(run({"generate", "circulant", "--n", "4", "--r", "3"}).code == kExitInputError);
  CHECK(run({"generate", "xsat", "--n", "4", "--clauses", "0,1,2"}).code == kExitInputError);
  CHECK(run({"generate", "sudoku"}).code == kExitInputError);
}

TEST_CASE("bench agreement, tripwire and empty corpus") {
  const auto tsv = (scratch() / "rows.tsv").string();
  auto ok = run({"bench", data("bench_ok"), "--algos", "oracle,auto", "--tsv", tsv});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("0 disagreements") != std::string::npos);
  std::ifstream rows(tsv);
  std::string header;
  std::getline(rows, header);
  CHECK(header == "instance\talgorithm\tverdict\tk\tnodes\tilp_calls");

  auto parallel = run({"bench", data("bench_ok"), "--algos", "oracle,auto", "--jobs", "3"});
  CHECK(parallel.out == ok.out);

  auto bad = run({"bench", data("bench_disagree")});
  CHECK(bad.code == kExitDisagreement);
  CHECK(bad.err.find("disagreement: c6_claims_fair.fairnet") != std::string::npos);

  CHECK(run({"bench", data("empty_corpus")}).code == kExitInputError);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitInputError);
  CHECK(run({"frobnicate"}).code == kExitInputError);
  CHECK(run({"--help"}).code == 0);
}
