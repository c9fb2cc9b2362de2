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

#include <numeric>
#include <random>

#include "doctest.h"
#include "fairnet/reductions.hpp"
#include "fairnet/solvers.hpp"

using namespace fairnet;

TEST_CASE("3-partition into copies of K_{3,3}") {
  auto even = gen_3partition_k33({{1, 2, 3, 1, 2, 3}, 2});
  CHECK(even.graph.vertex_count() == 6);
  CHECK(even.graph.regular_degree() == 3);
  CHECK(even.labels == LabelMultiset{1, 1, 2, 2, 3, 3});
  CHECK(even.k == 6);
  CHECK(even.metadata.at("case") == "even");
  auto out = solve_oracle(even.graph, even.labels);
  REQUIRE(out.fair());
  CHECK(out.certificate->constant == 6);

  auto odd = gen_3partition_k33({{2, 2, 2, 3, 3, 3, 2, 3, 4}, 3});
  CHECK(odd.graph.vertex_count() == 12);
  CHECK(odd.labels == LabelMultiset{2, 2, 2, 3, 3, 3, 2, 3, 4, 6, 1, 1});
  CHECK(odd.metadata.at("shift") == "0");
  CHECK(odd.k == 8);

  auto shifted = gen_3partition_k33({{1, 1, 1, 1, 1, 1, 1, 1, 1}, 3});
  CHECK(shifted.metadata.at("shift") == "1");
  CHECK(shifted.k == 6);
  CHECK(shifted.labels.count(2) == 9);

  auto ones = gen_3partition_k33({{1, 1, 1, 1, 1, 1}, 2});
  auto ones_out = solve_oracle(ones.graph, ones.labels);
  REQUIRE(ones_out.fair());
  CHECK(ones_out.certificate->constant == 3);

  CHECK_THROWS_AS(gen_3partition_k33({{1, 2, 3, 4}, 2}), InputError);
  CHECK_THROWS_AS(gen_3partition_k33({{1, 1, 1, 1, 1, 2}, 2}), InputError);
}

TEST_CASE("3-partition into stars") {
  auto st = gen_3partition_stars({{1, 2, 3, 1, 2, 3}, 2});
  CHECK(st.graph.vertex_count() == 8);
  CHECK(st.labels == LabelMultiset{1, 2, 3, 1, 2, 3, 6, 6});
  CHECK(solve_auto(st.graph, st.labels).fair());

  auto yes = gen_3partition_stars({{1, 1, 4, 2, 2, 2}, 2});
  CHECK(solve_oracle(yes.graph, yes.labels).fair());

  // Sum 10 over m = 2 gives 5, but no triple of {1,1,1,1,1,5} sums to 5.
  ThreePartitionInstance no{{1, 1, 1, 1, 1, 5}, 2};
  CHECK_FALSE(brute_3partition(no));
  auto no_inst = gen_3partition_stars(no);
  CHECK(solve_oracle(no_inst.graph, no_inst.labels).verdict == Verdict::Unfair);
}

TEST_CASE("brute-force 3-partition") {
  auto yes = brute_3partition({{1, 2, 3, 1, 2, 3}, 2});
  REQUIRE(yes);
  for (const auto& t : *yes) CHECK(t[0] + t[1] + t[2] == 6);
  CHECK(brute_3partition({{2, 2, 2}, 1}));
  CHECK_THROWS_AS(brute_3partition({{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}, 5}), RefusalError);
  CHECK_THROWS_AS(brute_3partition({{1, 2}, 1}), InputError);
}

TEST_CASE("xsat validation") {
  XsatFormula triple{3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}};
  CHECK_FALSE(validate_xsat(triple));
  XsatFormula four{4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
  auto why = validate_xsat(four);
  REQUIRE(why);
  CHECK(*why == "n not divisible by 3");
  XsatFormula short_clause{3, {{0, 1, 1}, {0, 1, 2}, {0, 2, 2}}};
  CHECK(validate_xsat(short_clause));
  XsatFormula twice{3, {{0, 1, 2}, {0, 1, 2}}};
  CHECK(validate_xsat(twice));
  CHECK_THROWS_AS(gen_xsat(twice), InputError);
}

TEST_CASE("xsat construction") {
  XsatFormula triple{3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}};
  auto inst = gen_xsat(triple);
  CHECK(inst.graph.vertex_count() == 48);
  CHECK(inst.graph.regular_degree() == 6);
  CHECK(inst.labels.count(1) == 2);
  CHECK(inst.labels.count(2) == 45);
  CHECK(inst.labels.count(4) == 1);
  CHECK(6 * inst.labels.sum() / 48 == 12);
  for (Vertex x = 0; x < 3; ++x) CHECK(inst.graph.degree(x) == 6);

  auto cert = certificate_from_xsat_assignment(triple, {true, false, false});
  CHECK(cert.constant == 12);
  CHECK(verify(inst.graph, inst.labels, cert.labeling) == 12);
  CHECK_THROWS_AS(certificate_from_xsat_assignment(triple, {false, false, false}), InputError);
  CHECK_THROWS_AS(certificate_from_xsat_assignment(triple, {true, true, false}), InputError);
}

TEST_CASE("planted formulas are valid and satisfied") {
  for (int n : {3, 6, 9, 12, 30}) {
    std::vector<bool> truth;
    auto phi = planted_xsat(n, static_cast<std::uint64_t>(n) * 7, &truth);
    CHECK_FALSE(validate_xsat(phi));
    auto inst = gen_xsat(phi);
    auto cert = certificate_from_xsat_assignment(phi, truth);
    CHECK(verify(inst.graph, inst.labels, cert.labeling) == 12);
  }
  CHECK_THROWS_AS(planted_xsat(4, 0), InputError);
}

TEST_CASE("semi-magic encoding") {
  SemiMagicSpec lo_shu{3, {1, 2, 3, 4, 5, 6, 7, 8, 9}};
  auto inst = gen_semimagic(lo_shu);
  CHECK(inst.graph.vertex_count() == 15);
  CHECK(inst.k == 15);
  CHECK(inst.labels.count(14) == 3);
  CHECK(inst.labels.count(1) == 4);
  for (Vertex v = 0; v < 9; ++v) CHECK(inst.graph.degree(v) == 2);
  for (Vertex v = 9; v < 15; ++v) CHECK(inst.graph.degree(v) == 3);

  // 8 1 6 / 3 5 7 / 4 9 2 with rows 14,14,14 and columns 1,1,1.
  FairnessCertificate square{{8, 1, 6, 3, 5, 7, 4, 9, 2, 1, 1, 1, 14, 14, 14}, 15};
  auto grid = decode_semimagic(lo_shu, square);
  CHECK(grid[0] == std::vector<Label>{8, 1, 6});

  auto tampered = square;
  std::swap(tampered.labeling[0], tampered.labeling[1]);
  CHECK_THROWS_AS(decode_semimagic(lo_shu, tampered), InputError);

  SemiMagicSpec ones{3, std::vector<Label>(9, 1)};
  auto ones_inst = gen_semimagic(ones);
  CHECK(ones_inst.k == 3);
  auto out = solve_auto(ones_inst.graph, ones_inst.labels);
  REQUIRE(out.fair());
  auto ones_grid = decode_semimagic(ones, *out.certificate);
  for (const auto& row : ones_grid) CHECK(row == std::vector<Label>{1, 1, 1});

  SemiMagicSpec odd{3, {1, 1, 1, 1, 1, 1, 1, 1, 2}};
  CHECK(gen_semimagic(odd).metadata.at("necessarily_unfair") == "1");
  CHECK_THROWS_AS(gen_semimagic({2, {1, 1, 1, 1}}), InputError);
}

TEST_CASE("circulant graphs") {
  auto g = gen_circulant(8, 4);
  CHECK(g.regular_degree() == 4);
  for (Vertex v = 0; v < 8; ++v) {
    CHECK(g.has_edge(v, (v + 1) % 8));
    CHECK(g.has_edge(v, (v + 2) % 8));
    CHECK_FALSE(g.has_edge(v, (v + 4) % 8));
  }
  CHECK(gen_circulant(5, 2).edge_count() == 5);
  CHECK_THROWS_AS(gen_circulant(4, 3), InputError);
  CHECK_THROWS_AS(gen_circulant(4, 4), InputError);
}

TEST_CASE("random instances are deterministic per seed") {
  for (auto shape : {RandomShape::Gnp, RandomShape::Stars, RandomShape::Cycles, RandomShape::Bipartite,
                     RandomShape::Circulant}) {
    auto a = random_instance(shape, 9, 6, 42);
    auto b = random_instance(shape, 9, 6, 42);
    CHECK(a == b);
    CHECK(a.graph.vertex_count() == 9);
    CHECK(a.labels.max() <= 6);
    CHECK(parse_random_shape(to_string(shape)) == shape);
  }
  CHECK(classify(random_instance(RandomShape::Stars, 9, 3, 1).graph).shape == Shape::DisjointStars);
  CHECK(random_instance(RandomShape::Cycles, 9, 3, 1).graph.regular_degree() == 2);
}
