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

#include <random>

#include "doctest.h"
#include "fairnet/solvers.hpp"
#include "fairnet/structure.hpp"
#include "support/brute.hpp"

using namespace fairnet;

namespace {

Graph complete_bipartite(int a, int b) {
  std::vector<Edge> e;
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
  }
  return Graph::from_edges(a + b, e);
}

Graph cycle(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, e);
}

void check_certificate(const Graph& g, const LabelMultiset& s, const SolveOutcome& out) {
  REQUIRE(out.certificate);
  CHECK(verify(g, s, out.certificate->labeling) == out.certificate->constant);
}

}  // namespace

TEST_CASE("oracle on small named graphs") {
  auto k33 = complete_bipartite(3, 3);
  LabelMultiset s{1, 1, 2, 2, 3, 3};
  auto out = solve_oracle(k33, s);
  REQUIRE(out.fair());
  CHECK(out.certificate->constant == 6);
  check_certificate(k33, s, out);

  CHECK(solve_oracle(cycle(6), LabelMultiset{1, 2, 3, 1, 2, 3}).verdict == Verdict::Unfair);

  auto edgeless = Graph(4);
  auto vac = solve_oracle(edgeless, LabelMultiset{5, 1, 2, 9});
  CHECK(vac.fair());
  CHECK(vac.certificate->constant == kVacuousConstant);
}

TEST_CASE("oracle refuses beyond its cap instead of answering unfair") {
  SolveOptions opts;
  opts.oracle_cap = 2;
  auto out = solve_oracle(cycle(7), LabelMultiset{1, 1, 1, 1, 1, 1, 1}, opts);
  CHECK(out.verdict == Verdict::Refused);
  CHECK_FALSE(out.refusal_reason.empty());
}

TEST_CASE("fvs-alpha-delta examples") {
  auto g = complete_bipartite(3, 3).disjoint_union(complete_bipartite(1, 3));
  LabelMultiset s{1, 1, 2, 2, 3, 3, 6, 1, 2, 3};
  auto out = solve_fvs_alpha_delta(g, s, 6);
  REQUIRE(out.fair());
  check_certificate(g, s, out);

  auto stars = complete_bipartite(1, 3).disjoint_union(complete_bipartite(1, 3));
  LabelMultiset w{1, 2, 3, 1, 2, 3, 6, 6};
  CHECK(solve_fvs_alpha_delta(stars, w, 6).fair());
  CHECK(solve_fvs_alpha_delta(stars, w, 7).verdict == Verdict::Unfair);

  CHECK_THROWS_AS(solve_fvs_alpha_delta(Graph(2), LabelMultiset{1, 1}, 1), InputError);
}

TEST_CASE("vc-alpha examples") {
  auto k23 = complete_bipartite(2, 3);
  LabelMultiset s{2, 4, 1, 2, 3};
  auto out = solve_vc_alpha(k23, s, 6);
  REQUIRE(out.fair());
  check_certificate(k23, s, out);

  CHECK(solve_vc_alpha(complete_bipartite(1, 3), LabelMultiset{1, 2, 3, 6}, 6).fair());

  auto c4 = solve_vc_alpha(cycle(4), LabelMultiset{1, 2, 3, 4}, 5);
  REQUIRE(c4.fair());
  const auto& l = c4.certificate->labeling;
  CHECK(l[0] + l[2] == 5);
  CHECK(l[1] + l[3] == 5);
}

TEST_CASE("vc-alpha counts cover-internal neighbours") {
  // Triangle plus pendant-free extension: the cover {0,1} is not independent.
  std::vector<Edge> e{{0, 1}, {1, 2}, {0, 2}};
  auto tri = Graph::from_edges(3, e);
  LabelMultiset s{2, 2, 2};
  auto out = solve_vc_alpha(tri, s, 4);
  REQUIRE(out.fair());
  check_certificate(tri, s, out);
}

TEST_CASE("regular-fvs examples") {
  std::vector<Edge> m{{0, 1}, {2, 3}, {4, 5}};
  auto matching = Graph::from_edges(6, m);
  auto out = solve_regular_fvs(matching, LabelMultiset{4, 4, 4, 4, 4, 4});
  REQUIRE(out.fair());
  CHECK(out.certificate->constant == 4);

  auto c53 = cycle(5).disjoint_union(cycle(3));
  auto two = solve_regular_fvs(c53, LabelMultiset{2, 2, 2, 2, 2, 2, 2, 2});
  REQUIRE(two.fair());
  CHECK(two.certificate->constant == 4);

  auto c44 = cycle(4).disjoint_union(cycle(4));
  LabelMultiset s{1, 1, 2, 2, 3, 3, 4, 4};
  auto four = solve_regular_fvs(c44, s);
  REQUIRE(four.fair());
  CHECK(four.certificate->constant == 5);
  check_certificate(c44, s, four);

  CHECK_THROWS_AS(solve_regular_fvs(complete_bipartite(1, 2), LabelMultiset{1, 1, 1}), InputError);
}

TEST_CASE("auto handles mixed components and isolated vertices") {
  auto g = complete_bipartite(3, 3).disjoint_union(cycle(5)).disjoint_union(complete_bipartite(1, 3));
  LabelMultiset s{1, 2, 3, 1, 2, 3, 3, 3, 3, 3, 3, 6, 1, 2, 3};
  auto out = solve_auto(g, s);
  REQUIRE(out.fair());
  CHECK(out.certificate->constant == 6);
  check_certificate(g, s, out);
  CHECK_FALSE(out.stats.trace.empty());

  std::vector<Edge> one{{0, 1}};
  CHECK(solve_auto(Graph::from_edges(3, one), LabelMultiset{1, 1, 1}).verdict == Verdict::Unfair);
  CHECK(solve_auto(Graph(3), LabelMultiset{1, 2, 3}).fair());
}

TEST_CASE("components fair only with different constants are unfair together") {
  // K_2 wants {1,1} (k=1), P_3 wants center 2 with leaves 1,1 (k=2).
  std::vector<Edge> e{{0, 1}, {2, 3}, {3, 4}};
  auto g = Graph::from_edges(5, e);
  LabelMultiset s{1, 1, 1, 1, 2};
  CHECK(solve_auto(g, s).verdict == Verdict::Unfair);
  CHECK(solve_oracle(g, s).verdict == Verdict::Unfair);
  CHECK(solve(Algorithm::FvsAlphaDelta, g, s).verdict == Verdict::Unfair);
  CHECK(solve(Algorithm::VcAlpha, g, s).verdict == Verdict::Unfair);
}

TEST_CASE("algorithm names round trip") {
  for (auto a : {Algorithm::Auto, Algorithm::Oracle, Algorithm::FvsAlphaDelta, Algorithm::VcAlpha,
                 Algorithm::RegularFvs, Algorithm::VcDelta}) {
    CHECK(parse_algorithm(to_string(a)) == a);
  }
  CHECK_FALSE(parse_algorithm("quantum"));
}

TEST_CASE("solvers agree with permutation brute force on random graphs") {
  std::mt19937_64 rng(20261015);
  int fair_seen = 0;
  for (int iter = 0; iter < 300; ++iter) {
    const int n = testing::draw(rng, 1, 7);
    auto g = testing::random_graph(rng, n, testing::draw(rng, 20, 80));
    auto s = testing::random_multiset(rng, n, testing::draw(rng, 1, 4));
    const bool expected = testing::brute_fair(g, s);
    fair_seen += expected;
    for (auto algo : {Algorithm::Oracle, Algorithm::FvsAlphaDelta, Algorithm::VcAlpha, Algorithm::Auto}) {
      auto out = solve(algo, g, s);
      INFO("algorithm " << to_string(algo) << " iteration " << iter);
      REQUIRE(out.verdict != Verdict::Refused);
      CHECK(out.fair() == expected);
      if (out.fair()) check_certificate(g, s, out);
    }
  }
  CHECK(fair_seen > 10);
}

TEST_CASE("true twins carry equal labels in every fair labeling") {
  std::mt19937_64 rng(313);
  int fair_labelings = 0;
  for (int iter = 0; iter < 1500; ++iter) {
    // Plant a true twin: copy a vertex's closed neighbourhood onto a new vertex.
    const int base = testing::draw(rng, 2, 6);
    auto g0 = testing::random_graph(rng, base, testing::draw(rng, 30, 80));
    std::vector<Edge> e = g0.edges();
    const Vertex src = testing::draw(rng, 0, base - 1);
    for (Vertex u : g0.neighbors(src)) e.emplace_back(u, base);
    e.emplace_back(src, base);
    const auto g = Graph::from_edges(base + 1, e);
    const auto s = testing::random_multiset(rng, base + 1, testing::draw(rng, 2, 3));
    const auto twins = twin_classes(g);

    std::vector<Label> l(s.values().begin(), s.values().end());
    do {
      if (!verify(g, s, l)) continue;
      fair_labelings += s.distinct_count() > 1;
      CHECK(l[src] == l[base]);
      for (std::size_t c = 0; c < twins.size(); ++c) {
        if (twins.kinds[c] != TwinKind::True) continue;
        for (Vertex v : twins.classes[c]) CHECK(l[v] == l[twins.classes[c][0]]);
      }
    } while (std::next_permutation(l.begin(), l.end()));

    auto out = solve_auto(g, s);
    if (out.fair()) CHECK(out.certificate->labeling[src] == out.certificate->labeling[base]);
  }
  CHECK(fair_labelings > 10);
}
