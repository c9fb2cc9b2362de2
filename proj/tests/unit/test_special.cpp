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
#include "fairnet/special.hpp"
#include "support/brute.hpp"

using namespace fairnet;

namespace {

Graph cycle(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
  return Graph::from_edges(n, e);
}

Graph stars(const std::vector<int>& leaf_counts) {
  std::vector<Edge> e;
  int next = 0;
  for (int leaves : leaf_counts) {
    for (int i = 1; i <= leaves; ++i) e.emplace_back(next, next + i);
    next += leaves + 1;
  }
  return Graph::from_edges(next, e);
}

PartialAssignment restrict(const Labeling& l, const VertexSet& domain) {
  PartialAssignment p(static_cast<int>(l.size()));
  for (Vertex v : domain) p.assign(v, l[v]);
  return p;
}

}  // namespace

TEST_CASE("single star closed form") {
  auto fair = solve_single_star(3, LabelMultiset{1, 2, 3, 6}, 6);
  REQUIRE(fair.fair());
  CHECK(fair.certificate->labeling == Labeling{6, 1, 2, 3});
  CHECK(solve_single_star(3, LabelMultiset{1, 2, 3, 4}, 5).verdict == Verdict::Unfair);
  CHECK(solve_single_star(1, LabelMultiset{3, 3}, 3).fair());
  CHECK_THROWS_AS(solve_single_star(2, LabelMultiset{1, 1}, 1), InputError);
}

TEST_CASE("cycle closed form") {
  auto c8 = solve_cycle(8, LabelMultiset{1, 1, 2, 2, 3, 3, 4, 4}, 5);
  REQUIRE(c8.fair());
  CHECK(c8.certificate->labeling == Labeling{1, 2, 4, 3, 1, 2, 4, 3});
  CHECK(verify(cycle(8), LabelMultiset{1, 1, 2, 2, 3, 3, 4, 4}, c8.certificate->labeling) == 5);
  CHECK(solve_cycle(5, LabelMultiset{2, 2, 2, 2, 2}, 4).fair());
  CHECK(solve_cycle(6, LabelMultiset{1, 2, 3, 1, 2, 3}, 4).verdict == Verdict::Unfair);
  // a = k - a: pattern {2, 1, 2, 3} for k = 4.
  CHECK(solve_cycle(4, LabelMultiset{1, 2, 2, 3}, 4).fair());
}

TEST_CASE("cycle closed form agrees with brute force") {
  std::mt19937_64 rng(3);
  for (int n = 3; n <= 8; ++n) {
    auto g = cycle(n);
    for (int iter = 0; iter < 120; ++iter) {
      auto s = testing::random_multiset(rng, n, 4);
      const auto ks = testing::brute_constants(g, s);
      bool any = false;
      const __int128 total = 2 * static_cast<__int128>(s.sum());
      if (total % n == 0) any = solve_cycle(n, s, static_cast<Label>(total / n)).fair();
      CHECK(any == !ks.empty());
    }
  }
}

TEST_CASE("disjoint stars counting program") {
  LabelMultiset s{1, 2, 3, 1, 2, 3, 6, 6};
  auto out = solve_disjoint_stars(stars({3, 3}), s, 6);
  REQUIRE(out.fair());
  CHECK(out.certificate->labeling == Labeling{6, 1, 2, 3, 6, 1, 2, 3});
  CHECK(out.stats.ilp_calls == 1);

  CHECK(solve_disjoint_stars(stars({3, 3}), LabelMultiset{1, 2, 3, 1, 2, 3, 6, 5}, 6).verdict == Verdict::Unfair);

  LabelMultiset mixed{5, 5, 2, 3, 1, 1, 3};
  auto m = solve_disjoint_stars(stars({2, 3}), mixed, 5);
  REQUIRE(m.fair());
  CHECK(verify(stars({2, 3}), mixed, m.certificate->labeling) == 5);

  CHECK_THROWS_AS(solve_disjoint_stars(cycle(4), LabelMultiset{1, 1, 1, 1}, 2), InputError);
}

TEST_CASE("disjoint stars agree with brute force") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<int> leaves;
    int n = 0;
    while (true) {
      const int l = testing::draw(rng, 1, 3);
      if (n + l + 1 > 8) break;
      leaves.push_back(l);
      n += l + 1;
    }
    auto g = stars(leaves);
    auto s = testing::random_multiset(rng, n, testing::draw(rng, 2, 6));
    const auto ks = testing::brute_constants(g, s);
    bool any = false;
    for (Label k : s.distinct()) any = any || solve_disjoint_stars(g, s, k).fair();
    CHECK(any == !ks.empty());
  }
}

TEST_CASE("forest extension on a path and a star") {
  // Path 0 - 1 - 2 with nothing outside.
  std::vector<Edge> e{{0, 1}, {1, 2}};
  auto path = Graph::from_edges(3, e);
  VertexSet f{0, 1, 2};
  PartialAssignment boundary(3);
  boundary.assign(0, 2);
  boundary.assign(2, 2);
  auto ext = extend_forest(path, f, boundary, 5);
  REQUIRE(ext);
  CHECK(ext->at(1) == 5);

  auto st = stars({3});
  VertexSet all{0, 1, 2, 3};
  PartialAssignment leaves(4);
  leaves.assign(1, 1);
  leaves.assign(2, 2);
  leaves.assign(3, 3);
  auto center = extend_forest(st, all, leaves, 6);
  REQUIRE(center);
  CHECK(center->at(0) == 6);

  // Leaf 1 of the path 1 - 2 - 3 sees the outside vertex 0 with label 9 > k.
  std::vector<Edge> e2{{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  auto sq = Graph::from_edges(4, e2);
  VertexSet f2{1, 2, 3};
  PartialAssignment b2(4);
  b2.assign(0, 9);
  b2.assign(1, 1);
  b2.assign(3, 1);
  CHECK_FALSE(extend_forest(sq, f2, b2, 5));

  PartialAssignment wrong(4);
  wrong.assign(1, 1);
  CHECK_THROWS_AS(extend_forest(sq, f2, wrong, 5), InputError);
}

TEST_CASE("boundary enumeration") {
  auto st = stars({3});
  VertexSet all{0, 1, 2, 3};
  std::size_t seen = 0;
  bool has_center_six = false;
  const auto emitted = enumerate_boundary_extensions(st, all, LabelMultiset{1, 2, 3, 6}, 6,
                                                     [&](const PartialAssignment& p) {
                                                       ++seen;
                                                       has_center_six = has_center_six || p.at(0) == 6;
                                                       return true;
                                                     });
  CHECK(emitted == seen);
  CHECK(has_center_six);

  // One distinct label: at most one function exists.
  auto c = cycle(4);
  VertexSet f{0, 1, 2};
  const auto one = enumerate_boundary_extensions(c, f, LabelMultiset{2, 2, 2, 2}, 4,
                                                 [](const PartialAssignment&) { return true; });
  CHECK(one <= 1);
}

TEST_CASE("extending a restricted certificate reproduces it") {
  std::mt19937_64 rng(5);
  int tried = 0;
  for (int iter = 0; iter < 3000 && tried < 150; ++iter) {
    const int n = testing::draw(rng, 3, 8);
    auto g = testing::random_graph(rng, n, 50);
    auto s = testing::random_multiset(rng, n, 4);
    auto out = solve_oracle(g, s);
    if (!out.fair() || g.is_edgeless()) continue;
    const Labeling& cert = out.certificate->labeling;
    for (int rep = 0; rep < 5; ++rep) {
      VertexSet f;
      for (Vertex v = 0; v < n; ++v) {
        if (testing::draw(rng, 0, 1)) f.push_back(v);
      }
      if (f.empty() || !testing::is_forest_brute(g.induced(f), 0)) continue;
      ++tried;
      VertexSet boundary = outer_neighborhood(g, f);
      const VertexSet leaves = forest_leaves(g, f);
      boundary.insert(boundary.end(), leaves.begin(), leaves.end());
      std::sort(boundary.begin(), boundary.end());
      auto ext = extend_forest(g, f, restrict(cert, boundary), out.certificate->constant);
      REQUIRE(ext);
      VertexSet domain = outer_neighborhood(g, f);
      domain.insert(domain.end(), f.begin(), f.end());
      std::sort(domain.begin(), domain.end());
      CHECK(*ext == restrict(cert, domain));
    }
  }
  CHECK(tried > 50);
}
