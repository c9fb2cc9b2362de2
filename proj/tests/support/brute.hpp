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

#pragma once

// Test-only oracles that share no code with the library solvers: plain
// permutation enumeration, subset enumeration and box enumeration.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "fairnet/core.hpp"
#include "fairnet/ilp.hpp"

namespace fairnet::testing {

// Every distinct permutation of s on the vertices; returns the set of
// fairness constants reached (0 for edgeless graphs).
inline std::set<Label> brute_constants(const Graph& g, const LabelMultiset& s) {
  std::vector<Label> perm(s.values().begin(), s.values().end());
  std::set<Label> found;
  const int n = g.vertex_count();
  do {
    bool ok = true;
    Label k = -1;
    for (Vertex v = 0; v < n && ok; ++v) {
      Label sum = 0;
      for (Vertex w : g.neighbors(v)) sum += perm[w];
      if (k < 0) k = sum;
      else if (sum != k) ok = false;
    }
    if (ok) found.insert(n == 0 ? 0 : k);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return found;
}

inline bool brute_fair(const Graph& g, const LabelMultiset& s) { return !brute_constants(g, s).empty(); }

inline bool is_forest_brute(const Graph& g, std::uint32_t removed_mask) {
  // Union-find over the kept vertices: a cycle closes iff an edge joins
  // two vertices already connected.
  std::vector<int> parent(g.vertex_count());
  for (int i = 0; i < g.vertex_count(); ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [u, v] : g.edges()) {
    if ((removed_mask >> u) & 1u || (removed_mask >> v) & 1u) continue;
    int a = find(u), b = find(v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

inline int brute_fvs_size(const Graph& g) {
  int best = g.vertex_count();
  for (std::uint32_t m = 0; m < (1u << g.vertex_count()); ++m) {
    if (std::popcount(m) < best && is_forest_brute(g, m)) best = std::popcount(m);
  }
  return best;
}

inline int brute_vc_size(const Graph& g) {
  int best = g.vertex_count();
  for (std::uint32_t m = 0; m < (1u << g.vertex_count()); ++m) {
    if (std::popcount(m) >= best) continue;
    bool ok = true;
    for (auto [u, v] : g.edges()) {
      if (!((m >> u) & 1u) && !((m >> v) & 1u)) ok = false;
    }
    if (ok) best = std::popcount(m);
  }
  return best;
}

// Enumerates the whole box of a bounded program.
inline bool brute_feasible(const IntegerProgram& p) {
  const auto& vars = p.variables();
  std::vector<std::int64_t> x;
  for (const auto& v : vars) x.push_back(v.lower);
  if (vars.empty()) return p.satisfied_by(x);
  for (const auto& v : vars) {
    if (*v.upper < v.lower) return false;
  }
  while (true) {
    if (p.satisfied_by(x)) return true;
    std::size_t i = 0;
    while (i < vars.size() && x[i] == *vars[i].upper) {
      x[i] = vars[i].lower;
      ++i;
    }
    if (i == vars.size()) return false;
    ++x[i];
  }
}

// Hand-rolled generators.
inline int draw(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Graph random_graph(std::mt19937_64& rng, int n, int edge_percent) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (draw(rng, 1, 100) <= edge_percent) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

inline LabelMultiset random_multiset(std::mt19937_64& rng, int n, int max_value) {
  std::vector<Label> v;
  for (int i = 0; i < n; ++i) v.push_back(draw(rng, 1, max_value));
  return LabelMultiset(std::move(v));
}

}  // namespace fairnet::testing
