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

#include "fairnet/special.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <string>

#include "fairnet/ilp.hpp"

namespace fairnet {

Label PartialAssignment::at(Vertex v) const {
  const Label l = labels_.at(static_cast<std::size_t>(v));
  if (l == 0) throw InputError("vertex " + std::to_string(v) + " is not assigned");
  return l;
}

void PartialAssignment::assign(Vertex v, Label label) {
  if (label < 1) throw InputError("assigned labels must be positive");
  labels_.at(static_cast<std::size_t>(v)) = label;
}

VertexSet PartialAssignment::domain() const {
  VertexSet out;
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    if (labels_[v] != 0) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

std::vector<Label> PartialAssignment::values() const {
  std::vector<Label> out;
  for (Label l : labels_) {
    if (l != 0) out.push_back(l);
  }
  return out;
}

namespace {

SolveOutcome fair_outcome(Labeling labels, Label k, std::string trace) {
  SolveOutcome out;
  out.verdict = Verdict::Fair;
  out.certificate = FairnessCertificate{std::move(labels), k};
  out.stats.trace.push_back(std::move(trace));
  return out;
}

SolveOutcome unfair_outcome(std::string trace) {
  SolveOutcome out;
  out.verdict = Verdict::Unfair;
  out.stats.trace.push_back(std::move(trace));
  return out;
}

}  // namespace

SolveOutcome solve_single_star(int leaves, const LabelMultiset& s, Label k) {
  if (leaves < 1) throw InputError("a star needs at least one leaf");
  if (s.size() != static_cast<std::size_t>(leaves) + 1) throw InputError("star size does not match the multiset");
  // The center sees every leaf and each leaf sees only the center.
  if (s.count(k) == 0 || s.sum() - k != k) return unfair_outcome("single-star: no center label k with leaves summing to k");
  Labeling labels{k};
  bool skipped = false;
  for (Label v : s.values()) {
    if (v == k && !skipped) {
      skipped = true;
      continue;
    }
    labels.push_back(v);
  }
  return fair_outcome(std::move(labels), k, "single-star: center labeled k");
}

SolveOutcome solve_cycle(int n, const LabelMultiset& s, Label k) {
  if (n < 3) throw InputError("a cycle needs at least 3 vertices");
  if (s.size() != static_cast<std::size_t>(n)) throw InputError("cycle length does not match the multiset");
  if (n % 4 != 0) {
    if (k % 2 != 0 || s.count(k / 2) != static_cast<std::size_t>(n)) {
      return unfair_outcome("cycle: n mod 4 != 0 requires every label to be k/2");
    }
    return fair_outcome(Labeling(static_cast<std::size_t>(n), k / 2), k, "cycle: constant k/2");
  }
  const std::size_t quarter = static_cast<std::size_t>(n / 4);
  const auto values = s.distinct();
  for (Label a : values) {
    for (Label b : values) {
      if (b < a) continue;
      if (a >= k || b >= k) continue;
      std::map<Label, std::size_t> want;
      for (Label v : {a, b, k - a, k - b}) want[v] += quarter;
      if (want != s.counts()) continue;
      Labeling labels(static_cast<std::size_t>(n));
      const Label pattern[4] = {a, b, k - a, k - b};
      for (int i = 0; i < n; ++i) labels[i] = pattern[i % 4];
      return fair_outcome(std::move(labels), k, "cycle: pattern a,b,k-a,k-b");
    }
  }
  return unfair_outcome("cycle: no pattern a,b,k-a,k-b matches the multiset");
}

namespace detail {

namespace {

// Sorted label multisets of `size` values from `values` (bounded by
// `available`) that sum to `target`.
void feasible_leaf_multisets(const std::vector<Label>& values, const std::vector<std::size_t>& available,
                             std::size_t size, Label target, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> usage(values.size(), 0);
  auto rec = [&](auto&& self, std::size_t from, std::size_t left, Label remaining) -> void {
    if (left == 0) {
      if (remaining == 0) out.push_back(usage);
      return;
    }
    for (std::size_t j = from; j < values.size(); ++j) {
      // Values are ascending, so the cheapest completion uses values[j] only.
      if (values[j] * static_cast<Label>(left) > remaining) break;
      if (usage[j] == available[j]) continue;
      ++usage[j];
      self(self, j, left - 1, remaining - values[j]);
      --usage[j];
    }
  };
  rec(rec, 0, size, target);
}

}  // namespace

bool label_disjoint_stars(std::span<const Star> stars, const LabelMultiset& s, Label k, std::span<Label> labels,
                          SolveStats& stats, const Deadline& deadline) {
  const std::size_t t = stars.size();
  if (s.count(k) < t) {
    stats.trace.push_back("disjoint-stars: fewer copies of k than stars");
    return false;
  }
  std::size_t leaf_total = 0;
  for (const auto& star : stars) leaf_total += star.leaves.size();
  if (leaf_total + t != s.size()) return false;
  if (t == 0) return true;

  const LabelMultiset rest = s.minus(LabelMultiset(std::vector<Label>(t, k)));
  const std::vector<Label> values = rest.distinct();
  std::vector<std::size_t> available;
  for (Label v : values) available.push_back(rest.count(v));

  // Size classes D_i: stars grouped by leaf count, in input order.
  std::map<std::size_t, std::vector<std::size_t>> by_size;
  for (std::size_t i = 0; i < t; ++i) by_size[stars[i].leaves.size()].push_back(i);

  IntegerProgram program;
  struct Choice {
    std::size_t size;
    std::vector<std::size_t> usage;
    int variable;
  };
  std::vector<Choice> choices;
  for (const auto& [size, members] : by_size) {
    std::vector<std::vector<std::size_t>> options;
    feasible_leaf_multisets(values, available, size, k, options);
    if (options.empty()) {
      stats.trace.push_back("disjoint-stars: no leaf multiset of size " + std::to_string(size) + " sums to k");
      return false;
    }
    std::vector<IpTerm> count_terms;
    for (std::size_t o = 0; o < options.size(); ++o) {
      const int var = program.add_variable("n_" + std::to_string(size) + "_" + std::to_string(o), 0,
                                           static_cast<std::int64_t>(members.size()));
      count_terms.push_back({var, 1});
      choices.push_back({size, std::move(options[o]), var});
    }
    program.add_constraint(std::move(count_terms), Relation::Equal, static_cast<std::int64_t>(members.size()));
  }
  for (std::size_t j = 0; j < values.size(); ++j) {
    std::vector<IpTerm> terms;
    for (const auto& c : choices) {
      if (c.usage[j] > 0) terms.push_back({c.variable, static_cast<std::int64_t>(c.usage[j])});
    }
    program.add_constraint(std::move(terms), Relation::Equal, static_cast<std::int64_t>(available[j]));
  }
  ++stats.ilp_calls;
  IpStats ip_stats;
  const auto solution = solve_feasible(program, deadline, &ip_stats);
  stats.nodes += ip_stats.nodes;
  if (!solution) {
    stats.trace.push_back("disjoint-stars: counting program infeasible");
    return false;
  }

  std::map<std::size_t, std::size_t> next_star;
  for (const auto& c : choices) {
    const auto& members = by_size[c.size];
    for (std::int64_t copy = 0; copy < (*solution)[c.variable]; ++copy) {
      const Star& star = stars[members[next_star[c.size]++]];
      labels[star.center] = k;
      std::size_t leaf = 0;
      for (std::size_t j = 0; j < values.size(); ++j) {
        for (std::size_t u = 0; u < c.usage[j]; ++u) labels[star.leaves[leaf++]] = values[j];
      }
    }
  }
  stats.trace.push_back("disjoint-stars: counting program feasible");
  return true;
}

}  // namespace detail

SolveOutcome solve_disjoint_stars(const Graph& g, const LabelMultiset& s, Label k, const Deadline& deadline) {
  if (s.size() != static_cast<std::size_t>(g.vertex_count())) {
    throw InputError("multiset size does not match the vertex count");
  }
  std::vector<Star> stars;
  for (const auto& comp : connected_components(g)) {
    auto star = as_star(g, comp);
    if (!star) throw InputError("solve_disjoint_stars needs every component to be a star");
    stars.push_back(std::move(*star));
  }
  SolveOutcome out;
  Labeling labels(static_cast<std::size_t>(g.vertex_count()), 0);
  if (detail::label_disjoint_stars(stars, s, k, labels, out.stats, deadline)) {
    out.verdict = Verdict::Fair;
    out.certificate = FairnessCertificate{std::move(labels), k};
  } else {
    out.verdict = Verdict::Unfair;
  }
  return out;
}

VertexSet forest_leaves(const Graph& g, std::span<const Vertex> f_vertices) {
  std::vector<char> in(static_cast<std::size_t>(g.vertex_count()), 0);
  for (Vertex v : f_vertices) in[v] = 1;
  VertexSet out;
  for (Vertex v : f_vertices) {
    int d = 0;
    for (Vertex w : g.neighbors(v)) d += in[w];
    if (d <= 1) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

VertexSet outer_neighborhood(const Graph& g, std::span<const Vertex> f_vertices) {
  std::vector<char> in(static_cast<std::size_t>(g.vertex_count()), 0), mark(in);
  for (Vertex v : f_vertices) in[v] = 1;
  VertexSet out;
  for (Vertex v : f_vertices) {
    for (Vertex w : g.neighbors(v)) {
      if (!in[w] && !mark[w]) {
        mark[w] = 1;
        out.push_back(w);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ForestExtender::ForestExtender(const Graph& g, std::span<const Vertex> f_vertices)
    : g_(&g), vertices_(f_vertices.begin(), f_vertices.end()) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw InputError("forest vertex set has duplicates");
  }
  const int n = g.vertex_count();
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (Vertex v : vertices_) {
    if (v < 0 || v >= n) throw InputError("forest vertex out of range");
    in[v] = 1;
  }
  leaves_ = forest_leaves(g, vertices_);
  outer_ = outer_neighborhood(g, vertices_);
  std::vector<char> is_leaf(static_cast<std::size_t>(n), 0);
  for (Vertex v : leaves_) is_leaf[v] = 1;
  for (Vertex v : vertices_) {
    if (!is_leaf[v]) internal_.push_back(v);
  }

  std::vector<int> depth(static_cast<std::size_t>(n), -1), parent(static_cast<std::size_t>(n), -1);
  std::size_t inner_edges = 0, trees = 0;
  for (Vertex v : vertices_) {
    for (Vertex w : g.neighbors(v)) inner_edges += in[w];
  }
  inner_edges /= 2;

  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<std::pair<int, Vertex>> order;  // (depth, vertex) of internal vertices
  for (Vertex s : vertices_) {
    if (seen[s]) continue;
    ++trees;
    VertexSet tree{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < tree.size(); ++i) {
      for (Vertex w : g.neighbors(tree[i])) {
        if (in[w] && !seen[w]) {
          seen[w] = 1;
          tree.push_back(w);
        }
      }
    }
    std::sort(tree.begin(), tree.end());
    auto root_it = std::find_if(tree.begin(), tree.end(), [&](Vertex v) { return !is_leaf[v]; });
    if (root_it == tree.end()) {
      // One or two vertices, all of them boundary: only check equations.
      checked_.insert(checked_.end(), tree.begin(), tree.end());
      continue;
    }
    const Vertex root = *root_it;
    std::queue<Vertex> q;
    q.push(root);
    depth[root] = 0;
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      if (!is_leaf[u]) order.emplace_back(depth[u], u);
      for (Vertex w : g.neighbors(u)) {
        if (in[w] && depth[w] < 0) {
          depth[w] = depth[u] + 1;
          parent[w] = u;
          q.push(w);
        }
      }
    }
    for (Vertex v : tree) {
      if (v != root) checked_.push_back(v);
    }
  }
  if (inner_edges + trees != vertices_.size()) throw InputError("vertex set does not induce a forest");

  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  for (auto [d, v] : order) {
    Vertex witness = -1;
    for (Vertex w : g.neighbors(v)) {
      if (!in[w] || parent[w] != v) continue;
      if (is_leaf[w]) {
        witness = w;
        break;
      }
      if (witness < 0) witness = w;
    }
    steps_.push_back({v, witness});
  }
  std::sort(checked_.begin(), checked_.end());
}

bool ForestExtender::extend(std::span<Label> labels, Label k) const {
  for (const auto& step : steps_) {
    Label seen = 0;
    for (Vertex x : g_->neighbors(step.witness)) {
      if (x != step.target) seen += labels[x];
    }
    const Label forced = k - seen;
    if (forced <= 0) return false;
    labels[step.target] = forced;
  }
  for (Vertex v : checked_) {
    Label sum = 0;
    for (Vertex x : g_->neighbors(v)) sum += labels[x];
    if (sum != k) return false;
  }
  return true;
}

std::optional<PartialAssignment> extend_forest(const Graph& g, std::span<const Vertex> f_vertices,
                                               const PartialAssignment& boundary, Label k) {
  if (boundary.vertex_count() != g.vertex_count()) throw InputError("assignment size does not match the graph");
  ForestExtender ext(g, f_vertices);
  VertexSet expected = ext.outer();
  expected.insert(expected.end(), ext.leaves().begin(), ext.leaves().end());
  std::sort(expected.begin(), expected.end());
  if (boundary.domain() != expected) {
    throw InputError("boundary assignment must cover exactly N_G(F) and the leaves of F");
  }
  Labeling labels(boundary.raw().begin(), boundary.raw().end());
  if (!ext.extend(labels, k)) return std::nullopt;
  PartialAssignment out(g.vertex_count());
  for (Vertex v : expected) out.assign(v, labels[v]);
  for (Vertex v : ext.internal()) out.assign(v, labels[v]);
  return out;
}

std::size_t enumerate_boundary_extensions(const Graph& g, std::span<const Vertex> f_vertices,
                                          const LabelMultiset& s, Label k,
                                          const std::function<bool(const PartialAssignment&)>& visit,
                                          const Deadline& deadline) {
  ForestExtender ext(g, f_vertices);
  VertexSet boundary = ext.outer();
  boundary.insert(boundary.end(), ext.leaves().begin(), ext.leaves().end());
  std::sort(boundary.begin(), boundary.end());

  const auto values = s.distinct();
  std::vector<std::size_t> left;
  for (Label v : values) left.push_back(s.count(v));
  Labeling labels(static_cast<std::size_t>(g.vertex_count()), 0);
  std::size_t emitted = 0;
  bool stop = false;

  auto finish = [&]() {
    for (Vertex v : ext.internal()) labels[v] = 0;
    if (!ext.extend(labels, k)) return;
    // A function using some value more often than s never extends to a
    // sub-multiset of s, so the multiplicity filter during the enumeration
    // below does not change what is emitted.
    std::map<Label, std::size_t> extra;
    for (Vertex v : ext.internal()) ++extra[labels[v]];
    for (auto [value, count] : extra) {
      auto it = std::lower_bound(values.begin(), values.end(), value);
      if (it == values.end() || *it != value || left[it - values.begin()] < count) return;
    }
    PartialAssignment out(g.vertex_count());
    for (Vertex v : boundary) out.assign(v, labels[v]);
    for (Vertex v : ext.internal()) out.assign(v, labels[v]);
    ++emitted;
    if (!visit(out)) stop = true;
  };
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (stop) return;
    deadline.tick();
    if (i == boundary.size()) {
      finish();
      return;
    }
    for (std::size_t j = 0; j < values.size() && !stop; ++j) {
      if (left[j] == 0) continue;
      --left[j];
      labels[boundary[i]] = values[j];
      self(self, i + 1);
      ++left[j];
    }
    labels[boundary[i]] = 0;
  };
  rec(rec, 0);
  return emitted;
}

}  // namespace fairnet
