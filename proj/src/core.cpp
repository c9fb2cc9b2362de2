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

#include "fairnet/core.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace fairnet {

Graph::Graph(int vertex_count) {
  if (vertex_count < 0) throw InputError("vertex count must be nonnegative");
  adjacency_.resize(static_cast<std::size_t>(vertex_count));
}

Graph Graph::from_edges(int vertex_count, std::span<const Edge> edges) {
  Graph g(vertex_count);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count) {
      throw InputError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") has an endpoint out of range");
    }
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  for (std::size_t v = 0; v < g.adjacency_.size(); ++v) {
    auto& adj = g.adjacency_[v];
    std::sort(adj.begin(), adj.end());
    if (std::adjacent_find(adj.begin(), adj.end()) != adj.end()) {
      throw InputError("repeated edge at vertex " + std::to_string(v));
    }
  }
  return g;
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  if (v < 0 || v >= vertex_count()) throw InputError("vertex " + std::to_string(v) + " out of range");
  return adjacency_[static_cast<std::size_t>(v)];
}

int Graph::max_degree() const {
  int d = 0;
  for (const auto& adj : adjacency_) d = std::max(d, static_cast<int>(adj.size()));
  return d;
}

int Graph::min_degree() const {
  if (adjacency_.empty()) return 0;
  int d = static_cast<int>(adjacency_.front().size());
  for (const auto& adj : adjacency_) d = std::min(d, static_cast<int>(adj.size()));
  return d;
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& adj : adjacency_) twice += adj.size();
  return twice / 2;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  auto adj = neighbors(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

bool Graph::has_isolated_vertex() const {
  return std::any_of(adjacency_.begin(), adjacency_.end(), [](const auto& a) { return a.empty(); });
}

std::optional<int> Graph::regular_degree() const {
  if (adjacency_.empty()) return std::nullopt;
  int d = max_degree();
  return min_degree() == d ? std::optional<int>(d) : std::nullopt;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (Vertex u = 0; u < vertex_count(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::induced(std::span<const Vertex> vs) const {
  std::vector<int> index(adjacency_.size(), -1);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i] < 0 || vs[i] >= vertex_count()) throw InputError("vertex " + std::to_string(vs[i]) + " out of range");
    index[vs[i]] = static_cast<int>(i);
  }
  Graph h(static_cast<int>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (Vertex w : adjacency_[vs[i]]) {
      if (index[w] >= 0) h.adjacency_[i].push_back(index[w]);
    }
    std::sort(h.adjacency_[i].begin(), h.adjacency_[i].end());
  }
  return h;
}

Graph Graph::disjoint_union(const Graph& other) const {
  Graph g = *this;
  const int shift = vertex_count();
  for (const auto& adj : other.adjacency_) {
    auto& out = g.adjacency_.emplace_back();
    for (Vertex w : adj) out.push_back(w + shift);
  }
  return g;
}

LabelMultiset::LabelMultiset(std::vector<Label> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
  for (Label v : values_) {
    if (v < 1) throw InputError("labels must be positive integers, got " + std::to_string(v));
    if (v >= kLabelSumLimit - sum_) throw InputError("label sum exceeds 2^62");
    sum_ += v;
    ++counts_[v];
  }
}

LabelMultiset LabelMultiset::from_counts(std::span<const std::pair<Label, std::size_t>> counts) {
  std::vector<Label> values;
  for (auto [value, count] : counts) {
    if (count > (std::size_t{1} << 32)) throw InputError("label multiplicity too large");
    values.insert(values.end(), count, value);
  }
  return LabelMultiset(std::move(values));
}

std::size_t LabelMultiset::count(Label value) const {
  auto it = counts_.find(value);
  return it == counts_.end() ? 0 : it->second;
}

std::vector<Label> LabelMultiset::distinct() const {
  std::vector<Label> out;
  out.reserve(counts_.size());
  for (const auto& [value, count] : counts_) out.push_back(value);
  return out;
}

bool LabelMultiset::contains(const LabelMultiset& sub) const {
  for (const auto& [value, count] : sub.counts_) {
    if (this->count(value) < count) return false;
  }
  return true;
}

LabelMultiset LabelMultiset::minus(const LabelMultiset& sub) const {
  if (!contains(sub)) throw InputError("multiset difference of a non-contained multiset");
  std::vector<Label> out;
  out.reserve(values_.size() - sub.values_.size());
  std::set_difference(values_.begin(), values_.end(), sub.values_.begin(), sub.values_.end(),
                      std::back_inserter(out));
  return LabelMultiset(std::move(out));
}

LabelMultiset LabelMultiset::merged(const LabelMultiset& other) const {
  std::vector<Label> out(values_);
  out.insert(out.end(), other.values_.begin(), other.values_.end());
  return LabelMultiset(std::move(out));
}

LabelMultiset multiset_of(std::span<const Label> labels) {
  return LabelMultiset(std::vector<Label>(labels.begin(), labels.end()));
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Fair:
      return "fair";
    case Verdict::Unfair:
      return "unfair";
    case Verdict::Refused:
      return "refused";
  }
  return "?";
}

Label neighborhood_sum(const Graph& g, std::span<const Label> labeling, Vertex v) {
  if (labeling.size() != static_cast<std::size_t>(g.vertex_count())) {
    throw InputError("labeling length does not match the vertex count");
  }
  Label sum = 0;
  for (Vertex u : g.neighbors(v)) sum += labeling[u];
  return sum;
}

std::optional<Label> verify(const Graph& g, const LabelMultiset& s, std::span<const Label> labeling) {
  if (labeling.size() != static_cast<std::size_t>(g.vertex_count())) {
    throw InputError("labeling has " + std::to_string(labeling.size()) + " entries for " +
                     std::to_string(g.vertex_count()) + " vertices");
  }
  std::vector<Label> sorted(labeling.begin(), labeling.end());
  std::sort(sorted.begin(), sorted.end());
  if (!std::equal(sorted.begin(), sorted.end(), s.values().begin(), s.values().end())) {
    return std::nullopt;
  }
  if (g.vertex_count() == 0) return kVacuousConstant;
  // Isolated vertices see 0, so a graph mixing isolated and non-isolated
  // vertices never verifies; an edgeless graph verifies vacuously.
  const Label k = neighborhood_sum(g, labeling, 0);
  for (Vertex v = 1; v < g.vertex_count(); ++v) {
    if (neighborhood_sum(g, labeling, v) != k) return std::nullopt;
  }
  return k;
}

namespace {

// Bounded enumeration of the sums of all size-d sub-multisets of `s`.
// Returns nullopt when more than `limit` partial states would be visited.
std::optional<std::set<Label>> subset_sums_of_size(const LabelMultiset& s, int d, std::size_t limit) {
  std::vector<std::pair<Label, std::size_t>> items(s.counts().begin(), s.counts().end());
  std::set<Label> sums;
  std::size_t visited = 0;
  bool overflow = false;
  auto rec = [&](auto&& self, std::size_t i, int left, Label acc) -> void {
    if (overflow) return;
    if (++visited > limit) {
      overflow = true;
      return;
    }
    if (left == 0) {
      sums.insert(acc);
      return;
    }
    if (i == items.size()) return;
    const auto [value, count] = items[i];
    const int take_max = static_cast<int>(std::min<std::size_t>(count, static_cast<std::size_t>(left)));
    for (int take = take_max; take >= 0; --take) self(self, i + 1, left - take, acc + value * take);
  };
  rec(rec, 0, d, 0);
  if (overflow) return std::nullopt;
  return sums;
}

}  // namespace

std::vector<Label> fairness_constant_candidates(const Graph& g, std::span<const Vertex> component,
                                                const LabelMultiset& s) {
  if (component.empty()) return {};
  std::set<int> degrees;
  for (Vertex v : component) {
    if (g.degree(v) == 0) throw InputError("fairness constant candidates need a graph without isolated vertices");
    degrees.insert(g.degree(v));
  }
  if (static_cast<std::size_t>(*degrees.rbegin()) > s.size()) return {};

  // Every vertex of degree d sees d labels of s, so k lies between the sum
  // of the d smallest and the d largest labels.
  Label lo = 0, hi = kLabelSumLimit;
  auto vals = s.values();
  for (int d : degrees) {
    Label small = std::accumulate(vals.begin(), vals.begin() + d, Label{0});
    Label large = std::accumulate(vals.end() - d, vals.end(), Label{0});
    lo = std::max(lo, small);
    hi = std::min(hi, large);
  }
  if (lo > hi) return {};

  std::vector<Label> out;
  constexpr std::size_t kEnumerationLimit = 1u << 21;
  const int min_degree = *degrees.begin();
  if (auto sums = subset_sums_of_size(s, min_degree, kEnumerationLimit)) {
    // A vertex of minimum degree sees exactly min_degree labels of s; for a
    // pendant vertex this is the "neighbour is labeled k" restriction.
    for (Label k : *sums) {
      if (k >= lo && k <= hi) out.push_back(k);
    }
  } else {
    if (static_cast<std::uint64_t>(hi - lo) >= kEnumerationLimit) {
      throw RefusalError("fairness constant candidate space too large");
    }
    for (Label k = lo; k <= hi; ++k) out.push_back(k);
  }
  return out;
}

std::vector<Label> fairness_constant_candidates(const Graph& g, const LabelMultiset& s) {
  if (s.size() != static_cast<std::size_t>(g.vertex_count())) {
    throw InputError("multiset size does not match the vertex count");
  }
  std::vector<Vertex> all(static_cast<std::size_t>(g.vertex_count()));
  std::iota(all.begin(), all.end(), 0);
  auto out = fairness_constant_candidates(g, all, s);
  if (auto r = g.regular_degree()) {
    // r-regular: summing all neighbourhood equations gives n*k = r*sum(S).
    const __int128 n = g.vertex_count();
    const __int128 total = static_cast<__int128>(*r) * s.sum();
    std::vector<Label> only;
    if (total % n == 0 && std::binary_search(out.begin(), out.end(), static_cast<Label>(total / n))) {
      only.push_back(static_cast<Label>(total / n));
    }
    return only;
  }
  return out;
}

}  // namespace fairnet
