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

// Graphs, label multisets, labelings and certificates, plus the verifier
// every solver in the library is checked against.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fairnet {

using Vertex = int;
using Label = std::int64_t;
using Labeling = std::vector<Label>;
using Edge = std::pair<Vertex, Vertex>;

/// Fairness constant reported for graphs without edges: no vertex has a
/// neighbourhood, so there is no constraint to satisfy.
inline constexpr Label kVacuousConstant = 0;

/// Label multisets whose sum reaches this bound are rejected so that every
/// neighbourhood sum fits in a signed 64-bit integer.
inline constexpr Label kLabelSumLimit = Label{1} << 62;

/// Malformed input: wrong sizes, out-of-range ids, non-positive labels.
/// Never used to signal "not fair".
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by search routines when their deadline passes.
class TimeoutError : public std::runtime_error {
 public:
  TimeoutError() : std::runtime_error("deadline exceeded") {}
};

/// A resource cap was hit (oracle size cap, brute-force cap, oversized
/// candidate space). Distinct from both "fair" and "unfair".
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  explicit Deadline(Clock::time_point at) : at_(at) {}
  static Deadline after(std::chrono::duration<double> d) {
    return Deadline(Clock::now() + std::chrono::duration_cast<Clock::duration>(d));
  }

  bool expired() const { return at_ && Clock::now() >= *at_; }
  void check() const {
    if (expired()) throw TimeoutError();
  }
  // Cheap variant for hot loops: only reads the clock every 1024 calls.
  void tick() const {
    if (at_ && (++ticks_ & 1023u) == 0) check();
  }

 private:
  std::optional<Clock::time_point> at_;
  mutable std::uint32_t ticks_ = 0;
};

/// Simple undirected graph with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int vertex_count);

  /// Validates endpoints, rejects self-loops and repeated edges.
  static Graph from_edges(int vertex_count, std::span<const Edge> edges);

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  std::span<const Vertex> neighbors(Vertex v) const;
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
  int max_degree() const;
  int min_degree() const;
  std::size_t edge_count() const;
  bool has_edge(Vertex u, Vertex v) const;
  bool is_edgeless() const { return edge_count() == 0; }
  bool has_isolated_vertex() const;
  /// Common degree if every vertex has the same degree.
  std::optional<int> regular_degree() const;

  /// Edges as (u, v) with u < v, lexicographically sorted.
  std::vector<Edge> edges() const;

  /// Subgraph induced by `vs`; vertex i of the result is vs[i].
  Graph induced(std::span<const Vertex> vs) const;

  /// Disjoint union; vertices of `other` are shifted by vertex_count().
  Graph disjoint_union(const Graph& other) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
};

/// The ranking multiset S. Values are kept sorted.
class LabelMultiset {
 public:
  LabelMultiset() = default;
  /// Throws InputError on a non-positive value or when the sum reaches
  /// kLabelSumLimit.
  explicit LabelMultiset(std::vector<Label> values);
  LabelMultiset(std::initializer_list<Label> values)
      : LabelMultiset(std::vector<Label>(values)) {}
  static LabelMultiset from_counts(std::span<const std::pair<Label, std::size_t>> counts);

  std::span<const Label> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  Label sum() const { return sum_; }
  Label min() const { return values_.front(); }
  Label max() const { return values_.back(); }

  /// Multiplicity of `value` (alpha_S(value)).
  std::size_t count(Label value) const;
  /// Number of distinct values (alpha(S)).
  std::size_t distinct_count() const { return counts_.size(); }
  std::vector<Label> distinct() const;
  const std::map<Label, std::size_t>& counts() const { return counts_; }

  bool contains(const LabelMultiset& sub) const;
  /// Multiset difference; throws InputError unless `sub` is contained.
  LabelMultiset minus(const LabelMultiset& sub) const;
  LabelMultiset merged(const LabelMultiset& other) const;

  friend bool operator==(const LabelMultiset& a, const LabelMultiset& b) {
    return a.values_ == b.values_;
  }

 private:
  std::vector<Label> values_;
  std::map<Label, std::size_t> counts_;
  Label sum_ = 0;
};

struct FairnessCertificate {
  Labeling labeling;
  /// kVacuousConstant for edgeless graphs.
  Label constant = kVacuousConstant;

  friend bool operator==(const FairnessCertificate&, const FairnessCertificate&) = default;
};

enum class Verdict { Fair, Unfair, Refused };

const char* to_string(Verdict v);

struct SolveStats {
  std::uint64_t nodes = 0;
  std::uint64_t ilp_calls = 0;
  double elapsed_ms = 0.0;
  std::vector<std::string> trace;
};

struct SolveOutcome {
  Verdict verdict = Verdict::Unfair;
  std::optional<FairnessCertificate> certificate;
  SolveStats stats;
  /// Set when verdict == Refused.
  std::string refusal_reason;

  bool fair() const { return verdict == Verdict::Fair; }
};

/// Sum of labels over N(v); 0 for an isolated vertex.
Label neighborhood_sum(const Graph& g, std::span<const Label> labeling, Vertex v);

/// Checks a labeling against (g, s). Returns the fairness constant when the
/// labels form exactly the multiset `s` and every vertex sees the same
/// neighbourhood sum; kVacuousConstant when g has no edges. Returns nullopt
/// for a labeling that is not a certificate. Throws InputError when the
/// labeling length differs from the vertex count.
std::optional<Label> verify(const Graph& g, const LabelMultiset& s, std::span<const Label> labeling);

/// Every k for which g could be s-fair (a sound superset, possibly loose).
/// Requires |s| == |V(g)| and no isolated vertices. An empty result proves
/// the instance unfair.
std::vector<Label> fairness_constant_candidates(const Graph& g, const LabelMultiset& s);

/// Same, but for a subgraph `component` of g whose labels are drawn from the
/// larger multiset `s`; used when the split of s across components is unknown.
std::vector<Label> fairness_constant_candidates(const Graph& g, std::span<const Vertex> component,
                                                const LabelMultiset& s);

LabelMultiset multiset_of(std::span<const Label> labels);

}  // namespace fairnet
