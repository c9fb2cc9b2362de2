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

// Closed forms and propagation for stars, cycles, star forests and forests
// with a labeled boundary.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fairnet/core.hpp"
#include "fairnet/structure.hpp"

namespace fairnet {

/// Labels on a subset of the vertices of a graph. Label 0 means "unassigned".
class PartialAssignment {
 public:
  PartialAssignment() = default;
  explicit PartialAssignment(int vertex_count) : labels_(static_cast<std::size_t>(vertex_count), 0) {}

  int vertex_count() const { return static_cast<int>(labels_.size()); }
  bool contains(Vertex v) const { return labels_.at(static_cast<std::size_t>(v)) != 0; }
  Label at(Vertex v) const;
  void assign(Vertex v, Label label);
  void erase(Vertex v) { labels_.at(static_cast<std::size_t>(v)) = 0; }
  VertexSet domain() const;
  /// Labels of the domain, in vertex order.
  std::vector<Label> values() const;
  std::span<const Label> raw() const { return labels_; }
  std::span<Label> raw() { return labels_; }

  friend bool operator==(const PartialAssignment&, const PartialAssignment&) = default;

 private:
  std::vector<Label> labels_;
};

/// K_{1,n} with the center at vertex 0: fair with constant k iff k is in s
/// and the remaining labels sum to k.
SolveOutcome solve_single_star(int leaves, const LabelMultiset& s, Label k);

/// C_n with vertex i adjacent to i-1 and i+1 (mod n). For n not divisible
/// by 4 all labels must equal k/2; otherwise s must be the pattern
/// a, b, k-a, k-b repeated n/4 times.
SolveOutcome solve_cycle(int n, const LabelMultiset& s, Label k);

/// Counting program for a union of stars: centers take k, the
/// leaf sets of each size class pick label multisets summing to k, and an
/// integer program matches the usage counts against s minus the centers.
/// Every component of g must be a star.
SolveOutcome solve_disjoint_stars(const Graph& g, const LabelMultiset& s, Label k,
                                  const Deadline& deadline = {});

/// Leaves of the forest g[f_vertices]: vertices with at most one neighbour
/// inside it (single-vertex trees included).
VertexSet forest_leaves(const Graph& g, std::span<const Vertex> f_vertices);

/// N_G(F): vertices outside F with a neighbour in F.
VertexSet outer_neighborhood(const Graph& g, std::span<const Vertex> f_vertices);

/// Precomputed bottom-up propagation plan for an induced forest. Each tree
/// is rooted at its smallest non-leaf vertex; a non-leaf vertex's label is
/// forced by the neighbourhood equation of one child (a leaf child when it
/// has one, otherwise its smallest child).
class ForestExtender {
 public:
  ForestExtender(const Graph& g, std::span<const Vertex> f_vertices);

  /// Fills the non-leaf vertices of F in `labels` (which must already hold
  /// N_G(F) and the leaves of F). Returns false when a forced label is not
  /// positive or when the neighbourhood equation of a non-root vertex of F
  /// fails. Trees without a non-leaf vertex only get their equations checked.
  bool extend(std::span<Label> labels, Label k) const;

  const VertexSet& leaves() const { return leaves_; }
  const VertexSet& internal() const { return internal_; }
  const VertexSet& outer() const { return outer_; }

 private:
  struct Step {
    Vertex target;
    Vertex witness;
  };

  const Graph* g_;
  VertexSet vertices_;
  VertexSet leaves_;
  VertexSet internal_;
  VertexSet outer_;
  std::vector<Step> steps_;
  VertexSet checked_;
};

/// One-shot forest extension. `boundary` must be defined exactly on
/// N_G(F) and leaves(F). Returns nullopt on inconsistency.
std::optional<PartialAssignment> extend_forest(const Graph& g, std::span<const Vertex> f_vertices,
                                               const PartialAssignment& boundary, Label k);

/// Tries every map from N_G(F) and leaves(F) to the distinct values of s,
/// extends each over F and emits the extensions whose label multiset is
/// contained in s. The visitor returns false to stop early. Returns the
/// number of extensions emitted.
std::size_t enumerate_boundary_extensions(const Graph& g, std::span<const Vertex> f_vertices,
                                          const LabelMultiset& s, Label k,
                                          const std::function<bool(const PartialAssignment&)>& visit,
                                          const Deadline& deadline = {});

namespace detail {

/// Star-forest core shared with the fvs solver: labels `stars` inside
/// `labels` using exactly the multiset `s`.
bool label_disjoint_stars(std::span<const Star> stars, const LabelMultiset& s, Label k, std::span<Label> labels,
                          SolveStats& stats, const Deadline& deadline);

}  // namespace detail

}  // namespace fairnet
