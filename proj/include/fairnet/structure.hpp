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

// Structural analysis consumed by the solvers: components, twin classes,
// shape tags and exact minimum feedback vertex set / vertex cover.

#include <optional>
#include <span>
#include <vector>

#include "fairnet/core.hpp"

namespace fairnet {

using VertexSet = std::vector<Vertex>;

/// Maximal connected vertex sets, each sorted, ordered by smallest member.
std::vector<VertexSet> connected_components(const Graph& g);

enum class TwinKind {
  /// Identical open neighbourhoods; labels may be swapped freely. Singleton
  /// classes carry this kind.
  False,
  /// Identical closed neighbourhoods; every certificate labels them equally.
  True,
};

struct TwinPartition {
  std::vector<VertexSet> classes;
  std::vector<TwinKind> kinds;

  std::size_t size() const { return classes.size(); }
};

/// Partitions `vs` into false-twin classes; vertices left alone by that are
/// then grouped into true-twin classes. Classes are sorted internally and
/// ordered by smallest member. Neighbourhoods are compared in the whole g.
TwinPartition twin_classes(const Graph& g, std::span<const Vertex> vs);
TwinPartition twin_classes(const Graph& g);

enum class Shape { EdgelessOnly, HasIsolatedMixed, DisjointStars, DisjointCycles, Regular, Forest, General };
enum class ComponentShape { Isolated, Star, Cycle, Tree, Regular, General };

const char* to_string(Shape s);
const char* to_string(ComponentShape s);

struct ShapeReport {
  Shape shape = Shape::General;
  /// Set whenever the whole graph is regular, independently of `shape`
  /// (a union of cycles is tagged DisjointCycles with regular_degree 2).
  std::optional<int> regular_degree;
  std::vector<VertexSet> components;
  std::vector<ComponentShape> component_shapes;
};

ShapeReport classify(const Graph& g);

/// A star component: K_{1,n}. For K_{1,1} the smaller id is the center.
struct Star {
  Vertex center = 0;
  VertexSet leaves;
};

/// Star view of a component, if it is one.
std::optional<Star> as_star(const Graph& g, std::span<const Vertex> component);

/// The component's vertices in cyclic order starting at its smallest vertex,
/// if the component is a cycle.
std::optional<VertexSet> as_cycle(const Graph& g, std::span<const Vertex> component);

/// Exact minimum feedback vertex set. Among minimum sets the one whose sorted
/// id sequence is lexicographically smallest is returned. Throws
/// TimeoutError if `deadline` passes.
VertexSet minimum_feedback_vertex_set(const Graph& g, const Deadline& deadline = {});

/// Exact minimum vertex cover with the same tie-break.
VertexSet minimum_vertex_cover(const Graph& g, const Deadline& deadline = {});

bool is_forest(const Graph& g, std::span<const Vertex> removed = {});
bool is_vertex_cover(const Graph& g, std::span<const Vertex> cover);

}  // namespace fairnet
