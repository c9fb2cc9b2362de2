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

#include "fairnet/structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

namespace fairnet {

std::vector<VertexSet> connected_components(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<VertexSet> out;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    VertexSet comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (Vertex w : g.neighbors(comp[i])) {
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

TwinPartition twin_classes(const Graph& g, std::span<const Vertex> vs) {
  std::map<std::vector<Vertex>, VertexSet> by_open;
  for (Vertex v : vs) {
    auto nb = g.neighbors(v);
    by_open[std::vector<Vertex>(nb.begin(), nb.end())].push_back(v);
  }
  std::vector<std::pair<VertexSet, TwinKind>> groups;
  std::map<std::vector<Vertex>, VertexSet> by_closed;
  for (auto& [nb, members] : by_open) {
    if (members.size() > 1) {
      groups.emplace_back(std::move(members), TwinKind::False);
      continue;
    }
    const Vertex v = members.front();
    std::vector<Vertex> closed(nb);
    closed.insert(std::upper_bound(closed.begin(), closed.end(), v), v);
    by_closed[std::move(closed)].push_back(v);
  }
  for (auto& [nb, members] : by_closed) {
    const TwinKind kind = members.size() > 1 ? TwinKind::True : TwinKind::False;
    groups.emplace_back(std::move(members), kind);
  }
  for (auto& [members, kind] : groups) std::sort(members.begin(), members.end());
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.first.front() < b.first.front(); });
  TwinPartition out;
  for (auto& [members, kind] : groups) {
    out.classes.push_back(std::move(members));
    out.kinds.push_back(kind);
  }
  return out;
}

TwinPartition twin_classes(const Graph& g) {
  VertexSet all(static_cast<std::size_t>(g.vertex_count()));
  std::iota(all.begin(), all.end(), 0);
  return twin_classes(g, all);
}

const char* to_string(Shape s) {
  switch (s) {
    case Shape::EdgelessOnly:
      return "edgeless";
    case Shape::HasIsolatedMixed:
      return "isolated-mixed";
    case Shape::DisjointStars:
      return "disjoint-stars";
    case Shape::DisjointCycles:
      return "disjoint-cycles";
    case Shape::Regular:
      return "regular";
    case Shape::Forest:
      return "forest";
    case Shape::General:
      return "general";
  }
  return "?";
}

const char* to_string(ComponentShape s) {
  switch (s) {
    case ComponentShape::Isolated:
      return "isolated";
    case ComponentShape::Star:
      return "star";
    case ComponentShape::Cycle:
      return "cycle";
    case ComponentShape::Tree:
      return "tree";
    case ComponentShape::Regular:
      return "regular";
    case ComponentShape::General:
      return "general";
  }
  return "?";
}

namespace {

std::size_t component_edges(const Graph& g, std::span<const Vertex> comp) {
  std::size_t twice = 0;
  for (Vertex v : comp) twice += static_cast<std::size_t>(g.degree(v));
  return twice / 2;
}

bool component_regular(const Graph& g, std::span<const Vertex> comp, int d) {
  return std::all_of(comp.begin(), comp.end(), [&](Vertex v) { return g.degree(v) == d; });
}

}  // namespace

std::optional<Star> as_star(const Graph& g, std::span<const Vertex> comp) {
  if (comp.size() < 2 || component_edges(g, comp) != comp.size() - 1) return std::nullopt;
  for (Vertex v : comp) {
    if (static_cast<std::size_t>(g.degree(v)) == comp.size() - 1) {
      Star star{v, {}};
      for (Vertex w : comp) {
        if (w != v) star.leaves.push_back(w);
      }
      return star;
    }
  }
  return std::nullopt;
}

std::optional<VertexSet> as_cycle(const Graph& g, std::span<const Vertex> comp) {
  if (comp.size() < 3 || !component_regular(g, comp, 2)) return std::nullopt;
  VertexSet order{comp.front()};
  Vertex prev = comp.front();
  Vertex cur = g.neighbors(prev)[0];
  while (cur != comp.front()) {
    order.push_back(cur);
    auto nb = g.neighbors(cur);
    Vertex next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  }
  if (order.size() != comp.size()) return std::nullopt;
  return order;
}

ShapeReport classify(const Graph& g) {
  ShapeReport report;
  report.components = connected_components(g);
  report.regular_degree = g.regular_degree();
  for (const auto& comp : report.components) {
    ComponentShape cs = ComponentShape::General;
    if (comp.size() == 1) {
      cs = ComponentShape::Isolated;
    } else if (as_star(g, comp)) {
      cs = ComponentShape::Star;
    } else if (as_cycle(g, comp)) {
      cs = ComponentShape::Cycle;
    } else if (component_edges(g, comp) == comp.size() - 1) {
      cs = ComponentShape::Tree;
    } else if (component_regular(g, comp, g.degree(comp.front()))) {
      cs = ComponentShape::Regular;
    }
    report.component_shapes.push_back(cs);
  }
  auto all = [&](auto pred) {
    return std::all_of(report.component_shapes.begin(), report.component_shapes.end(), pred);
  };
  auto any = [&](ComponentShape s) {
    return std::find(report.component_shapes.begin(), report.component_shapes.end(), s) !=
           report.component_shapes.end();
  };
  if (g.is_edgeless()) {
    report.shape = Shape::EdgelessOnly;
  } else if (any(ComponentShape::Isolated)) {
    report.shape = Shape::HasIsolatedMixed;
  } else if (all([](ComponentShape s) { return s == ComponentShape::Star; })) {
    report.shape = Shape::DisjointStars;
  } else if (all([](ComponentShape s) { return s == ComponentShape::Cycle; })) {
    report.shape = Shape::DisjointCycles;
  } else if (report.regular_degree) {
    report.shape = Shape::Regular;
  } else if (all([](ComponentShape s) { return s == ComponentShape::Star || s == ComponentShape::Tree; })) {
    report.shape = Shape::Forest;
  } else {
    report.shape = Shape::General;
  }
  return report;
}

bool is_forest(const Graph& g, std::span<const Vertex> removed) {
  const int n = g.vertex_count();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<char> gone(static_cast<std::size_t>(n), 0);
  for (Vertex v : removed) gone[v] = 1;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [u, v] : g.edges()) {
    if (gone[u] || gone[v]) continue;
    int a = find(u), b = find(v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

bool is_vertex_cover(const Graph& g, std::span<const Vertex> cover) {
  std::vector<char> in(static_cast<std::size_t>(g.vertex_count()), 0);
  for (Vertex v : cover) in[v] = 1;
  for (auto [u, v] : g.edges()) {
    if (!in[u] && !in[v]) return false;
  }
  return true;
}

namespace {

// Deletion-branching on a shortest cycle. `alive` marks vertices still in
// the graph; `locked` vertices may not be deleted.
class FvsSearch {
 public:
  FvsSearch(const Graph& g, const Deadline& deadline)
      : g_(g), n_(g.vertex_count()), alive_(static_cast<std::size_t>(n_), 1),
        locked_(static_cast<std::size_t>(n_), 0), deadline_(deadline) {}

  void remove(Vertex v) { alive_[v] = 0; }
  void restore(Vertex v) { alive_[v] = 1; }
  void lock(Vertex v) { locked_[v] = 1; }

  bool feasible(int budget) {
    deadline_.tick();
    const auto saved = alive_;
    peel();
    const auto cycle = shortest_cycle();
    bool ok = false;
    if (cycle.empty()) {
      ok = true;
    } else if (budget > 0) {
      for (Vertex v : cycle) {
        if (locked_[v]) continue;
        alive_[v] = 0;
        ok = feasible(budget - 1);
        alive_[v] = 1;
        if (ok) break;
      }
    }
    alive_ = saved;
    return ok;
  }

 private:
  int live_degree(Vertex v) const {
    int d = 0;
    for (Vertex w : g_.neighbors(v)) d += alive_[w];
    return d;
  }

  // Vertices of live degree <= 1 lie on no cycle.
  void peel() {
    std::vector<Vertex> stack;
    for (Vertex v = 0; v < n_; ++v) {
      if (alive_[v] && live_degree(v) <= 1) stack.push_back(v);
    }
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      if (!alive_[v]) continue;
      alive_[v] = 0;
      for (Vertex w : g_.neighbors(v)) {
        if (alive_[w] && live_degree(w) <= 1) stack.push_back(w);
      }
    }
  }

  std::vector<Vertex> shortest_cycle() const {
    std::vector<Vertex> best;
    std::vector<int> dist(static_cast<std::size_t>(n_)), parent(static_cast<std::size_t>(n_));
    for (Vertex s = 0; s < n_; ++s) {
      if (!alive_[s]) continue;
      std::fill(dist.begin(), dist.end(), -1);
      dist[s] = 0;
      parent[s] = -1;
      std::queue<Vertex> q;
      q.push(s);
      bool found = false;
      while (!q.empty() && !found) {
        Vertex u = q.front();
        q.pop();
        if (!best.empty() && 2 * dist[u] + 1 >= static_cast<int>(best.size())) break;
        for (Vertex w : g_.neighbors(u)) {
          if (!alive_[w] || w == parent[u]) continue;
          if (dist[w] < 0) {
            dist[w] = dist[u] + 1;
            parent[w] = u;
            q.push(w);
            continue;
          }
          auto cycle = close_cycle(parent, u, w);
          if (best.empty() || cycle.size() < best.size()) best = std::move(cycle);
          found = true;
          break;
        }
      }
    }
    std::sort(best.begin(), best.end());
    return best;
  }

  static std::vector<Vertex> close_cycle(const std::vector<int>& parent, Vertex u, Vertex w) {
    std::vector<Vertex> up_u, up_w;
    for (int x = u; x >= 0; x = parent[x]) up_u.push_back(x);
    for (int x = w; x >= 0; x = parent[x]) up_w.push_back(x);
    // Strip the common ancestor chain, keeping the lowest common ancestor once.
    while (up_u.size() > 1 && up_w.size() > 1 && up_u[up_u.size() - 2] == up_w[up_w.size() - 2]) {
      up_u.pop_back();
      up_w.pop_back();
    }
    up_w.pop_back();
    up_u.insert(up_u.end(), up_w.begin(), up_w.end());
    return up_u;
  }

  const Graph& g_;
  int n_;
  std::vector<char> alive_;
  std::vector<char> locked_;
  const Deadline& deadline_;
};

class VcSearch {
 public:
  VcSearch(const Graph& g, const Deadline& deadline)
      : g_(g), edges_(g.edges()), in_(static_cast<std::size_t>(g.vertex_count()), 0),
        locked_(static_cast<std::size_t>(g.vertex_count()), 0), deadline_(deadline) {}

  void take(Vertex v) { in_[v] = 1; }
  void lock(Vertex v) { locked_[v] = 1; }
  void untake(Vertex v) { in_[v] = 0; }

  bool feasible(int budget) {
    deadline_.tick();
    std::size_t uncovered = 0;
    const Edge* first = nullptr;
    for (const auto& e : edges_) {
      if (in_[e.first] || in_[e.second]) continue;
      if (!first) first = &e;
      ++uncovered;
    }
    if (!first) return true;
    if (budget == 0) return false;
    // Each chosen vertex covers at most max-degree edges.
    if (uncovered > static_cast<std::size_t>(budget) * static_cast<std::size_t>(g_.max_degree())) return false;
    for (Vertex v : {first->first, first->second}) {
      if (locked_[v]) continue;
      in_[v] = 1;
      const bool ok = feasible(budget - 1);
      in_[v] = 0;
      if (ok) return true;
    }
    return false;
  }

 private:
  const Graph& g_;
  std::vector<Edge> edges_;
  std::vector<char> in_;
  std::vector<char> locked_;
  const Deadline& deadline_;
};

// Smallest k with a solution, then the lexicographically smallest solution
// of that size: try each vertex in ascending order, keep it if a solution
// extending the current choice still exists, otherwise forbid it.
template <class Search>
VertexSet lexicographic_minimum(const Graph& g, const Deadline& deadline) {
  Search search(g, deadline);
  int k = 0;
  while (!search.feasible(k)) ++k;
  VertexSet chosen;
  for (Vertex v = 0; v < g.vertex_count() && static_cast<int>(chosen.size()) < k; ++v) {
    if constexpr (std::is_same_v<Search, FvsSearch>) {
      search.remove(v);
      if (search.feasible(k - static_cast<int>(chosen.size()) - 1)) {
        chosen.push_back(v);
      } else {
        search.restore(v);
        search.lock(v);
      }
    } else {
      search.take(v);
      if (search.feasible(k - static_cast<int>(chosen.size()) - 1)) {
        chosen.push_back(v);
      } else {
        search.untake(v);
        search.lock(v);
      }
    }
  }
  return chosen;
}

}  // namespace

VertexSet minimum_feedback_vertex_set(const Graph& g, const Deadline& deadline) {
  return lexicographic_minimum<FvsSearch>(g, deadline);
}

VertexSet minimum_vertex_cover(const Graph& g, const Deadline& deadline) {
  return lexicographic_minimum<VcSearch>(g, deadline);
}

}  // namespace fairnet
