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

#include "fairnet/reductions.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace fairnet {

namespace {

std::string join(const std::vector<Label>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  return out.str();
}

Label checked_target(const ThreePartitionInstance& inst) {
  if (inst.m < 1) throw InputError("3-partition needs m >= 1");
  if (inst.w.size() != 3 * static_cast<std::size_t>(inst.m)) {
    throw InputError("3-partition needs exactly 3m elements");
  }
  Label sum = 0;
  for (Label x : inst.w) {
    if (x < 1) throw InputError("3-partition elements must be positive");
    sum += x;
  }
  if (sum % inst.m != 0) throw InputError("sum of the elements is not divisible by m");
  return sum / inst.m;
}

void add_k33(std::vector<Edge>& edges, int base) {
  for (int a = 0; a < 3; ++a) {
    for (int b = 3; b < 6; ++b) edges.emplace_back(base + a, base + b);
  }
}

// Uniform draw in [lo, hi]; modulo bias is irrelevant at these ranges.
int draw(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

Instance gen_3partition_k33(const ThreePartitionInstance& inst) {
  Label target = checked_target(inst);
  Instance out;
  out.metadata["generator"] = "3part-k33";
  out.metadata["m"] = std::to_string(inst.m);
  out.metadata["w"] = join(inst.w);
  std::vector<Label> labels = inst.w;
  std::vector<Edge> edges;
  int copies = 0;
  if (inst.m % 2 == 0) {
    copies = inst.m / 2;
    out.metadata["case"] = "even";
    out.metadata["shift"] = "0";
  } else {
    // The two padding 1s must be told apart from W, so W has to avoid 1.
    const bool shift = *std::min_element(labels.begin(), labels.end()) <= 1;
    if (shift) {
      for (Label& x : labels) ++x;
      target += 3;
    }
    labels.push_back(target - 2);
    labels.push_back(1);
    labels.push_back(1);
    copies = (inst.m + 1) / 2;
    out.metadata["case"] = "odd";
    out.metadata["shift"] = shift ? "1" : "0";
  }
  for (int c = 0; c < copies; ++c) add_k33(edges, 6 * c);
  out.graph = Graph::from_edges(6 * copies, edges);
  out.labels = LabelMultiset(std::move(labels));
  out.k = target;
  return out;
}

Instance gen_3partition_stars(const ThreePartitionInstance& inst) {
  const Label target = checked_target(inst);
  Instance out;
  out.metadata["generator"] = "3part-stars";
  out.metadata["m"] = std::to_string(inst.m);
  out.metadata["w"] = join(inst.w);
  std::vector<Edge> edges;
  for (int c = 0; c < inst.m; ++c) {
    for (int leaf = 1; leaf <= 3; ++leaf) edges.emplace_back(4 * c, 4 * c + leaf);
  }
  std::vector<Label> labels = inst.w;
  labels.insert(labels.end(), static_cast<std::size_t>(inst.m), target);
  out.graph = Graph::from_edges(4 * inst.m, edges);
  out.labels = LabelMultiset(std::move(labels));
  out.k = target;
  return out;
}

std::optional<std::vector<Triple>> brute_3partition(const ThreePartitionInstance& inst) {
  if (inst.m < 1 || inst.w.size() != 3 * static_cast<std::size_t>(inst.m)) {
    throw InputError("3-partition needs exactly 3m elements");
  }
  if (inst.w.size() > 12) throw RefusalError("brute-force 3-partition is capped at 12 elements");
  const Label sum = std::accumulate(inst.w.begin(), inst.w.end(), Label{0});
  if (sum % inst.m != 0) return std::nullopt;
  const Label target = sum / inst.m;
  std::vector<Label> w = inst.w;
  std::sort(w.begin(), w.end());
  std::vector<char> used(w.size(), 0);
  std::vector<Triple> triples;
  auto rec = [&](auto&& self) -> bool {
    std::size_t a = 0;
    while (a < w.size() && used[a]) ++a;
    if (a == w.size()) return true;
    used[a] = 1;
    for (std::size_t b = a + 1; b < w.size(); ++b) {
      if (used[b]) continue;
      used[b] = 1;
      for (std::size_t c = b + 1; c < w.size(); ++c) {
        if (used[c] || w[a] + w[b] + w[c] != target) continue;
        used[c] = 1;
        triples.push_back({w[a], w[b], w[c]});
        if (self(self)) return true;
        triples.pop_back();
        used[c] = 0;
      }
      used[b] = 0;
    }
    used[a] = 0;
    return false;
  };
  if (rec(rec)) return triples;
  return std::nullopt;
}

std::optional<std::string> validate_xsat(const XsatFormula& phi) {
  if (phi.n < 1) return "formula needs at least one variable";
  std::vector<int> occurrences(static_cast<std::size_t>(phi.n), 0);
  for (std::size_t j = 0; j < phi.clauses.size(); ++j) {
    const auto& c = phi.clauses[j];
    for (int x : c) {
      if (x < 0 || x >= phi.n) return "clause " + std::to_string(j) + " uses an unknown variable";
    }
    if (c[0] == c[1] || c[1] == c[2] || c[0] == c[2]) {
      return "clause " + std::to_string(j) + " does not have 3 distinct variables";
    }
    for (int x : c) ++occurrences[x];
  }
  for (int x = 0; x < phi.n; ++x) {
    if (occurrences[x] != 3) {
      return "variable " + std::to_string(x) + " occurs " + std::to_string(occurrences[x]) + " times, not 3";
    }
  }
  if (phi.clauses.size() != static_cast<std::size_t>(phi.n)) return "clause count differs from n";
  if (phi.n % 3 != 0) return "n not divisible by 3";
  return std::nullopt;
}

Instance gen_xsat(const XsatFormula& phi) {
  if (auto bad = validate_xsat(phi)) throw InputError("invalid formula: " + *bad);
  const int n = phi.n;
  std::vector<Edge> edges;
  for (int j = 0; j < n; ++j) {
    const int base = n + 15 * j - 1;  // base + t is gadget slot t
    auto link = [&](int a, int b) { edges.emplace_back(base + a, base + b); };
    for (int t : {2, 3, 4}) link(1, t);
    for (int t : {9, 10, 11}) link(8, t);
    for (auto [a, b] : {std::pair{2, 3}, {3, 4}, {2, 4}, {9, 10}, {10, 11}, {9, 11}}) link(a, b);
    // The two triangles below make slots 5-7 and 12-14 closed twins; the
    // gadget is not 6-regular without them.
    for (auto [a, b] : {std::pair{5, 6}, {6, 7}, {5, 7}, {12, 13}, {13, 14}, {12, 14}}) link(a, b);
    for (int a : {2, 3, 4}) {
      for (int b : {5, 6, 7}) link(a, b);
    }
    for (int a : {9, 10, 11}) {
      for (int b : {12, 13, 14}) link(a, b);
    }
    for (int t : {5, 6, 7, 12, 13, 14}) link(15, t);
    for (int x : phi.clauses[j]) {
      edges.emplace_back(x, base + 1);
      edges.emplace_back(x, base + 8);
    }
  }
  Instance out;
  out.graph = Graph::from_edges(16 * n, edges);
  if (out.graph.regular_degree() != 6) throw std::logic_error("xsat construction is not 6-regular");
  std::vector<std::pair<Label, std::size_t>> counts{{1, static_cast<std::size_t>(2 * n / 3)},
                                                     {2, static_cast<std::size_t>(15 * n)},
                                                     {4, static_cast<std::size_t>(n / 3)}};
  out.labels = LabelMultiset::from_counts(counts);
  out.k = 12;
  std::ostringstream clauses;
  for (std::size_t j = 0; j < phi.clauses.size(); ++j) {
    const auto& c = phi.clauses[j];
    clauses << (j ? ";" : "") << c[0] << ',' << c[1] << ',' << c[2];
  }
  out.metadata["generator"] = "xsat";
  out.metadata["n"] = std::to_string(n);
  out.metadata["clauses"] = clauses.str();
  return out;
}

FairnessCertificate certificate_from_xsat_assignment(const XsatFormula& phi, const std::vector<bool>& truth) {
  if (auto bad = validate_xsat(phi)) throw InputError("invalid formula: " + *bad);
  if (truth.size() != static_cast<std::size_t>(phi.n)) throw InputError("assignment size differs from n");
  for (std::size_t j = 0; j < phi.clauses.size(); ++j) {
    int trues = 0;
    for (int x : phi.clauses[j]) trues += truth[x] ? 1 : 0;
    if (trues != 1) {
      throw InputError("clause " + std::to_string(j) + " has " + std::to_string(trues) + " true variables");
    }
  }
  Labeling labels(static_cast<std::size_t>(16 * phi.n), 2);
  for (int x = 0; x < phi.n; ++x) labels[x] = truth[x] ? 4 : 1;
  const Instance inst = gen_xsat(phi);
  if (verify(inst.graph, inst.labels, labels) != 12) {
    throw std::logic_error("xsat certificate does not verify");
  }
  return FairnessCertificate{std::move(labels), 12};
}

XsatFormula planted_xsat(int n, std::uint64_t seed, std::vector<bool>* truth) {
  if (n < 3 || n % 3 != 0) throw InputError("planted formulas need n divisible by 3");
  std::vector<int> names(static_cast<std::size_t>(n));
  std::iota(names.begin(), names.end(), 0);
  std::mt19937_64 rng(seed);
  for (int i = n - 1; i > 0; --i) std::swap(names[i], names[draw(rng, 0, i)]);
  // names[0 .. n/3) are true, the rest false.
  const int t = n / 3, f = n - t;
  XsatFormula phi;
  phi.n = n;
  for (int j = 0; j < n; ++j) {
    std::array<int, 3> c{names[j / 3], names[t + (2 * j) % f], names[t + (2 * j + 1) % f]};
    std::sort(c.begin(), c.end());
    phi.clauses.push_back(c);
  }
  if (truth) {
    truth->assign(static_cast<std::size_t>(n), false);
    for (int i = 0; i < t; ++i) (*truth)[names[i]] = true;
  }
  return phi;
}

Instance gen_semimagic(const SemiMagicSpec& square) {
  const int n = square.n;
  if (n < 3) throw InputError("semi-magic squares need n >= 3");
  if (square.entries.size() != static_cast<std::size_t>(n) * n) throw InputError("semi-magic entries must be n^2");
  Label sum = 0;
  for (Label x : square.entries) {
    if (x < 1) throw InputError("semi-magic entries must be positive");
    sum += x;
  }
  const Label k = sum / n;
  std::vector<Edge> edges;
  const int cells = n * n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      edges.emplace_back(i * n + j, cells + i);
      edges.emplace_back(i * n + j, cells + n + j);
    }
  }
  std::vector<Label> labels = square.entries;
  labels.insert(labels.end(), static_cast<std::size_t>(n), k - 1);
  labels.insert(labels.end(), static_cast<std::size_t>(n), 1);
  Instance out;
  out.graph = Graph::from_edges(cells + 2 * n, edges);
  out.labels = LabelMultiset(std::move(labels));
  out.k = k;
  out.metadata["generator"] = "semimagic";
  out.metadata["n"] = std::to_string(n);
  out.metadata["entries"] = join(square.entries);
  if (sum % n != 0) {
    out.metadata["necessarily_unfair"] = "1";
    out.metadata["verdict"] = "unfair";
  }
  return out;
}

std::vector<std::vector<Label>> decode_semimagic(const SemiMagicSpec& square, const FairnessCertificate& cert) {
  const Instance inst = gen_semimagic(square);
  const Label k = *inst.k;
  const int n = square.n;
  if (cert.labeling.size() != static_cast<std::size_t>(inst.graph.vertex_count())) {
    throw InputError("certificate size does not match the semi-magic instance");
  }
  const auto got = verify(inst.graph, inst.labels, cert.labeling);
  if (!got || *got != k || cert.constant != k) throw InputError("certificate does not verify with k = sum(I)/n");
  std::vector<Label> line(cert.labeling.begin() + n * n, cert.labeling.end());
  std::vector<Label> expected(static_cast<std::size_t>(n), k - 1);
  expected.insert(expected.end(), static_cast<std::size_t>(n), 1);
  std::sort(line.begin(), line.end());
  std::sort(expected.begin(), expected.end());
  if (line != expected) throw InputError("row and column vertices do not carry k-1 and 1 n times each");
  std::vector<std::vector<Label>> grid(static_cast<std::size_t>(n), std::vector<Label>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) grid[i][j] = cert.labeling[i * n + j];
  }
  for (int i = 0; i < n; ++i) {
    Label row = 0, col = 0;
    for (int j = 0; j < n; ++j) {
      row += grid[i][j];
      col += grid[j][i];
    }
    if (row != k || col != k) throw InputError("decoded grid has a line not summing to k");
  }
  return grid;
}

Graph gen_circulant(int n, int r) {
  if (r <= 0 || r % 2 != 0 || r >= n) throw InputError("circulant needs an even degree r with 0 < r < n");
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) {
    for (int d = 1; d <= r / 2; ++d) {
      const int w = (v + d) % n;
      edges.emplace_back(std::min(v, w), std::max(v, w));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph::from_edges(n, edges);
}

const char* to_string(RandomShape s) {
  switch (s) {
    case RandomShape::Gnp:
      return "gnp";
    case RandomShape::Stars:
      return "stars";
    case RandomShape::Cycles:
      return "cycles";
    case RandomShape::Bipartite:
      return "bipartite";
    case RandomShape::Circulant:
      return "circulant";
  }
  return "?";
}

std::optional<RandomShape> parse_random_shape(std::string_view name) {
  for (auto s : {RandomShape::Gnp, RandomShape::Stars, RandomShape::Cycles, RandomShape::Bipartite,
                 RandomShape::Circulant}) {
    if (name == to_string(s)) return s;
  }
  return std::nullopt;
}

Instance random_instance(RandomShape shape, int n, int max_label, std::uint64_t seed) {
  if (n < 1) throw InputError("random instances need n >= 1");
  if (max_label < 1) throw InputError("random instances need maxlabel >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  switch (shape) {
    case RandomShape::Gnp: {
      const int p = draw(rng, 25, 75);
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          if (draw(rng, 1, 100) <= p) edges.emplace_back(u, v);
        }
      }
      break;
    }
    case RandomShape::Stars: {
      if (n < 2) throw InputError("stars need n >= 2");
      int next = 0, last_center = 0;
      while (n - next >= 2) {
        const int leaves = draw(rng, 1, std::min(4, n - next - 1));
        last_center = next;
        for (int i = 1; i <= leaves; ++i) edges.emplace_back(next, next + i);
        next += leaves + 1;
      }
      if (next < n) edges.emplace_back(last_center, next);
      break;
    }
    case RandomShape::Cycles: {
      if (n < 3) throw InputError("cycles need n >= 3");
      int next = 0;
      while (next < n) {
        const int rest = n - next;
        int len = draw(rng, 3, rest);
        if (rest - len == 1 || rest - len == 2) len = rest;
        for (int i = 0; i < len; ++i) {
          const int a = next + i, b = next + (i + 1) % len;
          edges.emplace_back(std::min(a, b), std::max(a, b));
        }
        next += len;
      }
      break;
    }
    case RandomShape::Bipartite: {
      if (n < 2) throw InputError("bipartite graphs need n >= 2");
      const int a = draw(rng, 1, n - 1);
      for (int u = 0; u < a; ++u) {
        for (int v = a; v < n; ++v) {
          if (draw(rng, 1, 100) <= 60) edges.emplace_back(u, v);
        }
      }
      break;
    }
    case RandomShape::Circulant: {
      if (n < 3) throw InputError("circulants need n >= 3");
      const int r = 2 * draw(rng, 1, (n - 1) / 2);
      const Graph g = gen_circulant(n, r);
      edges = g.edges();
      break;
    }
  }
  std::vector<Label> labels;
  for (int i = 0; i < n; ++i) labels.push_back(draw(rng, 1, max_label));
  Instance out;
  out.graph = Graph::from_edges(n, edges);
  out.labels = LabelMultiset(std::move(labels));
  out.metadata["generator"] = "random";
  out.metadata["shape"] = to_string(shape);
  out.metadata["seed"] = std::to_string(seed);
  out.metadata["maxlabel"] = std::to_string(max_label);
  return out;
}

}  // namespace fairnet
