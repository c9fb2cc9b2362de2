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

#include "fairnet/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "fairnet/ilp.hpp"
#include "fairnet/special.hpp"

namespace fairnet {

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Auto:
      return "auto";
    case Algorithm::Oracle:
      return "oracle";
    case Algorithm::FvsAlphaDelta:
      return "fvs-alpha-delta";
    case Algorithm::VcAlpha:
      return "vc-alpha";
    case Algorithm::RegularFvs:
      return "regular-fvs";
    case Algorithm::VcDelta:
      return "vc-delta";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (auto a : {Algorithm::Auto, Algorithm::Oracle, Algorithm::FvsAlphaDelta, Algorithm::VcAlpha,
                 Algorithm::RegularFvs, Algorithm::VcDelta}) {
    if (name == to_string(a)) return a;
  }
  return std::nullopt;
}

int default_oracle_cap() {
  if (const char* env = std::getenv("FAIRNET_ORACLE_CAP")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 1000) return static_cast<int>(v);
  }
  return 12;
}

namespace {

using Clock = std::chrono::steady_clock;

void require_sizes(const Graph& g, const LabelMultiset& s) {
  if (s.size() != static_cast<std::size_t>(g.vertex_count())) {
    throw InputError("multiset has " + std::to_string(s.size()) + " labels for " +
                     std::to_string(g.vertex_count()) + " vertices");
  }
}

// Runs `body`, turning timeouts and caps into a refusal and recording time.
SolveOutcome guarded(const std::function<SolveOutcome()>& body) {
  const auto start = Clock::now();
  SolveOutcome out;
  try {
    out = body();
  } catch (const TimeoutError&) {
    out = SolveOutcome{};
    out.verdict = Verdict::Refused;
    out.refusal_reason = "timeout";
  } catch (const RefusalError& e) {
    out = SolveOutcome{};
    out.verdict = Verdict::Refused;
    out.refusal_reason = e.what();
  }
  out.stats.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return out;
}

void accept(SolveOutcome& out, const Graph& g, const LabelMultiset& s, Labeling labels, Label k) {
  const auto got = verify(g, s, labels);
  if (!got || *got != k) throw std::logic_error("solver produced a labeling that does not verify");
  out.verdict = Verdict::Fair;
  out.certificate = FairnessCertificate{std::move(labels), k};
}

// Edgeless graphs are vacuously fair; a graph mixing isolated and
// non-isolated vertices cannot be fair (isolated sums are 0, the others
// positive).
std::optional<SolveOutcome> isolated_rule(const Graph& g, const LabelMultiset& s) {
  SolveOutcome out;
  if (g.is_edgeless()) {
    out.verdict = Verdict::Fair;
    out.certificate = FairnessCertificate{Labeling(s.values().begin(), s.values().end()), kVacuousConstant};
    out.stats.trace.push_back("edgeless: vacuously fair");
    return out;
  }
  if (g.has_isolated_vertex()) {
    out.verdict = Verdict::Unfair;
    out.stats.trace.push_back("isolated vertex next to an edge");
    return out;
  }
  return std::nullopt;
}

std::vector<std::size_t> counts_of(const LabelMultiset& s, const std::vector<Label>& values) {
  std::vector<std::size_t> out;
  for (Label v : values) out.push_back(s.count(v));
  return out;
}

// Smallest and largest value still available, or {0, 0} when none is left.
std::pair<Label, Label> remaining_range(const std::vector<Label>& values, const std::vector<std::size_t>& left) {
  Label lo = 0, hi = 0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (left[j] == 0) continue;
    if (lo == 0) lo = values[j];
    hi = values[j];
  }
  return {lo, hi};
}

// Trace line that is not repeated for every candidate constant.
void note(SolveStats& stats, std::string line) {
  if (stats.trace.empty() || stats.trace.back() != line) stats.trace.push_back(std::move(line));
}

// A component with a pendant vertex is fair only if it is a star: the
// pendant's neighbour carries k, so every other neighbour of it is a leaf.
bool pendant_outside_star(const Graph& g, const std::vector<VertexSet>& comps) {
  for (const auto& comp : comps) {
    if (comp.size() < 2 || as_star(g, comp)) continue;
    for (Vertex v : comp) {
      if (g.degree(v) == 1) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------- oracle

class OracleSearch {
 public:
  OracleSearch(const Graph& g, const LabelMultiset& s, std::vector<Label> allowed_k, const Deadline& deadline,
               SolveStats& stats)
      : g_(g),
        values_(s.distinct()),
        left_(counts_of(s, values_)),
        allowed_(std::move(allowed_k)),
        deadline_(deadline),
        stats_(stats) {
    const int n = g.vertex_count();
    labels_.assign(static_cast<std::size_t>(n), 0);
    partial_.assign(static_cast<std::size_t>(n), 0);
    open_.resize(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) open_[v] = g.degree(v);

    // Class order: first appearance in a breadth-first sweep, so that
    // neighbourhoods complete early and pruning bites.
    const TwinPartition twins = twin_classes(g);
    std::vector<int> class_of(static_cast<std::size_t>(n), -1);
    for (std::size_t c = 0; c < twins.size(); ++c) {
      for (Vertex v : twins.classes[c]) class_of[v] = static_cast<int>(c);
    }
    std::vector<char> seen(static_cast<std::size_t>(n), 0), taken(twins.size(), 0);
    for (Vertex s0 = 0; s0 < n; ++s0) {
      if (seen[s0]) continue;
      VertexSet queue{s0};
      seen[s0] = 1;
      for (std::size_t i = 0; i < queue.size(); ++i) {
        const int c = class_of[queue[i]];
        if (!taken[c]) {
          taken[c] = 1;
          classes_.push_back(twins.classes[c]);
          kinds_.push_back(twins.kinds[c]);
        }
        for (Vertex w : g.neighbors(queue[i])) {
          if (!seen[w]) {
            seen[w] = 1;
            queue.push_back(w);
          }
        }
      }
    }
  }

  std::optional<std::pair<Labeling, Label>> run() {
    if (allowed_.empty()) return std::nullopt;
    if (!search_class(0)) return std::nullopt;
    return std::make_pair(labels_, *k_);
  }

 private:
  bool k_allowed(Label k) const { return std::binary_search(allowed_.begin(), allowed_.end(), k); }

  void place(Vertex v, std::size_t j) {
    ++stats_.nodes;
    labels_[v] = values_[j];
    --left_[j];
    for (Vertex w : g_.neighbors(v)) {
      partial_[w] += values_[j];
      --open_[w];
    }
  }

  void unplace(Vertex v, std::size_t j) {
    for (Vertex w : g_.neighbors(v)) {
      partial_[w] -= values_[j];
      ++open_[w];
    }
    ++left_[j];
    labels_[v] = 0;
    if (k_setter_ == v) {
      k_.reset();
      k_setter_ = -1;
    }
  }

  // Consistency of the neighbours of a freshly placed vertex.
  bool consistent(Vertex v) {
    const auto [lo, hi] = remaining_range(values_, left_);
    for (Vertex w : g_.neighbors(v)) {
      const Label p = partial_[w];
      const Label open = open_[w];
      if (open == 0) {
        if (!k_) {
          if (!k_allowed(p)) return false;
          k_ = p;
          k_setter_ = v;
        } else if (p != *k_) {
          return false;
        }
        continue;
      }
      const Label k_lo = k_ ? *k_ : allowed_.front();
      const Label k_hi = k_ ? *k_ : allowed_.back();
      if (p + open * lo > k_hi) return false;
      if (p + open * hi < k_lo) return false;
    }
    return true;
  }

  bool search_class(std::size_t c) {
    deadline_.tick();
    if (c == classes_.size()) return true;
    const VertexSet& members = classes_[c];
    if (kinds_[c] == TwinKind::True && members.size() > 1) {
      // Closed twins see N[v] minus themselves, so they must share a label.
      for (std::size_t j = 0; j < values_.size(); ++j) {
        if (left_[j] < members.size()) continue;
        std::size_t placed = 0;
        bool ok = true;
        for (Vertex v : members) {
          place(v, j);
          ++placed;
          if (!consistent(v)) {
            ok = false;
            break;
          }
        }
        if (ok && search_class(c + 1)) return true;
        for (std::size_t i = placed; i-- > 0;) unplace(members[i], j);
      }
      return false;
    }
    return search_member(c, 0, 0);
  }

  // Open twins are interchangeable, so their values are non-decreasing.
  bool search_member(std::size_t c, std::size_t m, std::size_t from) {
    const VertexSet& members = classes_[c];
    if (m == members.size()) return search_class(c + 1);
    deadline_.tick();
    const Vertex v = members[m];
    for (std::size_t j = from; j < values_.size(); ++j) {
      if (left_[j] == 0) continue;
      place(v, j);
      if (consistent(v) && search_member(c, m + 1, j)) return true;
      unplace(v, j);
    }
    return false;
  }

  const Graph& g_;
  std::vector<Label> values_;
  std::vector<std::size_t> left_;
  std::vector<Label> allowed_;
  const Deadline& deadline_;
  SolveStats& stats_;
  std::vector<VertexSet> classes_;
  std::vector<TwinKind> kinds_;
  Labeling labels_;
  std::vector<Label> partial_;
  std::vector<Label> open_;
  std::optional<Label> k_;
  Vertex k_setter_ = -1;
};

SolveOutcome oracle_body(const Graph& g, const LabelMultiset& s, const SolveOptions& options) {
  require_sizes(g, s);
  if (g.vertex_count() == 0) {
    SolveOutcome out;
    out.verdict = Verdict::Fair;
    out.certificate = FairnessCertificate{};
    return out;
  }
  if (auto early = isolated_rule(g, s)) return *early;
  const std::size_t classes = twin_classes(g).size();
  if (classes > static_cast<std::size_t>(options.oracle_cap)) {
    throw RefusalError("oracle cap: " + std::to_string(classes) + " twin classes exceed " +
                       std::to_string(options.oracle_cap));
  }
  std::vector<Label> allowed;
  if (options.fixed_k) allowed = {*options.fixed_k};
  else allowed = fairness_constant_candidates(g, s);
  SolveOutcome out;
  OracleSearch search(g, s, allowed, options.deadline, out.stats);
  if (auto found = search.run()) {
    accept(out, g, s, std::move(found->first), found->second);
    out.stats.trace.push_back("oracle: first labeling over twin classes");
  } else {
    out.verdict = Verdict::Unfair;
    out.stats.trace.push_back("oracle: exhausted");
  }
  return out;
}

// ------------------------------------------------------- fvs + alpha + delta

std::optional<Labeling> fvs_core(const Graph& g, const LabelMultiset& s, Label k, const Deadline& deadline,
                                 SolveStats& stats) {
  const int n = g.vertex_count();
  const auto comps = connected_components(g);
  if (pendant_outside_star(g, comps)) {
    stats.trace.push_back("fvs: pendant vertex in a non-star component");
    return std::nullopt;
  }
  std::vector<Star> stars;
  VertexSet g1;
  for (const auto& comp : comps) {
    if (auto star = as_star(g, comp)) stars.push_back(std::move(*star));
    else g1.insert(g1.end(), comp.begin(), comp.end());
  }
  std::sort(g1.begin(), g1.end());

  Labeling labels(static_cast<std::size_t>(n), 0);
  if (g1.empty()) {
    if (detail::label_disjoint_stars(stars, s, k, labels, stats, deadline)) return labels;
    return std::nullopt;
  }

  VertexSet fvs;
  for (Vertex local : minimum_feedback_vertex_set(g.induced(g1), deadline)) fvs.push_back(g1[local]);
  std::vector<char> in_fvs(static_cast<std::size_t>(n), 0);
  for (Vertex v : fvs) in_fvs[v] = 1;
  VertexSet forest;
  for (Vertex v : g1) {
    if (!in_fvs[v]) forest.push_back(v);
  }
  const ForestExtender ext(g, forest);
  VertexSet boundary = fvs;
  boundary.insert(boundary.end(), ext.leaves().begin(), ext.leaves().end());
  std::sort(boundary.begin(), boundary.end());
  note(stats, "fvs: feedback set " + std::to_string(fvs.size()) + ", boundary " + std::to_string(boundary.size()));

  const auto values = s.distinct();
  auto left = counts_of(s, values);
  std::vector<Label> partial(static_cast<std::size_t>(n), 0), open(static_cast<std::size_t>(n), 0);
  for (Vertex v : g1) open[v] = g.degree(v);

  auto index_of = [&](Label value) -> std::optional<std::size_t> {
    auto it = std::lower_bound(values.begin(), values.end(), value);
    if (it == values.end() || *it != value) return std::nullopt;
    return static_cast<std::size_t>(it - values.begin());
  };

  auto complete = [&]() -> bool {
    for (Vertex v : ext.internal()) labels[v] = 0;
    if (!ext.extend(labels, k)) return false;
    for (Vertex v : g1) {
      if (neighborhood_sum(g, labels, v) != k) return false;
    }
    std::vector<std::size_t> rest = left;
    for (Vertex v : ext.internal()) {
      auto j = index_of(labels[v]);
      if (!j || rest[*j] == 0) return false;
      --rest[*j];
    }
    std::vector<Label> residual;
    for (std::size_t j = 0; j < values.size(); ++j) residual.insert(residual.end(), rest[j], values[j]);
    return detail::label_disjoint_stars(stars, LabelMultiset(std::move(residual)), k, labels, stats, deadline);
  };

  auto rec = [&](auto&& self, std::size_t i) -> bool {
    deadline.tick();
    if (i == boundary.size()) return complete();
    const Vertex v = boundary[i];
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (left[j] == 0) continue;
      ++stats.nodes;
      --left[j];
      labels[v] = values[j];
      for (Vertex w : g.neighbors(v)) {
        partial[w] += values[j];
        --open[w];
      }
      const auto [lo, hi] = remaining_range(values, left);
      bool ok = true;
      for (Vertex w : g.neighbors(v)) {
        if (open[w] == 0 ? partial[w] != k : (partial[w] + open[w] * lo > k || partial[w] + open[w] * hi < k)) {
          ok = false;
          break;
        }
      }
      if (ok && self(self, i + 1)) return true;
      for (Vertex w : g.neighbors(v)) {
        partial[w] -= values[j];
        ++open[w];
      }
      labels[v] = 0;
      ++left[j];
    }
    return false;
  };
  if (rec(rec, 0)) return labels;
  return std::nullopt;
}

// ------------------------------------------------------------ vc + alpha

std::optional<Labeling> vc_core(const Graph& g, const LabelMultiset& s, Label k, const Deadline& deadline,
                                SolveStats& stats) {
  const int n = g.vertex_count();
  const VertexSet cover = minimum_vertex_cover(g, deadline);
  std::vector<char> in_cover(static_cast<std::size_t>(n), 0);
  for (Vertex v : cover) in_cover[v] = 1;

  // Independent-set classes: vertices outside the cover with equal
  // neighbourhoods, ordered by smallest member.
  std::vector<VertexSet> classes;
  std::map<std::vector<Vertex>, std::size_t> by_nbhd;
  for (Vertex v = 0; v < n; ++v) {
    if (in_cover[v]) continue;
    std::vector<Vertex> key(g.neighbors(v).begin(), g.neighbors(v).end());
    auto [it, inserted] = by_nbhd.emplace(std::move(key), classes.size());
    if (inserted) classes.emplace_back();
    classes[it->second].push_back(v);
  }
  std::vector<Vertex> cls_nbhd_size(classes.size());
  std::vector<std::vector<std::size_t>> adjacent_classes(static_cast<std::size_t>(n));
  std::vector<Label> outside_count(static_cast<std::size_t>(n), 0);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const Vertex rep = classes[c].front();
    cls_nbhd_size[c] = g.degree(rep);
    for (Vertex u : g.neighbors(rep)) {
      adjacent_classes[u].push_back(c);
      outside_count[u] += static_cast<Label>(classes[c].size());
    }
  }
  note(stats, "vc: cover " + std::to_string(cover.size()) + ", " + std::to_string(classes.size()) +
                  " independent classes");

  const auto values = s.distinct();
  auto left = counts_of(s, values);
  Labeling labels(static_cast<std::size_t>(n), 0);
  std::vector<Label> cls_partial(classes.size(), 0), cls_open(cls_nbhd_size.begin(), cls_nbhd_size.end());
  std::vector<Label> inner(static_cast<std::size_t>(n), 0), inner_open(static_cast<std::size_t>(n), 0);
  for (Vertex v : cover) {
    for (Vertex u : g.neighbors(v)) inner_open[v] += in_cover[u];
  }

  auto ilp_stage = [&]() -> bool {
    IntegerProgram program;
    struct Slot {
      std::size_t cls;
      std::size_t value;
      int var;
    };
    std::vector<Slot> slots;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      for (std::size_t j = 0; j < values.size(); ++j) {
        if (left[j] == 0) continue;
        const auto hi = static_cast<std::int64_t>(std::min(classes[c].size(), left[j]));
        slots.push_back({c, j, program.add_variable("n_" + std::to_string(c) + "_" + std::to_string(values[j]), 0, hi)});
      }
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
      std::vector<IpTerm> terms;
      for (const auto& sl : slots) {
        if (sl.cls == c) terms.push_back({sl.var, 1});
      }
      program.add_constraint(std::move(terms), Relation::Equal, static_cast<std::int64_t>(classes[c].size()));
    }
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (left[j] == 0) continue;
      std::vector<IpTerm> terms;
      for (const auto& sl : slots) {
        if (sl.value == j) terms.push_back({sl.var, 1});
      }
      program.add_constraint(std::move(terms), Relation::Equal, static_cast<std::int64_t>(left[j]));
    }
    // Cover vertices see their cover neighbours plus whole adjacent classes.
    for (Vertex v : cover) {
      std::vector<IpTerm> terms;
      for (std::size_t c : adjacent_classes[v]) {
        for (const auto& sl : slots) {
          if (sl.cls == c) terms.push_back({sl.var, values[sl.value]});
        }
      }
      program.add_constraint(std::move(terms), Relation::Equal, k - inner[v]);
    }
    ++stats.ilp_calls;
    IpStats ip;
    const auto sol = solve_feasible(program, deadline, &ip);
    stats.nodes += ip.nodes;
    if (!sol) return false;
    std::vector<std::size_t> next(classes.size(), 0);
    for (const auto& sl : slots) {
      for (std::int64_t copy = 0; copy < (*sol)[sl.var]; ++copy) labels[classes[sl.cls][next[sl.cls]++]] = values[sl.value];
    }
    return true;
  };

  auto rec = [&](auto&& self, std::size_t i) -> bool {
    deadline.tick();
    if (i == cover.size()) return ilp_stage();
    const Vertex v = cover[i];
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (left[j] == 0) continue;
      ++stats.nodes;
      const Label value = values[j];
      --left[j];
      labels[v] = value;
      for (std::size_t c : adjacent_classes[v]) {
        cls_partial[c] += value;
        --cls_open[c];
      }
      for (Vertex u : g.neighbors(v)) {
        if (!in_cover[u]) continue;
        inner[u] += value;
        --inner_open[u];
      }
      const auto [lo, hi] = remaining_range(values, left);
      bool ok = true;
      for (std::size_t c : adjacent_classes[v]) {
        const Label p = cls_partial[c], open = cls_open[c];
        if (open == 0 ? p != k : (p + open * lo > k || p + open * hi < k)) {
          ok = false;
          break;
        }
      }
      for (Vertex u : g.neighbors(v)) {
        if (!ok) break;
        if (!in_cover[u]) continue;
        const Label open = inner_open[u] + outside_count[u];
        if (open == 0 ? inner[u] != k : (inner[u] + open * lo > k || inner[u] + open * hi < k)) ok = false;
      }
      if (ok && self(self, i + 1)) return true;
      for (Vertex u : g.neighbors(v)) {
        if (!in_cover[u]) continue;
        inner[u] -= value;
        ++inner_open[u];
      }
      for (std::size_t c : adjacent_classes[v]) {
        cls_partial[c] -= value;
        ++cls_open[c];
      }
      labels[v] = 0;
      ++left[j];
    }
    return false;
  };
  if (rec(rec, 0)) return labels;
  return std::nullopt;
}

// -------------------------------------------------------- regular graphs

SolveOutcome regular_body(const Graph& g, const LabelMultiset& s, const SolveOptions& options) {
  require_sizes(g, s);
  const auto r = g.regular_degree();
  if (!r || *r < 1) throw InputError("regular-fvs needs an r-regular graph with r >= 1");
  const int n = g.vertex_count();
  SolveOutcome out;
  const __int128 total = static_cast<__int128>(*r) * s.sum();
  if (total % n != 0) {
    out.verdict = Verdict::Unfair;
    out.stats.trace.push_back("regular: r * sum(S) not divisible by n");
    return out;
  }
  const Label k = static_cast<Label>(total / n);
  if (options.fixed_k && *options.fixed_k != k) {
    out.verdict = Verdict::Unfair;
    out.stats.trace.push_back("regular: requested k differs from r * sum(S) / n");
    return out;
  }

  if (*r == 1) {
    out.stats.trace.push_back("regular: perfect matching, all labels equal");
    if (s.distinct_count() != 1) {
      out.verdict = Verdict::Unfair;
      return out;
    }
    accept(out, g, s, Labeling(static_cast<std::size_t>(n), s.min()), k);
    return out;
  }

  if (*r >= 3) {
    out.stats.trace.push_back("regular: r >= 3, exhaustive search");
    SolveOptions fixed = options;
    fixed.fixed_k = k;
    SolveOutcome inner = oracle_body(g, s, fixed);
    inner.stats.trace.insert(inner.stats.trace.begin(), out.stats.trace.begin(), out.stats.trace.end());
    return inner;
  }

  // r == 2: a union of cycles.
  out.stats.trace.push_back("regular: union of cycles");
  std::vector<VertexSet> cycles;
  for (const auto& comp : connected_components(g)) cycles.push_back(*as_cycle(g, comp));
  if (s.distinct_count() > 4 * cycles.size()) {
    out.verdict = Verdict::Unfair;
    out.stats.trace.push_back("regular: more distinct labels than 4 per cycle");
    return out;
  }
  std::size_t half_demand = 0;
  std::map<std::size_t, std::vector<std::size_t>> by_quarter;  // n/4 -> cycle indices
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    if (cycles[c].size() % 4 != 0) half_demand += cycles[c].size();
    else by_quarter[cycles[c].size() / 4].push_back(c);
  }
  if (half_demand > 0 && (k % 2 != 0 || s.count(k / 2) < half_demand)) {
    out.verdict = Verdict::Unfair;
    out.stats.trace.push_back("regular: cycles of length not divisible by 4 need k/2 labels");
    return out;
  }

  // Pattern types {a, b, k-a, k-b}, deduplicated by their multiset.
  const auto values = s.distinct();
  std::vector<std::pair<Label, Label>> types;
  std::vector<std::map<Label, std::size_t>> type_counts;
  for (Label a : values) {
    for (Label b : values) {
      if (b < a || a >= k || b >= k || s.count(k - a) == 0 || s.count(k - b) == 0) continue;
      std::map<Label, std::size_t> m;
      for (Label x : {a, b, k - a, k - b}) ++m[x];
      if (std::find(type_counts.begin(), type_counts.end(), m) != type_counts.end()) continue;
      types.emplace_back(a, b);
      type_counts.push_back(std::move(m));
    }
  }
  IntegerProgram program;
  struct Slot {
    std::size_t quarter;
    std::size_t type;
    int var;
  };
  std::vector<Slot> slots;
  for (const auto& [q, members] : by_quarter) {
    std::vector<IpTerm> terms;
    for (std::size_t t = 0; t < types.size(); ++t) {
      const int var = program.add_variable("x_" + std::to_string(q) + "_" + std::to_string(t), 0,
                                           static_cast<std::int64_t>(members.size()));
      slots.push_back({q, t, var});
      terms.push_back({var, 1});
    }
    program.add_constraint(std::move(terms), Relation::Equal, static_cast<std::int64_t>(members.size()));
  }
  for (Label value : values) {
    std::vector<IpTerm> terms;
    for (const auto& sl : slots) {
      auto it = type_counts[sl.type].find(value);
      if (it != type_counts[sl.type].end()) {
        terms.push_back({sl.var, static_cast<std::int64_t>(sl.quarter * it->second)});
      }
    }
    const std::size_t fixed = (half_demand > 0 && value == k / 2) ? half_demand : 0;
    program.add_constraint(std::move(terms), Relation::Equal, static_cast<std::int64_t>(s.count(value) - fixed));
  }
  ++out.stats.ilp_calls;
  IpStats ip;
  const auto sol = solve_feasible(program, options.deadline, &ip);
  out.stats.nodes += ip.nodes;
  if (!sol) {
    out.verdict = Verdict::Unfair;
    out.stats.trace.push_back("regular: pattern counting program infeasible");
    return out;
  }
  Labeling labels(static_cast<std::size_t>(n), 0);
  for (const auto& cyc : cycles) {
    if (cyc.size() % 4 != 0) {
      for (Vertex v : cyc) labels[v] = k / 2;
    }
  }
  std::map<std::size_t, std::size_t> next;
  for (const auto& sl : slots) {
    for (std::int64_t copy = 0; copy < (*sol)[sl.var]; ++copy) {
      const auto& cyc = cycles[by_quarter[sl.quarter][next[sl.quarter]++]];
      const auto [a, b] = types[sl.type];
      const Label pattern[4] = {a, b, k - a, k - b};
      for (std::size_t i = 0; i < cyc.size(); ++i) labels[cyc[i]] = pattern[i % 4];
    }
  }
  accept(out, g, s, std::move(labels), k);
  return out;
}

// ----------------------------------------------- candidate-driven wrapper

using KSolver = std::function<std::optional<Labeling>(Label, SolveStats&)>;

SolveOutcome over_candidates(const Graph& g, const LabelMultiset& s, const std::vector<Label>& candidates,
                             const KSolver& solve_k, const std::string& name) {
  SolveOutcome out;
  for (Label k : candidates) {
    if (auto labels = solve_k(k, out.stats)) {
      accept(out, g, s, std::move(*labels), k);
      out.stats.trace.push_back(name + ": fair with k=" + std::to_string(k));
      return out;
    }
  }
  out.verdict = Verdict::Unfair;
  out.stats.trace.push_back(name + ": no candidate constant works (" + std::to_string(candidates.size()) +
                            " tried)");
  return out;
}

std::vector<Label> candidate_constants(const Graph& g, const LabelMultiset& s, const SolveOptions& options) {
  std::vector<Label> all = fairness_constant_candidates(g, s);
  if (!options.fixed_k) return all;
  if (std::binary_search(all.begin(), all.end(), *options.fixed_k)) return {*options.fixed_k};
  return {};
}

SolveOutcome k_algorithm_body(Algorithm algorithm, const Graph& g, const LabelMultiset& s,
                              const std::vector<Label>& candidates, const SolveOptions& options) {
  const Deadline& deadline = options.deadline;
  if (algorithm == Algorithm::FvsAlphaDelta) {
    return over_candidates(
        g, s, candidates, [&](Label k, SolveStats& st) { return fvs_core(g, s, k, deadline, st); },
        to_string(algorithm));
  }
  return over_candidates(
      g, s, candidates, [&](Label k, SolveStats& st) { return vc_core(g, s, k, deadline, st); },
      to_string(algorithm));
}

double log_or_zero(double x) { return x > 1.0 ? std::log(x) : 0.0; }

}  // namespace

ParameterReport parameter_report(const Graph& g, const LabelMultiset& s, const Deadline& deadline) {
  ParameterReport p;
  p.vertices = g.vertex_count();
  p.max_degree = g.max_degree();
  p.alpha = static_cast<int>(s.distinct_count());
  p.regular_degree = g.regular_degree();
  try {
    p.fvs = static_cast<int>(minimum_feedback_vertex_set(g, deadline).size());
    p.vc = static_cast<int>(minimum_vertex_cover(g, deadline).size());
  } catch (const TimeoutError&) {
  }
  return p;
}

SolverChoice choose_strategy(const Graph& g, const LabelMultiset& s, const SolveOptions& options) {
  SolverChoice choice;
  choice.parameters = parameter_report(g, s, options.deadline);
  const ShapeReport shape = classify(g);
  const auto& p = choice.parameters;
  const std::size_t classes = twin_classes(g).size();
  const bool oracle_fits = classes <= static_cast<std::size_t>(options.oracle_cap);

  if (shape.shape == Shape::EdgelessOnly || shape.shape == Shape::HasIsolatedMixed) {
    choice.algorithm = Algorithm::Oracle;
    choice.reason = "isolated vertices decide the instance";
    return choice;
  }
  if (shape.shape == Shape::DisjointStars) {
    choice.algorithm = Algorithm::FvsAlphaDelta;
    choice.reason = "union of stars: counting program";
    return choice;
  }
  if (p.regular_degree && (*p.regular_degree <= 2 || oracle_fits)) {
    choice.algorithm = Algorithm::RegularFvs;
    choice.reason = "regular of degree " + std::to_string(*p.regular_degree);
    return choice;
  }

  // Enumeration sizes in log scale; the candidate count multiplies both
  // parameterized searches.
  const double log_alpha = log_or_zero(p.alpha);
  double vc_cost = HUGE_VAL, fvs_cost = HUGE_VAL, oracle_cost = HUGE_VAL;
  if (p.vc) vc_cost = *p.vc * log_alpha;
  try {
    VertexSet g1;
    for (const auto& comp : connected_components(g)) {
      if (!as_star(g, comp)) g1.insert(g1.end(), comp.begin(), comp.end());
    }
    std::sort(g1.begin(), g1.end());
    const Graph h = g.induced(g1);
    const VertexSet local_fvs = minimum_feedback_vertex_set(h, options.deadline);
    std::vector<char> in_fvs(g1.size(), 0);
    for (Vertex v : local_fvs) in_fvs[v] = 1;
    VertexSet forest;
    for (std::size_t i = 0; i < g1.size(); ++i) {
      if (!in_fvs[i]) forest.push_back(static_cast<Vertex>(i));
    }
    fvs_cost = static_cast<double>(local_fvs.size() + forest_leaves(h, forest).size()) * log_alpha;
  } catch (const TimeoutError&) {
  }
  if (oracle_fits) oracle_cost = static_cast<double>(classes) * log_alpha;

  if (vc_cost <= fvs_cost && vc_cost <= oracle_cost && vc_cost < HUGE_VAL) {
    choice.algorithm = Algorithm::VcAlpha;
    choice.reason = "smallest estimate: vertex cover enumeration";
  } else if (fvs_cost <= oracle_cost && fvs_cost < HUGE_VAL) {
    choice.algorithm = Algorithm::FvsAlphaDelta;
    choice.reason = "smallest estimate: feedback set and forest leaves";
  } else {
    choice.algorithm = Algorithm::Oracle;
    choice.reason = "smallest estimate: twin-class search";
  }
  return choice;
}

SolveOutcome solve_oracle(const Graph& g, const LabelMultiset& s, const SolveOptions& options) {
  return guarded([&] { return oracle_body(g, s, options); });
}

SolveOutcome solve_fvs_alpha_delta(const Graph& g, const LabelMultiset& s, Label k, const SolveOptions& options) {
  require_sizes(g, s);
  if (g.has_isolated_vertex()) throw InputError("fvs-alpha-delta needs a graph without isolated vertices");
  return guarded([&] {
    SolveOutcome out;
    if (auto labels = fvs_core(g, s, k, options.deadline, out.stats)) accept(out, g, s, std::move(*labels), k);
    else out.verdict = Verdict::Unfair;
    return out;
  });
}

SolveOutcome solve_vc_alpha(const Graph& g, const LabelMultiset& s, Label k, const SolveOptions& options) {
  require_sizes(g, s);
  if (g.has_isolated_vertex()) throw InputError("vc-alpha needs a graph without isolated vertices");
  return guarded([&] {
    SolveOutcome out;
    if (auto labels = vc_core(g, s, k, options.deadline, out.stats)) accept(out, g, s, std::move(*labels), k);
    else out.verdict = Verdict::Unfair;
    return out;
  });
}

SolveOutcome solve_regular_fvs(const Graph& g, const LabelMultiset& s, const SolveOptions& options) {
  require_sizes(g, s);
  if (!g.regular_degree() || *g.regular_degree() < 1) {
    throw InputError("regular-fvs needs an r-regular graph with r >= 1");
  }
  return guarded([&] { return regular_body(g, s, options); });
}

SolveOutcome solve_vc_delta(const Graph& g, const LabelMultiset& s, const SolveOptions& options) {
  require_sizes(g, s);
  return guarded([&] {
    const int vc = static_cast<int>(minimum_vertex_cover(g, options.deadline).size());
    const bool bounded = g.vertex_count() <= vc * g.max_degree();
    SolveOutcome out = oracle_body(g, s, options);
    out.stats.trace.insert(out.stats.trace.begin(),
                           std::string("vc-delta: |V| ") + (bounded ? "<=" : ">") + " vc * max degree");
    return out;
  });
}

SolveOutcome solve_auto(const Graph& g, const LabelMultiset& s, const SolveOptions& options) {
  require_sizes(g, s);
  return guarded([&] {
    if (g.vertex_count() == 0) {
      SolveOutcome out;
      out.verdict = Verdict::Fair;
      out.certificate = FairnessCertificate{};
      return out;
    }
    if (auto early = isolated_rule(g, s)) return *early;
    const auto comps = connected_components(g);
    if (pendant_outside_star(g, comps)) {
      SolveOutcome out;
      out.verdict = Verdict::Unfair;
      out.stats.trace.push_back("auto: pendant vertex in a non-star component");
      return out;
    }
    // Every component must reach the same constant, so intersect the
    // per-component candidate sets before solving anything.
    std::vector<Label> candidates = candidate_constants(g, s, options);
    if (comps.size() > 1) {
      for (const auto& comp : comps) {
        if (candidates.empty()) break;
        const auto own = fairness_constant_candidates(g, comp, s);
        std::vector<Label> both;
        std::set_intersection(candidates.begin(), candidates.end(), own.begin(), own.end(), std::back_inserter(both));
        candidates = std::move(both);
      }
    }
    const SolverChoice choice = choose_strategy(g, s, options);
    const std::string head = std::string("auto: ") + to_string(choice.algorithm) + " (" + choice.reason + ")";
    SolveOutcome out;
    if (candidates.empty()) {
      out.verdict = Verdict::Unfair;
      out.stats.trace = {head, "auto: no common candidate constant"};
      return out;
    }
    switch (choice.algorithm) {
      case Algorithm::RegularFvs: {
        out = regular_body(g, s, options);
        if (out.fair() && !std::binary_search(candidates.begin(), candidates.end(), out.certificate->constant)) {
          throw std::logic_error("regular constant outside the candidate set");
        }
        break;
      }
      case Algorithm::FvsAlphaDelta:
      case Algorithm::VcAlpha:
        out = k_algorithm_body(choice.algorithm, g, s, candidates, options);
        break;
      default:
        out = oracle_body(g, s, options);
        break;
    }
    out.stats.trace.insert(out.stats.trace.begin(), head);
    return out;
  });
}

SolveOutcome solve(Algorithm algorithm, const Graph& g, const LabelMultiset& s, const SolveOptions& options) {
  require_sizes(g, s);
  switch (algorithm) {
    case Algorithm::Auto:
      return solve_auto(g, s, options);
    case Algorithm::Oracle:
      return solve_oracle(g, s, options);
    case Algorithm::VcDelta:
      return solve_vc_delta(g, s, options);
    default:
      break;
  }
  return guarded([&] {
    if (g.vertex_count() == 0) {
      SolveOutcome out;
      out.verdict = Verdict::Fair;
      out.certificate = FairnessCertificate{};
      return out;
    }
    if (auto early = isolated_rule(g, s)) return *early;
    if (algorithm == Algorithm::RegularFvs) {
      if (!g.regular_degree()) throw InputError("regular-fvs needs a regular graph");
      return regular_body(g, s, options);
    }
    return k_algorithm_body(algorithm, g, s, candidate_constants(g, s, options), options);
  });
}

}  // namespace fairnet
