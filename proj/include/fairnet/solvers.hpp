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

// Exact decision procedures for S-fairness, the brute-force oracle and the
// dispatcher that picks between them.

#include <optional>
#include <string>
#include <string_view>

#include "fairnet/core.hpp"
#include "fairnet/structure.hpp"

namespace fairnet {

enum class Algorithm { Auto, Oracle, FvsAlphaDelta, VcAlpha, RegularFvs, VcDelta };

const char* to_string(Algorithm a);
/// Accepts the CLI spellings: auto, oracle, fvs-alpha-delta, vc-alpha,
/// regular-fvs, vc-delta.
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// Default twin-class cap of the oracle; FAIRNET_ORACLE_CAP overrides it.
int default_oracle_cap();

struct SolveOptions {
  int oracle_cap = default_oracle_cap();
  Deadline deadline;
  /// Restricts the search to one fairness constant.
  std::optional<Label> fixed_k;
};

/// Structural parameters reported next to a verdict. fvs and vc stay empty
/// when they could not be computed before the deadline.
struct ParameterReport {
  int vertices = 0;
  int max_degree = 0;
  /// Number of distinct labels.
  int alpha = 0;
  std::optional<int> fvs;
  std::optional<int> vc;
  std::optional<int> regular_degree;
};

ParameterReport parameter_report(const Graph& g, const LabelMultiset& s, const Deadline& deadline = {});

struct SolverChoice {
  Algorithm algorithm = Algorithm::Oracle;
  ParameterReport parameters;
  std::string reason;
};

/// Strategy solve_auto would run on the whole graph.
SolverChoice choose_strategy(const Graph& g, const LabelMultiset& s, const SolveOptions& options = {});

// Every solver below returns Refused (never Unfair) when the deadline passes
// or a size cap is hit, and throws InputError on malformed input.

/// Exhaustive search over twin classes. Refuses when the graph has more
/// twin classes than options.oracle_cap.
SolveOutcome solve_oracle(const Graph& g, const LabelMultiset& s, const SolveOptions& options = {});

/// Feedback vertex set + number of distinct labels + max degree. Star
/// components are labeled through the counting program, the rest by
/// enumerating labels on the feedback set and forest leaves. Requires no
/// isolated vertices.
SolveOutcome solve_fvs_alpha_delta(const Graph& g, const LabelMultiset& s, Label k,
                                   const SolveOptions& options = {});

/// Vertex cover + number of distinct labels: enumerate cover labels, then
/// distribute the rest over the independent-set classes by an integer
/// program. Requires no isolated vertices.
SolveOutcome solve_vc_alpha(const Graph& g, const LabelMultiset& s, Label k, const SolveOptions& options = {});

/// r-regular graphs with r >= 1; k is r * sum(s) / n.
SolveOutcome solve_regular_fvs(const Graph& g, const LabelMultiset& s, const SolveOptions& options = {});

/// Oracle behind the |V| <= vc * max degree size bound.
SolveOutcome solve_vc_delta(const Graph& g, const LabelMultiset& s, const SolveOptions& options = {});

SolveOutcome solve_auto(const Graph& g, const LabelMultiset& s, const SolveOptions& options = {});

/// Runs one algorithm on a whole instance. Algorithms that take a fairness
/// constant are tried on every candidate in ascending order (or on
/// options.fixed_k); isolated vertices are handled before they run.
SolveOutcome solve(Algorithm algorithm, const Graph& g, const LabelMultiset& s, const SolveOptions& options = {});

}  // namespace fairnet
