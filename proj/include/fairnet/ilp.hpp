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

// Exact feasibility for small bounded integer programs.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairnet/core.hpp"

namespace fairnet {

enum class Relation { Equal, LessEqual, GreaterEqual };

struct IpVariable {
  std::string name;
  std::int64_t lower = 0;
  /// Must be set before solving; solve_feasible rejects unbounded variables.
  std::optional<std::int64_t> upper;
};

struct IpTerm {
  int variable = 0;
  std::int64_t coefficient = 0;
};

struct IpConstraint {
  std::vector<IpTerm> terms;
  Relation relation = Relation::Equal;
  std::int64_t rhs = 0;
};

class IntegerProgram {
 public:
  int add_variable(std::string name, std::int64_t lower, std::optional<std::int64_t> upper);
  /// Terms referring to the same variable are merged; zero coefficients dropped.
  void add_constraint(std::vector<IpTerm> terms, Relation relation, std::int64_t rhs);

  const std::vector<IpVariable>& variables() const { return variables_; }
  const std::vector<IpConstraint>& constraints() const { return constraints_; }
  std::optional<int> index_of(std::string_view name) const;

  /// True iff `values` lies in every variable's bounds and satisfies every
  /// constraint.
  bool satisfied_by(const std::vector<std::int64_t>& values) const;

 private:
  std::vector<IpVariable> variables_;
  std::vector<IpConstraint> constraints_;
};

/// Values in variable order, or nullopt when the program is infeasible.
using IpSolution = std::optional<std::vector<std::int64_t>>;

struct IpStats {
  std::uint64_t nodes = 0;
};

/// Depth-first search over variables in index order, values ascending, with
/// bound propagation after every decision. The first solution in that order
/// is returned. Throws InputError for a variable without an upper bound or a
/// negative lower bound, TimeoutError when the deadline passes.
IpSolution solve_feasible(const IntegerProgram& p, const Deadline& deadline = {}, IpStats* stats = nullptr);

/// Line-oriented debug dump: `var <name> <lo> <hi>` per variable, then
/// `con <c1> ... <cN> <rel> <rhs>` per constraint with dense coefficients
/// and rel one of `=`, `<=`, `>=`.
std::string write_program(const IntegerProgram& p);
IntegerProgram read_program(std::string_view text);

}  // namespace fairnet
