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

// Instance generators for the hardness constructions (3-Partition, exact
// 1-in-3 SAT), the semi-magic square encoding, circulant graphs and random
// test instances, plus small exhaustive checkers used to validate them.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairnet/core.hpp"
#include "fairnet/instance_io.hpp"

namespace fairnet {

struct ThreePartitionInstance {
  std::vector<Label> w;
  int m = 0;
};

/// m/2 copies of K_{3,3} labeled by W when m is even. For odd m one more
/// K_{3,3} is added and S = W + {sum-2, 1, 1}; if some element is <= 1 every
/// element is first shifted by +1 (recorded as meta "shift").
/// Throws InputError unless |w| = 3m and m divides sum(w).
Instance gen_3partition_k33(const ThreePartitionInstance& inst);

/// m disjoint copies of K_{1,3} with S = W + {sum x m}.
Instance gen_3partition_stars(const ThreePartitionInstance& inst);

using Triple = std::array<Label, 3>;

/// Exhaustive search for a partition into m triples of equal sum. Returns
/// the triples (in the order found) or nullopt. RefusalError above 12
/// elements; InputError unless |w| = 3m.
std::optional<std::vector<Triple>> brute_3partition(const ThreePartitionInstance& inst);

/// Exact 1-in-3 SAT with positive literals, every clause of size 3 and every
/// variable in exactly 3 clauses. Variables are 0-based.
struct XsatFormula {
  int n = 0;
  std::vector<std::array<int, 3>> clauses;
};

/// nullopt when the formula is well formed, otherwise what is wrong.
std::optional<std::string> validate_xsat(const XsatFormula& phi);

/// 6-regular graph on 16n vertices: variable i is vertex i; clause j owns
/// vertices n + 15j .. n + 15j + 14 (gadget slots 1..15). Labels are 1 x 2n/3,
/// 2 x 15n, 4 x n/3 and k = 12. InputError for an invalid formula;
/// std::logic_error if the result is not 6-regular.
Instance gen_xsat(const XsatFormula& phi);

/// Labeling of the gen_xsat graph from a truth assignment with exactly one
/// true variable per clause: true 4, false 1, gadget vertices 2.
FairnessCertificate certificate_from_xsat_assignment(const XsatFormula& phi, const std::vector<bool>& truth);

/// Satisfiable formula on n variables (n divisible by 3): clause j takes one
/// of the n/3 planted true variables and two of the 2n/3 false ones.
/// Variable names are permuted by `seed`. The planted assignment is
/// returned through `truth` when non-null.
XsatFormula planted_xsat(int n, std::uint64_t seed, std::vector<bool>* truth = nullptr);

struct SemiMagicSpec {
  int n = 0;
  std::vector<Label> entries;
};

/// Cells are vertices 0..n^2-1 in row-major order, row i is n^2 + i and
/// column j is n^2 + n + j. S = I + {(k-1) x n, 1 x n} with k = sum(I)/n.
/// When n does not divide sum(I) no square exists: k is rounded down and
/// meta "necessarily_unfair" is set.
Instance gen_semimagic(const SemiMagicSpec& square);

/// Reads the grid off a certificate of gen_semimagic(square). Throws
/// InputError if the certificate does not verify, the line vertices do not
/// carry {k-1, 1} n times each, or a row or column misses k.
std::vector<std::vector<Label>> decode_semimagic(const SemiMagicSpec& square, const FairnessCertificate& cert);

/// Circulant C_n(1..r/2). InputError unless r is even and 0 < r < n.
Graph gen_circulant(int n, int r);

enum class RandomShape { Gnp, Stars, Cycles, Bipartite, Circulant };

const char* to_string(RandomShape s);
std::optional<RandomShape> parse_random_shape(std::string_view name);

/// Deterministic random instance with labels in 1..max_label. The graph has
/// about n vertices (stars and cycles round to whole components).
Instance random_instance(RandomShape shape, int n, int max_label, std::uint64_t seed);

}  // namespace fairnet
