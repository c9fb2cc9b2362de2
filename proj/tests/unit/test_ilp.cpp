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

#include <random>

#include "doctest.h"
#include "fairnet/ilp.hpp"
#include "support/brute.hpp"

using namespace fairnet;

TEST_CASE("first solution in canonical order") {
  IntegerProgram p;
  int x1 = p.add_variable("x1", 0, 3);
  int x2 = p.add_variable("x2", 0, 3);
  p.add_constraint({{x1, 1}, {x2, 1}}, Relation::Equal, 3);
  auto sol = solve_feasible(p);
  REQUIRE(sol);
  CHECK(*sol == std::vector<std::int64_t>{0, 3});
}

TEST_CASE("integrality and bounds make a program infeasible") {
  IntegerProgram p;
  int x1 = p.add_variable("x1", 0, 0);
  int x2 = p.add_variable("x2", 0, 5);
  p.add_constraint({{x1, 1}, {x2, 2}}, Relation::Equal, 1);
  CHECK_FALSE(solve_feasible(p));
}

TEST_CASE("star counting system for two K_{1,3}") {
  // One size class with two stars, one feasible leaf multiset {1,2,3}.
  IntegerProgram p;
  int n = p.add_variable("n_3_123", 0, 2);
  p.add_constraint({{n, 1}}, Relation::Equal, 2);
  for (int label = 1; label <= 3; ++label) p.add_constraint({{n, 1}}, Relation::Equal, 2);
  auto sol = solve_feasible(p);
  REQUIRE(sol);
  CHECK((*sol)[0] == 2);
}

TEST_CASE("input validation") {
  IntegerProgram p;
  p.add_variable("free", 0, std::nullopt);
  CHECK_THROWS_AS(solve_feasible(p), InputError);
  IntegerProgram q;
  q.add_variable("neg", -1, 2);
  CHECK_THROWS_AS(solve_feasible(q), InputError);
  CHECK_THROWS_AS(q.add_constraint({{3, 1}}, Relation::Equal, 0), InputError);
}

TEST_CASE("duplicate terms are merged") {
  IntegerProgram p;
  int x = p.add_variable("x", 0, 4);
  p.add_constraint({{x, 1}, {x, 1}}, Relation::Equal, 4);
  REQUIRE(p.constraints()[0].terms.size() == 1);
  CHECK(solve_feasible(p) == std::vector<std::int64_t>{2});
}

TEST_CASE("text dump round trips") {
  IntegerProgram p;
  int a = p.add_variable("a", 1, 4);
  int b = p.add_variable("b", 0, 2);
  p.add_constraint({{a, 2}, {b, -1}}, Relation::GreaterEqual, 3);
  p.add_constraint({{b, 1}}, Relation::LessEqual, 1);
  const std::string text = write_program(p);
  CHECK(text == "var a 1 4\nvar b 0 2\ncon 2 -1 >= 3\ncon 0 1 <= 1\n");
  auto back = read_program(text);
  CHECK(write_program(back) == text);
  CHECK_THROWS_AS(read_program("var a 0 1\ncon 1 == 2\n"), InputError);
}

TEST_CASE("feasibility matches box enumeration") {
  std::mt19937_64 rng(17);
  int feasible = 0;
  for (int iter = 0; iter < 400; ++iter) {
    IntegerProgram p;
    const int vars = testing::draw(rng, 1, 5);
    for (int i = 0; i < vars; ++i) {
      const int lo = testing::draw(rng, 0, 2);
      p.add_variable("x" + std::to_string(i), lo, testing::draw(rng, lo, 5));
    }
    const int cons = testing::draw(rng, 0, 5);
    for (int c = 0; c < cons; ++c) {
      std::vector<IpTerm> terms;
      for (int i = 0; i < vars; ++i) terms.push_back({i, testing::draw(rng, -3, 3)});
      const auto rel = static_cast<Relation>(testing::draw(rng, 0, 2));
      p.add_constraint(terms, rel, testing::draw(rng, -5, 12));
    }
    auto sol = solve_feasible(p);
    CHECK(sol.has_value() == testing::brute_feasible(p));
    if (sol) {
      CHECK(p.satisfied_by(*sol));
      ++feasible;
    }
  }
  CHECK(feasible > 40);
}
