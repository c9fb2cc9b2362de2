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

#include "fairnet/ilp.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace fairnet {

int IntegerProgram::add_variable(std::string name, std::int64_t lower, std::optional<std::int64_t> upper) {
  variables_.push_back({std::move(name), lower, upper});
  return static_cast<int>(variables_.size()) - 1;
}

void IntegerProgram::add_constraint(std::vector<IpTerm> terms, Relation relation, std::int64_t rhs) {
  std::map<int, std::int64_t> merged;
  for (const auto& t : terms) {
    if (t.variable < 0 || t.variable >= static_cast<int>(variables_.size())) {
      throw InputError("constraint refers to unknown variable " + std::to_string(t.variable));
    }
    merged[t.variable] += t.coefficient;
  }
  IpConstraint c{{}, relation, rhs};
  for (auto [var, coef] : merged) {
    if (coef != 0) c.terms.push_back({var, coef});
  }
  constraints_.push_back(std::move(c));
}

std::optional<int> IntegerProgram::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].name == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

bool IntegerProgram::satisfied_by(const std::vector<std::int64_t>& values) const {
  if (values.size() != variables_.size()) return false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < variables_[i].lower) return false;
    if (variables_[i].upper && values[i] > *variables_[i].upper) return false;
  }
  for (const auto& c : constraints_) {
    __int128 act = 0;
    for (const auto& t : c.terms) act += static_cast<__int128>(t.coefficient) * values[t.variable];
    switch (c.relation) {
      case Relation::Equal:
        if (act != c.rhs) return false;
        break;
      case Relation::LessEqual:
        if (act > c.rhs) return false;
        break;
      case Relation::GreaterEqual:
        if (act < c.rhs) return false;
        break;
    }
  }
  return true;
}

namespace {

using Wide = __int128;

Wide floor_div(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Wide ceil_div(Wide a, Wide b) { return -floor_div(-a, b); }

class Search {
 public:
  Search(const IntegerProgram& p, const Deadline& deadline, IpStats* stats)
      : p_(p), deadline_(deadline), stats_(stats) {}

  IpSolution run() {
    std::vector<Wide> lo, hi;
    for (const auto& v : p_.variables()) {
      lo.push_back(v.lower);
      hi.push_back(*v.upper);
    }
    if (dfs(lo, hi)) return solution_;
    return std::nullopt;
  }

 private:
  // Shrinks bounds to a fixpoint; false when some constraint cannot hold.
  bool propagate(std::vector<Wide>& lo, std::vector<Wide>& hi) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& c : p_.constraints()) {
        Wide min_act = 0, max_act = 0;
        for (const auto& t : c.terms) {
          const Wide a = t.coefficient;
          min_act += a > 0 ? a * lo[t.variable] : a * hi[t.variable];
          max_act += a > 0 ? a * hi[t.variable] : a * lo[t.variable];
        }
        const bool upper_side = c.relation != Relation::GreaterEqual;
        const bool lower_side = c.relation != Relation::LessEqual;
        if (upper_side && min_act > c.rhs) return false;
        if (lower_side && max_act < c.rhs) return false;
        for (const auto& t : c.terms) {
          const Wide a = t.coefficient;
          const int x = t.variable;
          const Wide own_min = a > 0 ? a * lo[x] : a * hi[x];
          const Wide own_max = a > 0 ? a * hi[x] : a * lo[x];
          Wide new_lo = lo[x], new_hi = hi[x];
          if (upper_side) {
            // a*x <= rhs - (min activity of the other terms)
            const Wide slack = c.rhs - (min_act - own_min);
            if (a > 0) new_hi = std::min(new_hi, floor_div(slack, a));
            else new_lo = std::max(new_lo, ceil_div(slack, a));
          }
          if (lower_side) {
            const Wide need = c.rhs - (max_act - own_max);
            if (a > 0) new_lo = std::max(new_lo, ceil_div(need, a));
            else new_hi = std::min(new_hi, floor_div(need, a));
          }
          if (new_lo > new_hi) return false;
          if (new_lo != lo[x] || new_hi != hi[x]) {
            // Keep the activities consistent for the remaining terms.
            min_act += (a > 0 ? a * new_lo : a * new_hi) - own_min;
            max_act += (a > 0 ? a * new_hi : a * new_lo) - own_max;
            lo[x] = new_lo;
            hi[x] = new_hi;
            changed = true;
          }
        }
      }
    }
    return true;
  }

  bool dfs(std::vector<Wide> lo, std::vector<Wide> hi) {
    deadline_.tick();
    if (stats_) ++stats_->nodes;
    if (!propagate(lo, hi)) return false;
    std::size_t branch = lo.size();
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (lo[i] < hi[i]) {
        branch = i;
        break;
      }
    }
    if (branch == lo.size()) {
      std::vector<std::int64_t> values(lo.begin(), lo.end());
      if (!p_.satisfied_by(values)) return false;
      solution_ = std::move(values);
      return true;
    }
    for (Wide value = lo[branch]; value <= hi[branch]; ++value) {
      auto lo2 = lo, hi2 = hi;
      lo2[branch] = hi2[branch] = value;
      if (dfs(std::move(lo2), std::move(hi2))) return true;
    }
    return false;
  }

  const IntegerProgram& p_;
  const Deadline& deadline_;
  IpStats* stats_;
  std::vector<std::int64_t> solution_;
};

const char* relation_token(Relation r) {
  switch (r) {
    case Relation::Equal:
      return "=";
    case Relation::LessEqual:
      return "<=";
    case Relation::GreaterEqual:
      return ">=";
  }
  return "?";
}

}  // namespace

IpSolution solve_feasible(const IntegerProgram& p, const Deadline& deadline, IpStats* stats) {
  for (const auto& v : p.variables()) {
    if (!v.upper) throw InputError("variable '" + v.name + "' has no upper bound");
    if (v.lower < 0) throw InputError("variable '" + v.name + "' has a negative lower bound");
    if (*v.upper < v.lower) return std::nullopt;
  }
  return Search(p, deadline, stats).run();
}

std::string write_program(const IntegerProgram& p) {
  std::ostringstream out;
  for (const auto& v : p.variables()) {
    out << "var " << v.name << ' ' << v.lower << ' ';
    if (v.upper) out << *v.upper;
    else out << "inf";
    out << '\n';
  }
  for (const auto& c : p.constraints()) {
    std::vector<std::int64_t> dense(p.variables().size(), 0);
    for (const auto& t : c.terms) dense[t.variable] = t.coefficient;
    out << "con";
    for (auto a : dense) out << ' ' << a;
    out << ' ' << relation_token(c.relation) << ' ' << c.rhs << '\n';
  }
  return out.str();
}

IntegerProgram read_program(std::string_view text) {
  IntegerProgram p;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw InputError("program line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind) || kind.front() == '#') continue;
    if (kind == "var") {
      std::string name, hi;
      std::int64_t lo = 0;
      if (!(ls >> name >> lo >> hi)) fail("expected 'var <name> <lo> <hi>'");
      std::optional<std::int64_t> upper;
      if (hi != "inf") {
        try {
          upper = std::stoll(hi);
        } catch (const std::exception&) {
          fail("bad upper bound '" + hi + "'");
        }
      }
      p.add_variable(name, lo, upper);
    } else if (kind == "con") {
      std::vector<std::string> tokens;
      for (std::string t; ls >> t;) tokens.push_back(t);
      const std::size_t nv = p.variables().size();
      if (tokens.size() != nv + 2) fail("expected " + std::to_string(nv) + " coefficients, a relation and a rhs");
      std::vector<IpTerm> terms;
      try {
        for (std::size_t i = 0; i < nv; ++i) terms.push_back({static_cast<int>(i), std::stoll(tokens[i])});
      } catch (const std::exception&) {
        fail("bad coefficient");
      }
      Relation rel = Relation::Equal;
      if (tokens[nv] == "=") rel = Relation::Equal;
      else if (tokens[nv] == "<=") rel = Relation::LessEqual;
      else if (tokens[nv] == ">=") rel = Relation::GreaterEqual;
      else fail("bad relation '" + tokens[nv] + "'");
      std::int64_t rhs = 0;
      try {
        rhs = std::stoll(tokens[nv + 1]);
      } catch (const std::exception&) {
        fail("bad rhs");
      }
      p.add_constraint(std::move(terms), rel, rhs);
    } else {
      fail("unknown directive '" + kind + "'");
    }
  }
  return p;
}

}  // namespace fairnet
