// Copyright 2026 The trustlp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRUSTLP_LP_H_
#define TRUSTLP_LP_H_

// Exact linear programming: a small LP container, its mechanical dual, and a
// two-phase simplex over rationals.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trustlp/rational.h"

namespace trustlp::lp {

enum class Sense { kMaximize, kMinimize };
enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class Domain { kNonNegative, kFree };

struct Variable {
  std::string name;
  Domain domain = Domain::kNonNegative;
};

struct Term {
  int var = 0;
  Rational coef;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Relation relation = Relation::kLessEqual;
  Rational rhs;
};

class LinearProgram {
 public:
  explicit LinearProgram(Sense sense) : sense_(sense) {}

  int add_variable(std::string name, Domain domain = Domain::kNonNegative);

  // Accumulates into the existing coefficient.
  void add_objective(int var, const Rational& coef);

  // Terms on the same variable are merged; zero coefficients dropped.
  // Throws std::out_of_range for an undeclared variable.
  int add_constraint(std::string name, std::vector<Term> terms,
                     Relation relation, const Rational& rhs);

  Sense sense() const { return sense_; }
  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<Rational>& objective() const { return objective_; }

  std::optional<int> find_variable(const std::string& name) const;

  Rational objective_value(std::span<const Rational> x) const;
  Rational row_activity(int constraint, std::span<const Rational> x) const;

  // Index of the first violated constraint, or -(1 + var) for the first
  // variable outside its domain; nullopt when x is feasible.
  std::optional<int> first_violation(std::span<const Rational> x) const;

  bool tight(int constraint, std::span<const Rational> x) const {
    return row_activity(constraint, x) == constraints_[constraint].rhs;
  }

 private:
  Sense sense_;
  std::vector<Variable> variables_;
  std::vector<Rational> objective_;
  std::vector<Constraint> constraints_;
};

// Dual by the textbook rules. Rows are first oriented so that every inequality
// multiplier is nonnegative (<= rows for a maximization, >= rows for a
// minimization; others are negated). Dual variable i belongs to primal
// constraint i (free for equalities, nonnegative otherwise) and is named
// "y[<constraint name>]"; dual constraint j belongs to primal variable j
// (an equality for free variables).
LinearProgram dualize(const LinearProgram& primal);

enum class Status { kOptimal, kInfeasible, kUnbounded };

const char* to_string(Status status);

struct Solution {
  Status status = Status::kInfeasible;
  std::vector<Rational> primal;
  // Values of dualize(lp)'s variables read off the final basis.
  std::vector<Rational> dual;
  Rational objective;
  int pivots = 0;
};

// Two-phase simplex. Entering variables follow Dantzig's rule until a run of
// degenerate pivots, then Bland's rule for the rest of the phase, which
// guarantees termination. Ties always go to the lowest index, so results are
// reproducible. Infeasible and unbounded problems are reported in `status`.
Solution solve(const LinearProgram& lp);

}  // namespace trustlp::lp

#endif  // TRUSTLP_LP_H_
