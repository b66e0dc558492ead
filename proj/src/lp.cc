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

#include "trustlp/lp.h"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace trustlp::lp {

int LinearProgram::add_variable(std::string name, Domain domain) {
  variables_.push_back({std::move(name), domain});
  objective_.emplace_back(0);
  return num_variables() - 1;
}

void LinearProgram::add_objective(int var, const Rational& coef) {
  objective_.at(var) += coef;
}

int LinearProgram::add_constraint(std::string name, std::vector<Term> terms,
                                  Relation relation, const Rational& rhs) {
  std::map<int, Rational> merged;
  for (Term& t : terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw std::out_of_range("constraint " + name +
                              " references undeclared variable " +
                              std::to_string(t.var));
    }
    merged[t.var] += t.coef;
  }
  Constraint c{std::move(name), {}, relation, rhs};
  for (auto& [var, coef] : merged) {
    if (coef != 0) c.terms.push_back({var, coef});
  }
  constraints_.push_back(std::move(c));
  return num_constraints() - 1;
}

std::optional<int> LinearProgram::find_variable(const std::string& name) const {
  for (int j = 0; j < num_variables(); ++j) {
    if (variables_[j].name == name) return j;
  }
  return std::nullopt;
}

Rational LinearProgram::objective_value(std::span<const Rational> x) const {
  Rational v = 0;
  for (int j = 0; j < num_variables(); ++j) {
    if (objective_[j] != 0) v += objective_[j] * x[j];
  }
  return v;
}

Rational LinearProgram::row_activity(int constraint,
                                     std::span<const Rational> x) const {
  Rational v = 0;
  for (const Term& t : constraints_[constraint].terms) v += t.coef * x[t.var];
  return v;
}

std::optional<int> LinearProgram::first_violation(
    std::span<const Rational> x) const {
  for (int j = 0; j < num_variables(); ++j) {
    if (variables_[j].domain == Domain::kNonNegative && x[j] < 0) return -(1 + j);
  }
  for (int i = 0; i < num_constraints(); ++i) {
    Rational a = row_activity(i, x);
    const Constraint& c = constraints_[i];
    bool ok = c.relation == Relation::kLessEqual  ? a <= c.rhs
              : c.relation == Relation::kEqual    ? a == c.rhs
                                                  : a >= c.rhs;
    if (!ok) return i;
  }
  return std::nullopt;
}

namespace {

// +1 when the row keeps its orientation in the dual, -1 when it is negated.
int orientation(Sense sense, Relation relation) {
  if (relation == Relation::kEqual) return 1;
  if (sense == Sense::kMaximize) return relation == Relation::kLessEqual ? 1 : -1;
  return relation == Relation::kGreaterEqual ? 1 : -1;
}

}  // namespace

LinearProgram dualize(const LinearProgram& primal) {
  bool max = primal.sense() == Sense::kMaximize;
  LinearProgram dual(max ? Sense::kMinimize : Sense::kMaximize);
  const auto& rows = primal.constraints();
  std::vector<std::vector<Term>> columns(primal.num_variables());
  for (int i = 0; i < primal.num_constraints(); ++i) {
    const Constraint& c = rows[i];
    int s = orientation(primal.sense(), c.relation);
    int y = dual.add_variable("y[" + c.name + "]", c.relation == Relation::kEqual
                                                       ? Domain::kFree
                                                       : Domain::kNonNegative);
    dual.add_objective(y, s * c.rhs);
    for (const Term& t : c.terms) columns[t.var].push_back({y, s * t.coef});
  }
  for (int j = 0; j < primal.num_variables(); ++j) {
    const Variable& v = primal.variables()[j];
    Relation rel = v.domain == Domain::kFree ? Relation::kEqual
                   : max                     ? Relation::kGreaterEqual
                                             : Relation::kLessEqual;
    dual.add_constraint("c[" + v.name + "]", columns[j], rel,
                        primal.objective()[j]);
  }
  return dual;
}

const char* to_string(Status status) {
  switch (status) {
    case Status::kOptimal:
      return "optimal";
    case Status::kInfeasible:
      return "infeasible";
    case Status::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

constexpr int kDegenerateRunBeforeBland = 50;

// Dense tableau for  max c x  s.t.  A x = b, x >= 0, b >= 0, with one
// artificial column per row. Row `m` (objective row) holds z_j - c_j.
class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
          int structural)
      : rows_(static_cast<int>(a.size())), structural_(structural) {
    cols_ = structural_ + rows_;
    t_.assign(rows_ + 1, std::vector<Rational>(cols_ + 1));
    basis_.resize(rows_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < structural_; ++j) t_[i][j] = a[i][j];
      t_[i][structural_ + i] = 1;
      t_[i][cols_] = b[i];
      basis_[i] = structural_ + i;
    }
  }

  // Phase 1: maximize -sum(artificials). Returns false if infeasible.
  bool phase_one() {
    std::vector<Rational> cost(cols_);
    for (int i = 0; i < rows_; ++i) cost[structural_ + i] = -1;
    load_objective(cost);
    // Artificials may enter during phase one only while basic ones remain.
    run(cols_, /*unbounded_ok=*/false);
    if (t_[rows_][cols_] != 0) return false;
    drive_out_artificials();
    return true;
  }

  // Phase 2 over structural columns only. Returns false if unbounded.
  bool phase_two(const std::vector<Rational>& cost) {
    std::vector<Rational> full(cols_);
    std::copy(cost.begin(), cost.end(), full.begin());
    load_objective(full);
    return run(structural_, /*unbounded_ok=*/true);
  }

  std::vector<Rational> values() const {
    std::vector<Rational> x(cols_);
    for (int i = 0; i < rows_; ++i) x[basis_[i]] = t_[i][cols_];
    return x;
  }

  Rational objective() const { return t_[rows_][cols_]; }

  // Simplex multiplier of original row i (0 for dropped redundant rows):
  // the reduced cost of the row's artificial column, whose phase-two cost is 0.
  Rational multiplier(int original_row) const {
    if (dropped_[original_row]) return 0;
    return t_[rows_][structural_ + original_row];
  }

  int pivots() const { return pivots_; }

 private:
  void load_objective(const std::vector<Rational>& cost) {
    auto& z = t_[rows_];
    for (int j = 0; j <= cols_; ++j) z[j] = j < cols_ ? Rational(-cost[j]) : Rational(0);
    for (int i = 0; i < rows_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (int j = 0; j <= cols_; ++j) {
        if (t_[i][j] != 0) z[j] += cb * t_[i][j];
      }
    }
  }

  // Returns false when an improving column has no positive entry.
  bool run(int enterable, bool unbounded_ok) {
    bool bland = false;
    int degenerate_run = 0;
    while (true) {
      const auto& z = t_[rows_];
      int enter = -1;
      for (int j = 0; j < enterable; ++j) {
        if (z[j] >= 0 || is_basic(j)) continue;
        if (enter < 0) {
          enter = j;
          if (bland) break;
        } else if (z[j] < z[enter]) {
          enter = j;
        }
      }
      if (enter < 0) return true;

      int leave = -1;
      Rational best_ratio;
      for (int i = 0; i < rows_; ++i) {
        if (t_[i][enter] <= 0) continue;
        Rational ratio = t_[i][cols_] / t_[i][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) {
        if (!unbounded_ok) throw std::logic_error("phase one cannot be unbounded");
        return false;
      }
      if (best_ratio == 0) {
        if (++degenerate_run > kDegenerateRunBeforeBland) bland = true;
      } else {
        degenerate_run = 0;
      }
      pivot(leave, enter);
    }
  }

  bool is_basic(int col) const {
    return std::find(basis_.begin(), basis_.end(), col) != basis_.end();
  }

  void pivot(int r, int c) {
    ++pivots_;
    auto& prow = t_[r];
    Rational inv = 1 / prow[c];
    std::vector<int> nz;
    for (int j = 0; j <= cols_; ++j) {
      if (prow[j] != 0) {
        prow[j] *= inv;
        nz.push_back(j);
      }
    }
    for (int i = 0; i <= rows_; ++i) {
      if (i == r || t_[i][c] == 0) continue;
      Rational f = t_[i][c];
      for (int j : nz) t_[i][j] -= f * prow[j];
    }
    basis_[r] = c;
  }

  void drive_out_artificials() {
    dropped_.assign(rows_, false);
    std::vector<int> keep;
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] >= structural_) {
        int col = -1;
        for (int j = 0; j < structural_; ++j) {
          if (t_[i][j] != 0 && !is_basic(j)) {
            col = j;
            break;
          }
        }
        if (col >= 0) {
          pivot(i, col);
        } else {
          // Linearly dependent row.
          dropped_[basis_[i] - structural_] = true;
          continue;
        }
      }
      keep.push_back(i);
    }
    if (static_cast<int>(keep.size()) == rows_) return;
    std::vector<std::vector<Rational>> t;
    std::vector<int> basis;
    for (int i : keep) {
      t.push_back(std::move(t_[i]));
      basis.push_back(basis_[i]);
    }
    t.push_back(std::move(t_[rows_]));
    t_ = std::move(t);
    basis_ = std::move(basis);
    rows_ = static_cast<int>(keep.size());
  }

  int rows_;
  int structural_;
  int cols_;
  int pivots_ = 0;
  std::vector<std::vector<Rational>> t_;
  std::vector<int> basis_;
  std::vector<bool> dropped_;
};

}  // namespace

Solution solve(const LinearProgram& lp) {
  const int n = lp.num_variables();
  const int m = lp.num_constraints();
  bool max = lp.sense() == Sense::kMaximize;

  // Column layout: one column per variable, a second (negative part) per free
  // variable, then one slack per inequality.
  std::vector<int> pos_col(n), neg_col(n, -1);
  int cols = 0;
  for (int j = 0; j < n; ++j) pos_col[j] = cols++;
  for (int j = 0; j < n; ++j) {
    if (lp.variables()[j].domain == Domain::kFree) neg_col[j] = cols++;
  }
  std::vector<int> slack_col(m, -1);
  for (int i = 0; i < m; ++i) {
    if (lp.constraints()[i].relation != Relation::kEqual) slack_col[i] = cols++;
  }

  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(cols));
  std::vector<Rational> b(m);
  std::vector<int> flip(m, 1);
  for (int i = 0; i < m; ++i) {
    const Constraint& c = lp.constraints()[i];
    for (const Term& t : c.terms) {
      a[i][pos_col[t.var]] += t.coef;
      if (neg_col[t.var] >= 0) a[i][neg_col[t.var]] -= t.coef;
    }
    if (slack_col[i] >= 0) {
      a[i][slack_col[i]] = c.relation == Relation::kLessEqual ? 1 : -1;
    }
    b[i] = c.rhs;
    if (b[i] < 0) {
      flip[i] = -1;
      for (Rational& v : a[i]) v = -v;
      b[i] = -b[i];
    }
  }

  std::vector<Rational> cost(cols);
  for (int j = 0; j < n; ++j) {
    Rational c = max ? lp.objective()[j] : Rational(-lp.objective()[j]);
    cost[pos_col[j]] = c;
    if (neg_col[j] >= 0) cost[neg_col[j]] = -c;
  }

  Solution out;
  Tableau tableau(std::move(a), std::move(b), cols);
  if (!tableau.phase_one()) {
    out.status = Status::kInfeasible;
    out.pivots = tableau.pivots();
    return out;
  }
  if (!tableau.phase_two(cost)) {
    out.status = Status::kUnbounded;
    out.pivots = tableau.pivots();
    return out;
  }

  std::vector<Rational> x = tableau.values();
  out.status = Status::kOptimal;
  out.pivots = tableau.pivots();
  out.primal.resize(n);
  for (int j = 0; j < n; ++j) {
    out.primal[j] = x[pos_col[j]];
    if (neg_col[j] >= 0) out.primal[j] -= x[neg_col[j]];
  }
  out.objective = lp.objective_value(out.primal);

  out.dual.resize(m);
  for (int i = 0; i < m; ++i) {
    // Multiplier for the row as written, in the internal maximization.
    Rational raw = flip[i] * tableau.multiplier(i);
    Relation rel = lp.constraints()[i].relation;
    int s = max ? (rel == Relation::kGreaterEqual ? -1 : 1)
                : (rel == Relation::kLessEqual ? 1 : -1);
    out.dual[i] = s * raw;
  }
  return out;
}

}  // namespace trustlp::lp
