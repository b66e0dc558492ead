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

#include "trustlp/programs.h"

namespace trustlp {

namespace {

using lp::Domain;
using lp::LinearProgram;
using lp::Relation;
using lp::Sense;
using lp::Term;

std::string label(int r, int x) {
  return std::to_string(r + 1) + "|" + std::to_string(x + 1);
}

std::string pair_label(int a, int b) {
  return std::to_string(a + 1) + "," + std::to_string(b + 1);
}

// Declares the mu variables and the primal rows on `lp`.
void add_kernel_block(LinearProgram& lp, int q) {
  for (int r = 0; r < q; ++r) {
    for (int x = 0; x < q; ++x) lp.add_variable("mu(" + label(r, x) + ")");
  }
  for (int x = 0; x < q; ++x) {
    std::vector<Term> terms;
    for (int r = 0; r < q; ++r) terms.push_back({kernel_var(q, r, x), 1});
    lp.add_constraint("sum[" + std::to_string(x + 1) + "]", std::move(terms),
                      Relation::kEqual, 1);
  }
  for (auto [r, x] : off_diagonal_pairs(q)) {
    lp.add_constraint("trust[" + pair_label(r, x) + "]",
                      {{kernel_var(q, r, r), 1}, {kernel_var(q, r, x), -1}},
                      Relation::kGreaterEqual, 0);
  }
}

// Declares w and v on `lp` after any existing variables, then the dual rows.
// Returns the index of the first w variable.
int add_dual_block(LinearProgram& lp, const UtilityMatrix& u) {
  int q = u.size();
  int w0 = lp.num_variables();
  for (int x = 0; x < q; ++x) {
    lp.add_variable("w(" + std::to_string(x + 1) + ")", Domain::kFree);
  }
  auto pairs = off_diagonal_pairs(q);
  // v in the same r-major order as the trust rows.
  std::vector<int> v_index(static_cast<std::size_t>(q) * q, -1);
  for (auto [r, x] : pairs) {
    v_index[static_cast<std::size_t>(r) * q + x] =
        lp.add_variable("v(" + pair_label(r, x) + ")");
  }
  for (int r = 0; r < q; ++r) {
    for (int x = 0; x < q; ++x) {
      std::vector<Term> terms{{w0 + x, 1}};
      if (r == x) {
        for (int other = 0; other < q; ++other) {
          if (other != x) {
            terms.push_back({v_index[static_cast<std::size_t>(x) * q + other], -1});
          }
        }
        lp.add_constraint("c[mu(" + label(r, x) + ")]", std::move(terms),
                          Relation::kGreaterEqual, 0);
      } else {
        terms.push_back({v_index[static_cast<std::size_t>(r) * q + x], 1});
        lp.add_constraint("c[mu(" + label(r, x) + ")]", std::move(terms),
                          Relation::kGreaterEqual, u(r, x));
      }
    }
  }
  return w0;
}

std::vector<Term> value_terms(const UtilityMatrix& u) {
  int q = u.size();
  std::vector<Term> terms;
  for (int r = 0; r < q; ++r) {
    for (int x = 0; x < q; ++x) {
      if (u(r, x) != 0) terms.push_back({kernel_var(q, r, x), u(r, x)});
    }
  }
  return terms;
}

}  // namespace

std::vector<std::pair<int, int>> off_diagonal_pairs(int q) {
  std::vector<std::pair<int, int>> out;
  for (int r = 0; r < q; ++r) {
    for (int x = 0; x < q; ++x) {
      if (r != x) out.emplace_back(r, x);
    }
  }
  return out;
}

LinearProgram build_primal(const UtilityMatrix& u) {
  LinearProgram lp(Sense::kMaximize);
  add_kernel_block(lp, u.size());
  for (const Term& t : value_terms(u)) lp.add_objective(t.var, t.coef);
  return lp;
}

LinearProgram build_dual(const UtilityMatrix& u) {
  LinearProgram lp(Sense::kMinimize);
  int w0 = add_dual_block(lp, u);
  for (int x = 0; x < u.size(); ++x) lp.add_objective(w0 + x, 1);
  return lp;
}

LinearProgram build_informativeness(const UtilityMatrix& u, const Rational& sgv,
                                    InformativenessForm form) {
  int q = u.size();
  LinearProgram lp(Sense::kMinimize);
  add_kernel_block(lp, q);
  for (int x = 0; x < q; ++x) lp.add_objective(kernel_var(q, x, x), 1);
  if (form == InformativenessForm::kTwoStage) {
    lp.add_constraint("value", value_terms(u), Relation::kEqual, sgv);
    return lp;
  }
  int w0 = add_dual_block(lp, u);
  std::vector<Term> gap;
  for (int x = 0; x < q; ++x) gap.push_back({w0 + x, 1});
  for (const Term& t : value_terms(u)) gap.push_back({t.var, -t.coef});
  lp.add_constraint("duality_gap", std::move(gap), Relation::kEqual, 0);
  return lp;
}

RecoveryKernel kernel_from_solution(int q, const std::vector<Rational>& x) {
  Matrix mu(q, q);
  for (int r = 0; r < q; ++r) {
    for (int s = 0; s < q; ++s) mu(r, s) = x.at(kernel_var(q, r, s));
  }
  return RecoveryKernel(std::move(mu));
}

LpCertificate to_certificate(const lp::Solution& solution) {
  LpCertificate cert;
  cert.status = solution.status;
  cert.primal = solution.primal;
  cert.dual = solution.dual;
  cert.objective = solution.objective;
  return cert;
}

CertificationReport certify(LpCertificate& cert, const LinearProgram& primal,
                            const LinearProgram& dual) {
  cert.strong_duality_verified = false;
  cert.complementary_slackness_verified = false;
  if (cert.status != lp::Status::kOptimal) {
    throw CertificationFailure(std::string("status is ") +
                               lp::to_string(cert.status) + ", not optimal");
  }
  if (dual.num_variables() != primal.num_constraints() ||
      dual.num_constraints() != primal.num_variables() ||
      static_cast<int>(cert.primal.size()) != primal.num_variables() ||
      static_cast<int>(cert.dual.size()) != dual.num_variables()) {
    throw CertificationFailure("primal and dual programs do not pair by index");
  }

  auto describe = [](const LinearProgram& lp, int where) {
    return where >= 0 ? "constraint " + lp.constraints()[where].name
                      : "sign of " + lp.variables()[-(where + 1)].name;
  };
  if (auto v = primal.first_violation(cert.primal)) {
    throw CertificationFailure("primal feasibility: " + describe(primal, *v));
  }
  if (auto v = dual.first_violation(cert.dual)) {
    throw CertificationFailure("dual feasibility: " + describe(dual, *v));
  }

  CertificationReport report;
  report.primal_objective = primal.objective_value(cert.primal);
  report.dual_objective = dual.objective_value(cert.dual);
  if (report.primal_objective != report.dual_objective ||
      report.primal_objective != cert.objective) {
    throw CertificationFailure("objective equality: primal " +
                               to_string(report.primal_objective) + " vs dual " +
                               to_string(report.dual_objective));
  }
  cert.strong_duality_verified = true;

  for (int j = 0; j < primal.num_variables(); ++j) {
    if (cert.primal[j] == 0) continue;
    ++report.slackness_pairs_checked;
    if (!dual.tight(j, cert.dual)) {
      throw CertificationFailure("complementary slackness: " +
                                 primal.variables()[j].name +
                                 " is positive but " +
                                 dual.constraints()[j].name + " is slack");
    }
  }
  for (int i = 0; i < dual.num_variables(); ++i) {
    if (cert.dual[i] == 0) continue;
    ++report.slackness_pairs_checked;
    if (!primal.tight(i, cert.primal)) {
      throw CertificationFailure("complementary slackness: " +
                                 dual.variables()[i].name + " is nonzero but " +
                                 primal.constraints()[i].name + " is slack");
    }
  }
  cert.complementary_slackness_verified = true;
  return report;
}

LpCertificate solve_certified(const UtilityMatrix& u) {
  LinearProgram primal = build_primal(u);
  LpCertificate cert = to_certificate(lp::solve(primal));
  certify(cert, primal, build_dual(u));
  return cert;
}

DualAssignment dual_assignment(int q, const LpCertificate& cert) {
  DualAssignment out{std::vector<Rational>(cert.dual.begin(), cert.dual.begin() + q),
                     Matrix(q, q)};
  int k = q;
  for (auto [r, x] : off_diagonal_pairs(q)) out.v(r, x) = cert.dual.at(k++);
  return out;
}

}  // namespace trustlp
