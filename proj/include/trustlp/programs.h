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

#ifndef TRUSTLP_PROGRAMS_H_
#define TRUSTLP_PROGRAMS_H_

// The three linear programs of the persuasion game.
//
// Primal (value program), over kernels mu(r|x) >= 0:
//   max  sum_{r,x} mu(r|x) u(r,x)
//   s.t. sum_r mu(r|x) = 1                 for every x     ("sum[x]")
//        mu(r|r) - mu(r|x) >= 0            for every r != x ("trust[r,x]")
//
// Dual, with w(x) free and v(r,x) >= 0 for r != x:
//   min  sum_x w(x)
//   s.t. w(x) - sum_{r != x} v(x,r) >= 0              for mu(x|x)
//        w(x) + v(r,x) >= u(r,x)                      for mu(r|x), r != x
//
// Informativeness: min sum_x mu(x|x) over the optimal face of the primal.
//
// Variable and constraint order is fixed: mu(r|x) is primal variable
// r * q + x; the q sum rows come first, then trust rows for r-major pairs.
// Dual variables follow primal rows and dual rows follow primal variables,
// so certificates can be paired by index.

#include <string>
#include <vector>

#include "trustlp/game.h"
#include "trustlp/lp.h"

namespace trustlp {

// Ordered pairs (r, x), r != x, in r-major order.
std::vector<std::pair<int, int>> off_diagonal_pairs(int q);

inline int kernel_var(int q, int recovered, int source) {
  return recovered * q + source;
}

lp::LinearProgram build_primal(const UtilityMatrix& u);
lp::LinearProgram build_dual(const UtilityMatrix& u);

enum class InformativenessForm {
  // Primal constraints plus V(mu) = sgv.
  kTwoStage,
  // (mu, w, v) primal- and dual-feasible with sum w = V(mu); `sgv` unused.
  kJoint,
};

lp::LinearProgram build_informativeness(
    const UtilityMatrix& u, const Rational& sgv,
    InformativenessForm form = InformativenessForm::kTwoStage);

// Reads the q x q kernel block out of a solution of any of the programs
// above (mu variables always come first).
RecoveryKernel kernel_from_solution(int q, const std::vector<Rational>& x);

struct LpCertificate {
  lp::Status status = lp::Status::kInfeasible;
  std::vector<Rational> primal;
  // Values of the paired dual program's variables, e.g. (w, v) for the
  // primal value program.
  std::vector<Rational> dual;
  Rational objective;
  bool strong_duality_verified = false;
  bool complementary_slackness_verified = false;
};

LpCertificate to_certificate(const lp::Solution& solution);

struct CertificationReport {
  Rational primal_objective;
  Rational dual_objective;
  int slackness_pairs_checked = 0;
};

// Exact checks, in order: primal feasibility, dual feasibility, equal
// objectives, complementary slackness in both directions. `dual` must pair
// with `primal` by index (dual variable i <-> primal row i, dual row j <->
// primal variable j). On success sets both verified flags; otherwise throws
// CertificationFailure naming the first failed condition.
CertificationReport certify(LpCertificate& cert, const lp::LinearProgram& primal,
                            const lp::LinearProgram& dual);

// Solves the primal value program and certifies it against build_dual.
// q = 1 short-circuits to the single kernel [1] with value 0.
LpCertificate solve_certified(const UtilityMatrix& u);

// w(x) and v(r, x) from a certificate of the primal value program.
struct DualAssignment {
  std::vector<Rational> w;
  Matrix v;  // v(r, x), zero on the diagonal
};
DualAssignment dual_assignment(int q, const LpCertificate& cert);

}  // namespace trustlp

#endif  // TRUSTLP_PROGRAMS_H_
