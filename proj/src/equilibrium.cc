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

#include "trustlp/equilibrium.h"

#include <algorithm>

namespace trustlp {

namespace {

Rational certified_sgv(const UtilityMatrix& u) {
  if (u.size() == 1) return 0;
  return solve_certified(u).objective;
}

}  // namespace

StrategyPair kernel_to_strategies(const RecoveryKernel& mu) {
  ValidationReport report = validate_kernel(mu.matrix(), true);
  if (!report.ok()) throw InvalidInstance(report.detail);
  int q = mu.size();
  // Rows of unrecovered symbols are zero under the trust constraints, so the
  // sender matrix is mu itself with signal i standing for symbol i.
  SenderStrategy pi(mu.matrix());
  Matrix sigma(q, q, Rational(1, q));
  for (int i : recovered_symbols(mu)) {
    for (int r = 0; r < q; ++r) sigma(r, i) = r == i ? 1 : 0;
  }
  return {std::move(pi), ReceiverStrategy(std::move(sigma))};
}

EquilibriumReport solve_game(const UtilityMatrix& u, InformativenessForm form) {
  int q = u.size();
  if (q == 1) {
    LpCertificate cert;
    cert.status = lp::Status::kOptimal;
    cert.primal = {Rational(1)};
    cert.dual = {Rational(0)};
    cert.objective = 0;
    cert.strong_duality_verified = true;
    cert.complementary_slackness_verified = true;
    RecoveryKernel mu = RecoveryKernel::identity(1);
    return {0, 1, mu, kernel_to_strategies(mu), cert, true, true};
  }

  LpCertificate cert = solve_certified(u);
  lp::Solution info = lp::solve(build_informativeness(u, cert.objective, form));
  if (info.status != lp::Status::kOptimal) {
    throw CertificationFailure(
        std::string("informativeness program is ") + lp::to_string(info.status) +
        " at the certified value");
  }
  RecoveryKernel mu = kernel_from_solution(q, info.primal);
  StrategyPair witness = kernel_to_strategies(mu);
  Rational worst = wceu(u, witness.sender).value;
  EquilibriumReport report{cert.objective, info.objective, mu, witness, cert,
                           worst == cert.objective, info.objective == q};
  return report;
}

EpsSesSequence eps_ses_sequence(const UtilityMatrix& u, const RecoveryKernel& mu,
                                const std::vector<int>& ks,
                                std::optional<Rational> delta) {
  int q = u.size();
  for (int k : ks) {
    if (k < 1) throw InvalidInstance("sequence indices must be positive");
  }
  Rational sgv = certified_sgv(u);
  Rational value = kernel_value(u, mu);
  if (value != sgv) {
    throw InvalidInstance("kernel is not optimal: V(mu) = " + to_string(value) +
                          " but the certified value is " + to_string(sgv));
  }

  EpsSesSequence out{kernel_to_strategies(mu), sgv, 0, false, {}};
  const SenderStrategy& limit = out.limit.sender;
  std::vector<int> recovered = recovered_symbols(mu);

  // tied[i][x]: x != i ties with i on signal i, so a best response may send
  // signal i to x.
  std::vector<std::vector<bool>> tied(q, std::vector<bool>(q, false));
  Rational min_tied_peak = -1;
  Rational min_peak = -1;
  for (int i : recovered) {
    if (min_peak < 0 || mu(i, i) < min_peak) min_peak = mu(i, i);
    for (int x = 0; x < q; ++x) {
      if (x != i && limit(i, x) == limit(i, i)) {
        tied[i][x] = true;
        if (min_tied_peak < 0 || mu(i, i) < min_tied_peak) min_tied_peak = mu(i, i);
      }
    }
  }
  out.delta = delta.value_or(min_peak / 2);

  Rational limit_wceu = wceu(u, limit).value;
  if (limit_wceu == value) {
    out.attained = true;
    EpsSesStep step{ks.empty() ? 1 : ks.front(), limit, limit_wceu,
                    sgv - limit_wceu,
                    best_response_structure(limit).unique()};
    out.steps.push_back(std::move(step));
    return out;
  }

  int k_min = ks.empty() ? 1 : *std::min_element(ks.begin(), ks.end());
  if (out.delta <= 0) throw InvalidInstance("delta must be positive");
  if (min_tied_peak > 0 && out.delta / k_min > min_tied_peak) {
    throw InvalidInstance("delta/k = " + to_string(out.delta / k_min) +
                          " exceeds the smallest tied entry " +
                          to_string(min_tied_peak));
  }

  for (int k : ks) {
    Rational step_size = out.delta / k;
    Matrix pi = limit.matrix();
    for (int x = 0; x < q; ++x) {
      int ties = 0;
      for (int i : recovered) {
        if (tied[i][x]) {
          pi(i, x) -= step_size;
          ++ties;
        }
      }
      // Signal x is x's own signal when x is recovered, and otherwise a
      // signal the limit strategy never uses.
      pi(x, x) += ties * step_size;
    }
    SenderStrategy strategy(std::move(pi));
    Rational w = wceu(u, strategy).value;
    bool unique = best_response_structure(strategy).unique();
    out.steps.push_back({k, std::move(strategy), w, sgv - w, unique});
  }
  return out;
}

bool full_disclosure_check(const UtilityMatrix& u) {
  for (auto [r, x] : off_diagonal_pairs(u.size())) {
    if (u(r, x) >= 0) return false;
  }
  return true;
}

std::optional<InfoBounds> sgv_info_bounds(const UtilityMatrix& u,
                                          const Rational& sgv) {
  int q = u.size();
  InfoBounds b;
  for (auto [r, x] : off_diagonal_pairs(q)) {
    const Rational& value = u(r, x);
    if (value == 0) return std::nullopt;
    if (value < 0) continue;
    if (!b.u_plus || value > *b.u_plus) b.u_plus = value;
    if (!b.u_minus || value < *b.u_minus) b.u_minus = value;
  }
  if (!b.u_plus) {
    b.lower = q;
    b.upper = q;
    return b;
  }
  b.lower = q - sgv / *b.u_minus;
  b.upper = q - sgv / *b.u_plus;
  return b;
}

std::optional<InfoBounds> sgv_info_bounds(const UtilityMatrix& u) {
  return sgv_info_bounds(u, certified_sgv(u));
}

bool optimal_kernel_unique(const UtilityMatrix& u, const Rational& sgv) {
  int q = u.size();
  lp::LinearProgram face = build_informativeness(u, sgv);
  for (int j = 0; j < q * q; ++j) {
    Rational lo, hi;
    for (int sign : {1, -1}) {
      lp::LinearProgram probe(lp::Sense::kMinimize);
      for (const auto& v : face.variables()) probe.add_variable(v.name, v.domain);
      for (const auto& c : face.constraints()) {
        probe.add_constraint(c.name, c.terms, c.relation, c.rhs);
      }
      probe.add_objective(j, sign);
      lp::Solution s = lp::solve(probe);
      if (s.status != lp::Status::kOptimal) {
        throw InvalidInstance("value " + to_string(sgv) +
                              " is not attained by any feasible kernel");
      }
      (sign == 1 ? lo : hi) = sign * s.objective;
    }
    if (lo != hi) return false;
  }
  return true;
}

}  // namespace trustlp
