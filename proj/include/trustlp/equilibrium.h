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

#ifndef TRUSTLP_EQUILIBRIUM_H_
#define TRUSTLP_EQUILIBRIUM_H_

#include <optional>
#include <vector>

#include "trustlp/game.h"
#include "trustlp/programs.h"

namespace trustlp {

struct StrategyPair {
  SenderStrategy sender;
  ReceiverStrategy receiver;
};

struct EquilibriumReport {
  // Stackelberg game value: optimum of the trust-constrained value program.
  Rational sgv;
  // Minimum of sum_x mu(x|x) over optimal kernels.
  Rational informativeness;
  // Optimal kernel attaining both values.
  RecoveryKernel kernel;
  StrategyPair witness;
  // Certified solution of the value program (w, v in `dual`).
  LpCertificate certificate;
  // wceu(witness.sender) == sgv.
  bool sgv_attained_exactly = false;
  // The identity kernel is the only optimum (informativeness == q).
  bool full_disclosure = false;
};

// Certified value program, then the informativeness program pinned to the
// certified value. Throws CertificationFailure if certification fails.
EquilibriumReport solve_game(
    const UtilityMatrix& u,
    InformativenessForm form = InformativenessForm::kTwoStage);

// Signals are labelled by symbol: pi(i|x) = mu(i|x) for recovered symbols i,
// and sigma decodes signal i as symbol i. Unused signals keep the canonical
// uniform column. Throws InvalidInstance unless mu is trust-feasible.
StrategyPair kernel_to_strategies(const RecoveryKernel& mu);

struct EpsSesStep {
  int k = 1;
  SenderStrategy strategy;
  Rational wceu;
  // sgv - wceu(strategy).
  Rational epsilon;
  bool unique_br = false;
};

struct EpsSesSequence {
  StrategyPair limit;
  Rational sgv;
  Rational delta;
  // The limit strategy already attains the value; no perturbation needed.
  bool attained = false;
  std::vector<EpsSesStep> steps;
};

// Perturbs the limit strategy built from an optimal kernel so that every
// step has a unique best response: on each tied entry pi(i|x) = pi(i|i)
// subtract delta/k and move the removed mass to signal x. When the limit
// already attains the value the result is that single unperturbed step.
// `delta` defaults to half the smallest positive diagonal entry of mu.
// Throws InvalidInstance if mu is not optimal, delta is out of range, or some
// k < 1.
EpsSesSequence eps_ses_sequence(const UtilityMatrix& u, const RecoveryKernel& mu,
                                const std::vector<int>& ks,
                                std::optional<Rational> delta = std::nullopt);

// True iff every off-diagonal utility is negative.
bool full_disclosure_check(const UtilityMatrix& u);

struct InfoBounds {
  Rational lower;
  Rational upper;
  // Largest / smallest positive utility; absent when there is none.
  std::optional<Rational> u_plus;
  std::optional<Rational> u_minus;
};

// Informativeness bounds q - sgv/u_minus <= I <= q - sgv/u_plus. nullopt when
// some off-diagonal utility is exactly zero.
std::optional<InfoBounds> sgv_info_bounds(const UtilityMatrix& u,
                                          const Rational& sgv);
std::optional<InfoBounds> sgv_info_bounds(const UtilityMatrix& u);

// Whether the optimal face of the value program is a single kernel, decided
// by minimizing and maximizing every entry over the face.
bool optimal_kernel_unique(const UtilityMatrix& u, const Rational& sgv);

}  // namespace trustlp

#endif  // TRUSTLP_EQUILIBRIUM_H_
