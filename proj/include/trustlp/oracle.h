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

#ifndef TRUSTLP_ORACLE_H_
#define TRUSTLP_ORACLE_H_

// Brute-force checks of the game value that share no code with the simplex
// solver: exhaustive search over gridded sender strategies and enumeration
// of the vertices of the trust polytope.

#include <cstdint>
#include <optional>
#include <vector>

#include "trustlp/game.h"

namespace trustlp {

struct GridSpec {
  // Probabilities restricted to {0, 1/N, ..., 1}.
  int resolution = 1;
  // Maximum number of sender strategies to evaluate.
  std::uint64_t budget = 50'000'000;
  // Worker threads; 0 picks the hardware concurrency.
  int threads = 0;
};

// Number of column-stochastic q x q matrices on the grid (saturates at
// UINT64_MAX).
std::uint64_t grid_size(int q, int resolution);

struct GridResult {
  int resolution = 1;
  Rational best_wceu;
  // First maximizer in lexicographic order of column compositions.
  SenderStrategy witness;
  std::uint64_t evaluated = 0;
};

// Exhaustive maximum of wceu over gridded strategies. Throws ResourceLimit
// when the grid exceeds the budget or the scaled values could overflow.
GridResult grid_search_sgv(const UtilityMatrix& u, const GridSpec& grid);

struct VertexResult {
  Rational best_value;
  RecoveryKernel witness;
  // Vertices of {mu column-stochastic, trust constraints}.
  std::vector<RecoveryKernel> vertices;
};

// Maximum of V over the vertices of the trust polytope, found by the double
// description method on exact integer rays. q <= 4, else ResourceLimit.
VertexResult vertex_enumeration_sgv(const UtilityMatrix& u);

struct GridLevel {
  GridResult result;
  // lp sgv - best wceu.
  Rational gap;
};

struct OracleReport {
  Rational lp_sgv;
  std::vector<GridLevel> grid;
  std::optional<VertexResult> vertex;
  // Deterministic best responses whose induced kernels were re-checked for
  // trust feasibility.
  std::size_t kernels_checked = 0;
};

struct PropertyRun {
  std::uint64_t seed = 0;
  std::size_t strategies = 0;
  std::size_t kernels = 0;
};

// Draws `count` random gridded q x q sender strategies from a seeded
// mt19937_64 and checks that every deterministic best response induces a
// trust-feasible kernel. Throws VerificationFailure with the witness.
PropertyRun trust_closure_run(int q, std::uint64_t seed, int count,
                              int resolution = 6);

// Runs the grid search at each resolution (each must divide the next) and,
// for q <= 4, vertex enumeration; compares both against the certified LP
// value. Throws VerificationFailure naming the failed check and its witness:
// grid above the LP value, vertex value different from it, a gap increasing
// with the resolution, or an untrustworthy induced kernel.
OracleReport cross_check(const UtilityMatrix& u, const std::vector<int>& resolutions,
                         const GridSpec& base = {});

}  // namespace trustlp

#endif  // TRUSTLP_ORACLE_H_
