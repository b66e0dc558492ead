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

#ifndef TRUSTLP_GAME_H_
#define TRUSTLP_GAME_H_

// The sender-receiver recovery game over a q-symbol alphabet with q signals.
//
// Indexing conventions (all 0-based internally, rendered 1-based):
//   UtilityMatrix    u(r, x)   utility when source x is recovered as r
//   SenderStrategy   pi(y, x)  probability of signal y given source x
//   ReceiverStrategy s(r, y)   probability of recovering r from signal y
//   RecoveryKernel   mu(r, x)  probability of recovering r given source x
// Every strategy and kernel is column-stochastic.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trustlp/errors.h"
#include "trustlp/rational.h"

namespace trustlp {

class UtilityMatrix {
 public:
  // Throws InvalidInstance unless the matrix is square, non-empty and has a
  // zero diagonal.
  explicit UtilityMatrix(Matrix entries);

  // Subtracts u(x, x) from column x. Returns the normalized matrix and the
  // constant sum_x u(x, x) that the original objective exceeds it by.
  static std::pair<UtilityMatrix, Rational> normalized(Matrix entries);

  int size() const { return entries_.rows(); }
  const Rational& operator()(int recovered, int source) const {
    return entries_(recovered, source);
  }
  const Matrix& entries() const { return entries_; }

  bool operator==(const UtilityMatrix& other) const = default;

 private:
  Matrix entries_;
};

enum class Violation { kNone, kShape, kRange, kColumnSum, kTrust };

struct ValidationReport {
  Violation kind = Violation::kNone;
  // Offending cell or column; -1 when not applicable.
  int row = -1;
  int col = -1;
  std::string detail;

  bool ok() const { return kind == Violation::kNone; }
};

// Exact column-stochasticity check. Reports the first violation found in
// column-major order.
ValidationReport validate_conditional(const Matrix& m);

// As above, then optionally the trust constraints mu(r|r) >= mu(r|x).
ValidationReport validate_kernel(const Matrix& m, bool check_trust);

struct SenderTag {};
struct ReceiverTag {};
struct KernelTag {};

// A validated column-stochastic square matrix. The tag keeps sender,
// receiver and kernel matrices from being mixed up.
template <class Tag>
class Conditional {
 public:
  explicit Conditional(Matrix m) : m_(std::move(m)) {
    ValidationReport report = validate_conditional(m_);
    if (!report.ok()) throw InvalidInstance(report.detail);
  }

  static Conditional identity(int q) { return Conditional(Matrix::identity(q)); }

  int size() const { return m_.rows(); }
  const Rational& operator()(int row, int col) const { return m_(row, col); }
  const Matrix& matrix() const { return m_; }

  bool operator==(const Conditional& other) const = default;

 private:
  Matrix m_;
};

using SenderStrategy = Conditional<SenderTag>;
using ReceiverStrategy = Conditional<ReceiverTag>;
using RecoveryKernel = Conditional<KernelTag>;

// E_x(pi): signals sent with positive probability from source x.
std::vector<int> support(const SenderStrategy& pi, int source);

// Y(pi): signals with any positive entry.
std::vector<int> active_signals(const SenderStrategy& pi);

// Symbols recovered with positive probability from some active signal.
std::vector<int> recovered_symbols(const SenderStrategy& pi,
                                   const ReceiverStrategy& sigma);

// {x : mu(x|x) > 0}.
std::vector<int> recovered_symbols(const RecoveryKernel& mu);

bool trust_feasible(const RecoveryKernel& mu);

// V(mu) = sum mu(r|x) u(r, x).
Rational kernel_value(const UtilityMatrix& u, const RecoveryKernel& mu);

// sum_x mu(x|x): expected number of correctly recovered symbols.
Rational kernel_recovery(const RecoveryKernel& mu);

// Sets the columns of signals unused by pi to uniform.
ReceiverStrategy canonicalize(const ReceiverStrategy& sigma,
                              const SenderStrategy& pi);

struct SignalResponse {
  int signal = 0;
  // argmax_x pi(signal|x), ascending.
  std::vector<int> argmax;
  Rational peak;
};

// The best-response set of a sender strategy, kept implicitly as one argmax
// set per active signal. A receiver strategy is a best response exactly when
// each active column is supported inside its argmax set.
class BestResponseStructure {
 public:
  BestResponseStructure(int q, std::vector<SignalResponse> signals)
      : q_(q), signals_(std::move(signals)) {}

  int size() const { return q_; }
  const std::vector<SignalResponse>& signals() const { return signals_; }

  // True when every argmax set is a singleton, i.e. the best response is
  // unique (and then necessarily deterministic).
  bool unique() const;

  // Number of deterministic best responses (product of argmax sizes).
  std::size_t deterministic_count() const;

  bool is_best_response(const ReceiverStrategy& sigma) const;

  // choice[k] is the symbol recovered from signals()[k].signal. Unused
  // signals get the canonical uniform column. Throws InvalidInstance if a
  // choice lies outside its argmax set.
  ReceiverStrategy deterministic(std::span<const int> choice) const;

  // Every deterministic best response in lexicographic order of choices.
  std::vector<ReceiverStrategy> all_deterministic() const;

 private:
  int q_;
  std::vector<SignalResponse> signals_;
};

BestResponseStructure best_response_structure(const SenderStrategy& pi);

// R(pi, sigma) = sum_{x,y} pi(y|x) sigma(x|y), in [0, q].
Rational recovery_value(const SenderStrategy& pi, const ReceiverStrategy& sigma);

// U(pi, sigma) = sum pi(y|x) sigma(r|y) u(r, x) (not scaled by 1/q).
Rational expected_utility(const UtilityMatrix& u, const SenderStrategy& pi,
                          const ReceiverStrategy& sigma);

// mu(r|x) = sum_y pi(y|x) sigma(r|y).
RecoveryKernel induced_kernel(const SenderStrategy& pi,
                              const ReceiverStrategy& sigma);

struct ResponseValue {
  Rational value;
  // A deterministic best response attaining the value.
  ReceiverStrategy witness;
};

// Worst / best expected utility over the receiver's best responses.
ResponseValue wceu(const UtilityMatrix& u, const SenderStrategy& pi);
ResponseValue bceu(const UtilityMatrix& u, const SenderStrategy& pi);

// Scalar-generic form of the wceu/bceu per-signal decomposition, for callers
// that work on scaled integer grids. `pi` is row-major pi[y * q + x] and
// `utility` row-major u[r * q + x]; the result is
//   sum over active y of  min (or max) over r in argmax_x pi[y][x]
//                         of sum_x pi[y][x] * u[r][x].
template <class T>
T extreme_response_sum(int q, std::span<const T> pi, std::span<const T> utility,
                       bool worst) {
  T total(0);
  for (int y = 0; y < q; ++y) {
    const T* row = pi.data() + static_cast<std::size_t>(y) * q;
    T peak = row[0];
    for (int x = 1; x < q; ++x) {
      if (peak < row[x]) peak = row[x];
    }
    if (peak == T(0)) continue;
    bool have = false;
    T best(0);
    for (int r = 0; r < q; ++r) {
      if (row[r] != peak) continue;
      const T* urow = utility.data() + static_cast<std::size_t>(r) * q;
      T t(0);
      for (int x = 0; x < q; ++x) {
        if (row[x] != T(0)) t += row[x] * urow[x];
      }
      if (!have || (worst ? t < best : best < t)) best = t;
      have = true;
    }
    total += best;
  }
  return total;
}

}  // namespace trustlp

#endif  // TRUSTLP_GAME_H_
