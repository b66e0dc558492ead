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

#include "trustlp/game.h"

#include <algorithm>

namespace trustlp {

namespace {

std::string cell(int row, int col) {
  return "(" + std::to_string(row + 1) + "," + std::to_string(col + 1) + ")";
}

void check_same_size(int a, int b) {
  if (a != b) {
    throw InvalidInstance("dimension mismatch: " + std::to_string(a) + " vs " +
                          std::to_string(b));
  }
}

// t(r, y) = sum_x pi(y|x) u(r, x).
Rational signal_utility(const UtilityMatrix& u, const SenderStrategy& pi,
                        int recovered, int signal) {
  Rational t = 0;
  for (int x = 0; x < pi.size(); ++x) {
    if (pi(signal, x) != 0) t += pi(signal, x) * u(recovered, x);
  }
  return t;
}

ResponseValue extreme_response(const UtilityMatrix& u, const SenderStrategy& pi,
                               bool worst) {
  check_same_size(u.size(), pi.size());
  BestResponseStructure br = best_response_structure(pi);
  Rational total = 0;
  std::vector<int> choice;
  for (const SignalResponse& s : br.signals()) {
    int best_r = s.argmax.front();
    Rational best = signal_utility(u, pi, best_r, s.signal);
    for (std::size_t k = 1; k < s.argmax.size(); ++k) {
      Rational t = signal_utility(u, pi, s.argmax[k], s.signal);
      if (worst ? t < best : t > best) {
        best = t;
        best_r = s.argmax[k];
      }
    }
    total += best;
    choice.push_back(best_r);
  }
  return {total, br.deterministic(choice)};
}

}  // namespace

UtilityMatrix::UtilityMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (!entries_.square() || entries_.rows() < 1) {
    throw InvalidInstance("utility matrix must be square with q >= 1");
  }
  for (int i = 0; i < entries_.rows(); ++i) {
    if (entries_(i, i) != 0) {
      throw InvalidInstance("nonzero diagonal entry at " + cell(i, i) + ": " +
                            to_string(entries_(i, i)));
    }
  }
}

std::pair<UtilityMatrix, Rational> UtilityMatrix::normalized(Matrix entries) {
  if (!entries.square() || entries.rows() < 1) {
    throw InvalidInstance("utility matrix must be square with q >= 1");
  }
  Rational shift = 0;
  for (int x = 0; x < entries.cols(); ++x) {
    Rational d = entries(x, x);
    shift += d;
    for (int r = 0; r < entries.rows(); ++r) entries(r, x) -= d;
  }
  return {UtilityMatrix(std::move(entries)), shift};
}

ValidationReport validate_conditional(const Matrix& m) {
  if (!m.square() || m.rows() < 1) {
    return {Violation::kShape, -1, -1,
            "expected a non-empty square matrix, got " +
                std::to_string(m.rows()) + "x" + std::to_string(m.cols())};
  }
  for (int c = 0; c < m.cols(); ++c) {
    Rational sum = 0;
    for (int r = 0; r < m.rows(); ++r) {
      if (m(r, c) < 0 || m(r, c) > 1) {
        return {Violation::kRange, r, c,
                "entry " + cell(r, c) + " = " + to_string(m(r, c)) +
                    " outside [0,1]"};
      }
      sum += m(r, c);
    }
    if (sum != 1) {
      return {Violation::kColumnSum, -1, c,
              "column " + std::to_string(c + 1) + " sums to " + to_string(sum)};
    }
  }
  return {};
}

ValidationReport validate_kernel(const Matrix& m, bool check_trust) {
  ValidationReport report = validate_conditional(m);
  if (!report.ok() || !check_trust) return report;
  for (int r = 0; r < m.rows(); ++r) {
    for (int x = 0; x < m.cols(); ++x) {
      if (x != r && m(r, x) > m(r, r)) {
        return {Violation::kTrust, r, x,
                "trust constraint violated at " + cell(r, x) + ": mu(" +
                    std::to_string(r + 1) + "|" + std::to_string(x + 1) +
                    ") = " + to_string(m(r, x)) + " > mu(" +
                    std::to_string(r + 1) + "|" + std::to_string(r + 1) +
                    ") = " + to_string(m(r, r))};
      }
    }
  }
  return {};
}

std::vector<int> support(const SenderStrategy& pi, int source) {
  std::vector<int> out;
  for (int y = 0; y < pi.size(); ++y) {
    if (pi(y, source) > 0) out.push_back(y);
  }
  return out;
}

std::vector<int> active_signals(const SenderStrategy& pi) {
  std::vector<int> out;
  for (int y = 0; y < pi.size(); ++y) {
    for (int x = 0; x < pi.size(); ++x) {
      if (pi(y, x) > 0) {
        out.push_back(y);
        break;
      }
    }
  }
  return out;
}

std::vector<int> recovered_symbols(const SenderStrategy& pi,
                                   const ReceiverStrategy& sigma) {
  check_same_size(pi.size(), sigma.size());
  std::vector<int> signals = active_signals(pi);
  std::vector<int> out;
  for (int r = 0; r < sigma.size(); ++r) {
    for (int y : signals) {
      if (sigma(r, y) > 0) {
        out.push_back(r);
        break;
      }
    }
  }
  return out;
}

std::vector<int> recovered_symbols(const RecoveryKernel& mu) {
  std::vector<int> out;
  for (int x = 0; x < mu.size(); ++x) {
    if (mu(x, x) > 0) out.push_back(x);
  }
  return out;
}

bool trust_feasible(const RecoveryKernel& mu) {
  return validate_kernel(mu.matrix(), true).ok();
}

Rational kernel_value(const UtilityMatrix& u, const RecoveryKernel& mu) {
  check_same_size(u.size(), mu.size());
  Rational v = 0;
  for (int r = 0; r < mu.size(); ++r) {
    for (int x = 0; x < mu.size(); ++x) {
      if (mu(r, x) != 0) v += mu(r, x) * u(r, x);
    }
  }
  return v;
}

Rational kernel_recovery(const RecoveryKernel& mu) {
  Rational total = 0;
  for (int x = 0; x < mu.size(); ++x) total += mu(x, x);
  return total;
}

ReceiverStrategy canonicalize(const ReceiverStrategy& sigma,
                              const SenderStrategy& pi) {
  check_same_size(pi.size(), sigma.size());
  int q = sigma.size();
  Matrix m = sigma.matrix();
  std::vector<int> used = active_signals(pi);
  for (int y = 0; y < q; ++y) {
    if (std::find(used.begin(), used.end(), y) != used.end()) continue;
    for (int r = 0; r < q; ++r) m(r, y) = Rational(1, q);
  }
  return ReceiverStrategy(std::move(m));
}

bool BestResponseStructure::unique() const {
  return std::all_of(signals_.begin(), signals_.end(),
                     [](const SignalResponse& s) { return s.argmax.size() == 1; });
}

std::size_t BestResponseStructure::deterministic_count() const {
  std::size_t n = 1;
  for (const SignalResponse& s : signals_) n *= s.argmax.size();
  return n;
}

bool BestResponseStructure::is_best_response(const ReceiverStrategy& sigma) const {
  if (sigma.size() != q_) return false;
  for (const SignalResponse& s : signals_) {
    for (int r = 0; r < q_; ++r) {
      if (sigma(r, s.signal) > 0 &&
          !std::binary_search(s.argmax.begin(), s.argmax.end(), r)) {
        return false;
      }
    }
  }
  return true;
}

ReceiverStrategy BestResponseStructure::deterministic(
    std::span<const int> choice) const {
  if (choice.size() != signals_.size()) {
    throw InvalidInstance("one choice per active signal is required");
  }
  Matrix m(q_, q_, Rational(1, q_));
  for (std::size_t k = 0; k < signals_.size(); ++k) {
    const SignalResponse& s = signals_[k];
    if (!std::binary_search(s.argmax.begin(), s.argmax.end(), choice[k])) {
      throw InvalidInstance("symbol " + std::to_string(choice[k] + 1) +
                            " is not a best response to signal " +
                            std::to_string(s.signal + 1));
    }
    for (int r = 0; r < q_; ++r) m(r, s.signal) = r == choice[k] ? 1 : 0;
  }
  return ReceiverStrategy(std::move(m));
}

std::vector<ReceiverStrategy> BestResponseStructure::all_deterministic() const {
  std::vector<ReceiverStrategy> out;
  std::vector<std::size_t> pos(signals_.size(), 0);
  std::vector<int> choice(signals_.size());
  while (true) {
    for (std::size_t k = 0; k < signals_.size(); ++k) {
      choice[k] = signals_[k].argmax[pos[k]];
    }
    out.push_back(deterministic(choice));
    // Odometer with the last signal varying fastest.
    std::size_t k = signals_.size();
    while (k > 0) {
      --k;
      if (++pos[k] < signals_[k].argmax.size()) break;
      pos[k] = 0;
      if (k == 0) return out;
    }
    if (signals_.empty()) return out;
  }
}

BestResponseStructure best_response_structure(const SenderStrategy& pi) {
  int q = pi.size();
  std::vector<SignalResponse> signals;
  for (int y = 0; y < q; ++y) {
    Rational peak = 0;
    for (int x = 0; x < q; ++x) peak = std::max(peak, pi(y, x));
    if (peak == 0) continue;
    SignalResponse s;
    s.signal = y;
    s.peak = peak;
    for (int x = 0; x < q; ++x) {
      if (pi(y, x) == peak) s.argmax.push_back(x);
    }
    signals.push_back(std::move(s));
  }
  return BestResponseStructure(q, std::move(signals));
}

Rational recovery_value(const SenderStrategy& pi, const ReceiverStrategy& sigma) {
  check_same_size(pi.size(), sigma.size());
  Rational total = 0;
  for (int x = 0; x < pi.size(); ++x) {
    for (int y = 0; y < pi.size(); ++y) {
      if (pi(y, x) != 0) total += pi(y, x) * sigma(x, y);
    }
  }
  return total;
}

Rational expected_utility(const UtilityMatrix& u, const SenderStrategy& pi,
                          const ReceiverStrategy& sigma) {
  check_same_size(u.size(), pi.size());
  check_same_size(pi.size(), sigma.size());
  int q = u.size();
  Rational total = 0;
  for (int x = 0; x < q; ++x) {
    for (int y = 0; y < q; ++y) {
      if (pi(y, x) == 0) continue;
      for (int r = 0; r < q; ++r) {
        if (sigma(r, y) != 0) total += pi(y, x) * sigma(r, y) * u(r, x);
      }
    }
  }
  return total;
}

RecoveryKernel induced_kernel(const SenderStrategy& pi,
                              const ReceiverStrategy& sigma) {
  check_same_size(pi.size(), sigma.size());
  int q = pi.size();
  Matrix mu(q, q);
  for (int x = 0; x < q; ++x) {
    for (int y = 0; y < q; ++y) {
      if (pi(y, x) == 0) continue;
      for (int r = 0; r < q; ++r) {
        if (sigma(r, y) != 0) mu(r, x) += pi(y, x) * sigma(r, y);
      }
    }
  }
  return RecoveryKernel(std::move(mu));
}

ResponseValue wceu(const UtilityMatrix& u, const SenderStrategy& pi) {
  return extreme_response(u, pi, true);
}

ResponseValue bceu(const UtilityMatrix& u, const SenderStrategy& pi) {
  return extreme_response(u, pi, false);
}

}  // namespace trustlp
