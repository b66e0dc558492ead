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


#include <cstdint>

#include "doctest.h"
#include "test_util.h"
#include "trustlp/game.h"

namespace trustlp {
namespace {

using testing::two_symbol_game;
using testing::cyclic_game;
using testing::Rng;

SenderStrategy sender(const std::vector<std::vector<Rational>>& rows) {
  return SenderStrategy(Matrix::from_rows(rows));
}

TEST_CASE("utility matrix rejects a nonzero diagonal and names the cell") {
  try {
    UtilityMatrix(Matrix::from_rows({{0, 1}, {2, 3}}));
    FAIL("expected InvalidInstance");
  } catch (const InvalidInstance& e) {
    CHECK(std::string(e.what()).find("(2,2)") != std::string::npos);
  }
  CHECK_THROWS_AS(UtilityMatrix(Matrix(2, 3)), InvalidInstance);
}

TEST_CASE("normalization subtracts the diagonal per column") {
  auto [u, shift] = UtilityMatrix::normalized(Matrix::from_rows({{2, 1}, {0, 3}}));
  CHECK(u.entries() == Matrix::from_rows({{0, -2}, {-2, 0}}));
  CHECK(shift == 5);
}

TEST_CASE("conditional validation pinpoints the violation") {
  CHECK(validate_conditional(Matrix::identity(3)).ok());
  auto range = validate_conditional(Matrix::from_rows({{Rational(3, 2), 0}, {Rational(-1, 2), 1}}));
  CHECK(range.kind == Violation::kRange);
  CHECK(range.row == 0);
  CHECK(range.col == 0);
  auto sum = validate_conditional(Matrix::from_rows({{1, 0}, {0, Rational(1, 2)}}));
  CHECK(sum.kind == Violation::kColumnSum);
  CHECK(sum.col == 1);
  auto trust = validate_kernel(
      Matrix::from_rows({{Rational(1, 2), 1}, {Rational(1, 2), 0}}), true);
  CHECK(trust.kind == Violation::kTrust);
  CHECK(trust.row == 0);
  CHECK(trust.col == 1);
  CHECK(validate_kernel(Matrix::from_rows({{Rational(1, 2), 1}, {Rational(1, 2), 0}}), false).ok());
  CHECK_THROWS_AS(SenderStrategy(Matrix::from_rows({{1, 1}, {1, 0}})), InvalidInstance);
}

TEST_CASE("support, active signals and recovered symbols") {
  SenderStrategy pi = sender({{1, Rational(1, 2), 0}, {0, Rational(1, 2), 0}, {0, 0, 1}});
  CHECK(support(pi, 1) == std::vector<int>{0, 1});
  CHECK(active_signals(pi) == std::vector<int>{0, 1, 2});
  SenderStrategy pooled = sender({{1, 1}, {0, 0}});
  CHECK(active_signals(pooled) == std::vector<int>{0});
  RecoveryKernel mu(Matrix::from_rows({{1, 1}, {0, 0}}));
  CHECK(recovered_symbols(mu) == std::vector<int>{0});
  CHECK(trust_feasible(mu));
  CHECK(kernel_recovery(mu) == 1);
  CHECK(kernel_value(two_symbol_game(), mu) == 1);
}

TEST_CASE("identity strategies reveal everything") {
  for (int q = 1; q <= 4; ++q) {
    auto pi = SenderStrategy::identity(q);
    auto sigma = ReceiverStrategy::identity(q);
    CHECK(recovery_value(pi, sigma) == q);
    CHECK(induced_kernel(pi, sigma) == RecoveryKernel::identity(q));
    CHECK(best_response_structure(pi).unique());
  }
  CHECK(wceu(cyclic_game(), SenderStrategy::identity(3)).value == 0);
}

TEST_CASE("pooling everything on one signal leaves the receiver indifferent") {
  SenderStrategy pooled = sender({{1, 1}, {0, 0}});
  auto br = best_response_structure(pooled);
  CHECK_FALSE(br.unique());
  CHECK(br.deterministic_count() == 2);
  // Decoding as symbol 1 gives u(1,1) + u(1,2) = 1, as symbol 2 gives -1.
  CHECK(wceu(two_symbol_game(), pooled).value == -1);
  CHECK(bceu(two_symbol_game(), pooled).value == 1);
}

TEST_CASE("wceu of the lopsided two-signal strategy equals one minus the leak") {
  // pi(y1|1) = 1, pi(y1|2) = 1 - s, pi(y2|2) = s with 0 < s < 1: signal y1
  // is decoded as symbol 1, giving (1 - s) u(1,2).
  for (int n : {2, 3, 10, 100}) {
    Rational s(1, n);
    SenderStrategy pi = sender({{1, 1 - s}, {0, s}});
    CHECK(wceu(two_symbol_game(), pi).value == 1 - s);
    CHECK(best_response_structure(pi).unique());
  }
}

TEST_CASE("best response structure") {
  SenderStrategy pi = sender({{Rational(1, 2), Rational(1, 2), 0},
                              {Rational(1, 2), Rational(1, 2), 0},
                              {0, 0, 1}});
  auto br = best_response_structure(pi);
  REQUIRE(br.signals().size() == 3);
  CHECK(br.signals()[0].argmax == std::vector<int>{0, 1});
  CHECK(br.signals()[0].peak == Rational(1, 2));
  CHECK(br.deterministic_count() == 4);
  auto all = br.all_deterministic();
  CHECK(all.size() == 4);
  for (const auto& sigma : all) CHECK(br.is_best_response(sigma));
  std::vector<int> bad{2, 0, 2};
  CHECK_THROWS_AS(br.deterministic(bad), InvalidInstance);
  // Uniform mixing within an argmax set is still a best response.
  ReceiverStrategy mixed(Matrix::from_rows({{Rational(1, 2), 1, 0},
                                            {Rational(1, 2), 0, 0},
                                            {0, 0, 1}}));
  CHECK(br.is_best_response(mixed));
  ReceiverStrategy wrong(Matrix::from_rows({{0, 1, 0}, {0, 0, 0}, {1, 0, 1}}));
  CHECK_FALSE(br.is_best_response(wrong));
}

TEST_CASE("unused signals are canonicalized to uniform columns") {
  SenderStrategy pooled = sender({{1, 1, 1}, {0, 0, 0}, {0, 0, 0}});
  ReceiverStrategy sigma(Matrix::identity(3));
  auto c = canonicalize(sigma, pooled);
  CHECK(c(0, 0) == 1);
  CHECK(c(0, 1) == Rational(1, 3));
  CHECK(c(2, 2) == Rational(1, 3));
  auto br = best_response_structure(pooled);
  std::vector<int> choice{2};
  CHECK(br.deterministic(choice)(2, 0) == 1);
  CHECK(br.deterministic(choice)(1, 1) == Rational(1, 3));
}

TEST_CASE("property: wceu and bceu are the extremes over deterministic best responses") {
  Rng rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    int q = testing::uniform_int(rng, 2, 4);
    UtilityMatrix u = testing::random_utility(rng, q);
    SenderStrategy pi(testing::random_stochastic(rng, q, 4));
    Rational lo, hi;
    bool first = true;
    for (const auto& sigma : best_response_structure(pi).all_deterministic()) {
      Rational v = expected_utility(u, pi, sigma);
      CHECK(v == kernel_value(u, induced_kernel(pi, sigma)));
      if (first || v < lo) lo = v;
      if (first || v > hi) hi = v;
      first = false;
    }
    auto w = wceu(u, pi);
    auto b = bceu(u, pi);
    CHECK(w.value == lo);
    CHECK(b.value == hi);
    CHECK(expected_utility(u, pi, w.witness) == w.value);
    CHECK(expected_utility(u, pi, b.witness) == b.value);
  }
}

TEST_CASE("property: deterministic best responses induce trust-feasible kernels") {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    int q = testing::uniform_int(rng, 2, 5);
    SenderStrategy pi(testing::random_stochastic(rng, q, 3));
    for (const auto& sigma : best_response_structure(pi).all_deterministic()) {
      CHECK(trust_feasible(induced_kernel(pi, sigma)));
    }
  }
}

TEST_CASE("integer fast path agrees with exact wceu") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    int q = testing::uniform_int(rng, 2, 4);
    UtilityMatrix u = testing::random_utility(rng, q);
    int n = 6;
    SenderStrategy pi(testing::random_stochastic(rng, q, n));
    // All denominators divide 12.
    std::vector<std::int64_t> scaled_pi, scaled_u;
    for (int y = 0; y < q; ++y) {
      for (int x = 0; x < q; ++x) scaled_pi.push_back((pi(y, x) * n).convert_to<std::int64_t>());
    }
    for (int r = 0; r < q; ++r) {
      for (int x = 0; x < q; ++x) scaled_u.push_back((u(r, x) * 12).convert_to<std::int64_t>());
    }
    for (bool worst : {true, false}) {
      std::int64_t s = extreme_response_sum<std::int64_t>(q, scaled_pi, scaled_u, worst);
      Rational exact = worst ? wceu(u, pi).value : bceu(u, pi).value;
      CHECK(Rational(s, n * 12) == exact);
    }
  }
}

}  // namespace
}  // namespace trustlp
