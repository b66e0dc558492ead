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


#include <limits>
#include <set>

#include "doctest.h"
#include "test_util.h"
#include "trustlp/oracle.h"
#include "trustlp/programs.h"

namespace trustlp {
namespace {

using testing::two_symbol_game;
using testing::cyclic_game;
using testing::Rng;

GridResult grid(const UtilityMatrix& u, int n, int threads = 0) {
  GridSpec spec;
  spec.resolution = n;
  spec.threads = threads;
  return grid_search_sgv(u, spec);
}

// Independent vertex enumeration by brute force over active sets: every
// choice of d tight rows with a unique feasible solution.
std::set<std::vector<Rational>> brute_vertices(int q) {
  int d = q * (q - 1);
  // Rows a . m <= b over the off-diagonal entries m (r-major pairs).
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  auto pairs = off_diagonal_pairs(q);
  auto col = [&](int r, int x) {
    for (int k = 0; k < d; ++k) {
      if (pairs[k] == std::pair{r, x}) return k;
    }
    return -1;
  };
  for (int k = 0; k < d; ++k) {
    std::vector<Rational> row(d, 0);
    row[k] = -1;
    a.push_back(row);
    b.push_back(0);
  }
  for (int x = 0; x < q; ++x) {
    std::vector<Rational> row(d, 0);
    for (int r = 0; r < q; ++r) {
      if (r != x) row[col(r, x)] = 1;
    }
    a.push_back(row);
    b.push_back(1);
  }
  for (auto [r, x] : pairs) {
    // mu(r|x) <= mu(r|r) = 1 - sum_{s != r} mu(s|r)
    std::vector<Rational> row(d, 0);
    row[col(r, x)] += 1;
    for (int s = 0; s < q; ++s) {
      if (s != r) row[col(s, r)] += 1;
    }
    a.push_back(row);
    b.push_back(1);
  }
  int m = static_cast<int>(a.size());
  std::set<std::vector<Rational>> out;
  std::vector<int> pick(d);
  for (int i = 0; i < d; ++i) pick[i] = i;
  while (true) {
    // Gaussian elimination on the picked rows.
    std::vector<std::vector<Rational>> sys;
    for (int i : pick) {
      auto row = a[i];
      row.push_back(b[i]);
      sys.push_back(row);
    }
    bool singular = false;
    for (int c = 0; c < d && !singular; ++c) {
      int p = c;
      while (p < d && sys[p][c] == 0) ++p;
      if (p == d) {
        singular = true;
        break;
      }
      std::swap(sys[p], sys[c]);
      for (int r = 0; r < d; ++r) {
        if (r == c || sys[r][c] == 0) continue;
        Rational f = sys[r][c] / sys[c][c];
        for (int k = c; k <= d; ++k) sys[r][k] -= f * sys[c][k];
      }
    }
    if (!singular) {
      std::vector<Rational> point(d);
      for (int c = 0; c < d; ++c) point[c] = sys[c][d] / sys[c][c];
      bool feasible = true;
      for (int i = 0; i < m && feasible; ++i) {
        Rational lhs = 0;
        for (int k = 0; k < d; ++k) lhs += a[i][k] * point[k];
        feasible = lhs <= b[i];
      }
      if (feasible) out.insert(point);
    }
    int i = d - 1;
    while (i >= 0 && pick[i] == m - d + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < d; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

TEST_CASE("grid search on the two-symbol game") {
  GridResult ten = grid(two_symbol_game(), 10);
  CHECK(ten.best_wceu == Rational(9, 10));
  CHECK(ten.evaluated == 121);
  CHECK(wceu(two_symbol_game(), ten.witness).value == Rational(9, 10));
  // A pure signal for one symbol, a 1/10 leak for the other.
  auto br = best_response_structure(ten.witness);
  CHECK(br.unique());
  CHECK(grid(two_symbol_game(), 100).best_wceu == Rational(99, 100));
}

TEST_CASE("grid search on a fully misaligned game") {
  GridResult r = grid(testing::misaligned(3), 4);
  CHECK(r.best_wceu == 0);
  CHECK(wceu(testing::misaligned(3), r.witness).value == 0);
}

TEST_CASE("grid size and budget") {
  CHECK(grid_size(2, 10) == 121);
  CHECK(grid_size(3, 4) == 15 * 15 * 15);
  CHECK(grid_size(12, 50) == std::numeric_limits<std::uint64_t>::max());
  GridSpec spec;
  spec.resolution = 8;
  spec.budget = 1000;
  CHECK_THROWS_AS(grid_search_sgv(cyclic_game(), spec), ResourceLimit);
}

TEST_CASE("grid search is schedule independent") {
  Rng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    UtilityMatrix u = testing::random_utility(rng, 3);
    GridResult serial = grid(u, 4, 1);
    GridResult parallel = grid(u, 4, 5);
    CHECK(serial.best_wceu == parallel.best_wceu);
    CHECK(serial.witness == parallel.witness);
  }
}

TEST_CASE("vertex enumeration") {
  CHECK(vertex_enumeration_sgv(two_symbol_game()).best_value == 1);
  VertexResult two = vertex_enumeration_sgv(cyclic_game());
  CHECK(two.best_value == Rational(3, 2));
  VertexResult mis = vertex_enumeration_sgv(testing::misaligned(2));
  CHECK(mis.best_value == 0);
  CHECK(mis.vertices.size() == 3);
  for (const auto& v : two.vertices) CHECK(trust_feasible(v));
  CHECK_THROWS_AS(vertex_enumeration_sgv(testing::misaligned(5)), ResourceLimit);
}

TEST_CASE("double description finds exactly the basic feasible points") {
  for (int q = 2; q <= 3; ++q) {
    auto brute = brute_vertices(q);
    std::set<std::vector<Rational>> dd;
    for (const auto& mu : vertex_enumeration_sgv(testing::misaligned(q)).vertices) {
      std::vector<Rational> point;
      for (auto [r, x] : off_diagonal_pairs(q)) point.push_back(mu(r, x));
      dd.insert(point);
    }
    CHECK(dd == brute);
  }
}

TEST_CASE("cross check on the reference games") {
  OracleReport one = cross_check(two_symbol_game(), {4, 8, 16});
  REQUIRE(one.grid.size() == 3);
  CHECK(one.grid[0].gap == Rational(1, 4));
  CHECK(one.grid[1].gap == Rational(1, 8));
  CHECK(one.grid[2].gap == Rational(1, 16));
  REQUIRE(one.vertex.has_value());
  CHECK(one.vertex->best_value == 1);
  CHECK(one.kernels_checked > 0);

  OracleReport two = cross_check(cyclic_game(), {});
  CHECK(two.vertex->best_value == Rational(3, 2));
  CHECK(two.lp_sgv == Rational(3, 2));

  CHECK_THROWS_AS(cross_check(two_symbol_game(), {4, 6}), InvalidInstance);
}

TEST_CASE("property: random cross checks pass") {
  Rng rng(62);
  for (int trial = 0; trial < 15; ++trial) {
    UtilityMatrix u = testing::random_utility(rng, 3);
    OracleReport r = cross_check(u, {3, 6});
    CHECK(r.grid[1].result.best_wceu >= r.grid[0].result.best_wceu);
  }
}

TEST_CASE("trust closure runs are reproducible") {
  PropertyRun a = trust_closure_run(4, 7, 100);
  PropertyRun b = trust_closure_run(4, 7, 100);
  CHECK(a.strategies == 100);
  CHECK(a.kernels == b.kernels);
  CHECK(a.kernels >= 100);
}

}  // namespace
}  // namespace trustlp
