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


#include "doctest.h"
#include "test_util.h"
#include "trustlp/equilibrium.h"
#include "trustlp/graph.h"
#include "trustlp/programs.h"

namespace trustlp {
namespace {

using testing::cyclic_game;
using testing::path_game;
using testing::Rng;
using testing::star_game;

TEST_CASE("obfuscation graph edges follow nonnegative utilities") {
  ObfuscationGraph g = obfuscation_graph(cyclic_game());
  // u(3,1) = u(1,2) = u(2,3) = 1: edges 1->3, 2->1, 3->2.
  REQUIRE(g.edges().size() == 3);
  CHECK(g.edges()[0] == Edge{0, 2, 1});
  CHECK(g.edges()[1] == Edge{1, 0, 1});
  CHECK(g.edges()[2] == Edge{2, 1, 1});
  CHECK(g.weight(0, 2) == Rational(1));
  CHECK_FALSE(g.weight(0, 1).has_value());
  CHECK(g.out_degree(0) == 1);
  CHECK(g.in_degree(0) == 1);
  CHECK(edge_list_text(g) == "# vertices: 3\n1 3 1\n2 1 1\n3 2 1\n");
}

TEST_CASE("zero utilities are edges") {
  ObfuscationGraph g = obfuscation_graph(testing::utility({{0, 0}, {-1, 0}}));
  REQUIRE(g.edges().size() == 1);
  CHECK(g.edges()[0] == Edge{1, 0, 0});
  CHECK(max_weight_matching(g).weight == 0);
  CHECK(max_weight_matching(g).edges.empty());
}

TEST_CASE("shape detection") {
  GraphShape cyc = detect_shape(obfuscation_graph(cyclic_game()));
  CHECK(cyc.tag == ShapeTag::kCycle);
  CHECK(cyc.order == std::vector<int>{0, 2, 1});
  CHECK(cyc.uniform_weight == Rational(1));

  GraphShape star = detect_shape(obfuscation_graph(star_game(3, 1, {2, 5})));
  CHECK(star.tag == ShapeTag::kStar);
  CHECK(star.order == std::vector<int>{1});
  CHECK_FALSE(star.uniform_weight.has_value());

  GraphShape chain = detect_shape(obfuscation_graph(path_game(5, 1, false)));
  CHECK(chain.tag == ShapeTag::kChain);
  CHECK(chain.order == std::vector<int>{0, 1, 2, 3, 4});

  // Two disjoint edges on five vertices.
  Matrix m = testing::misaligned(5).entries();
  m(1, 0) = 1;
  m(3, 2) = 1;
  CHECK(detect_shape(obfuscation_graph(UtilityMatrix(m))).tag == ShapeTag::kOther);

  CHECK(detect_shape(obfuscation_graph(testing::misaligned(3))).tag == ShapeTag::kOther);
  CHECK(detect_shape(obfuscation_graph(UtilityMatrix(Matrix(1, 1)))).tag == ShapeTag::kOther);
}

TEST_CASE("shape detection ignores vertex labels") {
  // Chain 2 -> 0 -> 3 -> 1.
  Matrix m = testing::misaligned(4).entries();
  m(0, 2) = 1;
  m(3, 0) = 1;
  m(1, 3) = 1;
  GraphShape chain = detect_shape(obfuscation_graph(UtilityMatrix(m)));
  CHECK(chain.tag == ShapeTag::kChain);
  CHECK(chain.order == std::vector<int>{2, 0, 3, 1});
  m(2, 1) = 1;  // closes it
  GraphShape cycle = detect_shape(obfuscation_graph(UtilityMatrix(m)));
  CHECK(cycle.tag == ShapeTag::kCycle);
  CHECK(cycle.order == std::vector<int>{0, 3, 1, 2});
}

TEST_CASE("matchings") {
  CHECK(max_weight_matching(obfuscation_graph(path_game(3, 1, true))).weight == 1);
  CHECK(max_weight_matching(obfuscation_graph(path_game(4, 1, false))).weight == 2);
  CHECK(max_weight_matching(obfuscation_graph(testing::misaligned(4))).weight == 0);
  // Antiparallel pair: only the heavier direction is kept.
  Matching anti = max_weight_matching(obfuscation_graph(testing::utility({{0, 3}, {2, 0}})));
  CHECK(anti.weight == 3);
  REQUIRE(anti.edges.size() == 1);
  CHECK(anti.edges[0] == Edge{1, 0, 3});
}

TEST_CASE("closed forms on small shapes") {
  auto star = obfuscation_graph(star_game(3, 1, {2, 5}));
  CHECK(closed_form_sgv(detect_shape(star), star) == 7);
  CHECK(closed_form_informativeness(detect_shape(star), star) == 1);
  auto cycle = obfuscation_graph(path_game(3, 1, true));
  CHECK(closed_form_sgv(detect_shape(cycle), cycle) == Rational(3, 2));
  auto cycle4 = obfuscation_graph(path_game(4, 1, true));
  CHECK(closed_form_informativeness(detect_shape(cycle4), cycle4) == 2);
  auto chain = obfuscation_graph(path_game(5, 1, false));
  CHECK(closed_form_sgv(detect_shape(chain), chain) == 2);
  CHECK(closed_form_informativeness(detect_shape(chain), chain) == 3);
  auto none = obfuscation_graph(testing::misaligned(3));
  CHECK_THROWS_AS(closed_form_sgv(detect_shape(none), none), NotApplicable);
  CHECK_THROWS_AS(closed_form_informativeness(detect_shape(none), none), NotApplicable);
  auto zero_chain = obfuscation_graph(path_game(4, 0, false));
  CHECK_THROWS_AS(closed_form_informativeness(detect_shape(zero_chain), zero_chain),
                  NotApplicable);
}

TEST_CASE("closed forms match the LP on weighted chains and cycles") {
  Rng rng(51);
  for (int trial = 0; trial < 40; ++trial) {
    int q = testing::uniform_int(rng, 2, 7);
    bool closed = trial % 2 == 1;
    Matrix m = testing::misaligned(q).entries();
    for (int i = 0; i + 1 < q; ++i) m(i + 1, i) = Rational(testing::uniform_int(rng, 0, 9), 3);
    if (closed) m(0, q - 1) = Rational(testing::uniform_int(rng, 0, 9), 3);
    UtilityMatrix u(m);
    auto g = obfuscation_graph(u);
    auto shape = detect_shape(g);
    if (shape.tag == ShapeTag::kStar) continue;  // q = 2 chains
    CHECK(shape.tag == (closed ? ShapeTag::kCycle : ShapeTag::kChain));
    CHECK(closed_form_sgv(shape, g) == solve_certified(u).objective);
  }
}

TEST_CASE("property: dynamic program agrees with branch and bound") {
  Rng rng(52);
  for (int trial = 0; trial < 60; ++trial) {
    int q = testing::uniform_int(rng, 2, 12);
    bool closed = trial % 2 == 0;
    // Random labels so the path is not in index order.
    std::vector<int> perm(q);
    for (int i = 0; i < q; ++i) perm[i] = i;
    for (int i = q - 1; i > 0; --i) std::swap(perm[i], perm[testing::uniform_int(rng, 0, i)]);
    Matrix m = testing::misaligned(q).entries();
    int edges = closed ? q : q - 1;
    for (int i = 0; i < edges; ++i) {
      m(perm[(i + 1) % q], perm[i]) = Rational(testing::uniform_int(rng, 0, 12), 4);
    }
    auto g = obfuscation_graph(UtilityMatrix(m));
    auto shape = detect_shape(g);
    if (shape.tag != ShapeTag::kChain && shape.tag != ShapeTag::kCycle) continue;
    Matching dp = matching_dynamic_program(g, shape);
    Matching bnb = matching_branch_and_bound(g);
    CHECK(dp.weight == bnb.weight);
  }
}

TEST_CASE("property: matching kernels are trust-feasible lower bounds") {
  Rng rng(53);
  for (int trial = 0; trial < 60; ++trial) {
    int q = testing::uniform_int(rng, 2, 5);
    UtilityMatrix u = testing::random_utility(rng, q);
    auto g = obfuscation_graph(u);
    Matching m = max_weight_matching(g);
    RecoveryKernel mu = matching_kernel(q, m);
    CHECK(trust_feasible(mu));
    CHECK(kernel_value(u, mu) == m.weight);
    CHECK(m.weight <= solve_certified(u).objective);
  }
}

TEST_CASE("branch and bound has a size limit") {
  CHECK_THROWS_AS(matching_branch_and_bound(obfuscation_graph(testing::misaligned(21))),
                  ResourceLimit);
}

TEST_CASE("clique covers") {
  CHECK(vertex_clique_cover(strong_sender_graph(cyclic_game())).size() == 3);
  Matrix zero(4, 4);
  CliqueCover all = vertex_clique_cover(strong_sender_graph(UtilityMatrix(zero)));
  CHECK(all.size() == 1);
  CHECK(all.cliques[0] == std::vector<int>{0, 1, 2, 3});
  Matrix one = testing::misaligned(3).entries();
  one(0, 1) = 0;
  one(1, 0) = 2;
  CliqueCover pair = vertex_clique_cover(strong_sender_graph(UtilityMatrix(one)));
  CHECK(pair.size() == 2);
  CHECK(pair.cliques[0] == std::vector<int>{0, 1});
  // Five-cycle: needs three cliques.
  StrongSenderGraph c5(5);
  for (int i = 0; i < 5; ++i) c5.connect(i, (i + 1) % 5);
  CHECK(vertex_clique_cover(c5).size() == 3);
  CHECK_THROWS_AS(vertex_clique_cover(StrongSenderGraph(17)), ResourceLimit);
}

TEST_CASE("randomized versus deterministic informativeness") {
  SettingsComparison two = compare_settings(cyclic_game());
  CHECK(two.behavioral == Rational(3, 2));
  CHECK(two.deterministic == 3);
  CHECK(two.ordering == "<");

  Matrix ones(3, 3, Rational(1));
  for (int i = 0; i < 3; ++i) ones(i, i) = 0;
  SettingsComparison complete = compare_settings(UtilityMatrix(ones));
  CHECK(complete.deterministic == 1);
  CHECK(complete.behavioral >= 1);

  SettingsComparison none = compare_settings(testing::misaligned(4));
  CHECK(none.behavioral == 4);
  CHECK(none.deterministic == 4);
  CHECK(none.ordering == "=");
}

}  // namespace
}  // namespace trustlp
