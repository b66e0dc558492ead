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

#ifndef TRUSTLP_GRAPH_H_
#define TRUSTLP_GRAPH_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trustlp/game.h"

namespace trustlp {

// Directed edge tail -> head; the sender gains weight = u(head, tail) >= 0
// when tail is recovered as head.
struct Edge {
  int tail = 0;
  int head = 0;
  Rational weight;

  bool operator==(const Edge&) const = default;
};

class ObfuscationGraph {
 public:
  ObfuscationGraph(int q, std::vector<Edge> edges);

  int size() const { return q_; }
  // Sorted by (tail, head).
  const std::vector<Edge>& edges() const { return edges_; }
  std::optional<Rational> weight(int tail, int head) const;
  int out_degree(int v) const;
  int in_degree(int v) const;

 private:
  int q_;
  std::vector<Edge> edges_;
  std::vector<int> index_;  // q*q, -1 when absent
};

// Edge (x, x') for every x != x' with u(x', x) >= 0.
ObfuscationGraph obfuscation_graph(const UtilityMatrix& u);

// Undirected; {x, x'} present when u(x, x') >= 0 and u(x', x) >= 0.
class StrongSenderGraph {
 public:
  explicit StrongSenderGraph(int q) : q_(q), adjacency_(q, 0) {}

  int size() const { return q_; }
  bool adjacent(int a, int b) const { return (adjacency_[a] >> b) & 1u; }
  void connect(int a, int b);
  std::uint32_t neighbours(int v) const { return adjacency_[v]; }

 private:
  int q_;
  std::vector<std::uint32_t> adjacency_;
};

// Throws ResourceLimit for q > 32.
StrongSenderGraph strong_sender_graph(const UtilityMatrix& u);

enum class ShapeTag { kStar, kChain, kCycle, kOther };

const char* to_string(ShapeTag tag);

struct GraphShape {
  ShapeTag tag = ShapeTag::kOther;
  // star: {center}; chain: x_1..x_q with edges x_i -> x_{i+1}; cycle: the
  // same plus x_q -> x_1, starting at vertex 0.
  std::vector<int> order;
  std::optional<Rational> uniform_weight;
};

// Exact structural match, independent of vertex labels. Stars are tested
// first, then chains, then cycles. Graphs with q < 2 are `other`.
GraphShape detect_shape(const ObfuscationGraph& g);

struct Matching {
  // Each edge is the heavier direction of its vertex pair.
  std::vector<Edge> edges;
  Rational weight;
};

// Maximum-weight matching with vertex-disjointness taken regardless of edge
// direction. Zero-weight edges are never used. Chains and cycles go through
// the dynamic program, other graphs through branch-and-bound (q <= 20, else
// ResourceLimit).
Matching max_weight_matching(const ObfuscationGraph& g);
Matching max_weight_matching(const ObfuscationGraph& g, const GraphShape& shape);
Matching matching_branch_and_bound(const ObfuscationGraph& g);
// Requires a chain or cycle shape; NotApplicable otherwise.
Matching matching_dynamic_program(const ObfuscationGraph& g,
                                  const GraphShape& shape);

// The kernel that sends each matched tail to its head and fixes every other
// symbol. Trust-feasible with V = matching weight.
RecoveryKernel matching_kernel(int q, const Matching& m);

// star: sum of weights; chain: matching number; cycle: max(half the total
// weight, matching number). NotApplicable for `other`.
Rational closed_form_sgv(const GraphShape& shape, const ObfuscationGraph& g);

// star: 1; uniform chain with u > 0: (q+1)/2 for odd q, q/2 for even q;
// uniform cycle with u > 0: q/2. NotApplicable otherwise.
Rational closed_form_informativeness(const GraphShape& shape,
                                     const ObfuscationGraph& g);

struct CliqueCover {
  // Vertex lists, each ascending; cliques ordered by smallest member.
  std::vector<std::vector<int>> cliques;
  int size() const { return static_cast<int>(cliques.size()); }
};

// Minimum partition into cliques by exact backtracking. q <= 16, else
// ResourceLimit.
CliqueCover vertex_clique_cover(const StrongSenderGraph& g);

struct SettingsComparison {
  // Randomized-strategy informativeness (LP value).
  Rational behavioral;
  // Deterministic-strategy informativeness (clique cover number).
  int deterministic = 0;
  CliqueCover cover;
  // "<", "=" or ">" for behavioral versus deterministic.
  std::string ordering;
};

SettingsComparison compare_settings(const UtilityMatrix& u);

// "# vertices: q" then one "tail head weight" line per edge, 1-based.
std::string edge_list_text(const ObfuscationGraph& g);

}  // namespace trustlp

#endif  // TRUSTLP_GRAPH_H_
