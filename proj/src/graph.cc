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

#include "trustlp/graph.h"

#include <algorithm>
#include <functional>
#include <sstream>

#include "trustlp/equilibrium.h"

namespace trustlp {

namespace {

constexpr int kMaxBranchAndBound = 20;
constexpr int kMaxCliqueCover = 16;

// Heavier direction between a and b among positive-weight edges.
std::optional<Edge> pair_edge(const ObfuscationGraph& g, int a, int b) {
  std::optional<Edge> best;
  for (auto [t, h] : {std::pair{a, b}, std::pair{b, a}}) {
    auto w = g.weight(t, h);
    if (!w || *w <= 0) continue;
    if (!best || *w > best->weight) best = Edge{t, h, *w};
  }
  return best;
}

// Maximum matching along a path v[0] - v[1] - ... using pair edges only
// between consecutive vertices.
Matching path_matching(const ObfuscationGraph& g, const std::vector<int>& v) {
  int n = static_cast<int>(v.size());
  std::vector<Rational> f(n + 1, 0);  // f[i]: best over v[0..i-1]
  std::vector<bool> take(n + 1, false);
  std::vector<std::optional<Edge>> link(n, std::nullopt);
  for (int i = 1; i < n; ++i) link[i] = pair_edge(g, v[i - 1], v[i]);
  for (int i = 2; i <= n; ++i) {
    f[i] = f[i - 1];
    if (link[i - 1]) {
      Rational with = f[i - 2] + link[i - 1]->weight;
      if (with > f[i]) {
        f[i] = with;
        take[i] = true;
      }
    }
  }
  Matching m;
  m.weight = f[n];
  for (int i = n; i >= 2;) {
    if (take[i]) {
      m.edges.push_back(*link[i - 1]);
      i -= 2;
    } else {
      --i;
    }
  }
  std::reverse(m.edges.begin(), m.edges.end());
  return m;
}

void sort_edges(std::vector<Edge>& edges) {
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.tail, a.head) < std::pair(b.tail, b.head);
  });
}

}  // namespace

ObfuscationGraph::ObfuscationGraph(int q, std::vector<Edge> edges)
    : q_(q), edges_(std::move(edges)), index_(static_cast<std::size_t>(q) * q, -1) {
  sort_edges(edges_);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.tail < 0 || e.tail >= q || e.head < 0 || e.head >= q || e.tail == e.head) {
      throw InvalidInstance("edge endpoint out of range");
    }
    if (e.weight < 0) throw InvalidInstance("negative edge weight");
    int& slot = index_[static_cast<std::size_t>(e.tail) * q + e.head];
    if (slot >= 0) throw InvalidInstance("duplicate edge");
    slot = static_cast<int>(i);
  }
}

std::optional<Rational> ObfuscationGraph::weight(int tail, int head) const {
  int i = index_[static_cast<std::size_t>(tail) * q_ + head];
  if (i < 0) return std::nullopt;
  return edges_[i].weight;
}

int ObfuscationGraph::out_degree(int v) const {
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(),
                                        [v](const Edge& e) { return e.tail == v; }));
}

int ObfuscationGraph::in_degree(int v) const {
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(),
                                        [v](const Edge& e) { return e.head == v; }));
}

ObfuscationGraph obfuscation_graph(const UtilityMatrix& u) {
  int q = u.size();
  std::vector<Edge> edges;
  for (int x = 0; x < q; ++x) {
    for (int xp = 0; xp < q; ++xp) {
      if (x != xp && u(xp, x) >= 0) edges.push_back({x, xp, u(xp, x)});
    }
  }
  return ObfuscationGraph(q, std::move(edges));
}

void StrongSenderGraph::connect(int a, int b) {
  adjacency_[a] |= 1u << b;
  adjacency_[b] |= 1u << a;
}

StrongSenderGraph strong_sender_graph(const UtilityMatrix& u) {
  int q = u.size();
  if (q > 32) throw ResourceLimit("strong sender graph supports q <= 32");
  StrongSenderGraph g(q);
  for (int a = 0; a < q; ++a) {
    for (int b = a + 1; b < q; ++b) {
      if (u(a, b) >= 0 && u(b, a) >= 0) g.connect(a, b);
    }
  }
  return g;
}

const char* to_string(ShapeTag tag) {
  switch (tag) {
    case ShapeTag::kStar:
      return "star";
    case ShapeTag::kChain:
      return "chain";
    case ShapeTag::kCycle:
      return "cycle";
    case ShapeTag::kOther:
      return "other";
  }
  return "other";
}

GraphShape detect_shape(const ObfuscationGraph& g) {
  int q = g.size();
  const auto& edges = g.edges();
  GraphShape shape;
  if (q < 2) return shape;
  int m = static_cast<int>(edges.size());

  std::vector<int> in(q, 0), out(q, 0), next(q, -1);
  for (const Edge& e : edges) {
    ++in[e.head];
    ++out[e.tail];
    next[e.tail] = e.head;
  }

  if (m == q - 1) {
    for (int c = 0; c < q; ++c) {
      if (in[c] == q - 1) {
        shape.tag = ShapeTag::kStar;
        shape.order = {c};
        break;
      }
    }
    if (shape.tag == ShapeTag::kOther) {
      bool degrees_ok = true;
      int start = -1;
      for (int v = 0; v < q; ++v) {
        if (in[v] > 1 || out[v] > 1) degrees_ok = false;
        if (in[v] == 0) start = start < 0 ? v : -2;
      }
      if (degrees_ok && start >= 0) {
        std::vector<int> order;
        for (int v = start; v >= 0 && static_cast<int>(order.size()) <= q; v = next[v]) {
          order.push_back(v);
        }
        if (static_cast<int>(order.size()) == q) {
          shape.tag = ShapeTag::kChain;
          shape.order = std::move(order);
        }
      }
    }
  } else if (m == q) {
    bool degrees_ok = true;
    for (int v = 0; v < q; ++v) degrees_ok &= in[v] == 1 && out[v] == 1;
    if (degrees_ok) {
      std::vector<int> order{0};
      for (int v = next[0]; v != 0 && static_cast<int>(order.size()) <= q; v = next[v]) {
        order.push_back(v);
      }
      if (static_cast<int>(order.size()) == q) {
        shape.tag = ShapeTag::kCycle;
        shape.order = std::move(order);
      }
    }
  }

  if (!edges.empty() &&
      std::all_of(edges.begin(), edges.end(),
                  [&](const Edge& e) { return e.weight == edges.front().weight; })) {
    shape.uniform_weight = edges.front().weight;
  }
  return shape;
}

Matching matching_dynamic_program(const ObfuscationGraph& g,
                                  const GraphShape& shape) {
  if (shape.tag == ShapeTag::kChain) return path_matching(g, shape.order);
  if (shape.tag != ShapeTag::kCycle) {
    throw NotApplicable("dynamic program needs a chain or a cycle");
  }
  const std::vector<int>& v = shape.order;
  int q = static_cast<int>(v.size());
  if (q == 2) return path_matching(g, v);
  Matching best = path_matching(g, v);
  if (auto closing = pair_edge(g, v[q - 1], v[0])) {
    Matching inner =
        path_matching(g, std::vector<int>(v.begin() + 1, v.end() - 1));
    if (inner.weight + closing->weight > best.weight) {
      inner.weight += closing->weight;
      inner.edges.push_back(*closing);
      best = std::move(inner);
    }
  }
  return best;
}

Matching matching_branch_and_bound(const ObfuscationGraph& g) {
  int q = g.size();
  if (q > kMaxBranchAndBound) {
    throw ResourceLimit("branch-and-bound matching supports q <= " +
                        std::to_string(kMaxBranchAndBound));
  }
  std::vector<std::vector<Edge>> incident(q);  // to higher-indexed vertices
  std::vector<Rational> heaviest(q, 0);
  for (int a = 0; a < q; ++a) {
    for (int b = a + 1; b < q; ++b) {
      if (auto e = pair_edge(g, a, b)) {
        incident[a].push_back(*e);
        heaviest[a] = std::max(heaviest[a], e->weight);
        heaviest[b] = std::max(heaviest[b], e->weight);
      }
    }
  }

  Matching best;
  best.weight = 0;
  std::vector<Edge> current;
  std::function<void(std::uint32_t, const Rational&)> search =
      [&](std::uint32_t used, const Rational& weight) {
        int v = 0;
        while (v < q && ((used >> v) & 1u)) ++v;
        if (v == q) {
          if (weight > best.weight) best = {current, weight};
          return;
        }
        Rational bound = weight * 2;
        for (int s = v; s < q; ++s) {
          if (!((used >> s) & 1u)) bound += heaviest[s];
        }
        if (bound <= best.weight * 2) return;
        for (const Edge& e : incident[v]) {
          int other = e.tail == v ? e.head : e.tail;
          if ((used >> other) & 1u) continue;
          current.push_back(e);
          search(used | (1u << v) | (1u << other), weight + e.weight);
          current.pop_back();
        }
        search(used | (1u << v), weight);
      };
  search(0, Rational(0));
  sort_edges(best.edges);
  return best;
}

Matching max_weight_matching(const ObfuscationGraph& g, const GraphShape& shape) {
  if (shape.tag == ShapeTag::kChain || shape.tag == ShapeTag::kCycle) {
    return matching_dynamic_program(g, shape);
  }
  return matching_branch_and_bound(g);
}

Matching max_weight_matching(const ObfuscationGraph& g) {
  return max_weight_matching(g, detect_shape(g));
}

RecoveryKernel matching_kernel(int q, const Matching& m) {
  Matrix mu = Matrix::identity(q);
  std::vector<bool> used(q, false);
  for (const Edge& e : m.edges) {
    if (used[e.tail] || used[e.head]) {
      throw InvalidInstance("edges of a matching must be vertex-disjoint");
    }
    used[e.tail] = used[e.head] = true;
    mu(e.tail, e.tail) = 0;
    mu(e.head, e.tail) = 1;
  }
  return RecoveryKernel(std::move(mu));
}

Rational closed_form_sgv(const GraphShape& shape, const ObfuscationGraph& g) {
  switch (shape.tag) {
    case ShapeTag::kStar: {
      Rational total = 0;
      for (const Edge& e : g.edges()) total += e.weight;
      return total;
    }
    case ShapeTag::kChain:
      return matching_dynamic_program(g, shape).weight;
    case ShapeTag::kCycle: {
      Rational half = 0;
      for (const Edge& e : g.edges()) half += e.weight;
      half /= 2;
      return std::max(half, matching_dynamic_program(g, shape).weight);
    }
    case ShapeTag::kOther:
      break;
  }
  throw NotApplicable("no closed form for this graph shape");
}

Rational closed_form_informativeness(const GraphShape& shape,
                                     const ObfuscationGraph& g) {
  int q = g.size();
  if (shape.tag == ShapeTag::kStar) return 1;
  bool uniform = shape.uniform_weight && *shape.uniform_weight > 0;
  if (uniform && shape.tag == ShapeTag::kChain) {
    return q % 2 == 1 ? Rational(q + 1, 2) : Rational(q, 2);
  }
  if (uniform && shape.tag == ShapeTag::kCycle) return Rational(q, 2);
  throw NotApplicable(
      "closed-form informativeness needs a star or a uniform positive chain or "
      "cycle");
}

CliqueCover vertex_clique_cover(const StrongSenderGraph& g) {
  int q = g.size();
  if (q > kMaxCliqueCover) {
    throw ResourceLimit("clique cover supports q <= " +
                        std::to_string(kMaxCliqueCover));
  }
  std::vector<std::uint32_t> best;
  for (int v = 0; v < q; ++v) best.push_back(1u << v);
  std::vector<std::uint32_t> current;
  std::function<void(int)> assign = [&](int v) {
    if (current.size() >= best.size()) return;
    if (v == q) {
      best = current;
      return;
    }
    // Indexed: the recursion appends to `current`.
    for (std::size_t i = 0; i < current.size(); ++i) {
      if ((current[i] & g.neighbours(v)) == current[i]) {
        current[i] |= 1u << v;
        assign(v + 1);
        current[i] &= ~(1u << v);
      }
    }
    current.push_back(1u << v);
    assign(v + 1);
    current.pop_back();
  };
  assign(0);

  CliqueCover cover;
  for (std::uint32_t mask : best) {
    std::vector<int> members;
    for (int v = 0; v < q; ++v) {
      if ((mask >> v) & 1u) members.push_back(v);
    }
    cover.cliques.push_back(std::move(members));
  }
  return cover;
}

SettingsComparison compare_settings(const UtilityMatrix& u) {
  SettingsComparison out;
  out.cover = vertex_clique_cover(strong_sender_graph(u));
  out.deterministic = out.cover.size();
  out.behavioral = solve_game(u).informativeness;
  out.ordering = out.behavioral < out.deterministic   ? "<"
                 : out.behavioral == out.deterministic ? "="
                                                       : ">";
  return out;
}

std::string edge_list_text(const ObfuscationGraph& g) {
  std::ostringstream out;
  out << "# vertices: " << g.size() << "\n";
  for (const Edge& e : g.edges()) {
    out << e.tail + 1 << " " << e.head + 1 << " " << to_string(e.weight) << "\n";
  }
  return out.str();
}

}  // namespace trustlp
