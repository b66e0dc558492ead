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

#include "trustlp/oracle.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "trustlp/programs.h"

namespace trustlp {

namespace {

using Int64 = std::int64_t;

constexpr int kMaxVertexQ = 4;

std::string matrix_text(const Matrix& m) {
  std::string out = "[";
  for (int r = 0; r < m.rows(); ++r) {
    out += r ? "; " : "";
    for (int c = 0; c < m.cols(); ++c) out += (c ? " " : "") + to_string(m(r, c));
  }
  return out + "]";
}

// All compositions of n into k nonnegative parts, lexicographic.
std::vector<std::vector<Int64>> compositions(int n, int k) {
  std::vector<std::vector<Int64>> out;
  std::vector<Int64> part(k, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == k - 1) {
      part[pos] = left;
      out.push_back(part);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      part[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, n);
  return out;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

struct ShardBest {
  bool found = false;
  Int64 value = 0;
  std::vector<std::size_t> index;  // composition index per column
};

}  // namespace

std::uint64_t grid_size(int q, int resolution) {
  // C(N + q - 1, q - 1) compositions per column, one column per symbol.
  std::uint64_t per_column = 1;
  for (int i = 1; i < q; ++i) {
    per_column = saturating_mul(per_column, static_cast<std::uint64_t>(resolution + i));
    per_column /= static_cast<std::uint64_t>(i);
  }
  std::uint64_t total = 1;
  for (int i = 0; i < q; ++i) total = saturating_mul(total, per_column);
  return total;
}

GridResult grid_search_sgv(const UtilityMatrix& u, const GridSpec& grid) {
  int q = u.size();
  int n = grid.resolution;
  if (n < 1) throw InvalidInstance("grid resolution must be positive");
  std::uint64_t total = grid_size(q, n);
  if (total > grid.budget) {
    throw ResourceLimit("grid of resolution " + std::to_string(n) + " has " +
                        std::to_string(total) + " strategies, budget is " +
                        std::to_string(grid.budget));
  }

  // Integer utilities: u * L with L the lcm of all denominators.
  Integer scale = 1;
  for (int r = 0; r < q; ++r) {
    for (int x = 0; x < q; ++x) {
      Integer d = denominator(u(r, x));
      scale = scale / gcd(scale, d) * d;
    }
  }
  std::vector<Int64> utility(static_cast<std::size_t>(q) * q);
  Integer limit = Integer(1) << 60;
  for (int r = 0; r < q; ++r) {
    for (int x = 0; x < q; ++x) {
      Integer scaled = numerator(u(r, x)) * (scale / denominator(u(r, x)));
      if (abs(scaled) * n * q * q >= limit) {
        throw ResourceLimit("utilities too large for the integer grid search");
      }
      utility[static_cast<std::size_t>(r) * q + x] = scaled.convert_to<Int64>();
    }
  }

  auto parts = compositions(n, q);
  std::size_t c = parts.size();
  std::vector<ShardBest> shards(c);
  std::atomic<std::size_t> next_shard{0};

  auto worker = [&]() {
    std::vector<Int64> pi(static_cast<std::size_t>(q) * q);
    std::vector<std::size_t> index(q, 0);
    auto set_column = [&](int x, std::size_t which) {
      index[x] = which;
      for (int y = 0; y < q; ++y) pi[static_cast<std::size_t>(y) * q + x] = parts[which][y];
    };
    for (std::size_t s; (s = next_shard.fetch_add(1)) < c;) {
      ShardBest& best = shards[s];
      set_column(0, s);
      for (int x = 1; x < q; ++x) set_column(x, 0);
      while (true) {
        Int64 value = extreme_response_sum<Int64>(q, pi, utility, true);
        if (!best.found || value > best.value) {
          best.found = true;
          best.value = value;
          best.index = index;
        }
        // Odometer over columns 1..q-1, last column fastest.
        int x = q - 1;
        while (x >= 1 && index[x] + 1 == c) {
          set_column(x, 0);
          --x;
        }
        if (x < 1) break;
        set_column(x, index[x] + 1);
      }
    }
  };

  int threads = grid.threads > 0 ? grid.threads
                                 : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, static_cast<int>(std::min<std::size_t>(c, 64)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Shards are in lexicographic order; keep the first strict maximum.
  const ShardBest* winner = &shards[0];
  for (const ShardBest& s : shards) {
    if (s.value > winner->value) winner = &s;
  }
  Matrix witness(q, q);
  for (int x = 0; x < q; ++x) {
    for (int y = 0; y < q; ++y) witness(y, x) = Rational(parts[winner->index[x]][y], n);
  }
  GridResult result{n, Rational(Integer(winner->value), scale * n),
                    SenderStrategy(std::move(witness)), total};
  return result;
}

VertexResult vertex_enumeration_sgv(const UtilityMatrix& u) {
  int q = u.size();
  if (q > kMaxVertexQ) {
    throw ResourceLimit("vertex enumeration supports q <= " +
                        std::to_string(kMaxVertexQ));
  }
  // Homogenized coordinates z = (t, mu(r|x) for r != x, r-major); the
  // diagonal is 1 - (column sum of off-diagonal entries).
  int d = 1 + q * (q - 1);
  std::vector<int> coord(static_cast<std::size_t>(q) * q, -1);
  for (int r = 0, k = 1; r < q; ++r) {
    for (int x = 0; x < q; ++x) {
      if (r != x) coord[static_cast<std::size_t>(r) * q + x] = k++;
    }
  }

  // Rows a with a . z >= 0. The first d are the coordinate orthant.
  std::vector<std::vector<Int64>> rows;
  for (int i = 0; i < d; ++i) {
    std::vector<Int64> a(d, 0);
    a[i] = 1;
    rows.push_back(std::move(a));
  }
  auto diagonal_row = [&](int x) {
    std::vector<Int64> a(d, 0);
    a[0] = 1;
    for (int r = 0; r < q; ++r) {
      if (r != x) a[coord[static_cast<std::size_t>(r) * q + x]] -= 1;
    }
    return a;
  };
  for (int x = 0; x < q; ++x) rows.push_back(diagonal_row(x));
  for (int r = 0; r < q; ++r) {
    for (int x = 0; x < q; ++x) {
      if (r == x) continue;
      std::vector<Int64> a = diagonal_row(r);
      a[coord[static_cast<std::size_t>(r) * q + x]] -= 1;
      rows.push_back(std::move(a));
    }
  }

  struct Ray {
    std::vector<Integer> z;
    std::uint64_t tight = 0;  // processed rows with a . z == 0
  };
  std::vector<Ray> rays;
  std::uint64_t all_initial = d == 64 ? ~0ull : (1ull << d) - 1;
  for (int i = 0; i < d; ++i) {
    Ray ray{std::vector<Integer>(d, 0), all_initial & ~(1ull << i)};
    ray.z[i] = 1;
    rays.push_back(std::move(ray));
  }

  for (std::size_t b = d; b < rows.size(); ++b) {
    const auto& a = rows[b];
    std::vector<Integer> slack(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      Integer s = 0;
      for (int j = 0; j < d; ++j) {
        if (a[j] != 0) s += rays[i].z[j] * a[j];
      }
      slack[i] = s;
      if (s > 0) {
        pos.push_back(i);
        next.push_back(rays[i]);
      } else if (s == 0) {
        next.push_back(rays[i]);
        next.back().tight |= 1ull << b;
      } else {
        neg.push_back(i);
      }
    }
    for (std::size_t p : pos) {
      for (std::size_t m : neg) {
        std::uint64_t common = rays[p].tight & rays[m].tight;
        if (std::popcount(common) < d - 2) continue;
        bool adjacent = true;
        for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
          if (o != p && o != m && (rays[o].tight & common) == common) adjacent = false;
        }
        if (!adjacent) continue;
        Ray ray{std::vector<Integer>(d), common | (1ull << b)};
        Integer g = 0;
        for (int j = 0; j < d; ++j) {
          ray.z[j] = slack[p] * rays[m].z[j] - slack[m] * rays[p].z[j];
          g = gcd(g, ray.z[j]);
        }
        if (g > 1) {
          for (auto& v : ray.z) v /= g;
        }
        next.push_back(std::move(ray));
      }
    }
    rays = std::move(next);
  }

  VertexResult out{0, RecoveryKernel::identity(q), {}};
  bool have = false;
  for (const Ray& ray : rays) {
    if (ray.z[0] <= 0) {
      throw VerificationFailure("trust polytope has an unbounded direction");
    }
    Matrix mu(q, q);
    for (int x = 0; x < q; ++x) {
      Rational column = 0;
      for (int r = 0; r < q; ++r) {
        if (r == x) continue;
        mu(r, x) = Rational(ray.z[coord[static_cast<std::size_t>(r) * q + x]], ray.z[0]);
        column += mu(r, x);
      }
      mu(x, x) = 1 - column;
    }
    RecoveryKernel kernel(std::move(mu));
    Rational value = kernel_value(u, kernel);
    if (!have || value > out.best_value) {
      out.best_value = value;
      out.witness = kernel;
      have = true;
    }
    out.vertices.push_back(std::move(kernel));
  }
  return out;
}

PropertyRun trust_closure_run(int q, std::uint64_t seed, int count,
                              int resolution) {
  std::mt19937_64 rng(seed);
  PropertyRun run{seed, 0, 0};
  for (int i = 0; i < count; ++i) {
    Matrix pi(q, q);
    for (int x = 0; x < q; ++x) {
      // Random cut points give a random composition of the column.
      std::vector<int> cuts{0, resolution};
      for (int k = 1; k < q; ++k) {
        cuts.push_back(static_cast<int>(rng() % (resolution + 1)));
      }
      std::sort(cuts.begin(), cuts.end());
      for (int y = 0; y < q; ++y) pi(y, x) = Rational(cuts[y + 1] - cuts[y], resolution);
    }
    SenderStrategy strategy(std::move(pi));
    ++run.strategies;
    for (const auto& sigma : best_response_structure(strategy).all_deterministic()) {
      ++run.kernels;
      RecoveryKernel mu = induced_kernel(strategy, sigma);
      if (!trust_feasible(mu)) {
        throw VerificationFailure("induced kernel " + matrix_text(mu.matrix()) +
                                  " violates a trust constraint at pi = " +
                                  matrix_text(strategy.matrix()));
      }
    }
  }
  return run;
}

OracleReport cross_check(const UtilityMatrix& u, const std::vector<int>& resolutions,
                         const GridSpec& base) {
  int q = u.size();
  OracleReport report;
  report.lp_sgv = q == 1 ? Rational(0) : solve_certified(u).objective;

  for (std::size_t i = 0; i < resolutions.size(); ++i) {
    if (i > 0 && resolutions[i] % resolutions[i - 1] != 0) {
      throw InvalidInstance("grid resolutions must be nested (each divides the next)");
    }
    GridSpec spec = base;
    spec.resolution = resolutions[i];
    GridResult result = grid_search_sgv(u, spec);
    std::string where = "grid N=" + std::to_string(spec.resolution);
    if (result.best_wceu > report.lp_sgv) {
      throw VerificationFailure(where + ": wceu " + to_string(result.best_wceu) +
                                " exceeds the LP value " + to_string(report.lp_sgv) +
                                " at pi = " + matrix_text(result.witness.matrix()));
    }
    Rational gap = report.lp_sgv - result.best_wceu;
    if (!report.grid.empty() && gap > report.grid.back().gap) {
      throw VerificationFailure(where + ": gap " + to_string(gap) +
                                " grew from " + to_string(report.grid.back().gap));
    }
    for (const auto& sigma : best_response_structure(result.witness).all_deterministic()) {
      ++report.kernels_checked;
      RecoveryKernel mu = induced_kernel(result.witness, sigma);
      if (!trust_feasible(mu)) {
        throw VerificationFailure(where + ": induced kernel " +
                                  matrix_text(mu.matrix()) +
                                  " violates a trust constraint at pi = " +
                                  matrix_text(result.witness.matrix()));
      }
    }
    report.grid.push_back({std::move(result), gap});
  }

  if (q <= kMaxVertexQ) {
    VertexResult vertex = vertex_enumeration_sgv(u);
    if (vertex.best_value != report.lp_sgv) {
      throw VerificationFailure("vertex enumeration value " +
                                to_string(vertex.best_value) + " differs from the LP value " +
                                to_string(report.lp_sgv) + " at mu = " +
                                matrix_text(vertex.witness.matrix()));
    }
    report.vertex = std::move(vertex);
  }
  return report;
}

}  // namespace trustlp
