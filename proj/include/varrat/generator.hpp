#pragma once

// Seeded random instances that pass the hypothesis gate, plus a matching admissible direction.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "varrat/cone.hpp"
#include "varrat/goal_system.hpp"
#include "varrat/hypotheses.hpp"
#include "varrat/ordering.hpp"
#include "varrat/solver.hpp"

namespace varrat {

enum class OrderingKind { Any, Orthant, Shrunk, Chain };

struct GeneratorOptions {
  std::size_t max_means = 12;
  std::size_t max_ways = 5;
  int max_dim = 3;
  int dim = 0;                 // 0: random in 1..max_dim
  std::size_t ways = 0;        // 0: random in 1..max_ways
  bool symmetric = false;
  OrderingKind ordering = OrderingKind::Any;
  std::size_t max_attempts = 1000;
};

struct GeneratedInstance {
  InstanceData data;
  SolveParams params;
  std::uint64_t seed = 0;
  std::size_t attempts = 0;
};

namespace detail {

inline double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

// Shortest-path closure in integer milli-units, so the triangle inequality is exact.
inline Matrix random_quasimetric(std::mt19937_64& rng, std::size_t n, bool symmetric) {
  constexpr std::int64_t inf = INT64_MAX / 4;
  std::uniform_int_distribution<std::int64_t> cost(100, 5000);
  std::bernoulli_distribution arc(0.5);
  std::vector<std::vector<std::int64_t>> d(n, std::vector<std::int64_t>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  auto put = [&](std::size_t i, std::size_t j, std::int64_t c) {
    d[i][j] = std::min(d[i][j], c);
    if (symmetric) d[j][i] = std::min(d[j][i], c);
  };
  for (std::size_t i = 0; i < n; ++i) put(i, (i + 1) % n, cost(rng));
  if (!symmetric)
    for (std::size_t i = 0; i < n; ++i) d[(i + 1) % n][i] = std::min(d[(i + 1) % n][i], cost(rng));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && (!symmetric || i < j) && arc(rng)) put(i, j, cost(rng));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  Matrix q(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q[i][j] = static_cast<double>(d[i][j]) / 1000.0;
  return q;
}

// Anchors t_1 < ... < t_k on the diagonal; cones shrink toward the diagonal as t decreases.
inline std::vector<Anchor> random_ordering(std::mt19937_64& rng, Eigen::Index m, OrderingKind kind) {
  std::uniform_real_distribution<double> unit01(0.0, 1.0);
  if (m == 1) kind = OrderingKind::Orthant;
  if (kind == OrderingKind::Any) kind = static_cast<OrderingKind>(1 + std::uniform_int_distribution<int>(0, 2)(rng));
  switch (kind) {
    case OrderingKind::Orthant:
      return {{PayoffVec::Zero(m), Cone::orthant(m)}};
    case OrderingKind::Shrunk:
      return {{PayoffVec::Zero(m), Cone::shrunk_orthant(m, round3(0.1 + 0.5 * unit01(rng)))}};
    default: {
      const int k = std::uniform_int_distribution<int>(2, 4)(rng);
      std::vector<double> t, s;
      for (int i = 0; i < k; ++i) {
        t.push_back(round3(10.0 * unit01(rng)));
        s.push_back(round3(0.7 * unit01(rng)));
      }
      std::sort(t.begin(), t.end());
      std::sort(s.begin(), s.end(), std::greater<>());
      std::vector<Anchor> anchors;
      for (int i = 0; i < k; ++i)
        anchors.push_back({PayoffVec::Constant(m, t[static_cast<std::size_t>(i)]),
                           Cone::shrunk_orthant(m, s[static_cast<std::size_t>(i)])});
      return anchors;
    }
  }
}

}  // namespace detail

/// Rejection-samples until the hypothesis gate and the direction check both pass.
inline GeneratedInstance generate_instance(std::uint64_t seed, const GeneratorOptions& opt = {}) {
  if (opt.max_means < 1 || opt.max_ways < 1 || opt.max_dim < 1 || opt.max_dim > 3 || opt.dim < 0 || opt.dim > 3)
    throw InvalidInput("generator bounds out of range");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit01(0.0, 1.0);
  for (std::size_t attempt = 1; attempt <= opt.max_attempts; ++attempt) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, opt.max_means)(rng);
    const std::size_t w = opt.ways ? opt.ways : std::uniform_int_distribution<std::size_t>(1, opt.max_ways)(rng);
    const Eigen::Index m = opt.dim ? opt.dim : std::uniform_int_distribution<int>(1, opt.max_dim)(rng);

    InstanceData d;
    for (std::size_t i = 0; i < n; ++i) d.means.push_back("x" + std::to_string(i));
    for (std::size_t v = 0; v < w; ++v) d.ways.push_back("w" + std::to_string(v));
    d.quasimetric = detail::random_quasimetric(rng, n, opt.symmetric);
    d.payoffs.assign(n, std::vector<std::optional<PayoffVec>>(w));
    std::bernoulli_distribution keep(0.6);
    for (std::size_t x = 0; x < n; ++x) {
      std::vector<std::size_t> f;
      for (std::size_t v = 0; v < w; ++v)
        if (keep(rng)) f.push_back(v);
      if (f.empty()) f.push_back(std::uniform_int_distribution<std::size_t>(0, w - 1)(rng));
      for (std::size_t v : f) {
        PayoffVec p(m);
        for (Eigen::Index j = 0; j < m; ++j) p[j] = detail::round3(10.0 * unit01(rng));
        d.payoffs[x][v] = p;
      }
      d.feasible.push_back(std::move(f));
    }
    d.anchors = detail::random_ordering(rng, m, opt.ordering);
    d.theta = Cone::orthant(m);

    SolveParams p;
    p.eps = detail::round3(0.1 + 2.9 * unit01(rng));
    p.lambda = detail::round3(0.1 + 2.9 * unit01(rng));
    const std::size_t x0 = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    const auto& f0 = d.feasible[x0];
    p.start = {x0, f0[std::uniform_int_distribution<std::size_t>(0, f0.size() - 1)(rng)]};

    if (!validate_hypotheses(d).overall()) continue;
    const GoalSystem gs = GoalSystem::build(d);
    const Cone theta_k = common_cone(gs.ordering());
    PayoffVec xi = PayoffVec::Zero(m);
    for (const auto& g : theta_k.generators()) xi += (0.1 + unit01(rng)) * g;
    xi /= xi.norm();
    p.xi = xi;
    try {
      validate_direction(gs, p);
    } catch (const InvalidInput&) {
      continue;
    }
    return {std::move(d), std::move(p), seed, attempt};
  }
  throw InvalidInput("generator: no valid instance within the attempt budget for seed " + std::to_string(seed));
}

}  // namespace varrat
