#pragma once

// Variable ordering structures p -> K[p] and the relations they induce.

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "varrat/cone.hpp"
#include "varrat/core.hpp"

namespace varrat {

struct Anchor {
  PayoffVec point;
  Cone cone;
};

/// K[p] is the cone of the anchor nearest to p (Euclidean), lowest index on ties.
class VariableOrdering {
 public:
  explicit VariableOrdering(std::vector<Anchor> anchors) : VariableOrdering(std::move(anchors), true) {}

  /// Skips the pointedness requirement; for hypothesis checks that must inspect bad orderings.
  static VariableOrdering unchecked(std::vector<Anchor> anchors) { return VariableOrdering(std::move(anchors), false); }

  static VariableOrdering constant(Cone cone) {
    const Eigen::Index m = cone.dimension();
    return VariableOrdering({Anchor{PayoffVec::Zero(m), std::move(cone)}});
  }

  Eigen::Index dimension() const { return anchors_.front().cone.dimension(); }
  const std::vector<Anchor>& anchors() const { return anchors_; }

  std::size_t select(const PayoffVec& p) const {
    require_same_dim(p, dimension(), "ordering lookup");
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < anchors_.size(); ++i) {
      const double d = (anchors_[i].point - p).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    return best;
  }

  const Cone& at(const PayoffVec& p) const { return anchors_[select(p)].cone; }

 private:
  VariableOrdering(std::vector<Anchor> anchors, bool require_pointed) : anchors_(std::move(anchors)) {
    if (anchors_.empty()) throw InvalidInput("variable ordering needs at least one anchor");
    const Eigen::Index m = anchors_.front().cone.dimension();
    for (std::size_t i = 0; i < anchors_.size(); ++i) {
      const auto& a = anchors_[i];
      require_same_dim(a.point, m, "ordering anchor point");
      require_finite(a.point, "ordering anchor point");
      if (a.cone.dimension() != m) throw InvalidInput("ordering anchor cones differ in dimension");
      if (require_pointed && !is_pointed(a.cone)) throw InvalidInput("ordering anchor " + std::to_string(i) + " cone is not pointed");
    }
  }

  std::vector<Anchor> anchors_;
};

/// p2 <=_{K[p1]} p1, i.e. p1 - p2 in K[p1].
inline bool leq_under(const VariableOrdering& K, const PayoffVec& p1, const PayoffVec& p2) {
  require_same_dim(p2, K.dimension(), "leq_under");
  return K.at(p1).contains(p1 - p2);
}

/// Intersection of all anchor cones. Equals the intersection over all of P since the selection
/// rule only ever returns anchor cones.
inline Cone common_cone(const VariableOrdering& K, std::vector<PayoffVec> generators = {}) {
  std::vector<Cone> cones;
  for (const auto& a : K.anchors()) cones.push_back(a.cone);
  return intersect(cones, std::move(generators));
}

struct TransitivityReport {
  std::vector<std::array<std::size_t, 3>> violations;  // indices into the sample
  bool pass() const { return violations.empty(); }
};

inline TransitivityReport check_transitivity(const VariableOrdering& K, std::span<const PayoffVec> sample) {
  const std::size_t n = sample.size();
  std::vector<const Cone*> cone_of(n);
  for (std::size_t i = 0; i < n; ++i) cone_of[i] = &K.at(sample[i]);
  // below[i][j]: sample[j] <=_{K[sample[i]]} sample[i]
  std::vector<std::vector<bool>> below(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) below[i][j] = cone_of[i]->contains(sample[i] - sample[j]);

  TransitivityReport report;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!below[a][b]) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (below[b][c] && !below[a][c]) report.violations.push_back({a, b, c});
    }
  return report;
}

struct NestingReport {
  std::vector<std::array<std::size_t, 2>> violations;  // (i, j): sample[j] below sample[i], K[j] not in K[i]
  bool pass() const { return violations.empty(); }
};

/// f1 <=_{K[f0]} f0 implies K[f1] is a subset of K[f0], checked on generators over the sample.
inline NestingReport check_nesting(const VariableOrdering& K, std::span<const PayoffVec> sample) {
  NestingReport report;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const std::size_t ki = K.select(sample[i]);
    for (std::size_t j = 0; j < sample.size(); ++j) {
      const std::size_t kj = K.select(sample[j]);
      if (ki == kj || !leq_under(K, sample[i], sample[j])) continue;
      if (!generators_within(K.anchors()[kj].cone, K.anchors()[ki].cone)) report.violations.push_back({i, j});
    }
  }
  return report;
}

inline std::vector<std::size_t> pareto_min_indices(std::span<const PayoffVec> points, const VariableOrdering& K) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Cone& cone = K.at(points[i]);
    bool minimal = true;
    for (std::size_t j = 0; j < points.size() && minimal; ++j) {
      if (same_payoff(points[j], points[i])) continue;
      if (cone.contains(points[i] - points[j])) minimal = false;
    }
    if (minimal) out.push_back(i);
  }
  return out;
}

/// Points p* of the set with (p* - K[p*]) meeting the set only in p*. Duplicates of a minimal value are kept.
inline std::vector<PayoffVec> pareto_min(std::span<const PayoffVec> points, const VariableOrdering& K) {
  std::vector<PayoffVec> out;
  for (std::size_t i : pareto_min_indices(points, K)) out.push_back(points[i]);
  return out;
}

inline std::vector<std::size_t> approx_min_indices(std::span<const PayoffVec> points, const VariableOrdering& K,
                                                   double eps, const PayoffVec& xi) {
  if (!(eps > 0.0)) throw InvalidInput("approx_min: eps must be positive");
  require_same_dim(xi, K.dimension(), "approx_min xi");
  if (!is_unit(xi)) throw InvalidInput("approx_min: xi must have unit Euclidean norm");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Cone& cone = K.at(points[i]);
    const PayoffVec shifted = points[i] - eps * xi;
    bool minimal = true;
    for (std::size_t j = 0; j < points.size() && minimal; ++j)
      if (cone.contains(shifted - points[j])) minimal = false;
    if (minimal) out.push_back(i);
  }
  return out;
}

/// Approximate eps*xi-minimal points: (p* - K[p*] - eps*xi) misses the set entirely.
inline std::vector<PayoffVec> approx_min(std::span<const PayoffVec> points, const VariableOrdering& K, double eps,
                                         const PayoffVec& xi) {
  std::vector<PayoffVec> out;
  for (std::size_t i : approx_min_indices(points, K, eps, xi)) out.push_back(points[i]);
  return out;
}

}  // namespace varrat
