#pragma once

// Closed convex polyhedral cones held in both half-space and conic-hull form.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "varrat/core.hpp"
#include "varrat/nnls.hpp"

namespace varrat {

class DegenerateCone : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

namespace detail {

inline PayoffVec unit(const PayoffVec& v) {
  const double n = v.norm();
  return std::abs(n - 1.0) <= 4e-16 ? v : PayoffVec(v / n);
}

inline bool has_direction(const std::vector<PayoffVec>& rays, const PayoffVec& d) {
  return std::any_of(rays.begin(), rays.end(),
                     [&](const PayoffVec& r) { return (r - d).norm() <= 1e-9; });
}

inline int normal_rank(const std::vector<PayoffVec>& normals, Eigen::Index m) {
  if (normals.empty()) return 0;
  Eigen::MatrixXd N(static_cast<Eigen::Index>(normals.size()), m);
  for (std::size_t i = 0; i < normals.size(); ++i) N.row(static_cast<Eigen::Index>(i)) = normals[i].transpose();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(N);
  lu.setThreshold(1e-10);
  return static_cast<int>(lu.rank());
}

// Calls fn on every k-subset of {0..n-1}, in lexicographic order.
inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Unit directions spanning the one-dimensional kernels of (m-1)-subsets of `rows`.
inline std::vector<PayoffVec> kernel_candidates(const std::vector<PayoffVec>& rows, Eigen::Index m) {
  std::vector<PayoffVec> out;
  if (m == 1) {
    out.push_back(PayoffVec::Constant(1, 1.0));
    out.push_back(PayoffVec::Constant(1, -1.0));
    return out;
  }
  for_each_subset(rows.size(), static_cast<std::size_t>(m - 1), [&](const std::vector<std::size_t>& s) {
    Eigen::MatrixXd S(m - 1, m);
    for (std::size_t i = 0; i < s.size(); ++i) S.row(static_cast<Eigen::Index>(i)) = rows[s[i]].transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(S);
    lu.setThreshold(1e-10);
    if (lu.rank() != m - 1) return;
    PayoffVec d = unit(lu.kernel().col(0));
    out.push_back(d);
    out.push_back(-d);
  });
  return out;
}

}  // namespace detail

class Cone {
 public:
  Cone() = default;

  /// Both representations must be supplied; every generator is checked against every normal.
  Cone(std::vector<PayoffVec> normals, std::vector<PayoffVec> generators, Eigen::Index dim,
       double tol = kMembershipTol)
      : dim_(dim), tol_(tol) {
    if (dim < 1) throw InvalidInput("cone dimension must be >= 1");
    if (!(tol >= 0.0)) throw InvalidInput("cone tolerance must be nonnegative");
    for (auto& n : normals) {
      require_same_dim(n, dim, "cone normal");
      require_finite(n, "cone normal");
      if (n.norm() > 1e-15) normals_.push_back(detail::unit(n));
    }
    for (auto& g : generators) {
      require_same_dim(g, dim, "cone generator");
      require_finite(g, "cone generator");
      if (g.norm() > 1e-15) generators_.push_back(detail::unit(g));
    }
    for (std::size_t j = 0; j < generators_.size(); ++j) {
      if (!contains(generators_[j])) {
        throw InvalidInput("cone generator " + std::to_string(j) + " violates the half-space representation");
      }
    }
  }

  /// Enumerates extreme rays from the half-space form. Pointed cones with m <= 3 only.
  static Cone from_normals(std::vector<PayoffVec> normals, Eigen::Index dim, double tol = kMembershipTol) {
    Cone c(std::move(normals), {}, dim, tol);
    if (dim > 3) throw InvalidInput("extreme-ray enumeration is limited to dimension <= 3; supply generators");
    if (detail::normal_rank(c.normals_, dim) != dim) {
      throw InvalidInput("extreme-ray enumeration requires a pointed cone; supply generators");
    }
    for (const auto& d : detail::kernel_candidates(c.normals_, dim)) {
      if (c.contains(d) && !detail::has_direction(c.generators_, d)) c.generators_.push_back(d);
    }
    return c;
  }

  /// Facet enumeration from a full-dimensional conic hull (m <= 3).
  static Cone from_generators(std::vector<PayoffVec> generators, Eigen::Index dim,
                              double tol = kMembershipTol) {
    if (dim > 3) throw InvalidInput("facet enumeration is limited to dimension <= 3");
    std::vector<PayoffVec> gens;
    for (auto& g : generators) {
      require_same_dim(g, dim, "cone generator");
      require_finite(g, "cone generator");
      if (g.norm() > 1e-15) gens.push_back(detail::unit(g));
    }
    if (detail::normal_rank(gens, dim) != dim) throw InvalidInput("generators must span the whole space");
    std::vector<PayoffVec> normals;
    for (const auto& d : detail::kernel_candidates(gens, dim)) {
      const bool supporting = std::all_of(gens.begin(), gens.end(),
                                          [&](const PayoffVec& g) { return d.dot(g) >= -tol; });
      if (supporting && !detail::has_direction(normals, d)) normals.push_back(d);
    }
    return Cone(std::move(normals), std::move(gens), dim, tol);
  }

  static Cone orthant(Eigen::Index dim) {
    std::vector<PayoffVec> e;
    for (Eigen::Index i = 0; i < dim; ++i) e.push_back(PayoffVec::Unit(dim, i));
    return Cone(e, e, dim);
  }

  /// Linear image of the orthant under (1-s)I + (s/m)11^T, 0 <= s < 1. Shrinks toward the diagonal as s grows.
  static Cone shrunk_orthant(Eigen::Index dim, double s) {
    if (!(s >= 0.0 && s < 1.0)) throw InvalidInput("shrink factor must lie in [0,1)");
    const double md = static_cast<double>(dim);
    std::vector<PayoffVec> normals, gens;
    for (Eigen::Index i = 0; i < dim; ++i) {
      normals.push_back(PayoffVec::Unit(dim, i) - PayoffVec::Constant(dim, s / md));
      gens.push_back((1.0 - s) * PayoffVec::Unit(dim, i) + PayoffVec::Constant(dim, s / md));
    }
    return Cone(normals, gens, dim);
  }

  Eigen::Index dimension() const { return dim_; }
  double tol() const { return tol_; }
  const std::vector<PayoffVec>& normals() const { return normals_; }
  const std::vector<PayoffVec>& generators() const { return generators_; }

  bool contains(const PayoffVec& p) const {
    require_same_dim(p, dim_, "cone membership");
    return std::all_of(normals_.begin(), normals_.end(), [&](const PayoffVec& n) { return n.dot(p) >= -tol_; });
  }

  Cone negated() const {
    Cone c = *this;
    for (auto& n : c.normals_) n = -n;
    for (auto& g : c.generators_) g = -g;
    return c;
  }

 private:
  Eigen::Index dim_ = 0;
  double tol_ = kMembershipTol;
  std::vector<PayoffVec> normals_;
  std::vector<PayoffVec> generators_;
};

/// Intersection in half-space form; generators re-enumerated (m <= 3) or taken from `generators`.
inline Cone intersect(std::span<const Cone> cones, std::vector<PayoffVec> generators = {}) {
  if (cones.empty()) throw InvalidInput("intersection of an empty cone family");
  const Eigen::Index m = cones.front().dimension();
  std::vector<PayoffVec> normals;
  for (const auto& c : cones) {
    if (c.dimension() != m) throw InvalidInput("intersection: cone dimension mismatch");
    normals.insert(normals.end(), c.normals().begin(), c.normals().end());
  }
  Cone out = generators.empty() ? Cone::from_normals(std::move(normals), m, cones.front().tol())
                                : Cone(std::move(normals), std::move(generators), m, cones.front().tol());
  if (out.generators().empty()) throw DegenerateCone("cone intersection is {0}");
  return out;
}


inline bool cone_contains(const Cone& cone, const PayoffVec& p) { return cone.contains(p); }

/// Pointed iff the stacked normal matrix has full column rank (trivial lineality space).
inline bool is_pointed(const Cone& cone) {
  return detail::normal_rank(cone.normals(), cone.dimension()) == cone.dimension();
}

/// Neither {0} nor the whole space. Relies on the generator list being complete.
inline bool is_proper(const Cone& cone) { return !cone.normals().empty() && !cone.generators().empty(); }

/// Decides p in cone(g_1) + ... + cone(g_k) by nonnegative least squares over the union of generators.
inline bool minkowski_membership(const PayoffVec& p, std::span<const Cone> cones) {
  std::vector<const PayoffVec*> cols;
  for (const auto& c : cones) {
    require_same_dim(p, c.dimension(), "minkowski membership");
    for (const auto& g : c.generators()) cols.push_back(&g);
  }
  if (cols.empty()) return p.norm() <= kNnlsResidualTol;
  Eigen::MatrixXd A(p.size(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) A.col(static_cast<Eigen::Index>(j)) = *cols[j];
  return nnls(A, p).residual_norm <= kNnlsResidualTol;
}

inline bool minkowski_membership(const PayoffVec& p, std::initializer_list<Cone> cones) {
  std::vector<Cone> v(cones);
  return minkowski_membership(p, std::span<const Cone>(v));
}

/// Every generator of `inner` lies in `outer`.
inline bool generators_within(const Cone& inner, const Cone& outer) {
  return std::all_of(inner.generators().begin(), inner.generators().end(),
                     [&](const PayoffVec& g) { return outer.contains(g); });
}

}  // namespace varrat
