#pragma once

// Finite quasimetric spaces. Completeness, closedness and lower semicontinuity
// hold trivially on finite point sets and are not computed.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "varrat/core.hpp"

namespace varrat {

using Matrix = std::vector<std::vector<double>>;

struct AxiomViolation {
  int axiom = 0;  // 1: nonnegativity, 2: zero iff equal, 3: triangle inequality
  std::size_t i = 0, j = 0, k = 0;
  std::string detail;
};

struct QuasimetricReport {
  std::vector<AxiomViolation> violations;
  bool pass() const { return violations.empty(); }
};

class QuasimetricSpace;
std::variant<QuasimetricSpace, QuasimetricReport> validate_quasimetric(const Matrix& q);

class QuasimetricSpace {
 public:
  std::size_t size() const { return q_.size(); }
  double operator()(std::size_t from, std::size_t to) const { return q_.at(from).at(to); }
  const Matrix& matrix() const { return q_; }

 private:
  explicit QuasimetricSpace(Matrix q) : q_(std::move(q)) {}
  friend std::variant<QuasimetricSpace, QuasimetricReport> validate_quasimetric(const Matrix& q);
  Matrix q_;
};

namespace detail {

inline void require_square_finite(const Matrix& q) {
  if (q.empty()) throw InvalidInput("quasimetric: empty matrix");
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i].size() != q.size()) throw InvalidInput("quasimetric: matrix is not square (row " + std::to_string(i) + ")");
    for (std::size_t j = 0; j < q.size(); ++j)
      if (!std::isfinite(q[i][j]))
        throw InvalidInput("quasimetric: non-finite entry at [" + std::to_string(i) + "][" + std::to_string(j) + "]");
  }
}

inline std::string idx(std::size_t i, std::size_t j) {
  return "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

}  // namespace detail

/// Checks axioms (i)-(iii) with 1e-12 slack and lists every violation with its witness indices.
inline QuasimetricReport quasimetric_violations(const Matrix& q) {
  detail::require_square_finite(q);
  const std::size_t n = q.size();
  QuasimetricReport r;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (q[i][j] < -kQuasimetricTol) r.violations.push_back({1, i, j, 0, "q" + detail::idx(i, j) + " < 0"});
      const bool zero = std::abs(q[i][j]) <= kQuasimetricTol;
      if (i == j && !zero) r.violations.push_back({2, i, j, 0, "q" + detail::idx(i, j) + " != 0 on the diagonal"});
      if (i != j && zero)
        r.violations.push_back({2, i, j, 0, "q" + detail::idx(i, j) + " = 0 but " + std::to_string(i) +
                                                " != " + std::to_string(j)});
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (q[i][k] > q[i][j] + q[j][k] + kQuasimetricTol)
          r.violations.push_back({3, i, j, k,
                                  "q" + detail::idx(i, k) + " > q" + detail::idx(i, j) + " + q" + detail::idx(j, k)});
  return r;
}

inline std::variant<QuasimetricSpace, QuasimetricReport> validate_quasimetric(const Matrix& q) {
  QuasimetricReport r = quasimetric_violations(q);
  if (!r.pass()) return r;
  return QuasimetricSpace(q);
}

/// Throwing form of validate_quasimetric.
inline QuasimetricSpace make_quasimetric(const Matrix& q) {
  auto v = validate_quasimetric(q);
  if (auto* r = std::get_if<QuasimetricReport>(&v)) {
    throw InvalidInput("not a quasimetric: " + r->violations.front().detail);
  }
  return std::get<QuasimetricSpace>(std::move(v));
}

inline bool symmetrize_check(const QuasimetricSpace& space) {
  const auto& q = space.matrix();
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = i + 1; j < q.size(); ++j)
      if (std::abs(q[i][j] - q[j][i]) > kQuasimetricTol) return false;
  return true;
}

/// max over the subset of q(center, x): the radius of a finite set seen from `center`.
inline double set_radius(const QuasimetricSpace& space, std::size_t center, std::span<const std::size_t> subset) {
  if (subset.empty()) throw InvalidInput("set_radius: empty subset");
  if (center >= space.size()) throw InvalidInput("set_radius: center out of range");
  double r = 0.0;
  for (std::size_t x : subset) {
    if (x >= space.size()) throw InvalidInput("set_radius: index out of range");
    r = std::max(r, space(center, x));
  }
  return r;
}

}  // namespace varrat
