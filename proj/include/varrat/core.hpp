#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace varrat {

/// A point of the payoff space R^m. Components are costs (smaller is better).
using PayoffVec = Eigen::VectorXd;

inline constexpr double kMembershipTol = 1e-9;   // absolute, on inner products
inline constexpr double kUnitNormTol = 1e-9;
inline constexpr double kQuasimetricTol = 1e-12;
inline constexpr double kNnlsResidualTol = 1e-8;

/// Input that violates a precondition of an operation.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A standing hypothesis does not hold for the instance handed to a solver.
class HypothesisFailure : public std::runtime_error {
 public:
  HypothesisFailure(std::string hypothesis, const std::string& what)
      : std::runtime_error(hypothesis + ": " + what), hypothesis_(std::move(hypothesis)) {}
  const std::string& hypothesis() const noexcept { return hypothesis_; }

 private:
  std::string hypothesis_;
};

inline PayoffVec make_payoff(std::initializer_list<double> values) {
  PayoffVec p(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) p[i++] = v;
  return p;
}

inline PayoffVec make_payoff(const std::vector<double>& values) {
  return Eigen::Map<const PayoffVec>(values.data(), static_cast<Eigen::Index>(values.size()));
}

inline std::vector<double> to_std(const PayoffVec& p) { return {p.data(), p.data() + p.size()}; }

inline bool all_finite(const PayoffVec& p) { return p.allFinite(); }

inline void require_finite(const PayoffVec& p, const char* what) {
  if (p.size() == 0) throw InvalidInput(std::string(what) + ": empty payoff vector");
  if (!p.allFinite()) throw InvalidInput(std::string(what) + ": non-finite component");
}

inline void require_same_dim(const PayoffVec& a, Eigen::Index m, const char* what) {
  if (a.size() != m) {
    throw InvalidInput(std::string(what) + ": dimension mismatch (" + std::to_string(a.size()) +
                       " vs " + std::to_string(m) + ")");
  }
}

inline bool is_unit(const PayoffVec& xi) { return std::abs(xi.norm() - 1.0) <= kUnitNormTol; }

/// Exact equality of payoff vectors (table values are compared bit-for-bit).
inline bool same_payoff(const PayoffVec& a, const PayoffVec& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

}  // namespace varrat
