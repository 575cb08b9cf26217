#pragma once

// Lawson-Hanson active-set solver for min ||Ax - b||_2 subject to x >= 0.

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

namespace varrat {

struct NnlsResult {
  Eigen::VectorXd x;
  double residual_norm = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

inline NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tol = 1e-12,
                       std::size_t max_iter = 0) {
  const Eigen::Index n = A.cols();
  NnlsResult out;
  out.x = Eigen::VectorXd::Zero(n);
  if (n == 0) {
    out.residual_norm = b.norm();
    out.converged = true;
    return out;
  }
  if (max_iter == 0) max_iter = static_cast<std::size_t>(3 * n + 10);

  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  Eigen::VectorXd& x = out.x;

  auto solve_passive = [&]() {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j)
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    Eigen::MatrixXd Ap(A.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) Ap.col(static_cast<Eigen::Index>(k)) = A.col(idx[k]);
    Eigen::VectorXd zp = Ap.colPivHouseholderQr().solve(b);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    for (std::size_t k = 0; k < idx.size(); ++k) z[idx[k]] = zp[static_cast<Eigen::Index>(k)];
    return z;
  };

  Eigen::VectorXd w = A.transpose() * (b - A * x);
  while (out.iterations < max_iter) {
    Eigen::Index best = -1;
    double best_w = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && w[j] > best_w) {
        best_w = w[j];
        best = j;
      }
    }
    if (best < 0) {
      out.converged = true;
      break;
    }
    passive[static_cast<std::size_t>(best)] = true;
    ++out.iterations;

    Eigen::VectorXd z = solve_passive();
    while (true) {
      bool feasible = true;
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[static_cast<std::size_t>(j)] && z[j] <= 0.0) feasible = false;
      if (feasible) break;
      double alpha = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z[j] <= 0.0) {
          const double denom = x[j] - z[j];
          if (denom > 0.0) alpha = std::min(alpha, x[j] / denom);
        }
      }
      if (!std::isfinite(alpha)) alpha = 0.0;
      x += alpha * (z - x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && x[j] <= tol) {
          passive[static_cast<std::size_t>(j)] = false;
          x[j] = 0.0;
        }
      }
      z = solve_passive();
    }
    x = z;
    w = A.transpose() * (b - A * x);
  }
  out.residual_norm = (A * x - b).norm();
  return out;
}

}  // namespace varrat
