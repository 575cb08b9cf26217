#pragma once

// Finite goal systems: means x with change costs q, ways of using them Omega(x),
// and vector payoffs f(x, omega) defined exactly on the graph of Omega.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "varrat/cone.hpp"
#include "varrat/core.hpp"
#include "varrat/ordering.hpp"
#include "varrat/quasimetric.hpp"

namespace varrat {

enum class Sense { MinimizeCosts, MaximizeGains };

inline const char* to_string(Sense s) { return s == Sense::MinimizeCosts ? "minimize-costs" : "maximize-gains"; }

/// Raw, unvalidated description of an instance. Payoffs and anchor points are in the stated sense;
/// cones, theta and directions are always in the cost convention.
struct InstanceData {
  std::vector<std::string> means;
  std::vector<std::string> ways;
  Matrix quasimetric;
  std::vector<std::vector<std::size_t>> feasible;
  std::vector<std::vector<std::optional<PayoffVec>>> payoffs;  // [x][omega]
  std::vector<Anchor> anchors;
  Cone theta;
  Sense sense = Sense::MinimizeCosts;
};

/// Gains g are stored as costs f = -g; anchor points move with them.
inline InstanceData to_cost_convention(InstanceData data) {
  if (data.sense == Sense::MaximizeGains) {
    for (auto& row : data.payoffs)
      for (auto& cell : row)
        if (cell) *cell = -*cell;
    for (auto& a : data.anchors) a.point = -a.point;
  }
  return data;
}

struct FeasiblePair {
  std::size_t x = 0;
  std::size_t omega = 0;
  friend bool operator==(const FeasiblePair&, const FeasiblePair&) = default;
  friend auto operator<=>(const FeasiblePair&, const FeasiblePair&) = default;
};

class GoalSystem {
 public:
  /// Rejects instances whose structure is broken: shapes, dom f != gph Omega, invalid quasimetric,
  /// non-pointed anchor cones, inconsistent payoff dimensions.
  static GoalSystem build(InstanceData raw) {
    const std::size_t n = raw.means.size();
    if (n == 0) throw InvalidInput("goal system: no means");
    if (raw.ways.empty()) throw InvalidInput("goal system: no ways");
    if (raw.quasimetric.size() != n) throw InvalidInput("goal system: quasimetric size differs from means count");
    if (raw.feasible.size() != n) throw InvalidInput("goal system: feasible map size differs from means count");
    if (raw.payoffs.size() != n) throw InvalidInput("goal system: payoff table size differs from means count");
    if (raw.anchors.empty()) throw InvalidInput("goal system: ordering has no anchors");
    const Eigen::Index m = raw.theta.dimension();
    if (m < 1) throw InvalidInput("goal system: theta cone missing");

    InstanceData costs = to_cost_convention(raw);
    GoalSystem gs(make_quasimetric(costs.quasimetric), VariableOrdering(costs.anchors), costs.theta);
    if (gs.ordering_.dimension() != m) throw InvalidInput("goal system: ordering and theta dimensions differ");
    for (std::size_t x = 0; x < n; ++x) {
      auto f = costs.feasible[x];
      std::sort(f.begin(), f.end());
      f.erase(std::unique(f.begin(), f.end()), f.end());
      if (f.empty()) throw InvalidInput("goal system: Omega(" + std::to_string(x) + ") is empty");
      if (f.back() >= raw.ways.size()) throw InvalidInput("goal system: way index out of range");
      if (costs.payoffs[x].size() != raw.ways.size())
        throw InvalidInput("goal system: payoff row " + std::to_string(x) + " has wrong length");
      for (std::size_t w = 0; w < raw.ways.size(); ++w) {
        const bool feasible = std::binary_search(f.begin(), f.end(), w);
        const auto& cell = costs.payoffs[x][w];
        if (feasible != cell.has_value())
          throw InvalidInput("goal system: dom f != gph Omega at (" + std::to_string(x) + "," + std::to_string(w) + ")");
        if (cell) {
          require_same_dim(*cell, m, "goal system payoff");
          require_finite(*cell, "goal system payoff");
        }
      }
      gs.feasible_.push_back(std::move(f));
    }
    gs.payoffs_ = std::move(costs.payoffs);
    gs.data_ = std::move(raw);
    return gs;
  }

  std::size_t means_count() const { return feasible_.size(); }
  std::size_t way_count() const { return data_.ways.size(); }
  Eigen::Index dimension() const { return theta_.dimension(); }
  Sense sense() const { return data_.sense; }

  const QuasimetricSpace& space() const { return space_; }
  const VariableOrdering& ordering() const { return ordering_; }
  const Cone& theta() const { return theta_; }
  const InstanceData& data() const { return data_; }
  const std::string& means_label(std::size_t x) const { return data_.means.at(x); }
  const std::string& way_label(std::size_t w) const { return data_.ways.at(w); }

  /// Omega(x), ascending way indices.
  std::span<const std::size_t> feasible(std::size_t x) const { return feasible_.at(x); }

  bool is_feasible(std::size_t x, std::size_t omega) const {
    return x < feasible_.size() && std::binary_search(feasible_[x].begin(), feasible_[x].end(), omega);
  }

  /// Internal (cost convention) payoff f(x, omega).
  const PayoffVec& payoff(std::size_t x, std::size_t omega) const {
    if (!is_feasible(x, omega)) {
      throw InvalidInput("payoff requested off gph Omega at (" + std::to_string(x) + "," + std::to_string(omega) + ")");
    }
    return *payoffs_[x][omega];
  }
  const PayoffVec& payoff(const FeasiblePair& p) const { return payoff(p.x, p.omega); }

 private:
  GoalSystem(QuasimetricSpace space, VariableOrdering ordering, Cone theta)
      : space_(std::move(space)), ordering_(std::move(ordering)), theta_(std::move(theta)) {}

  QuasimetricSpace space_;
  VariableOrdering ordering_;
  Cone theta_;
  std::vector<std::vector<std::size_t>> feasible_;
  std::vector<std::vector<std::optional<PayoffVec>>> payoffs_;
  InstanceData data_;
};

/// All (x, omega) with omega in Omega(x), lexicographic.
inline std::vector<FeasiblePair> feasible_pairs(const GoalSystem& gs) {
  std::vector<FeasiblePair> out;
  for (std::size_t x = 0; x < gs.means_count(); ++x)
    for (std::size_t w : gs.feasible(x)) out.push_back({x, w});
  return out;
}

/// F(x) in way order, duplicates kept.
inline std::vector<PayoffVec> image_set(const GoalSystem& gs, std::size_t x) {
  if (x >= gs.means_count()) throw InvalidInput("image_set: means index out of range");
  std::vector<PayoffVec> out;
  for (std::size_t w : gs.feasible(x)) out.push_back(gs.payoff(x, w));
  return out;
}

/// f(gph Omega) in feasible-pair order.
inline std::vector<PayoffVec> payoff_image(const GoalSystem& gs) {
  std::vector<PayoffVec> out;
  for (const auto& p : feasible_pairs(gs)) out.push_back(gs.payoff(p));
  return out;
}

struct QuasiboundReport {
  bool pass = true;
  std::vector<PayoffVec> witness;  // M, the payoff image itself
  PayoffVec lower, upper;          // bounding box of M
};

/// A finite image is bounded, so M = f(gph Omega) witnesses f(gph Omega) in M + Theta.
inline QuasiboundReport check_quasibounded(const GoalSystem& gs) {
  QuasiboundReport r;
  r.witness = payoff_image(gs);
  r.lower = r.witness.front();
  r.upper = r.witness.front();
  for (const auto& p : r.witness) {
    r.lower = r.lower.cwiseMin(p);
    r.upper = r.upper.cwiseMax(p);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Resource-allocation instances: means x in a grid of R^d, ways are allocations
// (omega^1, ..., omega^m) of grid vectors with omega^1 + ... + omega^m = x.

using ActivityRule = std::function<double(const Eigen::VectorXd& x, const Eigen::VectorXd& share)>;

struct ResourceSpec {
  int d = 1;
  int m = 1;
  std::vector<double> levels;        // per-coordinate levels of the means grid
  std::vector<double> alloc_levels;  // per-coordinate levels for each omega^j; empty = levels
  std::vector<ActivityRule> rules;   // one per activity, f^j(x, omega^j)
  double acquire_cost = 1.0;         // q(x, x') charges acquire * (x' - x)_+ + release * (x - x')_+
  double release_cost = 1.0;
  std::vector<Anchor> anchors;
  Cone theta;
  Sense sense = Sense::MinimizeCosts;
};

struct ResourceInstance {
  InstanceData data;
  std::vector<Eigen::VectorXd> means_points;
  std::vector<std::vector<Eigen::VectorXd>> allocations;  // per way index, the m shares
  std::vector<std::string> warnings;
};

namespace detail {

inline std::vector<Eigen::VectorXd> grid_points(int d, const std::vector<double>& levels) {
  std::vector<Eigen::VectorXd> out;
  const std::size_t L = levels.size();
  std::vector<std::size_t> digit(static_cast<std::size_t>(d), 0);
  while (true) {
    Eigen::VectorXd p(d);
    for (int k = 0; k < d; ++k) p[k] = levels[digit[static_cast<std::size_t>(k)]];
    out.push_back(p);
    int k = d - 1;
    while (k >= 0 && ++digit[static_cast<std::size_t>(k)] == L) digit[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) break;
  }
  return out;
}

inline std::string vec_label(const Eigen::VectorXd& v) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace detail

inline ResourceInstance build_resource_instance(const ResourceSpec& spec) {
  if (spec.d < 1 || spec.m < 1) throw InvalidInput("resource instance: d and m must be positive");
  if (spec.levels.empty()) throw InvalidInput("resource instance: empty grid");
  if (static_cast<int>(spec.rules.size()) != spec.m) throw InvalidInput("resource instance: need one rule per activity");
  if (!(spec.acquire_cost > 0.0 && spec.release_cost > 0.0))
    throw InvalidInput("resource instance: change costs must be positive");
  for (double v : spec.levels)
    if (!std::isfinite(v)) throw InvalidInput("resource instance: non-finite grid level");
  const auto& alloc_levels = spec.alloc_levels.empty() ? spec.levels : spec.alloc_levels;

  const auto means = detail::grid_points(spec.d, spec.levels);
  const auto shares = detail::grid_points(spec.d, alloc_levels);
  const double cap = 2e6;
  if (std::pow(static_cast<double>(shares.size()), spec.m - 1) * static_cast<double>(means.size()) > cap)
    throw InvalidInput("resource instance: allocation enumeration too large");

  ResourceInstance out;
  std::vector<std::vector<std::vector<Eigen::VectorXd>>> per_means;  // kept means -> allocations
  for (const auto& x : means) {
    std::vector<std::vector<Eigen::VectorXd>> allocs;
    std::vector<std::size_t> digit(static_cast<std::size_t>(spec.m - 1), 0);
    while (true) {
      Eigen::VectorXd rest = x;
      std::vector<Eigen::VectorXd> a;
      for (std::size_t j = 0; j + 1 < static_cast<std::size_t>(spec.m); ++j) {
        a.push_back(shares[digit[j]]);
        rest -= shares[digit[j]];
      }
      // the last share is forced by the constraint; it must itself be a grid vector
      const auto it = std::find_if(shares.begin(), shares.end(),
                                   [&](const Eigen::VectorXd& s) { return (s - rest).cwiseAbs().maxCoeff() <= 1e-9; });
      if (it != shares.end()) {
        a.push_back(*it);
        allocs.push_back(std::move(a));
      }
      int k = spec.m - 2;
      while (k >= 0 && ++digit[static_cast<std::size_t>(k)] == shares.size()) digit[static_cast<std::size_t>(k--)] = 0;
      if (k < 0) break;
    }
    if (allocs.empty()) {
      out.warnings.push_back("means " + detail::vec_label(x) + " has no feasible allocation; dropped");
      continue;
    }
    out.means_points.push_back(x);
    per_means.push_back(std::move(allocs));
  }
  if (out.means_points.empty()) throw InvalidInput("resource instance: no means point has a feasible allocation");

  auto& data = out.data;
  const std::size_t n = out.means_points.size();
  for (const auto& x : out.means_points) data.means.push_back(detail::vec_label(x));
  data.quasimetric.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Eigen::VectorXd delta = out.means_points[j] - out.means_points[i];
      data.quasimetric[i][j] = spec.acquire_cost * delta.cwiseMax(0.0).sum() + spec.release_cost * (-delta).cwiseMax(0.0).sum();
    }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> ways;
    for (auto& a : per_means[i]) {
      ways.push_back(out.allocations.size());
      std::string label = "[";
      for (std::size_t j = 0; j < a.size(); ++j) label += (j ? "," : "") + detail::vec_label(a[j]);
      data.ways.push_back(label + "]");
      out.allocations.push_back(std::move(a));
    }
    data.feasible.push_back(std::move(ways));
  }
  const std::size_t w = out.allocations.size();
  data.payoffs.assign(n, std::vector<std::optional<PayoffVec>>(w));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t way : data.feasible[i]) {
      PayoffVec f(spec.m);
      for (int j = 0; j < spec.m; ++j)
        f[j] = spec.rules[static_cast<std::size_t>(j)](out.means_points[i], out.allocations[way][static_cast<std::size_t>(j)]);
      require_finite(f, "resource instance payoff");
      data.payoffs[i][way] = f;
    }
  data.anchors = spec.anchors;
  data.theta = spec.theta;
  data.sense = spec.sense;
  return out;
}

}  // namespace varrat
