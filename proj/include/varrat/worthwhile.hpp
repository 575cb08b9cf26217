#pragma once

// Worthwhile-change sets: the scalar adaptive model (motivation vs. resistance)
// and the vector model under a variable ordering structure.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "varrat/core.hpp"
#include "varrat/goal_system.hpp"
#include "varrat/ordering.hpp"
#include "varrat/quasimetric.hpp"

namespace varrat {

/// Strictly increasing scalar map with value 0 at 0: identity, k*t, or sign(t)|t|^p.
struct MonotoneFn {
  enum class Kind { Identity, Linear, Power };
  Kind kind = Kind::Identity;
  double param = 1.0;

  static MonotoneFn identity() { return {}; }
  static MonotoneFn linear(double k) {
    if (!(k > 0.0 && std::isfinite(k))) throw InvalidInput("linear(k) needs k > 0");
    return {Kind::Linear, k};
  }
  static MonotoneFn power(double p) {
    if (!(p > 0.0 && std::isfinite(p))) throw InvalidInput("power(p) needs p > 0");
    return {Kind::Power, p};
  }

  double operator()(double t) const {
    switch (kind) {
      case Kind::Linear: return param * t;
      case Kind::Power: return std::copysign(std::pow(std::abs(t), param), t);
      case Kind::Identity: break;
    }
    return t;
  }

  std::string name() const {
    switch (kind) {
      case Kind::Linear: return "linear(" + std::to_string(param) + ")";
      case Kind::Power: return "power(" + std::to_string(param) + ")";
      case Kind::Identity: break;
    }
    return "identity";
  }
};

/// Parses `identity`, `linear(k)` or `power(p)`.
inline MonotoneFn parse_monotone(const std::string& text) {
  if (text == "identity") return MonotoneFn::identity();
  auto arg = [&](const std::string& head) -> std::optional<double> {
    if (text.rfind(head + "(", 0) != 0 || text.back() != ')') return std::nullopt;
    const std::string inner = text.substr(head.size() + 1, text.size() - head.size() - 2);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(inner, &used);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (used != inner.size()) return std::nullopt;
    return v;
  };
  if (auto k = arg("linear")) return MonotoneFn::linear(*k);
  if (auto p = arg("power")) return MonotoneFn::power(*p);
  throw InvalidInput("unknown monotone form '" + text + "'");
}

struct ScalarModel {
  QuasimetricSpace space;
  std::vector<double> values;  // f (costs) or g (gains), per `sense`
  Sense sense = Sense::MinimizeCosts;
  MonotoneFn U;                // pleasure of advantages
  MonotoneFn D;                // pain of inconveniences
  std::vector<double> schedule{1.0};  // satisficing ratios xi_1, xi_2, ...; the last one repeats

  void validate() const {
    if (values.size() != space.size()) throw InvalidInput("scalar model: one payoff per means point required");
    for (double v : values)
      if (!std::isfinite(v)) throw InvalidInput("scalar model: non-finite payoff");
    if (schedule.empty()) throw InvalidInput("scalar model: empty ratio schedule");
    for (double r : schedule)
      if (!(r >= 0.0 && std::isfinite(r))) throw InvalidInput("scalar model: ratios must be nonnegative");
  }

  double ratio_at(std::size_t step) const { return schedule[std::min(step, schedule.size() - 1)]; }

  /// A(x, x'): g(x') - g(x) for gains, f(x) - f(x') for costs.
  double advantage(std::size_t x, std::size_t to) const {
    return sense == Sense::MaximizeGains ? values[to] - values[x] : values[x] - values[to];
  }
};

/// {x' : U[A(x,x')] >= ratio * D[q(x,x')]}. Always contains x.
inline std::vector<std::size_t> scalar_worthwhile_set(const ScalarModel& model, std::size_t x, double ratio) {
  if (x >= model.space.size()) throw InvalidInput("scalar worthwhile set: index out of range");
  if (!(ratio >= 0.0)) throw InvalidInput("scalar worthwhile set: ratio must be nonnegative");
  std::vector<std::size_t> out;
  for (std::size_t to = 0; to < model.space.size(); ++to) {
    const double motivation = model.U(model.advantage(x, to));
    const double resistance = model.D(model.space(x, to));
    if (motivation >= ratio * resistance - kMembershipTol) out.push_back(to);
  }
  return out;
}

struct ScalarPath {
  std::vector<std::size_t> states;  // x_0, x_1, ...
  std::vector<double> ratios;       // ratio used to leave states[n]
  bool stationary = false;          // ended at a point whose worthwhile set is itself
};

/// Adaptive worthwhile change/stay process: at step n use ratio xi_{n+1} from the schedule and jump to the
/// farthest worthwhile point (lowest index on ties); stop once staying is the only worthwhile option.
inline ScalarPath scalar_process(const ScalarModel& model, std::size_t x0, std::size_t max_steps = 0) {
  model.validate();
  if (x0 >= model.space.size()) throw InvalidInput("scalar process: start out of range");
  if (max_steps == 0) max_steps = model.space.size() + model.schedule.size() + 1;
  ScalarPath path;
  path.states.push_back(x0);
  std::size_t x = x0;
  for (std::size_t n = 0; n < max_steps; ++n) {
    const double ratio = model.ratio_at(n);
    const auto w = scalar_worthwhile_set(model, x, ratio);
    path.ratios.push_back(ratio);
    std::size_t next = x;
    double best = 0.0;
    for (std::size_t c : w)
      if (model.space(x, c) > best) {
        best = model.space(x, c);
        next = c;
      }
    if (next == x) {
      // a stay only ends the process once the schedule has settled
      if (n + 1 >= model.schedule.size()) {
        path.stationary = true;
        return path;
      }
      continue;
    }
    x = next;
    path.states.push_back(x);
  }
  return path;
}

struct DeltaParams {
  PayoffVec xi;        // unit-norm directional cost shares
  double ratio = 1.0;  // eps / lambda

  void validate(Eigen::Index m) const {
    require_same_dim(xi, m, "xi");
    require_finite(xi, "xi");
    if (!is_unit(xi)) throw InvalidInput("xi must have unit Euclidean norm");
    if (!(ratio > 0.0 && std::isfinite(ratio))) throw InvalidInput("ratio eps/lambda must be positive");
  }
};

struct WorthwhileMember {
  std::size_t x = 0;
  std::vector<std::size_t> witnesses;  // every omega' in Omega(x') satisfying the inequality, ascending
};

/// W(x, omega): all x' with some omega' in Omega(x') such that
/// f(x',omega') + ratio * q(x,x') * xi <=_{K[f(x,omega)]} f(x,omega).
inline std::vector<WorthwhileMember> vector_worthwhile_set(const GoalSystem& gs, const FeasiblePair& pair,
                                                           const DeltaParams& params) {
  params.validate(gs.dimension());
  const PayoffVec& f = gs.payoff(pair);
  const Cone& cone = gs.ordering().at(f);
  std::vector<WorthwhileMember> out;
  for (std::size_t to = 0; to < gs.means_count(); ++to) {
    const PayoffVec shift = params.ratio * gs.space()(pair.x, to) * params.xi;
    WorthwhileMember member{to, {}};
    for (std::size_t w : gs.feasible(to))
      if (cone.contains(f - (gs.payoff(to, w) + shift))) member.witnesses.push_back(w);
    if (!member.witnesses.empty()) out.push_back(std::move(member));
  }
  return out;
}

/// Delta = A(phi, phi') - ratio * q(x, x') * xi with A = f(phi) - f(phi') (= g(phi') - g(phi) for gains).
inline PayoffVec delta_payoff(const GoalSystem& gs, const FeasiblePair& from, const FeasiblePair& to,
                              const DeltaParams& params) {
  params.validate(gs.dimension());
  return (gs.payoff(from) - gs.payoff(to)) - params.ratio * gs.space()(from.x, to.x) * params.xi;
}

/// a is preferred to b from `base`: Delta(base, a) - Delta(base, b) in K[f(base)].
inline bool pair_prefers(const GoalSystem& gs, const FeasiblePair& base, const FeasiblePair& a, const FeasiblePair& b,
                         const DeltaParams& params) {
  const PayoffVec diff = delta_payoff(gs, base, a, params) - delta_payoff(gs, base, b, params);
  return gs.ordering().at(gs.payoff(base)).contains(diff);
}

}  // namespace varrat
