#pragma once

// Brute-force verification of end points. Every relation is re-derived from the ordering and
// the quasimetric directly; nothing here calls the solver's selection code.

#include <cstddef>
#include <deque>
#include <span>
#include <string>
#include <vector>

#include "varrat/core.hpp"
#include "varrat/goal_system.hpp"
#include "varrat/hypotheses.hpp"
#include "varrat/ordering.hpp"
#include "varrat/quasimetric.hpp"
#include "varrat/solver.hpp"
#include "varrat/worthwhile.hpp"

namespace varrat {

namespace detail {

inline std::string pair_name(const FeasiblePair& p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.omega) + ")";
}

// a <=_{K[b]} b
inline bool below(const VariableOrdering& K, const PayoffVec& a, const PayoffVec& b) { return leq_under(K, b, a); }

// (x', w') with f(x',w') + ratio q(x,x') xi <=_{K[f(x,w)]} f(x,w)
inline std::vector<FeasiblePair> worthwhile_targets(const GoalSystem& gs, const FeasiblePair& from,
                                                    const DeltaParams& dp) {
  std::vector<FeasiblePair> out;
  const PayoffVec& f = gs.payoff(from);
  for (std::size_t x = 0; x < gs.means_count(); ++x)
    for (std::size_t w : gs.feasible(x))
      if (below(gs.ordering(), gs.payoff(x, w) + dp.ratio * gs.space()(from.x, x) * dp.xi, f))
        out.push_back({x, w});
  return out;
}

}  // namespace detail

/// f* + (eps/lambda) q(x0, x*) xi <=_{K[f0]} f0.
inline Check check_conclusion_01(const GoalSystem& gs, const SolveParams& params, std::size_t x_star,
                                 std::size_t omega_star, const PayoffVec& f_star) {
  (void)omega_star;
  Check c{"decrease", CheckStatus::Pass, "end point improves on the start by the change cost", {}};
  const PayoffVec& f0 = gs.payoff(params.start);
  const PayoffVec lhs = f_star + params.ratio() * gs.space()(params.start.x, x_star) * params.xi;
  if (!detail::below(gs.ordering(), lhs, f0)) {
    c.status = CheckStatus::Fail;
    c.witnesses.push_back(format_vec(lhs) + " is not below f0 = " + format_vec(f0) + " under K[f0]");
  }
  return c;
}

/// No feasible (x, w) with f(x,w) != f* has f + (eps/lambda) q(x*, x) xi <=_{K[f*]} f*.
inline Check check_conclusion_02(const GoalSystem& gs, const SolveParams& params, std::size_t x_star,
                                 std::size_t omega_star, const PayoffVec& f_star) {
  (void)omega_star;
  Check c{"no-better-move", CheckStatus::Pass, "no other payoff is worth the change from the end point", {}};
  for (std::size_t x = 0; x < gs.means_count(); ++x)
    for (std::size_t w : gs.feasible(x)) {
      const PayoffVec& f = gs.payoff(x, w);
      if (same_payoff(f, f_star)) continue;
      const PayoffVec lhs = f + params.ratio() * gs.space()(x_star, x) * params.xi;
      if (detail::below(gs.ordering(), lhs, f_star)) {
        c.status = CheckStatus::Fail;
        c.witnesses.push_back("pair " + detail::pair_name({x, w}) + ": " + format_vec(lhs) + " <= f* = " +
                              format_vec(f_star));
      }
    }
  return c;
}

/// Whether (x0, w0) is an approximate eps*xi-minimizer of f over gph Omega under K[f0].
inline bool start_is_approx_minimizer(const GoalSystem& gs, const SolveParams& params) {
  const PayoffVec& f0 = gs.payoff(params.start);
  const Cone& k0 = gs.ordering().at(f0);
  const PayoffVec shifted = f0 - params.eps * params.xi;
  for (const auto& p : payoff_image(gs))
    if (k0.contains(shifted - p)) return false;
  return true;
}

/// q(x0, x*) <= lambda, applicable only when the start is an approximate eps*xi-minimizer.
inline Check check_conclusion_03(const GoalSystem& gs, const SolveParams& params, std::size_t x_star) {
  Check c{"proximity", CheckStatus::Pass, "end point reachable within the budget lambda", {}};
  if (!start_is_approx_minimizer(gs, params)) {
    c.status = CheckStatus::NotApplicable;
    c.detail = "start is not an approximate eps*xi-minimizer";
    return c;
  }
  const double dist = gs.space()(params.start.x, x_star);
  if (dist > params.lambda + kMembershipTol) {
    c.status = CheckStatus::Fail;
    c.witnesses.push_back("q(x0,x*) = " + std::to_string(dist) + " > lambda = " + std::to_string(params.lambda));
  }
  return c;
}

/// f* is Pareto-minimal in F(x*) under K[f*].
inline Check check_pareto_end(const GoalSystem& gs, std::size_t x_star, std::size_t omega_star,
                              const PayoffVec& f_star) {
  Check c{"pareto-end", CheckStatus::Pass, "f* in Min(F(x*), K[f*])", {}};
  if (!gs.is_feasible(x_star, omega_star) || !same_payoff(gs.payoff(x_star, omega_star), f_star)) {
    c.status = CheckStatus::Fail;
    c.witnesses.push_back("f* is not f(x*, omega*)");
    return c;
  }
  const Cone& k = gs.ordering().at(f_star);
  for (std::size_t w : gs.feasible(x_star)) {
    const PayoffVec& f = gs.payoff(x_star, w);
    if (!same_payoff(f, f_star) && k.contains(f_star - f)) {
      c.status = CheckStatus::Fail;
      c.witnesses.push_back("way " + std::to_string(w) + " payoff " + format_vec(f) + " dominates f*");
    }
  }
  return c;
}

// -- traps -------------------------------------------------------------------

inline bool is_stationary_trap(const ScalarModel& model, std::size_t x, double ratio) {
  const auto w = scalar_worthwhile_set(model, x, ratio);
  return w.size() == 1 && w.front() == x;
}

inline bool is_stationary_trap(const GoalSystem& gs, const FeasiblePair& pair, const DeltaParams& dp) {
  for (const auto& t : detail::worthwhile_targets(gs, pair, dp))
    if (t.x != pair.x) return false;
  return true;
}

/// Stationary at x*, and x* reachable from x0 through worthwhile changes.
inline bool is_variational_trap(const ScalarModel& model, std::size_t x0, std::size_t x_star, double ratio) {
  if (!is_stationary_trap(model, x_star, ratio)) return false;
  std::vector<bool> seen(model.space.size(), false);
  std::deque<std::size_t> todo{x0};
  seen[x0] = true;
  while (!todo.empty()) {
    const std::size_t x = todo.front();
    todo.pop_front();
    if (x == x_star) return true;
    for (std::size_t y : scalar_worthwhile_set(model, x, ratio))
      if (!seen[y]) {
        seen[y] = true;
        todo.push_back(y);
      }
  }
  return false;
}

inline bool is_variational_trap(const GoalSystem& gs, const FeasiblePair& start, const FeasiblePair& end,
                                const DeltaParams& dp) {
  if (!is_stationary_trap(gs, end, dp)) return false;
  std::vector<std::vector<bool>> seen(gs.means_count(), std::vector<bool>(gs.way_count(), false));
  std::deque<FeasiblePair> todo{start};
  seen[start.x][start.omega] = true;
  while (!todo.empty()) {
    const FeasiblePair p = todo.front();
    todo.pop_front();
    if (p == end) return true;
    for (const auto& t : detail::worthwhile_targets(gs, p, dp))
      if (!seen[t.x][t.omega]) {
        seen[t.x][t.omega] = true;
        todo.push_back(t);
      }
  }
  return false;
}

inline std::vector<std::size_t> brute_force_traps(const ScalarModel& model, double ratio) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < model.space.size(); ++x)
    if (is_stationary_trap(model, x, ratio)) out.push_back(x);
  return out;
}

inline std::vector<FeasiblePair> brute_force_traps(const GoalSystem& gs, const DeltaParams& dp) {
  std::vector<FeasiblePair> out;
  for (const auto& p : feasible_pairs(gs))
    if (is_stationary_trap(gs, p, dp)) out.push_back(p);
  return out;
}

/// Hypotheses plus every conclusion about a claimed end point (x*, omega*).
inline Certificate certify_solution(const GoalSystem& gs, const SolveParams& params, std::size_t x_star,
                                    std::size_t omega_star) {
  Certificate cert = validate_hypotheses(gs);
  if (!gs.is_feasible(x_star, omega_star)) {
    cert.checks.push_back({"end-point", CheckStatus::Fail, "claimed end point is feasible",
                           {"(" + std::to_string(x_star) + "," + std::to_string(omega_star) + ") is not in gph Omega"}});
    return cert;
  }
  const PayoffVec& f_star = gs.payoff(x_star, omega_star);
  cert.checks.push_back(check_conclusion_01(gs, params, x_star, omega_star, f_star));
  cert.checks.push_back(check_conclusion_02(gs, params, x_star, omega_star, f_star));
  cert.checks.push_back(check_conclusion_03(gs, params, x_star));
  cert.checks.push_back(check_pareto_end(gs, x_star, omega_star, f_star));
  const DeltaParams dp{params.xi, params.ratio()};
  Check trap{"variational-trap", CheckStatus::Pass, "stationary end point reachable from the start", {}};
  if (!is_variational_trap(gs, params.start, {x_star, omega_star}, dp)) {
    trap.status = CheckStatus::Fail;
    trap.witnesses.push_back(is_stationary_trap(gs, {x_star, omega_star}, dp) ? "end point unreachable from start"
                                                                             : "end point is not stationary");
  }
  cert.checks.push_back(std::move(trap));
  return cert;
}

/// Both displayed relations of the pair-space principle, checked over every feasible pair.
inline std::vector<Check> check_pair_conclusions(const Matrix& pair_q, std::span<const PayoffVec> f,
                                                 const VariableOrdering& K, const SolveParams& params,
                                                 std::size_t phi_star) {
  const std::size_t phi0 = params.start.x;
  std::vector<Check> out;
  Check c1{"pair decrease", CheckStatus::Pass, "f(phi*) + r q(phi0,phi*) xi <= f(phi0)", {}};
  const PayoffVec lhs = f[phi_star] + params.ratio() * pair_q[phi0][phi_star] * params.xi;
  if (!detail::below(K, lhs, f[phi0])) {
    c1.status = CheckStatus::Fail;
    c1.witnesses.push_back(format_vec(lhs) + " not below " + format_vec(f[phi0]));
  }
  Check c2{"pair no-better-move", CheckStatus::Pass, "no pair with a different payoff is worth the change", {}};
  for (std::size_t p = 0; p < f.size(); ++p) {
    if (same_payoff(f[p], f[phi_star])) continue;
    if (detail::below(K, f[p] + params.ratio() * pair_q[phi_star][p] * params.xi, f[phi_star])) {
      c2.status = CheckStatus::Fail;
      c2.witnesses.push_back("pair " + std::to_string(p));
    }
  }
  out.push_back(std::move(c1));
  out.push_back(std::move(c2));
  return out;
}

}  // namespace varrat
