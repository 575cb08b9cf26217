#pragma once

// Constructive variational principle for set-valued maps with variable ordering on finite
// quasimetric spaces: worthwhile-change iteration, then refinement of the ways at the end point.

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "varrat/cone.hpp"
#include "varrat/core.hpp"
#include "varrat/goal_system.hpp"
#include "varrat/hypotheses.hpp"
#include "varrat/ordering.hpp"
#include "varrat/quasimetric.hpp"
#include "varrat/worthwhile.hpp"

namespace varrat {

struct SolveParams {
  double eps = 1.0;
  double lambda = 1.0;
  PayoffVec xi;
  FeasiblePair start;
  std::size_t max_iters = 0;  // 0: |gph Omega| + 2

  double ratio() const { return eps / lambda; }
};

struct TrajectoryStep {
  std::size_t n = 0;
  std::size_t x = 0;
  std::size_t omega = 0;
  PayoffVec f;
  std::size_t cone_id = 0;  // anchor index selected for K[f_n]
  std::size_t w_size = 0;
  double radius = 0.0;      // max of q(x_n, .) over W(x_n, omega_n)
  double q_step = 0.0;      // q(x_n, x_{n+1}); 0 on the terminal record
};

enum class Termination { Stationary, MaxIters, Invalid };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::Stationary: return "stationary";
    case Termination::MaxIters: return "max_iters";
    case Termination::Invalid: return "invalid";
  }
  return "?";
}

struct Refinement {
  std::vector<std::vector<std::size_t>> r_sets;  // R(x_k, omega_k) for every recorded k
  std::vector<std::size_t> candidates;           // their intersection
  std::size_t omega_bar = 0;
  std::vector<std::size_t> level_set;            // Xi: the f_omega_bar level set over Omega(x*)
  std::vector<std::size_t> pareto;               // Pareto-minimal ways of f(x*, Xi) under K[f_omega_bar]
  std::size_t omega_star = 0;
};

struct Trajectory {
  std::vector<TrajectoryStep> steps;  // one record per iterate, terminal one included
  double path_length = 0.0;
  Termination termination = Termination::Invalid;
  Refinement refinement;
};

struct SolveResult {
  Trajectory trajectory;
  std::size_t x_star = 0;
  std::size_t omega_star = 0;
  PayoffVec f_star;
};

/// xi must be a unit vector of the common cone lying outside -Theta - K[f0].
inline void validate_direction(const GoalSystem& gs, const SolveParams& params) {
  if (!(params.eps > 0.0) || !(params.lambda > 0.0)) throw InvalidInput("eps and lambda must be positive");
  if (!gs.is_feasible(params.start.x, params.start.omega)) throw InvalidInput("start pair is not feasible");
  require_same_dim(params.xi, gs.dimension(), "xi");
  require_finite(params.xi, "xi");
  if (!is_unit(params.xi)) throw InvalidInput("xi must have unit Euclidean norm");
  const Cone theta_k = common_cone(gs.ordering());
  if (!theta_k.contains(params.xi)) throw InvalidInput("xi is not in the common ordering cone");
  const PayoffVec& f0 = gs.payoff(params.start);
  const std::vector<Cone> sum{gs.theta(), gs.ordering().at(f0)};
  if (minkowski_membership(-params.xi, sum)) throw InvalidInput("xi lies in -Theta - K[f0]");
}

namespace detail {

inline SolveResult run_procedure(const GoalSystem& gs, const SolveParams& params) {
  const DeltaParams dp{params.xi, params.ratio()};
  const auto& q = gs.space();
  const std::size_t cap = params.max_iters ? params.max_iters : feasible_pairs(gs).size() + 2;

  SolveResult res;
  Trajectory& traj = res.trajectory;
  FeasiblePair cur = params.start;
  while (true) {
    if (traj.steps.size() >= cap) {
      traj.termination = Termination::MaxIters;
      throw std::logic_error("worthwhile-change iteration exceeded " + std::to_string(cap) +
                             " iterates; impossible on a valid finite instance");
    }
    const auto w = vector_worthwhile_set(gs, cur, dp);
    // exact maximiser of q(x_n, .) over W, lowest index on ties
    const WorthwhileMember* next = nullptr;
    for (const auto& member : w)
      if (!next || q(cur.x, member.x) > q(cur.x, next->x)) next = &member;

    TrajectoryStep step;
    step.n = traj.steps.size();
    step.x = cur.x;
    step.omega = cur.omega;
    step.f = gs.payoff(cur);
    step.cone_id = gs.ordering().select(step.f);
    step.w_size = w.size();
    step.radius = q(cur.x, next->x);
    step.q_step = next->x == cur.x ? 0.0 : q(cur.x, next->x);
    traj.steps.push_back(step);
    traj.path_length += step.q_step;
    if (next->x == cur.x) break;
    cur = {next->x, next->witnesses.front()};
  }
  traj.termination = Termination::Stationary;

  // Refinement over Omega(x*)
  const std::size_t xs = cur.x;
  Refinement& ref = traj.refinement;
  const auto ways = gs.feasible(xs);
  std::vector<bool> in_all(ways.size(), true);
  for (const auto& s : traj.steps) {
    const Cone& cone = gs.ordering().at(s.f);
    const PayoffVec shift = dp.ratio * q(s.x, xs) * dp.xi;
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < ways.size(); ++i) {
      if (cone.contains(s.f - (gs.payoff(xs, ways[i]) + shift))) {
        r.push_back(ways[i]);
      } else {
        in_all[i] = false;
      }
    }
    ref.r_sets.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < ways.size(); ++i)
    if (in_all[i]) ref.candidates.push_back(ways[i]);
  if (ref.candidates.empty()) throw std::logic_error("refinement: the R-set intersection is empty");
  ref.omega_bar = ref.candidates.front();

  const PayoffVec& f_bar = gs.payoff(xs, ref.omega_bar);
  const Cone& k_bar = gs.ordering().at(f_bar);
  std::vector<PayoffVec> level_values;
  for (std::size_t v : ways)
    if (k_bar.contains(f_bar - gs.payoff(xs, v))) {
      ref.level_set.push_back(v);
      level_values.push_back(gs.payoff(xs, v));
    }
  const auto k_bar_order = VariableOrdering::constant(k_bar);
  for (std::size_t i : pareto_min_indices(level_values, k_bar_order)) ref.pareto.push_back(ref.level_set[i]);

  // keep the first candidate that is also minimal in all of F(x*) under its own cone
  const auto image = image_set(gs, xs);
  std::optional<std::size_t> chosen;
  for (std::size_t v : ref.pareto) {
    const PayoffVec& fv = gs.payoff(xs, v);
    const Cone& kv = gs.ordering().at(fv);
    bool minimal = true;
    for (const auto& other : image)
      if (!same_payoff(other, fv) && kv.contains(fv - other)) minimal = false;
    if (minimal) {
      chosen = v;
      break;
    }
  }
  if (!chosen) throw std::logic_error("refinement: no Pareto candidate is minimal in F(x*)");
  ref.omega_star = *chosen;
  res.x_star = xs;
  res.omega_star = *chosen;
  res.f_star = gs.payoff(xs, *chosen);
  return res;
}

}  // namespace detail

/// Runs the hypothesis gate, validates xi, then iterates worthwhile changes to a stationary end point
/// and refines the way used there. Throws HypothesisFailure or InvalidInput before iterating.
inline SolveResult solve_theorem31(const GoalSystem& gs, const SolveParams& params) {
  require_hypotheses(validate_hypotheses(gs));
  validate_direction(gs, params);
  return detail::run_procedure(gs, params);
}

/// Parameter-independent payoffs: a single universal way.
inline SolveResult solve_corollary35(const QuasimetricSpace& space, const VariableOrdering& K, const Cone& theta,
                                     std::span<const PayoffVec> f, const SolveParams& params) {
  if (f.size() != space.size()) throw InvalidInput("one payoff per means point required");
  if (params.start.omega != 0) throw InvalidInput("parameter-independent problems have the single way 0");
  InstanceData d;
  d.ways = {"*"};
  d.quasimetric = space.matrix();
  for (std::size_t x = 0; x < f.size(); ++x) {
    d.means.push_back("x" + std::to_string(x));
    d.feasible.push_back({0});
    d.payoffs.push_back({f[x]});
  }
  d.anchors = K.anchors();
  d.theta = theta;
  return solve_theorem31(GoalSystem::build(std::move(d)), params);
}

/// Classical Ekeland principle on a finite metric space: m = 1, K = R_+, xi = 1.
inline std::size_t solve_classical_evp(const QuasimetricSpace& space, std::span<const double> f, double eps,
                                       double lambda, std::size_t x0) {
  if (space.size() == 0) throw InvalidInput("empty space");
  if (!symmetrize_check(space)) throw InvalidInput("classical principle needs a symmetric (metric) space");
  std::vector<PayoffVec> values;
  for (double v : f) values.push_back(PayoffVec::Constant(1, v));
  SolveParams params{eps, lambda, PayoffVec::Ones(1), {x0, 0}, 0};
  return solve_corollary35(space, VariableOrdering::constant(Cone::orthant(1)), Cone::orthant(1), values, params)
      .x_star;
}

/// Pair quasimetric q[(x,w),(x',w')] = q_X(x,x') + q_Omega(w,w') over the feasible pairs of gs.
inline Matrix pair_quasimetric(const GoalSystem& gs, const Matrix& way_costs) {
  if (way_costs.size() != gs.way_count()) throw InvalidInput("way cost matrix must be |ways| x |ways|");
  for (const auto& row : way_costs)
    if (row.size() != gs.way_count()) throw InvalidInput("way cost matrix must be square");
  const auto pairs = feasible_pairs(gs);
  Matrix out(pairs.size(), std::vector<double>(pairs.size()));
  for (std::size_t a = 0; a < pairs.size(); ++a)
    for (std::size_t b = 0; b < pairs.size(); ++b)
      out[a][b] = gs.space()(pairs[a].x, pairs[b].x) + way_costs[pairs[a].omega][pairs[b].omega];
  return out;
}

struct PairSpaceResult {
  std::size_t phi_star = 0;                     // index into the feasible pair list
  std::vector<std::vector<std::size_t>> classes;  // pairs at mutual distance zero
  SolveResult quotient;                         // solve on classes (means) x pairs (ways)
};

/// Variational principle on the space of feasible pairs. Pairs at mutual distance zero are merged
/// into one point whose members become its ways; for a genuine quasimetric every class is a
/// singleton and this is the parameter-independent principle on pairs.
inline PairSpaceResult solve_pair_space(const Matrix& pair_q, std::span<const PayoffVec> f, const VariableOrdering& K,
                                        const Cone& theta, const SolveParams& params) {
  const std::size_t n = pair_q.size();
  if (n == 0 || f.size() != n) throw InvalidInput("pair space: one payoff per feasible pair required");
  for (const auto& row : pair_q)
    if (row.size() != n) throw InvalidInput("pair space: quasimetric must be square");
  for (const auto& v : quasimetric_violations(pair_q).violations) {
    if (v.axiom == 2 && v.i != v.j && std::abs(pair_q[v.j][v.i]) <= kQuasimetricTol) continue;
    throw HypothesisFailure("H1", v.detail);
  }
  if (params.start.x >= n) throw InvalidInput("pair space: start pair out of range");

  PairSpaceResult out;
  std::vector<std::size_t> class_of(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    if (class_of[a] != n) continue;
    class_of[a] = out.classes.size();
    out.classes.push_back({a});
    for (std::size_t b = a + 1; b < n; ++b)
      if (class_of[b] == n && std::abs(pair_q[a][b]) <= kQuasimetricTol) {
        class_of[b] = class_of[a];
        out.classes.back().push_back(b);
      }
  }
  InstanceData d;
  const std::size_t c = out.classes.size();
  d.quasimetric.assign(c, std::vector<double>(c));
  for (std::size_t i = 0; i < c; ++i) {
    d.means.push_back("class" + std::to_string(i));
    for (std::size_t j = 0; j < c; ++j) d.quasimetric[i][j] = pair_q[out.classes[i].front()][out.classes[j].front()];
  }
  for (std::size_t p = 0; p < n; ++p) d.ways.push_back("phi" + std::to_string(p));
  d.payoffs.assign(c, std::vector<std::optional<PayoffVec>>(n));
  for (std::size_t i = 0; i < c; ++i) {
    d.feasible.push_back(out.classes[i]);
    for (std::size_t p : out.classes[i]) d.payoffs[i][p] = f[p];
  }
  d.anchors = K.anchors();
  d.theta = theta;
  SolveParams qp = params;
  qp.start = {class_of[params.start.x], params.start.x};
  out.quotient = solve_theorem31(GoalSystem::build(std::move(d)), qp);
  out.phi_star = out.quotient.omega_star;
  return out;
}

struct TrajectoryStats {
  std::size_t moves = 0;  // iterates that left their point
  std::size_t iterates = 0;
  double path_length = 0.0;
  double max_step = 0.0;
  double min_step = 0.0;  // over actual moves; 0 when there are none
  Termination termination = Termination::Invalid;
};

inline TrajectoryStats trajectory_stats(const Trajectory& t) {
  TrajectoryStats s;
  s.iterates = t.steps.size();
  s.path_length = t.path_length;
  s.termination = t.termination;
  bool first = true;
  for (const auto& step : t.steps) {
    if (step.q_step <= 0.0) continue;
    ++s.moves;
    s.max_step = std::max(s.max_step, step.q_step);
    s.min_step = first ? step.q_step : std::min(s.min_step, step.q_step);
    first = false;
  }
  return s;
}

/// Columns: n,x,omega,f_1..f_m,q_step,W_size,radius.
inline void write_trajectory_csv(std::ostream& os, const Trajectory& t, Eigen::Index m) {
  os << "n,x,omega";
  for (Eigen::Index j = 1; j <= m; ++j) os << ",f_" << j;
  os << ",q_step,W_size,radius\n";
  os.precision(17);
  for (const auto& s : t.steps) {
    os << s.n << "," << s.x << "," << s.omega;
    for (Eigen::Index j = 0; j < m; ++j) os << "," << s.f[j];
    os << "," << s.q_step << "," << s.w_size << "," << s.radius << "\n";
  }
}

}  // namespace varrat
