// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "varrat/certifier.hpp"
#include "varrat/generator.hpp"

using namespace varrat;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

bool same_trajectory(const Trajectory& a, const Trajectory& b) {
  if (a.steps.size() != b.steps.size() || a.path_length != b.path_length) return false;
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    const auto &s = a.steps[i], &t = b.steps[i];
    if (s.x != t.x || s.omega != t.omega || s.q_step != t.q_step || s.cone_id != t.cone_id || s.f != t.f) return false;
  }
  return true;
}

std::vector<PayoffVec> payoffs_by_means(const InstanceData& d) {
  std::vector<PayoffVec> f;
  for (std::size_t x = 0; x < d.means.size(); ++x) f.push_back(*d.payoffs[x][d.feasible[x].front()]);
  return f;
}

struct Run {
  GeneratedInstance g;
  GoalSystem gs;
  SolveResult res;
};

// 1 --------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  const Matrix line{{0, 1, 2}, {1, 0, 1}, {2, 1, 0}};
  const std::vector<double> f{3, 1, 0};
  const auto space = make_quasimetric(line);
  const auto t0 = Clock::now();
  const std::size_t x_star = solve_classical_evp(space, f, 1.0, 1.0, 0);
  const double ms = ms_since(t0);
  // (a) f(x0) - f(x) >= (eps/lambda) d(x0,x); (b) f(x) - f(x') < (eps/lambda) d(x,x') for x' != x
  std::vector<std::size_t> scan;
  for (std::size_t x = 0; x < 3; ++x) {
    bool ok = f[0] - f[x] >= line[0][x];
    for (std::size_t y = 0; y < 3; ++y)
      if (y != x && !(f[x] - f[y] < line[x][y])) ok = false;
    if (ok) scan.push_back(x);
  }
  if (x_star != 2) o.fail("x* = " + std::to_string(x_star));
  if (scan != std::vector<std::size_t>{2}) o.fail("scan found " + std::to_string(scan.size()) + " point(s)");
  if (!(ms < 1.0)) o.fail("runtime " + std::to_string(ms) + " ms");
  std::ostringstream os;
  os << "x* = " << x_star << ", unique by scan, " << ms << " ms";
  if (o.pass) o.detail = os.str();
  return o;
}

// 2, 3, 7 ---------------------------------------------------------------------

std::vector<Run> make_runs(Outcome& o2, double& seconds) {
  std::vector<Run> runs;
  std::size_t premise = 0;
  const auto t0 = Clock::now();
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    GeneratedInstance g = generate_instance(seed);
    if (!validate_hypotheses(g.data).overall()) {
      o2.fail("seed " + std::to_string(seed) + " fails the gate");
      continue;
    }
    GoalSystem gs = GoalSystem::build(g.data);
    SolveResult res = solve_theorem31(gs, g.params);
    const PayoffVec f_star = res.f_star;
    for (const Check& c : {check_conclusion_01(gs, g.params, res.x_star, res.omega_star, f_star),
                           check_conclusion_02(gs, g.params, res.x_star, res.omega_star, f_star),
                           check_pareto_end(gs, res.x_star, res.omega_star, f_star),
                           check_conclusion_03(gs, g.params, res.x_star)}) {
      if (c.failed()) o2.fail("seed " + std::to_string(seed) + " fails " + c.name);
      if (c.name == "proximity" && c.status != CheckStatus::NotApplicable) ++premise;
    }
    runs.push_back({std::move(g), std::move(gs), std::move(res)});
  }
  seconds = ms_since(t0) / 1000.0;
  if (!(seconds < 10.0)) o2.fail("runtime " + std::to_string(seconds) + " s");
  if (o2.pass) {
    std::ostringstream os;
    os << runs.size() << " instances certified, proximity premise certified on " << premise << ", " << seconds << " s";
    o2.detail = os.str();
  }
  return runs;
}

Outcome criterion3(const std::vector<Run>& runs) {
  Outcome o;
  std::size_t moves = 0;
  for (const Run& r : runs) {
    const auto& steps = r.res.trajectory.steps;
    const std::string tag = "seed " + std::to_string(r.g.seed);
    const auto& K = r.gs.ordering();
    double replay = 0.0;
    for (std::size_t n = 0; n + 1 < steps.size(); ++n) {
      if (!K.at(steps[n].f).contains(steps[n].f - steps[n + 1].f)) o.fail(tag + ": f not decreasing at " + std::to_string(n));
      if (!generators_within(K.at(steps[n + 1].f), K.at(steps[n].f))) o.fail(tag + ": cones not nested at " + std::to_string(n));
      replay += r.gs.space()(steps[n].x, steps[n + 1].x);
      if (steps[n].x != steps[n + 1].x) ++moves;
    }
    if (steps.size() > feasible_pairs(r.gs).size() + 1) o.fail(tag + ": too many iterations");
    if (replay != r.res.trajectory.path_length) o.fail(tag + ": path length differs from replay");
  }
  if (o.pass) o.detail = std::to_string(runs.size()) + " trajectories, " + std::to_string(moves) + " moves checked";
  return o;
}

Outcome criterion7(const std::vector<Run>& runs) {
  Outcome o;
  for (const Run& r : runs) {
    const DeltaParams dp{r.g.params.xi, r.g.params.ratio()};
    const FeasiblePair end{r.res.x_star, r.res.omega_star};
    const std::string tag = "seed " + std::to_string(r.g.seed);
    if (!is_variational_trap(r.gs, r.g.params.start, end, dp)) o.fail(tag + ": end point is not a variational trap");
    const auto traps = brute_force_traps(r.gs, dp);
    if (std::find(traps.begin(), traps.end(), end) == traps.end()) o.fail(tag + ": end point missing from trap list");
  }
  if (o.pass) o.detail = std::to_string(runs.size()) + " end points are reachable stationary traps";
  return o;
}

// 4 ---------------------------------------------------------------------------

Outcome criterion4() {
  Outcome o;
  GeneratorOptions single;
  single.ways = 1;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto g = generate_instance(seed, single);
    const GoalSystem gs = GoalSystem::build(g.data);
    const auto direct = solve_theorem31(gs, g.params);
    const auto f = payoffs_by_means(g.data);
    SolveParams p = g.params;
    p.start.omega = 0;
    const auto reduced = solve_corollary35(gs.space(), gs.ordering(), gs.theta(), f, p);
    if (reduced.x_star != direct.x_star || !same_trajectory(reduced.trajectory, direct.trajectory))
      o.fail("singleton ways differ at seed " + std::to_string(seed));
  }
  GeneratorOptions scalar;
  scalar.ways = 1;
  scalar.dim = 1;
  scalar.symmetric = true;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto g = generate_instance(seed, scalar);
    const auto space = make_quasimetric(g.data.quasimetric);
    std::vector<double> fs;
    std::vector<PayoffVec> fv;
    for (const auto& v : payoffs_by_means(g.data)) {
      fs.push_back(v[0]);
      fv.push_back(v);
    }
    const std::size_t x0 = g.params.start.x;
    const std::size_t classical = solve_classical_evp(space, fs, g.params.eps, g.params.lambda, x0);
    const auto cor = solve_corollary35(space, VariableOrdering::constant(Cone::orthant(1)), Cone::orthant(1), fv,
                                       SolveParams{g.params.eps, g.params.lambda, PayoffVec::Ones(1), {x0, 0}, 0});
    if (classical != cor.x_star) o.fail("scalar reduction differs at seed " + std::to_string(seed));
  }
  // Pair space with zero way cost on the two-means instance a, b.
  InstanceData d;
  d.means = {"a", "b"};
  d.ways = {"w1", "w2"};
  d.quasimetric = {{0, 1}, {2, 0}};
  d.feasible = {{0}, {0, 1}};
  d.payoffs = {{make_payoff({2, 2}), std::nullopt}, {make_payoff({1, 1}), make_payoff({1, 0})}};
  d.anchors = {{PayoffVec::Zero(2), Cone::orthant(2)}};
  d.theta = Cone::orthant(2);
  const GoalSystem gs = GoalSystem::build(d);
  const SolveParams p{1, 1, make_payoff({1, 1}) / std::sqrt(2.0), {0, 0}, 0};
  const auto direct = solve_theorem31(gs, p);
  const auto pairs = feasible_pairs(gs);
  std::vector<PayoffVec> f;
  for (const auto& pr : pairs) f.push_back(gs.payoff(pr));
  const auto ps = solve_pair_space(pair_quasimetric(gs, {{0, 0}, {0, 0}}), f, gs.ordering(), gs.theta(), p);
  if (!(pairs[ps.phi_star] == FeasiblePair{direct.x_star, direct.omega_star}))
    o.fail("pair space end point differs");
  if (o.pass) o.detail = "50 singleton-way, 50 scalar symmetric, pair space end point (b,w2)";
  return o;
}

// 5 ---------------------------------------------------------------------------

Outcome criterion5() {
  Outcome o;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto g = generate_instance(seed);
    const GoalSystem gs = GoalSystem::build(g.data);
    const auto base = solve_theorem31(gs, g.params);
    for (double c : {0.5, 3.0}) {
      SolveParams p = g.params;
      p.eps *= c;
      p.lambda *= c;
      const auto scaled = solve_theorem31(gs, p);
      if (!same_trajectory(base.trajectory, scaled.trajectory) || base.x_star != scaled.x_star ||
          base.omega_star != scaled.omega_star)
        o.fail("seed " + std::to_string(seed) + " differs at c = " + std::to_string(c));
    }
  }
  if (o.pass) o.detail = "50 instances, c in {0.5, 3}";
  return o;
}

// 6 ---------------------------------------------------------------------------

Outcome criterion6() {
  Outcome o;
  std::mt19937_64 rng(20260601);
  std::size_t agree = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto m = static_cast<Eigen::Index>(std::uniform_int_distribution<int>(1, 3)(rng));
    const int k = std::uniform_int_distribution<int>(1, 3)(rng);
    std::vector<varrat::Anchor> anchors;
    std::vector<oracle::Anchor> oracle_anchors;
    for (int a = 0; a < k; ++a) {
      std::vector<PayoffVec> gens;
      if (m == 1) {
        gens.push_back(PayoffVec::Ones(1));
      } else {
        // orthant generators pulled toward the diagonal by a random amount
        const double s = std::uniform_real_distribution<double>(0.0, 0.8)(rng);
        for (Eigen::Index i = 0; i < m; ++i)
          gens.push_back((1.0 - s) * PayoffVec::Unit(m, i) + PayoffVec::Constant(m, s / static_cast<double>(m)));
      }
      PayoffVec point = oracle::random_vec(rng, m, 0.0, 5.0);
      anchors.push_back({point, Cone::from_generators(gens, m)});
      oracle_anchors.push_back({point, gens});
    }
    const VariableOrdering K(anchors);
    const int count = std::uniform_int_distribution<int>(1, 20)(rng);
    std::vector<PayoffVec> pts;
    for (int i = 0; i < count; ++i) {
      PayoffVec p = oracle::random_vec(rng, m, 0.0, 5.0);
      p = (p * 2.0).array().round() / 2.0;  // half-integer grid: ties and boundary cases
      pts.push_back(p);
    }
    PayoffVec xi = PayoffVec::Ones(m) / std::sqrt(static_cast<double>(m));
    const double eps = std::uniform_real_distribution<double>(0.1, 2.0)(rng);
    const bool ok = pareto_min_indices(pts, K) == oracle::pareto(pts, oracle_anchors) &&
                    approx_min_indices(pts, K, eps, xi) == oracle::approx(pts, oracle_anchors, eps, xi);
    if (ok) ++agree;
    else o.fail("trial " + std::to_string(trial) + " disagrees");
  }
  if (o.pass) o.detail = std::to_string(agree) + "/500 point sets agree";
  return o;
}

// 8 ---------------------------------------------------------------------------

Outcome criterion8() {
  Outcome o;
  GeneratorOptions opt;
  opt.dim = 2;
  std::size_t rejected = 0, made[4] = {0, 0, 0, 0};
  auto expect = [&](const InstanceData& d, const std::string& hyp, std::uint64_t seed) {
    const Certificate c = validate_hypotheses(d);
    const auto failed = c.failed_names();
    if (!c.overall() && std::find(failed.begin(), failed.end(), hyp) != failed.end()) ++rejected;
    else o.fail(hyp + " corruption of seed " + std::to_string(seed) + " not named");
  };
  for (std::uint64_t seed = 1; seed < 10000 && (made[0] + made[1] + made[2] + made[3]) < 20; ++seed) {
    const auto g = generate_instance(seed, opt);
    const InstanceData& base = g.data;
    const std::size_t n = base.means.size();
    if (made[0] < 5 && n >= 3) {
      InstanceData d = base;
      d.quasimetric[0][2] = d.quasimetric[0][1] + d.quasimetric[1][2] + 1.0;
      expect(d, "H1", seed);
      ++made[0];
      continue;
    }
    if (made[1] < 5) {
      InstanceData d = base;
      const Cone half({make_payoff({1, 0})}, {make_payoff({0, 1}), make_payoff({0, -1}), make_payoff({1, 0})}, 2);
      d.anchors = {{PayoffVec::Zero(2), half}};
      expect(d, "H2", seed);
      ++made[1];
      continue;
    }
    const auto pairs = feasible_pairs(GoalSystem::build(base));
    if (made[2] < 5 && pairs.size() >= 3) {
      InstanceData d = base;
      const PayoffVec t = PayoffVec::Constant(2, static_cast<double>(seed % 5));
      const PayoffVec trio[3] = {make_payoff({2, 2}) + t, make_payoff({1, 1}) + t, make_payoff({1, 0.5}) + t};
      for (int i = 0; i < 3; ++i) d.payoffs[pairs[i].x][pairs[i].omega] = trio[i];
      d.anchors = {{make_payoff({2, 2}) + t, Cone::from_generators({make_payoff({1, 0}), make_payoff({1, 1})}, 2)},
                   {make_payoff({1, 0}) + t, Cone::orthant(2)}};
      expect(d, "H3", seed);
      ++made[2];
      continue;
    }
    if (made[3] < 5) {
      for (std::size_t x = 0; x < n; ++x) {
        if (base.feasible[x].size() == base.ways.size()) continue;
        std::size_t w = 0;
        while (std::find(base.feasible[x].begin(), base.feasible[x].end(), w) != base.feasible[x].end()) ++w;
        InstanceData d = base;
        d.payoffs[x][w] = make_payoff({1, 1});
        expect(d, "H4", seed);
        ++made[3];
        break;
      }
    }
  }
  const std::size_t total = made[0] + made[1] + made[2] + made[3];
  if (total != 20) o.fail("only " + std::to_string(total) + " corrupted instances built");
  if (o.pass) o.detail = std::to_string(rejected) + "/20 rejected with the corrupted hypothesis named";
  return o;
}

void report(int id, const std::string& title, const Outcome& o, bool& all) {
  std::cout << "criterion " << id << " [" << title << "]: " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail << ")\n";
  all = all && o.pass;
}

Outcome guarded(const std::function<Outcome()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    Outcome o;
    o.fail(std::string("exception: ") + e.what());
    return o;
  }
}

}  // namespace

int main() {
  bool all = true;
  report(1, "classical principle", guarded(criterion1), all);
  Outcome o2;
  double seconds = 0.0;
  std::vector<Run> runs;
  try {
    runs = make_runs(o2, seconds);
  } catch (const std::exception& e) {
    o2.fail(std::string("exception: ") + e.what());
  }
  report(2, "certification at scale", o2, all);
  report(3, "trajectory invariants", guarded([&] { return criterion3(runs); }), all);
  report(4, "reductions", guarded(criterion4), all);
  report(5, "scale invariance", guarded(criterion5), all);
  report(6, "minimality oracle", guarded(criterion6), all);
  report(7, "trap semantics", guarded([&] { return criterion7(runs); }), all);
  report(8, "hypothesis gate", guarded(criterion8), all);
  std::cout << (all ? "all criteria PASS" : "some criteria FAIL") << "\n";
  return all ? 0 : 1;
}
