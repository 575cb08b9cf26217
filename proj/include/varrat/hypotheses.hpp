#pragma once

// Certificates and the standing-hypothesis gate that every solve passes through.

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include "varrat/cone.hpp"
#include "varrat/core.hpp"
#include "varrat/goal_system.hpp"
#include "varrat/ordering.hpp"
#include "varrat/quasimetric.hpp"

namespace varrat {

enum class CheckStatus { Pass, PassVacuous, NotApplicable, Fail };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::PassVacuous: return "PASS-VACUOUS";
    case CheckStatus::NotApplicable: return "NOT-APPLICABLE";
    case CheckStatus::Fail: return "FAIL";
  }
  return "?";
}

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
  std::vector<std::string> witnesses;  // non-empty whenever status == Fail

  bool failed() const { return status == CheckStatus::Fail; }
};

struct Certificate {
  std::string digest;
  std::vector<Check> checks;

  bool overall() const {
    return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.failed(); });
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  std::vector<std::string> failed_names() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (c.failed()) out.push_back(c.name);
    return out;
  }
};

inline std::string format_vec(const PayoffVec& p) {
  std::ostringstream os;
  os.precision(6);
  os << "(";
  for (Eigen::Index i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ")";
  return os.str();
}

/// FNV-1a over labels, sizes and the raw bytes of every number.
inline std::string instance_digest(const InstanceData& d) {
  std::uint64_t h = 1469598103934665603ULL;
  auto bytes = [&](const void* p, std::size_t n) {
    const auto* c = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= c[i];
      h *= 1099511628211ULL;
    }
  };
  auto num = [&](double v) { bytes(&v, sizeof v); };
  auto size = [&](std::size_t v) { bytes(&v, sizeof v); };
  auto vec = [&](const PayoffVec& p) {
    size(static_cast<std::size_t>(p.size()));
    for (Eigen::Index i = 0; i < p.size(); ++i) num(p[i]);
  };
  auto cone = [&](const Cone& c) {
    size(c.normals().size());
    for (const auto& n : c.normals()) vec(n);
    size(c.generators().size());
    for (const auto& g : c.generators()) vec(g);
  };
  for (const auto& s : d.means) bytes(s.data(), s.size() + 1);
  for (const auto& s : d.ways) bytes(s.data(), s.size() + 1);
  for (const auto& row : d.quasimetric)
    for (double v : row) num(v);
  for (const auto& f : d.feasible) {
    size(f.size());
    for (auto w : f) size(w);
  }
  for (const auto& row : d.payoffs)
    for (const auto& cell : row) {
      size(cell.has_value());
      if (cell) vec(*cell);
    }
  for (const auto& a : d.anchors) {
    vec(a.point);
    cone(a.cone);
  }
  cone(d.theta);
  size(static_cast<std::size_t>(d.sense));
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

/// Evaluates (H1)-(H5) and (A1)-(A3) on a finite instance. Conditions that hold trivially on finite
/// data are reported PASS-VACUOUS. Structural shape errors (ragged tables, bad indices) throw.
inline Certificate validate_hypotheses(const InstanceData& raw) {
  const std::size_t n = raw.means.size();
  const std::size_t w = raw.ways.size();
  if (n == 0 || w == 0) throw InvalidInput("instance needs at least one means point and one way");
  if (raw.feasible.size() != n || raw.payoffs.size() != n || raw.quasimetric.size() != n)
    throw InvalidInput("instance tables disagree with the means count");
  for (const auto& row : raw.payoffs)
    if (row.size() != w) throw InvalidInput("payoff table row length differs from the ways count");
  for (const auto& f : raw.feasible)
    for (auto v : f)
      if (v >= w) throw InvalidInput("feasible way index out of range");
  const Eigen::Index m = raw.theta.dimension();
  if (m < 1 || raw.anchors.empty()) throw InvalidInput("instance needs theta and at least one ordering anchor");

  const InstanceData data = to_cost_convention(raw);
  Certificate cert;
  cert.digest = instance_digest(raw);

  {  // H1
    Check c{"H1", CheckStatus::Pass, "quasimetric axioms; finite space is left-sequentially complete, q(x,.) l.s.c.", {}};
    for (const auto& v : quasimetric_violations(data.quasimetric).violations) {
      c.status = CheckStatus::Fail;
      c.witnesses.push_back("axiom (" + std::string(v.axiom == 1 ? "i" : v.axiom == 2 ? "ii" : "iii") + ") " +
                            std::to_string(v.i) + "," + std::to_string(v.j) +
                            (v.axiom == 3 ? "," + std::to_string(v.k) : "") + ": " + v.detail);
    }
    cert.checks.push_back(std::move(c));
  }

  bool anchors_pointed = true;
  {  // H2
    Check c{"H2", CheckStatus::Pass, "anchor cones and common cone closed, convex, pointed, proper", {}};
    for (std::size_t i = 0; i < data.anchors.size(); ++i) {
      const Cone& k = data.anchors[i].cone;
      if (k.dimension() != m) throw InvalidInput("anchor cone dimension differs from theta");
      if (!is_pointed(k)) {
        anchors_pointed = false;
        c.witnesses.push_back("anchor " + std::to_string(i) + " cone is not pointed");
      } else if (!is_proper(k)) {
        c.witnesses.push_back("anchor " + std::to_string(i) + " cone is not proper");
      }
    }
    if (anchors_pointed) {
      try {
        const Cone theta_k = common_cone(VariableOrdering(data.anchors));
        if (!is_pointed(theta_k) || !is_proper(theta_k)) c.witnesses.push_back("common cone is not pointed and proper");
      } catch (const DegenerateCone&) {
        c.witnesses.push_back("common cone is {0}: no admissible direction xi exists");
      } catch (const InvalidInput& e) {
        c.witnesses.push_back(std::string("common cone: ") + e.what());
      }
    }
    if (!c.witnesses.empty()) c.status = CheckStatus::Fail;
    cert.checks.push_back(std::move(c));
  }

  // payoffs on gph Omega, cost convention
  std::vector<PayoffVec> sample;
  Check dom{"H4", CheckStatus::PassVacuous, "dom f = gph Omega; a finite graph is closed", {}};
  for (std::size_t x = 0; x < n; ++x) {
    if (data.feasible[x].empty()) dom.witnesses.push_back("Omega(" + std::to_string(x) + ") is empty");
    for (std::size_t v = 0; v < w; ++v) {
      const bool feasible = std::find(data.feasible[x].begin(), data.feasible[x].end(), v) != data.feasible[x].end();
      const auto& cell = data.payoffs[x][v];
      if (cell && cell->size() != m) throw InvalidInput("payoff dimension differs from theta");
      if (cell && !cell->allFinite()) throw InvalidInput("non-finite payoff");
      if (feasible && !cell)
        dom.witnesses.push_back("f undefined at feasible (" + std::to_string(x) + "," + std::to_string(v) + ")");
      if (!feasible && cell)
        dom.witnesses.push_back("f defined off gph Omega at (" + std::to_string(x) + "," + std::to_string(v) + ")");
      if (feasible && cell) sample.push_back(*cell);
    }
  }
  if (!dom.witnesses.empty()) dom.status = CheckStatus::Fail;

  {  // H3
    Check c{"H3", CheckStatus::Pass, "transitivity and cone nesting over every feasible payoff", {}};
    const auto K = VariableOrdering::unchecked(data.anchors);
    for (const auto& t : check_transitivity(K, sample).violations)
      c.witnesses.push_back("transitivity fails on " + format_vec(sample[t[0]]) + " >= " + format_vec(sample[t[1]]) +
                            " >= " + format_vec(sample[t[2]]));
    if (anchors_pointed) {
      for (const auto& v : check_nesting(K, sample).violations)
        c.witnesses.push_back("K[" + format_vec(sample[v[1]]) + "] not inside K[" + format_vec(sample[v[0]]) + "]");
    }
    if (!c.witnesses.empty()) c.status = CheckStatus::Fail;
    cert.checks.push_back(std::move(c));
  }
  cert.checks.push_back(std::move(dom));
  cert.checks.push_back({"H5", CheckStatus::Pass, "theta is polyhedral, hence closed and convex", {}});

  {  // A1
    Check c{"A1", CheckStatus::Pass, "quasibounded from below: M = f(gph Omega)", {}};
    if (sample.empty()) {
      c.status = CheckStatus::Fail;
      c.witnesses.push_back("payoff image is empty");
    } else {
      PayoffVec lo = sample.front(), hi = sample.front();
      for (const auto& p : sample) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
      }
      c.detail += ", bounding box " + format_vec(lo) + " .. " + format_vec(hi);
    }
    cert.checks.push_back(std::move(c));
  }
  cert.checks.push_back({"A2", CheckStatus::PassVacuous, "level sets of a finite map are closed", {}});
  cert.checks.push_back({"A3", CheckStatus::PassVacuous, "f(x,.) on a finite set of ways is continuous", {}});
  return cert;
}

inline Certificate validate_hypotheses(const GoalSystem& gs) { return validate_hypotheses(gs.data()); }

/// Throws HypothesisFailure naming the first failing hypothesis.
inline void require_hypotheses(const Certificate& cert) {
  for (const auto& c : cert.checks)
    if (c.failed()) throw HypothesisFailure(c.name, c.witnesses.empty() ? c.detail : c.witnesses.front());
}

}  // namespace varrat
