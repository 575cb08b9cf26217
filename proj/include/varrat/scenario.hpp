#pragma once

// Scenario files (JSON, version "varrat/1"), schema errors with field paths, and report serialization.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "varrat/certifier.hpp"
#include "varrat/cone.hpp"
#include "varrat/generator.hpp"
#include "varrat/goal_system.hpp"
#include "varrat/hypotheses.hpp"
#include "varrat/solver.hpp"
#include "varrat/worthwhile.hpp"

namespace varrat {

using Json = nlohmann::json;

inline constexpr const char* kScenarioVersion = "varrat/1";

struct SchemaIssue {
  std::string path;
  std::string message;
};

class SchemaError : public InvalidInput {
 public:
  explicit SchemaError(std::vector<SchemaIssue> issues)
      : InvalidInput(join(issues)), issues_(std::move(issues)) {}
  const std::vector<SchemaIssue>& issues() const { return issues_; }

 private:
  static std::string join(const std::vector<SchemaIssue>& issues) {
    std::string s;
    for (const auto& i : issues) s += (s.empty() ? "" : "\n") + i.path + ": " + i.message;
    return s;
  }
  std::vector<SchemaIssue> issues_;
};

struct ScenarioParams {
  double eps = 1.0;
  double lambda = 1.0;
  std::optional<PayoffVec> xi;  // absent: normalized sum of the common cone's generators
  FeasiblePair start;
  std::string U = "identity";
  std::string D = "identity";
  std::vector<double> schedule{1.0};
  std::size_t max_iters = 0;
};

struct ScenarioRun {
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> ratio;
};

struct Scenario {
  std::string version = kScenarioVersion;
  InstanceData instance;
  std::optional<Json> generator;  // the resource-builder section, when the instance came from one
  std::vector<std::string> warnings;
  ScenarioParams params;
  ScenarioRun run;
};

namespace detail {

class SchemaReader {
 public:
  std::vector<SchemaIssue> issues;

  void fail(const std::string& path, const std::string& msg) { issues.push_back({path, msg}); }

  const Json* field(const Json& obj, const std::string& path, const char* key, bool required) {
    if (!obj.is_object()) {
      fail(path, "expected an object");
      return nullptr;
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(join(path, key), "missing field");
      return nullptr;
    }
    return &*it;
  }

  static std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
  static std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

  std::optional<double> number(const Json& v, const std::string& path) {
    if (!v.is_number()) {
      fail(path, "expected a number");
      return std::nullopt;
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
      fail(path, "expected a finite number");
      return std::nullopt;
    }
    return d;
  }

  std::optional<std::size_t> index(const Json& v, const std::string& path, std::size_t bound) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
      fail(path, "expected a nonnegative integer");
      return std::nullopt;
    }
    const auto i = v.get<std::uint64_t>();
    if (i >= bound) {
      fail(path, "index " + std::to_string(i) + " out of range (size " + std::to_string(bound) + ")");
      return std::nullopt;
    }
    return static_cast<std::size_t>(i);
  }

  std::optional<std::string> string(const Json& v, const std::string& path) {
    if (!v.is_string()) {
      fail(path, "expected a string");
      return std::nullopt;
    }
    return v.get<std::string>();
  }

  std::optional<std::vector<double>> numbers(const Json& v, const std::string& path) {
    if (!v.is_array()) {
      fail(path, "expected an array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    bool ok = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      auto d = number(v[i], at(path, i));
      if (d) out.push_back(*d);
      else ok = false;
    }
    return ok ? std::optional(out) : std::nullopt;
  }

  std::optional<PayoffVec> vec(const Json& v, const std::string& path, Eigen::Index m) {
    auto d = numbers(v, path);
    if (!d) return std::nullopt;
    if (static_cast<Eigen::Index>(d->size()) != m) {
      fail(path, "expected " + std::to_string(m) + " components, got " + std::to_string(d->size()));
      return std::nullopt;
    }
    return make_payoff(*d);
  }

  std::vector<std::string> labels(const Json& v, const std::string& path) {
    std::vector<std::string> out;
    if (!v.is_array() || v.empty()) {
      fail(path, "expected a nonempty array of labels");
      return out;
    }
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(string(v[i], at(path, i)).value_or(""));
    return out;
  }

  std::optional<std::vector<PayoffVec>> vecs(const Json& v, const std::string& path, Eigen::Index m) {
    if (!v.is_array()) {
      fail(path, "expected an array of vectors");
      return std::nullopt;
    }
    std::vector<PayoffVec> out;
    bool ok = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      auto p = vec(v[i], at(path, i), m);
      if (p) out.push_back(*p);
      else ok = false;
    }
    return ok ? std::optional(out) : std::nullopt;
  }

  // "orthant" | {"shrunk": s} | {"normals": [...]} | {"generators": [...]} | both lists
  std::optional<Cone> cone(const Json& v, const std::string& path, Eigen::Index m) {
    try {
      if (v.is_string()) {
        if (v.get<std::string>() == "orthant") return Cone::orthant(m);
        fail(path, "unknown cone name '" + v.get<std::string>() + "'");
        return std::nullopt;
      }
      if (!v.is_object()) {
        fail(path, "expected \"orthant\" or a cone object");
        return std::nullopt;
      }
      if (v.contains("shrunk")) {
        auto s = number(v["shrunk"], join(path, "shrunk"));
        return s ? std::optional(Cone::shrunk_orthant(m, *s)) : std::nullopt;
      }
      const bool has_n = v.contains("normals"), has_g = v.contains("generators");
      std::optional<std::vector<PayoffVec>> n, g;
      if (has_n) n = vecs(v["normals"], join(path, "normals"), m);
      if (has_g) g = vecs(v["generators"], join(path, "generators"), m);
      if ((has_n && !n) || (has_g && !g)) return std::nullopt;
      if (has_n && has_g) return Cone(*n, *g, m);
      if (has_n) return Cone::from_normals(*n, m);
      if (has_g) return Cone::from_generators(*g, m);
      fail(path, "cone needs 'shrunk', 'normals' or 'generators'");
    } catch (const InvalidInput& e) {
      fail(path, e.what());
    }
    return std::nullopt;
  }

  // {"cone": C} for a constant ordering, or {"anchors": [{"point": p, "cone": C}, ...]}
  std::vector<Anchor> ordering(const Json* v, const std::string& path, Eigen::Index m) {
    if (!v) return {{PayoffVec::Zero(m), Cone::orthant(m)}};
    if (!v->is_object()) {
      fail(path, "expected an object");
      return {};
    }
    if (v->contains("cone")) {
      auto c = cone((*v)["cone"], join(path, "cone"), m);
      if (!c) return {};
      return {{PayoffVec::Zero(m), *c}};
    }
    const Json* a = field(*v, path, "anchors", true);
    if (!a) return {};
    const std::string apath = join(path, "anchors");
    if (!a->is_array() || a->empty()) {
      fail(apath, "expected a nonempty array");
      return {};
    }
    std::vector<Anchor> out;
    for (std::size_t i = 0; i < a->size(); ++i) {
      const std::string p = at(apath, i);
      const Json* pt = field((*a)[i], p, "point", true);
      const Json* c = field((*a)[i], p, "cone", true);
      std::optional<PayoffVec> point = pt ? vec(*pt, join(p, "point"), m) : std::nullopt;
      std::optional<Cone> k = c ? cone(*c, join(p, "cone"), m) : std::nullopt;
      if (point && k) out.push_back({*point, *k});
    }
    return out;
  }

  Sense sense(const Json* v, const std::string& path) {
    if (!v) return Sense::MinimizeCosts;
    auto s = string(*v, path);
    if (s == "minimize-costs") return Sense::MinimizeCosts;
    if (s == "maximize-gains") return Sense::MaximizeGains;
    if (s) fail(path, "expected \"minimize-costs\" or \"maximize-gains\"");
    return Sense::MinimizeCosts;
  }
};

inline std::optional<ActivityRule> parse_rule(SchemaReader& r, const Json& v, const std::string& path, int d) {
  const Json* kind = r.field(v, path, "kind", true);
  if (!kind) return std::nullopt;
  const auto k = r.string(*kind, SchemaReader::join(path, "kind"));
  if (!k) return std::nullopt;
  auto scalar = [&](const char* key, double def) {
    const Json* f = r.field(v, path, key, false);
    return f ? r.number(*f, SchemaReader::join(path, key)).value_or(def) : def;
  };
  auto vector = [&](const char* key) -> std::optional<Eigen::VectorXd> {
    const Json* f = r.field(v, path, key, false);
    if (!f) return Eigen::VectorXd::Zero(d);
    return r.vec(*f, SchemaReader::join(path, key), d);
  };
  if (*k == "linear") {
    auto ws = vector("share"), wx = vector("means");
    const double c = scalar("const", 0.0);
    if (!ws || !wx) return std::nullopt;
    return ActivityRule([ws = *ws, wx = *wx, c](const Eigen::VectorXd& x, const Eigen::VectorXd& s) {
      return ws.dot(s) + wx.dot(x) + c;
    });
  }
  if (*k == "sqrt") {
    const double scale = scalar("scale", 1.0);
    return ActivityRule([scale](const Eigen::VectorXd&, const Eigen::VectorXd& s) {
      return scale * s.cwiseMax(0.0).cwiseSqrt().sum();
    });
  }
  if (*k == "quadratic") {
    auto target = vector("target");
    const double scale = scalar("scale", 1.0);
    if (!target) return std::nullopt;
    return ActivityRule([t = *target, scale](const Eigen::VectorXd&, const Eigen::VectorXd& s) {
      return scale * (s - t).squaredNorm();
    });
  }
  r.fail(SchemaReader::join(path, "kind"), "unknown rule kind '" + *k + "' (linear, sqrt, quadratic)");
  return std::nullopt;
}

inline void parse_instance(SchemaReader& r, const Json& v, Scenario& sc) {
  const std::string path = "instance";
  InstanceData& d = sc.instance;
  if (const Json* f = r.field(v, path, "means", true)) d.means = r.labels(*f, path + ".means");
  if (const Json* f = r.field(v, path, "ways", true)) d.ways = r.labels(*f, path + ".ways");
  const std::size_t n = d.means.size(), w = d.ways.size();

  if (const Json* q = r.field(v, path, "quasimetric", true)) {
    const std::string qp = path + ".quasimetric";
    if (!q->is_array() || q->size() != n) {
      r.fail(qp, "expected " + std::to_string(n) + " rows");
    } else {
      d.quasimetric.assign(n, std::vector<double>(n, 0.0));
      for (std::size_t i = 0; i < n; ++i) {
        const std::string rp = SchemaReader::at(qp, i);
        if (!(*q)[i].is_array() || (*q)[i].size() != n) {
          r.fail(rp, "expected " + std::to_string(n) + " entries");
          continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
          const std::string ep = SchemaReader::at(rp, j);
          if (auto e = r.number((*q)[i][j], ep)) {
            if (*e < 0.0) r.fail(ep, "negative quasimetric entry");
            d.quasimetric[i][j] = *e;
          }
        }
      }
    }
  }

  if (const Json* f = r.field(v, path, "feasible", true)) {
    const std::string fp = path + ".feasible";
    if (!f->is_array() || f->size() != n) {
      r.fail(fp, "expected one way list per means point");
    } else {
      for (std::size_t x = 0; x < n; ++x) {
        std::vector<std::size_t> ways;
        const std::string rp = SchemaReader::at(fp, x);
        if (!(*f)[x].is_array()) r.fail(rp, "expected an array of way indices");
        else
          for (std::size_t k = 0; k < (*f)[x].size(); ++k)
            if (auto i = r.index((*f)[x][k], SchemaReader::at(rp, k), w)) ways.push_back(*i);
        d.feasible.push_back(std::move(ways));
      }
    }
  }

  Eigen::Index m = 0;
  const Json* pay = r.field(v, path, "payoffs", true);
  const std::string pp = path + ".payoffs";
  if (pay && (!pay->is_array() || pay->size() != n)) {
    r.fail(pp, "expected " + std::to_string(n) + " rows");
    pay = nullptr;
  }
  if (pay) {
    for (const auto& row : *pay)
      if (row.is_array())
        for (const auto& cell : row)
          if (cell.is_array() && m == 0) m = static_cast<Eigen::Index>(cell.size());
    if (m == 0) r.fail(pp, "no payoff vector given");
  }
  if (m == 0) return;
  d.payoffs.assign(n, std::vector<std::optional<PayoffVec>>(w));
  for (std::size_t x = 0; x < n; ++x) {
    const Json& row = (*pay)[x];
    const std::string rp = SchemaReader::at(pp, x);
    if (!row.is_array() || row.size() != w) {
      r.fail(rp, "expected " + std::to_string(w) + " entries (null off gph Omega)");
      continue;
    }
    for (std::size_t k = 0; k < w; ++k)
      if (!row[k].is_null()) d.payoffs[x][k] = r.vec(row[k], SchemaReader::at(rp, k), m);
  }

  d.anchors = r.ordering(r.field(v, path, "ordering", false), path + ".ordering", m);
  const Json* th = r.field(v, path, "theta", false);
  d.theta = th ? r.cone(*th, path + ".theta", m).value_or(Cone::orthant(m)) : Cone::orthant(m);
  d.sense = r.sense(r.field(v, path, "sense", false), path + ".sense");
}

inline void parse_generator(SchemaReader& r, const Json& v, Scenario& sc) {
  const std::string path = "generator";
  ResourceSpec spec;
  auto integer = [&](const char* key) -> int {
    const Json* f = r.field(v, path, key, true);
    if (!f) return 0;
    if (!f->is_number_integer() || f->get<std::int64_t>() < 1 || f->get<std::int64_t>() > 8) {
      r.fail(SchemaReader::join(path, key), "expected an integer in 1..8");
      return 0;
    }
    return f->get<int>();
  };
  spec.d = integer("d");
  spec.m = integer("m");
  if (const Json* g = r.field(v, path, "grid", true)) spec.levels = r.numbers(*g, path + ".grid").value_or(std::vector<double>{});
  if (const Json* g = r.field(v, path, "alloc_grid", false))
    spec.alloc_levels = r.numbers(*g, path + ".alloc_grid").value_or(std::vector<double>{});
  if (const Json* c = r.field(v, path, "acquire_cost", false)) spec.acquire_cost = r.number(*c, path + ".acquire_cost").value_or(1.0);
  if (const Json* c = r.field(v, path, "release_cost", false)) spec.release_cost = r.number(*c, path + ".release_cost").value_or(1.0);
  if (spec.d < 1 || spec.m < 1) return;
  if (const Json* rules = r.field(v, path, "rules", true)) {
    const std::string rp = path + ".rules";
    if (!rules->is_array() || rules->size() != static_cast<std::size_t>(spec.m)) {
      r.fail(rp, "expected one rule per activity (" + std::to_string(spec.m) + ")");
    } else {
      for (std::size_t j = 0; j < rules->size(); ++j)
        if (auto rule = parse_rule(r, (*rules)[j], SchemaReader::at(rp, j), spec.d)) spec.rules.push_back(*rule);
    }
  }
  spec.anchors = r.ordering(r.field(v, path, "ordering", false), path + ".ordering", spec.m);
  const Json* th = r.field(v, path, "theta", false);
  spec.theta = th ? r.cone(*th, path + ".theta", spec.m).value_or(Cone::orthant(spec.m)) : Cone::orthant(spec.m);
  spec.sense = r.sense(r.field(v, path, "sense", false), path + ".sense");
  if (!r.issues.empty()) return;
  try {
    ResourceInstance ri = build_resource_instance(spec);
    sc.instance = std::move(ri.data);
    sc.warnings = std::move(ri.warnings);
    sc.generator = v;
  } catch (const InvalidInput& e) {
    r.fail(path, e.what());
  }
}

inline void parse_params(SchemaReader& r, const Json* v, Scenario& sc) {
  const std::string path = "params";
  ScenarioParams& p = sc.params;
  const InstanceData& d = sc.instance;
  if (!v) return;
  auto num = [&](const char* key, double& out) {
    if (const Json* f = r.field(*v, path, key, false)) out = r.number(*f, SchemaReader::join(path, key)).value_or(out);
  };
  num("eps", p.eps);
  num("lambda", p.lambda);
  const Eigen::Index m = d.theta.dimension();
  if (const Json* f = r.field(*v, path, "xi", false); f && m > 0) p.xi = r.vec(*f, path + ".xi", m);
  if (const Json* s = r.field(*v, path, "start", false)) {
    if (const Json* x = r.field(*s, path + ".start", "x", true))
      p.start.x = r.index(*x, path + ".start.x", d.means.size()).value_or(0);
    if (const Json* o = r.field(*s, path + ".start", "omega", true))
      if (auto w = r.index(*o, path + ".start.omega", d.ways.size())) {
        p.start.omega = *w;
        if (p.start.x < d.feasible.size() &&
            std::find(d.feasible[p.start.x].begin(), d.feasible[p.start.x].end(), *w) == d.feasible[p.start.x].end())
          r.fail(path + ".start.omega", "way " + std::to_string(*w) + " is not feasible at means " + std::to_string(p.start.x));
      }
  }
  for (const char* key : {"U", "D"})
    if (const Json* f = r.field(*v, path, key, false)) {
      const std::string fp = SchemaReader::join(path, key);
      if (auto s = r.string(*f, fp)) {
        try {
          parse_monotone(*s);
          (std::string(key) == "U" ? p.U : p.D) = *s;
        } catch (const InvalidInput& e) {
          r.fail(fp, e.what());
        }
      }
    }
  if (const Json* f = r.field(*v, path, "schedule", false)) {
    auto s = r.numbers(*f, path + ".schedule");
    if (s && s->empty()) r.fail(path + ".schedule", "expected at least one ratio");
    else if (s) p.schedule = *s;
  }
  if (const Json* f = r.field(*v, path, "max_iters", false)) {
    if (!f->is_number_unsigned()) r.fail(path + ".max_iters", "expected a nonnegative integer");
    else p.max_iters = f->get<std::size_t>();
  }
}

inline void parse_run(SchemaReader& r, const Json* v, Scenario& sc) {
  if (!v) return;
  if (const Json* f = r.field(*v, "run", "out", false)) sc.run.out = r.string(*f, "run.out").value_or("");
  if (const Json* f = r.field(*v, "run", "seed", false)) {
    if (!f->is_number_unsigned()) r.fail("run.seed", "expected a nonnegative integer");
    else sc.run.seed = f->get<std::uint64_t>();
  }
  if (const Json* f = r.field(*v, "run", "ratio", false)) sc.run.ratio = r.number(*f, "run.ratio");
}

}  // namespace detail

/// Validates a parsed document; throws SchemaError listing every problem with its field path.
inline Scenario parse_scenario(const Json& doc) {
  detail::SchemaReader r;
  Scenario sc;
  if (!doc.is_object()) throw SchemaError(std::vector<SchemaIssue>{{"", "scenario must be a JSON object"}});
  if (const Json* v = r.field(doc, "", "version", true)) {
    auto s = r.string(*v, "version");
    if (s && *s != kScenarioVersion) r.fail("version", "unrecognized version '" + *s + "' (expected " + kScenarioVersion + ")");
  }
  const bool has_i = doc.contains("instance"), has_g = doc.contains("generator");
  if (has_i == has_g) r.fail("", "exactly one of 'instance' or 'generator' must be present");
  else if (has_i) detail::parse_instance(r, doc["instance"], sc);
  else detail::parse_generator(r, doc["generator"], sc);
  if (r.issues.empty()) {
    detail::parse_params(r, r.field(doc, "", "params", false), sc);
    detail::parse_run(r, r.field(doc, "", "run", false), sc);
  }
  if (!r.issues.empty()) throw SchemaError(std::move(r.issues));
  return sc;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(std::vector<SchemaIssue>{{"", "cannot read " + path}});
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::vector<SchemaIssue>{{"", std::string("malformed JSON: ") + e.what()}});
  }
  return parse_scenario(doc);
}

// -- serialization -----------------------------------------------------------

inline Json to_json(const PayoffVec& p) { return to_std(p); }

inline Json to_json(const Cone& c) {
  Json n = Json::array(), g = Json::array();
  for (const auto& v : c.normals()) n.push_back(to_json(v));
  for (const auto& v : c.generators()) g.push_back(to_json(v));
  return {{"normals", n}, {"generators", g}};
}

inline Json instance_json(const InstanceData& d) {
  Json payoffs = Json::array();
  for (const auto& row : d.payoffs) {
    Json r = Json::array();
    for (const auto& cell : row) r.push_back(cell ? to_json(*cell) : Json(nullptr));
    payoffs.push_back(r);
  }
  Json anchors = Json::array();
  for (const auto& a : d.anchors) anchors.push_back({{"point", to_json(a.point)}, {"cone", to_json(a.cone)}});
  return {{"means", d.means},          {"ways", d.ways},   {"quasimetric", d.quasimetric},
          {"feasible", d.feasible},    {"payoffs", payoffs}, {"ordering", {{"anchors", anchors}}},
          {"theta", to_json(d.theta)}, {"sense", to_string(d.sense)}};
}

inline Json scenario_json(const Scenario& sc) {
  Json params = {{"eps", sc.params.eps},
                 {"lambda", sc.params.lambda},
                 {"start", {{"x", sc.params.start.x}, {"omega", sc.params.start.omega}}},
                 {"U", sc.params.U},
                 {"D", sc.params.D},
                 {"schedule", sc.params.schedule},
                 {"max_iters", sc.params.max_iters}};
  if (sc.params.xi) params["xi"] = to_json(*sc.params.xi);
  Json run = Json::object();
  if (!sc.run.out.empty()) run["out"] = sc.run.out;
  if (sc.run.seed) run["seed"] = *sc.run.seed;
  if (sc.run.ratio) run["ratio"] = *sc.run.ratio;
  Json doc = {{"version", sc.version}, {"params", params}, {"run", run}};
  if (sc.generator) doc["generator"] = *sc.generator;
  else doc["instance"] = instance_json(sc.instance);
  return doc;
}

inline Scenario scenario_from_generated(const GeneratedInstance& g) {
  Scenario sc;
  sc.instance = g.data;
  sc.params.eps = g.params.eps;
  sc.params.lambda = g.params.lambda;
  sc.params.xi = g.params.xi;
  sc.params.start = g.params.start;
  sc.run.seed = g.seed;
  return sc;
}

/// Solver parameters; a missing xi becomes the normalized sum of the common cone's generators.
inline SolveParams solve_params(const Scenario& sc, const GoalSystem& gs) {
  SolveParams p{sc.params.eps, sc.params.lambda, PayoffVec(), sc.params.start, sc.params.max_iters};
  if (sc.params.xi) {
    p.xi = *sc.params.xi;
  } else {
    PayoffVec s = PayoffVec::Zero(gs.dimension());
    const Cone theta_k = common_cone(gs.ordering());
    for (const auto& g : theta_k.generators()) s += g;
    p.xi = s / s.norm();
  }
  return p;
}

inline Json certificate_json(const Certificate& c) {
  Json checks = Json::array();
  for (const auto& k : c.checks)
    checks.push_back({{"name", k.name}, {"status", to_string(k.status)}, {"detail", k.detail}, {"witnesses", k.witnesses}});
  return {{"digest", c.digest}, {"overall", c.overall() ? "PASS" : "FAIL"}, {"checks", checks}};
}

inline Json trajectory_json(const Trajectory& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps)
    steps.push_back({{"n", s.n},
                     {"x", s.x},
                     {"omega", s.omega},
                     {"f", to_json(s.f)},
                     {"cone_id", s.cone_id},
                     {"W_size", s.w_size},
                     {"radius", s.radius},
                     {"q_step", s.q_step}});
  const auto& r = t.refinement;
  return {{"steps", steps},
          {"path_length", t.path_length},
          {"termination", to_string(t.termination)},
          {"refinement",
           {{"r_sets", r.r_sets},
            {"candidates", r.candidates},
            {"omega_bar", r.omega_bar},
            {"level_set", r.level_set},
            {"pareto", r.pareto},
            {"omega_star", r.omega_star}}}};
}

/// The structured solve report: end point, trajectory and (optionally) the certificate.
inline Json solve_report(const Scenario& sc, const GoalSystem& gs, const SolveParams& p, const SolveResult& res,
                         const Certificate* cert = nullptr) {
  const PayoffVec shown = gs.sense() == Sense::MaximizeGains ? PayoffVec(-res.f_star) : res.f_star;
  const auto stats = trajectory_stats(res.trajectory);
  Json doc = {{"version", kScenarioVersion},
              {"digest", instance_digest(gs.data())},
              {"sense", to_string(gs.sense())},
              {"params",
               {{"eps", p.eps},
                {"lambda", p.lambda},
                {"xi", to_json(p.xi)},
                {"start", {{"x", p.start.x}, {"omega", p.start.omega}}}}},
              {"result",
               {{"x_star", res.x_star},
                {"omega_star", res.omega_star},
                {"means", gs.means_label(res.x_star)},
                {"way", gs.way_label(res.omega_star)},
                {"f_star", to_json(res.f_star)},
                {"payoff_star", to_json(shown)},
                {"path_length", res.trajectory.path_length},
                {"moves", stats.moves}}},
              {"trajectory", trajectory_json(res.trajectory)},
              {"warnings", sc.warnings}};
  if (cert) doc["certificate"] = certificate_json(*cert);
  return doc;
}

/// Reads the claimed end point of a report; throws SchemaError on a malformed report.
inline FeasiblePair claimed_end_point(const Json& report) {
  detail::SchemaReader r;
  FeasiblePair out;
  const Json* res = r.field(report, "", "result", true);
  if (res) {
    const Json* x = r.field(*res, "result", "x_star", true);
    const Json* w = r.field(*res, "result", "omega_star", true);
    if (x) out.x = r.index(*x, "result.x_star", SIZE_MAX).value_or(0);
    if (w) out.omega = r.index(*w, "result.omega_star", SIZE_MAX).value_or(0);
  }
  if (!r.issues.empty()) throw SchemaError(std::move(r.issues));
  return out;
}

inline std::string summary_text(const GoalSystem& gs, const SolveResult& res) {
  std::ostringstream os;
  const auto stats = trajectory_stats(res.trajectory);
  const PayoffVec shown = gs.sense() == Sense::MaximizeGains ? PayoffVec(-res.f_star) : res.f_star;
  os << "end point: (" << gs.means_label(res.x_star) << ", " << gs.way_label(res.omega_star) << ")  [x*=" << res.x_star
     << ", omega*=" << res.omega_star << "]\n";
  os << "payoff: " << format_vec(shown) << "\n";
  os << "path length: " << res.trajectory.path_length << " over " << stats.moves << " move(s), " << stats.iterates
     << " iterate(s)\n";
  os << "termination: " << to_string(res.trajectory.termination) << "\n";
  return os.str();
}

inline std::string certificate_text(const Certificate& c) {
  std::ostringstream os;
  os << "instance " << c.digest << "\n";
  for (const auto& k : c.checks) {
    os << "  " << k.name << ": " << to_string(k.status) << "  " << k.detail << "\n";
    for (const auto& w : k.witnesses) os << "      witness: " << w << "\n";
  }
  os << "overall: " << (c.overall() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace varrat
