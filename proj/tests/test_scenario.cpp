#include <gtest/gtest.h>

#include "varrat/certifier.hpp"
#include "varrat/generator.hpp"
#include "varrat/scenario.hpp"

using namespace varrat;

namespace {

std::string scenario_path(const std::string& name) { return std::string(VARRAT_SCENARIO_DIR) + "/" + name; }

Json two_means_doc() {
  return Json::parse(R"({
    "version": "varrat/1",
    "instance": {
      "means": ["a", "b"], "ways": ["w1", "w2"],
      "quasimetric": [[0, 1], [2, 0]],
      "feasible": [[0], [0, 1]],
      "payoffs": [[[2, 2], null], [[1, 1], [1, 0]]]
    },
    "params": {"eps": 1, "lambda": 1, "xi": [0.7071067811865476, 0.7071067811865476], "start": {"x": 0, "omega": 0}}
  })");
}

std::vector<std::string> issue_paths(const SchemaError& e) {
  std::vector<std::string> out;
  for (const auto& i : e.issues()) out.push_back(i.path);
  return out;
}

}  // namespace

TEST(Scenario, LoadsShippedFiles) {
  for (const char* name : {"line3.json", "two_means.json", "resource_d1_m2.json", "chain_cones.json"}) {
    const Scenario sc = load_scenario(scenario_path(name));
    const GoalSystem gs = GoalSystem::build(sc.instance);
    EXPECT_TRUE(validate_hypotheses(gs).overall()) << name;
    const auto p = solve_params(sc, gs);
    const auto res = solve_theorem31(gs, p);
    EXPECT_TRUE(certify_solution(gs, p, res.x_star, res.omega_star).overall()) << name;
  }
}

TEST(Scenario, TwoMeansDefaults) {
  const Scenario sc = parse_scenario(two_means_doc());
  EXPECT_EQ(sc.instance.anchors.size(), 1u);
  EXPECT_EQ(sc.instance.sense, Sense::MinimizeCosts);
  const GoalSystem gs = GoalSystem::build(sc.instance);
  const auto res = solve_theorem31(gs, solve_params(sc, gs));
  EXPECT_EQ(res.x_star, 1u);
  EXPECT_EQ(res.omega_star, 1u);
}

TEST(Scenario, MissingXiUsesCommonCone) {
  Json doc = two_means_doc();
  doc["params"].erase("xi");
  const Scenario sc = parse_scenario(doc);
  const GoalSystem gs = GoalSystem::build(sc.instance);
  const auto p = solve_params(sc, gs);
  EXPECT_NEAR(p.xi[0], std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(p.xi[1], std::sqrt(0.5), 1e-12);
}

TEST(Scenario, NegativeEntryNamesPath) {
  Json doc = two_means_doc();
  doc["instance"]["quasimetric"][0][1] = -1;
  try {
    parse_scenario(doc);
    FAIL();
  } catch (const SchemaError& e) {
    const auto paths = issue_paths(e);
    EXPECT_NE(std::find(paths.begin(), paths.end(), "instance.quasimetric[0][1]"), paths.end());
  }
}

TEST(Scenario, ExactlyOneSource) {
  Json doc = two_means_doc();
  doc["generator"] = Json::object();
  EXPECT_THROW(parse_scenario(doc), SchemaError);
  doc.erase("generator");
  doc.erase("instance");
  EXPECT_THROW(parse_scenario(doc), SchemaError);
}

TEST(Scenario, VersionChecked) {
  Json doc = two_means_doc();
  doc["version"] = "varrat/0";
  try {
    parse_scenario(doc);
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(issue_paths(e), (std::vector<std::string>{"version"}));
  }
  doc.erase("version");
  EXPECT_THROW(parse_scenario(doc), SchemaError);
}

TEST(Scenario, CollectsSeveralIssues) {
  Json doc = two_means_doc();
  doc["instance"]["quasimetric"][1][0] = "far";
  doc["instance"]["feasible"][1] = Json::array({5});
  try {
    parse_scenario(doc);
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_GE(e.issues().size(), 2u);
  }
}

TEST(Scenario, InfeasibleStartRejected) {
  Json doc = two_means_doc();
  doc["params"]["start"] = {{"x", 0}, {"omega", 1}};
  EXPECT_THROW(parse_scenario(doc), SchemaError);
}

TEST(Scenario, GeneratorMatchesBuilder) {
  const Scenario sc = load_scenario(scenario_path("resource_d1_m2.json"));
  ResourceSpec spec;
  spec.d = 1;
  spec.m = 2;
  spec.levels = {0, 1, 2};
  spec.acquire_cost = 1.5;
  spec.release_cost = 0.5;
  spec.rules = {[](const Eigen::VectorXd&, const Eigen::VectorXd& s) { return 2 * std::sqrt(std::max(0.0, s[0])); },
                [](const Eigen::VectorXd& x, const Eigen::VectorXd& s) { return s[0] + 0.5 * x[0]; }};
  spec.anchors = {Anchor{PayoffVec::Zero(2), Cone::orthant(2)}};
  spec.theta = Cone::orthant(2);
  spec.sense = Sense::MaximizeGains;
  const auto built = build_resource_instance(spec);
  EXPECT_EQ(instance_digest(sc.instance), instance_digest(built.data));
  EXPECT_EQ(sc.instance.means, built.data.means);
}

TEST(Scenario, UnknownRuleKind) {
  Json doc = Json::parse(R"({"version":"varrat/1","generator":{"d":1,"m":1,"grid":[0,1],
    "rules":[{"kind":"cubic"}]}})");
  try {
    parse_scenario(doc);
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(issue_paths(e), (std::vector<std::string>{"generator.rules[0].kind"}));
  }
}

TEST(Scenario, GeneratedRoundTrip) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto g = generate_instance(seed);
    const Scenario sc = scenario_from_generated(g);
    const Scenario back = parse_scenario(Json::parse(scenario_json(sc).dump()));
    EXPECT_EQ(instance_digest(back.instance), instance_digest(g.data)) << "seed " << seed;
    const GoalSystem a = GoalSystem::build(g.data), b = GoalSystem::build(back.instance);
    const auto ra = solve_theorem31(a, g.params);
    const auto rb = solve_theorem31(b, solve_params(back, b));
    EXPECT_EQ(ra.x_star, rb.x_star);
    EXPECT_EQ(ra.omega_star, rb.omega_star);
    const auto ca = certify_solution(a, g.params, ra.x_star, ra.omega_star);
    const auto cb = certify_solution(b, solve_params(back, b), rb.x_star, rb.omega_star);
    EXPECT_EQ(certificate_json(ca), certificate_json(cb));
  }
}

TEST(Scenario, ReportRoundTrip) {
  const Scenario sc = parse_scenario(two_means_doc());
  const GoalSystem gs = GoalSystem::build(sc.instance);
  const auto p = solve_params(sc, gs);
  const auto res = solve_theorem31(gs, p);
  const auto cert = certify_solution(gs, p, res.x_star, res.omega_star);
  const Json report = Json::parse(solve_report(sc, gs, p, res, &cert).dump());
  EXPECT_EQ(claimed_end_point(report), (FeasiblePair{1, 1}));
  EXPECT_EQ(report["result"]["means"], "b");
  EXPECT_EQ(report["result"]["way"], "w2");
  EXPECT_EQ(report["certificate"]["overall"], "PASS");
  EXPECT_EQ(report["trajectory"]["steps"].size(), res.trajectory.steps.size());
  Json broken = report;
  broken["result"].erase("x_star");
  EXPECT_THROW(claimed_end_point(broken), SchemaError);
}

TEST(Scenario, GainsReportedInOriginalSign) {
  const Scenario sc = load_scenario(scenario_path("resource_d1_m2.json"));
  const GoalSystem gs = GoalSystem::build(sc.instance);
  const auto p = solve_params(sc, gs);
  const auto res = solve_theorem31(gs, p);
  const Json report = solve_report(sc, gs, p, res);
  const auto shown = report["result"]["payoff_star"].get<std::vector<double>>();
  for (std::size_t j = 0; j < shown.size(); ++j) EXPECT_EQ(shown[j], -res.f_star[static_cast<Eigen::Index>(j)]);
}
