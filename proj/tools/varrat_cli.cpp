// varrat: validate, solve, certify and explore worthwhile-change scenarios.
//
// Exit status: 0 success, 1 a check failed, 2 the scenario (or report) is malformed.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "varrat/varrat.hpp"

namespace fs = std::filesystem;
using namespace varrat;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kSchemaError = 2;

void print_warnings(const Scenario& sc) {
  for (const auto& w : sc.warnings) std::cerr << "warning: " << w << "\n";
}

// Hypothesis certificate first, so a failing gate is reported with its witnesses.
bool gate(const Scenario& sc) {
  const Certificate cert = validate_hypotheses(sc.instance);
  if (cert.overall()) return true;
  std::cout << certificate_text(cert);
  std::cerr << "hypotheses failed: ";
  for (const auto& n : cert.failed_names()) std::cerr << n << " ";
  std::cerr << "\n";
  return false;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

void write_outputs(const fs::path& dir, const GoalSystem& gs, const SolveResult& res, const Json& report) {
  fs::create_directories(dir);
  std::ofstream csv(dir / "trajectory.csv");
  if (!csv) throw std::runtime_error("cannot write " + (dir / "trajectory.csv").string());
  write_trajectory_csv(csv, res.trajectory, gs.dimension());
  write_file(dir / "report.json", report.dump(2) + "\n");
  write_file(dir / "summary.txt", summary_text(gs, res));
}

int cmd_validate(const std::string& file) {
  const Scenario sc = load_scenario(file);
  print_warnings(sc);
  const Certificate cert = validate_hypotheses(sc.instance);
  std::cout << certificate_text(cert);
  return cert.overall() ? kOk : kCheckFailed;
}

int cmd_solve(const std::string& file, std::string out) {
  const Scenario sc = load_scenario(file);
  print_warnings(sc);
  if (!gate(sc)) return kCheckFailed;
  const GoalSystem gs = GoalSystem::build(sc.instance);
  const SolveParams p = solve_params(sc, gs);
  const SolveResult res = solve_theorem31(gs, p);
  std::cout << summary_text(gs, res);
  if (out.empty()) out = sc.run.out;
  if (!out.empty()) {
    write_outputs(out, gs, res, solve_report(sc, gs, p, res));
    std::cout << "wrote " << (fs::path(out) / "trajectory.csv").string() << ", " << (fs::path(out) / "report.json").string()
              << "\n";
  }
  return kOk;
}

int cmd_certify(const std::string& file, const std::string& result_file, const std::string& out) {
  const Scenario sc = load_scenario(file);
  print_warnings(sc);
  if (!gate(sc)) return kCheckFailed;
  const GoalSystem gs = GoalSystem::build(sc.instance);
  const SolveParams p = solve_params(sc, gs);
  FeasiblePair end;
  std::optional<SolveResult> res;
  if (!result_file.empty()) {
    std::ifstream in(result_file);
    if (!in) throw SchemaError(std::vector<SchemaIssue>{{"", "cannot read " + result_file}});
    Json report;
    try {
      report = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw SchemaError(std::vector<SchemaIssue>{{"", std::string("malformed JSON: ") + e.what()}});
    }
    end = claimed_end_point(report);
    std::cout << "certifying claimed end point (" << end.x << "," << end.omega << ") from " << result_file << "\n";
  } else {
    res = solve_theorem31(gs, p);
    end = {res->x_star, res->omega_star};
    std::cout << summary_text(gs, *res);
  }
  const Certificate cert = certify_solution(gs, p, end.x, end.omega);
  if (res && !out.empty()) write_outputs(out, gs, *res, solve_report(sc, gs, p, *res, &cert));
  std::cout << certificate_text(cert);
  if (!cert.overall()) {
    std::cerr << "failed: ";
    for (const auto& n : cert.failed_names()) std::cerr << n << " ";
    std::cerr << "\n";
    return kCheckFailed;
  }
  return kOk;
}

std::string index_set(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

int cmd_traps(const std::string& file, std::optional<double> ratio_opt) {
  const Scenario sc = load_scenario(file);
  print_warnings(sc);
  const GoalSystem gs = GoalSystem::build(sc.instance);
  const double ratio = ratio_opt ? *ratio_opt : sc.run.ratio ? *sc.run.ratio : sc.params.eps / sc.params.lambda;
  bool scalar = gs.dimension() == 1;
  for (std::size_t x = 0; x < gs.means_count() && scalar; ++x) scalar = gs.feasible(x).size() == 1;
  if (scalar) {
    ScalarModel model{gs.space(), {}, Sense::MinimizeCosts, parse_monotone(sc.params.U), parse_monotone(sc.params.D),
                      sc.params.schedule};
    for (std::size_t x = 0; x < gs.means_count(); ++x) model.values.push_back(gs.payoff(x, gs.feasible(x)[0])[0]);
    model.validate();
    const auto traps = brute_force_traps(model, ratio);
    std::cout << "stationary traps at ratio " << ratio << " (U=" << model.U.name() << ", D=" << model.D.name()
              << "): " << index_set(traps) << "\n";
    for (std::size_t x : traps) std::cout << "  " << x << " " << gs.means_label(x) << "\n";
    return kOk;
  }
  if (!gate(sc)) return kCheckFailed;
  const SolveParams p = solve_params(sc, gs);
  const DeltaParams dp{p.xi, ratio};
  dp.validate(gs.dimension());
  const auto traps = brute_force_traps(gs, dp);
  std::cout << "stationary traps at ratio " << ratio << ", xi = " << format_vec(p.xi) << ": {";
  for (std::size_t i = 0; i < traps.size(); ++i)
    std::cout << (i ? "," : "") << "(" << traps[i].x << "," << traps[i].omega << ")";
  std::cout << "}\n";
  for (const auto& t : traps) std::cout << "  (" << gs.means_label(t.x) << ", " << gs.way_label(t.omega) << ")\n";
  return kOk;
}

int cmd_sweep(const std::string& file, const std::vector<double>& ratios, const std::string& xis_file,
              const std::string& out) {
  const Scenario sc = load_scenario(file);
  print_warnings(sc);
  if (!gate(sc)) return kCheckFailed;
  const GoalSystem gs = GoalSystem::build(sc.instance);
  std::ifstream in(xis_file);
  if (!in) throw SchemaError(std::vector<SchemaIssue>{{"", "cannot read " + xis_file}});
  Json xis_doc;
  try {
    xis_doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::vector<SchemaIssue>{{"", std::string("malformed JSON: ") + e.what()}});
  }
  if (!xis_doc.is_array() || xis_doc.empty()) throw SchemaError(std::vector<SchemaIssue>{{"xis", "expected a nonempty array of directions"}});
  std::vector<PayoffVec> xis;
  for (std::size_t i = 0; i < xis_doc.size(); ++i) {
    const auto& v = xis_doc[i];
    const std::string path = "xis[" + std::to_string(i) + "]";
    if (!v.is_array() || static_cast<Eigen::Index>(v.size()) != gs.dimension())
      throw SchemaError(std::vector<SchemaIssue>{{path, "expected " + std::to_string(gs.dimension()) + " numbers"}});
    std::vector<double> d;
    for (const auto& e : v) {
      if (!e.is_number()) throw SchemaError(std::vector<SchemaIssue>{{path, "expected numbers"}});
      d.push_back(e.get<double>());
    }
    PayoffVec x = make_payoff(d);
    if (!(x.norm() > 0.0) || !x.allFinite()) throw SchemaError(std::vector<SchemaIssue>{{path, "direction must be finite and nonzero"}});
    xis.push_back(x / x.norm());
  }

  std::ostringstream csv;
  csv.precision(17);
  csv << "ratio,xi_index,x_star,omega_star,path_length,moves,status\n";
  int invalid = 0;
  for (double r : ratios)
    for (std::size_t i = 0; i < xis.size(); ++i) {
      SolveParams p = solve_params(sc, gs);
      p.eps = r * p.lambda;
      p.xi = xis[i];
      csv << r << "," << i << ",";
      try {
        const SolveResult res = solve_theorem31(gs, p);
        csv << res.x_star << "," << res.omega_star << "," << res.trajectory.path_length << ","
            << trajectory_stats(res.trajectory).moves << ",ok\n";
      } catch (const InvalidInput& e) {
        ++invalid;
        csv << ",,,," << '"' << "invalid: " << e.what() << '"' << "\n";
      }
    }
  if (out.empty()) std::cout << csv.str();
  else {
    write_file(out, csv.str());
    std::cout << "wrote " << ratios.size() * xis.size() << " cells to " << out << "\n";
  }
  return invalid ? kCheckFailed : kOk;
}

int cmd_gen(std::uint64_t seed, const std::string& out, int dim, std::size_t ways, bool symmetric) {
  GeneratorOptions opt;
  opt.dim = dim;
  opt.ways = ways;
  opt.symmetric = symmetric;
  const GeneratedInstance g = generate_instance(seed, opt);
  const Scenario sc = scenario_from_generated(g);
  const std::string text = scenario_json(sc).dump(2) + "\n";
  if (out.empty() || out == "-") std::cout << text;
  else {
    write_file(out, text);
    std::cout << "wrote " << out << " (seed " << seed << ", " << g.attempts << " attempt(s), digest "
              << instance_digest(g.data) << ")\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Worthwhile-change variational solver and certifier"};
  app.require_subcommand(1);

  std::string file, out, result, xis;
  std::optional<double> ratio;
  std::vector<double> ratios;
  std::uint64_t seed = 0;
  int dim = 0;
  std::size_t ways = 0;
  bool symmetric = false;

  auto* validate = app.add_subcommand("validate", "check the standing hypotheses of a scenario");
  validate->add_option("file", file, "scenario file")->required();

  auto* solve = app.add_subcommand("solve", "run the worthwhile-change process and refine the end point");
  solve->add_option("file", file, "scenario file")->required();
  solve->add_option("--out", out, "directory for trajectory.csv, report.json and summary.txt");

  auto* certify = app.add_subcommand("certify", "solve (or read a report) and certify the end point");
  certify->add_option("file", file, "scenario file")->required();
  certify->add_option("--result", result, "report.json whose claimed end point is certified");
  certify->add_option("--out", out, "directory for the solve outputs with the certificate");

  auto* traps = app.add_subcommand("traps", "list every stationary trap by brute force");
  traps->add_option("file", file, "scenario file")->required();
  traps->add_option("--ratio", ratio, "satisficing ratio (default eps/lambda)")->check(CLI::NonNegativeNumber);

  auto* sweep = app.add_subcommand("sweep", "end points over a grid of eps/lambda ratios and directions");
  sweep->add_option("file", file, "scenario file")->required();
  sweep->add_option("--ratios", ratios, "comma-separated eps/lambda ratios")->required()->delimiter(',')->check(
      CLI::PositiveNumber);
  sweep->add_option("--xis", xis, "JSON array of directions")->required();
  sweep->add_option("--out", out, "CSV output file (default stdout)");

  auto* gen = app.add_subcommand("gen", "emit a random valid scenario");
  gen->add_option("--seed", seed, "64-bit seed")->required();
  gen->add_option("--out", out, "scenario file to write (default stdout)");
  gen->add_option("--dim", dim, "payoff dimension (default random 1..3)")->check(CLI::Range(0, 3));
  gen->add_option("--ways", ways, "number of ways (default random 1..5)")->check(CLI::Range(0, 5));
  gen->add_flag("--symmetric", symmetric, "symmetric change costs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return cmd_validate(file);
    if (*solve) return cmd_solve(file, out);
    if (*certify) return cmd_certify(file, result, out);
    if (*traps) return cmd_traps(file, ratio);
    if (*sweep) return cmd_sweep(file, ratios, xis, out);
    if (*gen) return cmd_gen(seed, out, dim, ways, symmetric);
  } catch (const SchemaError& e) {
    std::cerr << "schema error:\n";
    for (const auto& i : e.issues()) std::cerr << "  " << (i.path.empty() ? "<root>" : i.path) << ": " << i.message << "\n";
    return kSchemaError;
  } catch (const HypothesisFailure& e) {
    std::cerr << "hypothesis " << e.hypothesis() << " failed: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kOk;
}
