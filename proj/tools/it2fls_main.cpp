#include <CLI11.hpp>

#include <iostream>

#include "it2fls/error.hpp"
#include "it2fls/experiments.hpp"

using namespace it2fls;

namespace {

constexpr int kUsageError = 1;
constexpr int kNumericError = 2;

const std::vector<std::string> kAlgorithms{"KM", "EKM", "WEKM", "TWEKM", "EIASC", "WM", "BMM", "LBMM", "NT"};
const std::vector<std::string> kMethods{"Centroid", "CoSet", "CoSum", "Height", "ModiHe"};

struct Flags {
  std::string config;
  std::string algorithm;
  std::string method;
  std::size_t domain_points = 0;
  double dt = 0.0;
  double x1 = 0.0, x2 = 0.0;
  std::string params;
  std::size_t iterations = 0;
  std::vector<std::string> algorithms;
  std::string rule_pz;
};

void add_shared(CLI::App* cmd, RunManifest& m, Flags& f) {
  cmd->add_option("--seed", m.seed, "Random seed")->capture_default_str();
  cmd->add_option("--out", m.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--config", f.config, "Config file (defaults are built in)")->check(CLI::ExistingFile);
  cmd->add_option("--algorithm", f.algorithm, "Type-reduction algorithm")->check(CLI::IsMember(kAlgorithms));
  cmd->add_option("--method", f.method, "Type-reduction method")->check(CLI::IsMember(kMethods));
  cmd->add_option("--domain-points", f.domain_points, "Points on the universe of discourse (default 100)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  cmd->add_option("--dt", f.dt, "Integration step")->check(CLI::PositiveNumber);
  cmd->add_flag("--plot", m.plot, "Also write SVG charts");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interval type-2 fuzzy logic experiments"};
  app.require_subcommand(1);
  RunManifest m;
  Flags f;

  auto* simple = app.add_subcommand("simple", "Evaluate the two-input, two-output demo system");
  add_shared(simple, m, f);
  auto* x1 = simple->add_option("--x1", f.x1, "Value of input x1");
  auto* x2 = simple->add_option("--x2", f.x2, "Value of input x2");

  auto* mg = app.add_subcommand("mackey-glass", "Fit a Mackey-Glass predictor with particle swarm optimisation");
  add_shared(mg, m, f);
  mg->add_flag("--skip-optimize", m.skip_optimize, "Replay --params instead of running PSO");
  mg->add_option("--params", f.params, "Parameter file written by a previous run (params.csv)")
      ->check(CLI::ExistingFile);
  mg->add_option("--iterations", f.iterations, "PSO iterations")->check(CLI::PositiveNumber);

  auto* fpid = app.add_subcommand("it2fpid", "Closed-loop fuzzy PI control sweep over plants and type reducers");
  add_shared(fpid, m, f);
  fpid->add_option("--plants", m.plants, "Plant sections to simulate")->delimiter(',');
  fpid->add_option("--algorithms", f.algorithms, "Type-reduction algorithms to sweep")
      ->delimiter(',')
      ->check(CLI::IsMember(kAlgorithms));
  fpid->add_option("--rule-pz", f.rule_pz, "Consequent of the rule (de = P, e = Z)")->check(CLI::IsMember({"NM", "PM"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  for (auto* cmd : {simple, mg, fpid}) {
    if (cmd->parsed()) m.subcommand = cmd->get_name();
  }
  if (!f.config.empty()) m.config_path = f.config;
  if (!f.algorithm.empty()) m.algorithm = parse_algorithm(f.algorithm);
  if (!f.method.empty()) m.method = parse_method(f.method);
  if (f.domain_points != 0) m.domain_points = f.domain_points;
  if (f.dt != 0.0) m.dt = f.dt;
  if (x1->count() > 0) m.x1 = f.x1;
  if (x2->count() > 0) m.x2 = f.x2;
  if (!f.params.empty()) m.params_path = f.params;
  if (f.iterations != 0) m.iterations = f.iterations;
  for (const auto& a : f.algorithms) m.algorithms.push_back(parse_algorithm(a));
  if (!f.rule_pz.empty()) m.rule_pz = f.rule_pz == "NM" ? RulePZ::NM : RulePZ::PM;
  if (m.skip_optimize && !m.params_path) {
    std::cerr << "error: --skip-optimize needs --params\n";
    return kUsageError;
  }

  try {
    const RunReport report = run(m);
    for (const auto& line : report.notes) std::cout << line << '\n';
    std::cout << "wrote " << report.artifacts.size() << " files to " << m.out_dir.string() << '\n';
    for (const auto& failure : report.failures) std::cerr << "check failed: " << failure << '\n';
    return report.failures.empty() ? 0 : kNumericError;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericError;
  }
}
