#include "it2fls/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include "it2fls/csv.hpp"
#include "it2fls/error.hpp"
#include "it2fls/pso.hpp"
#include "it2fls/svg.hpp"

namespace it2fls {

namespace {

constexpr std::string_view kSimpleConfig = R"(# Rule-evaluation demo: two inputs, two outputs, three rules.

[run]
algorithm = KM
method = Centroid
t_norm = min
s_norm = max

[inputs]
x1 = 0.9
x2 = 0.9

[system]
lo = 0
hi = 1
points = 100
inputs = x1 x2
outputs = y1 y2

# params: mean, std_center, std_spread
[set Small]
shape = gauss_uncert_std
params = 0 0.15 0.1

[set Medium]
shape = gauss_uncert_std
params = 0.5 0.15 0.1

[set Large]
shape = gauss_uncert_std
params = 1 0.15 0.1

[rules]
r1 = x1 Small, x2 Small -> y1 Small, y2 Large
r2 = x1 Medium, x2 Medium -> y1 Medium, y2 Small
r3 = x1 Large, x2 Large -> y1 Large, y2 Small
)";

constexpr std::string_view kMackeyGlassConfig = R"(# One-step prediction of the Mackey-Glass series with a three-rule
# predictor whose 36 set parameters are fitted by particle swarm.

[mackey_glass]
beta = 2
gamma = 1
tau = 2
n = 9.65
dt = 0.1
# Constant initial history drawn uniformly from [history_lo, history_hi] using the run seed.
history_lo = 0.2
history_hi = 1.4

# The integrated trace is subsampled every `stride` steps (period stride * dt).
# The first `transient` samples are dropped as prediction targets, then come
# `train` samples for fitting and `test` samples for evaluation.
[sampling]
stride = 10
transient = 100
train = 100
test = 100

# Universe of discourse and search box for the set parameters.
# std bounds apply to both std_center and std_spread.
[predictor]
lo = 0
hi = 2
points = 100
algorithm = KM
method = Centroid
mean_lo = 0.3
mean_hi = 1.4
std_lo = 0.01
std_hi = 1

[pso]
swarm_size = 30
iterations = 200
w = 0.729
c1 = 1.49445
c2 = 1.49445
# 0 uses every hardware thread; results do not depend on it.
threads = 0
)";

constexpr std::string_view kIt2FpidConfig = R"(# Interval type-2 fuzzy PI control of first-order-plus-dead-time plants.

[controller]
Ka = 0.25
Kb = 4.25
Ke = 0.8
Kd = 0.5

# Gaussian sets with uncertain std on [-1, 1]: inputs N, Z, P and outputs
# NB, NM, Z, PM, PB. The std values are calibrated against the reference
# nominal step response (settling 5.1125 s, overshoot 2.2287 %, ITAE 2.7967).
# To re-tune, sweep input_std_* and output_std_* over a grid, keep points
# whose nominal KM metrics fall within tolerance, and prefer those where WM
# and BMM reach a lower ITAE than KM on perturbed-1.
[fls]
points = 100
input_centers = -1 0 1
input_std_center = 0.6
input_std_spread = 0.3
output_centers = -1 -0.5 0 0.5 1
output_std_center = 0.35
output_std_spread = 0.35
# Consequent of the rule (de = P, e = Z): NM as printed in the rule table,
# PM for the antisymmetric table.
rule_pz = NM
method = Centroid

# dt must divide every plant dead time.
[simulation]
dt = 0.005
t_end = 20
setpoint = 1
band = 0.02

[sweep]
plants = nominal perturbed-1 perturbed-2
algorithms = KM EIASC WM BMM NT

[plant nominal]
K = 1
T = 1
L = 0.2

[plant perturbed-1]
K = 1.3
T = 1.9
L = 0.4

[plant perturbed-2]
K = 1.1
T = 1.3
L = 0.45
)";

namespace fs = std::filesystem;

std::ofstream open_artifact(RunReport& report, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  report.artifacts.push_back(path);
  return out;
}

void prepare_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory " + dir.string());
}

void write_chart(RunReport& report, const fs::path& path, const svg::Chart& chart) {
  auto out = open_artifact(report, path);
  svg::write_line_chart(out, chart);
}

Algorithm config_algorithm(const Config& cfg, const std::string& section, Algorithm fallback) {
  const auto v = cfg.get(section, "algorithm");
  if (!v) return fallback;
  try {
    return parse_algorithm(*v);
  } catch (const ParameterError& e) {
    throw ConfigError(cfg.source() + ": [" + section + "] " + e.what());
  }
}

Method config_method(const Config& cfg, const std::string& section, Method fallback) {
  const auto v = cfg.get(section, "method");
  if (!v) return fallback;
  try {
    return parse_method(*v);
  } catch (const ParameterError& e) {
    throw ConfigError(cfg.source() + ": [" + section + "] " + e.what());
  }
}

std::string fmt(double v) { return csv::format_number(v); }

/// Runs `job(i)` for i in [0, n) on up to hardware-concurrency threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& job) {
  const std::size_t workers = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::exception_ptr> errors(n);
  auto worker = [&](std::size_t w) {
    for (std::size_t i = w; i < n; i += workers) {
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker, w);
    if (workers > 0) worker(0);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::string_view default_config_text(std::string_view subcommand) {
  if (subcommand == "simple") return kSimpleConfig;
  if (subcommand == "mackey-glass") return kMackeyGlassConfig;
  if (subcommand == "it2fpid") return kIt2FpidConfig;
  throw ConfigError("unknown subcommand '" + std::string(subcommand) + "'");
}

Config load_run_config(const RunManifest& m) {
  if (m.config_path) return Config::load(*m.config_path);
  std::istringstream in{std::string(default_config_text(m.subcommand))};
  return Config::parse(in, "<built-in " + m.subcommand + ">");
}

// ---------------------------------------------------------------------------

RunReport cmd_simple(const RunManifest& m) {
  const Config cfg = load_run_config(m);
  cfg.expect_keys("run", {"algorithm", "method", "t_norm", "s_norm"});
  const SystemDefinition def = system_from_config(cfg, m.domain_points);
  const FuzzySystem& sys = def.system;

  EvalRequest req;
  req.algorithm = m.algorithm.value_or(config_algorithm(cfg, "run", Algorithm::KM));
  req.method = m.method.value_or(config_method(cfg, "run", Method::Centroid));
  try {
    req.t_norm = Norm::by_name(cfg.get_string("run", "t_norm", "min"));
    req.s_norm = Norm::by_name(cfg.get_string("run", "s_norm", "max"));
  } catch (const ParameterError& e) {
    throw ConfigError(cfg.source() + ": [run] " + e.what());
  }
  for (const auto& name : sys.inputs()) {
    std::optional<double> v;
    if (name == "x1" && m.x1) v = m.x1;
    if (name == "x2" && m.x2) v = m.x2;
    if (!v && cfg.get("inputs", name)) v = cfg.get_double("inputs", name, 0.0);
    if (!v) throw ConfigError(cfg.source() + ": [inputs] no value for '" + name + "'");
    req.values[name] = *v;
  }

  const EvalResult result = sys.evaluate(req);
  EvalResult aggregated_view = result;
  if (result.aggregated.empty()) {
    EvalRequest centroid = req;
    centroid.method = Method::Centroid;
    aggregated_view = sys.evaluate(centroid);
  }

  prepare_out_dir(m.out_dir);
  RunReport report;
  {
    std::vector<std::string> header{"x"};
    for (const auto& [name, set] : def.sets) {
      header.push_back(name + "_lower");
      header.push_back(name + "_upper");
    }
    auto out = open_artifact(report, m.out_dir / "simp_ex_sets.csv");
    csv::Writer w(out, header);
    const Grid& grid = sys.grid();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      std::vector<csv::Cell> row{grid[i]};
      for (const auto& [name, set] : def.sets) {
        row.emplace_back(set.lower()[i]);
        row.emplace_back(set.upper()[i]);
      }
      w.row(row);
    }
  }
  for (const auto& name : sys.outputs()) {
    const IT2FS& agg = aggregated_view.aggregated.at(name);
    {
      auto out = open_artifact(report, m.out_dir / (name + "_out.csv"));
      write_set_csv(out, export_set(agg));
    }
    const TRInterval tr = result.intervals.at(name);
    {
      auto out = open_artifact(report, m.out_dir / (name + "_tr.csv"));
      csv::Writer w(out, {"algorithm", "method", "y_l", "y_r"});
      w.row({std::string(algorithm_name(req.algorithm)), std::string(method_name(req.method)), tr.y_l, tr.y_r});
    }
    if (!(tr.y_l <= tr.y_r + 1e-12) || tr.y_l < sys.grid().lo() - 1e-12 || tr.y_r > sys.grid().hi() + 1e-12) {
      report.failures.push_back("interval for '" + name + "' is not an ordered subset of the universe");
    }
    report.notes.push_back(name + ": [" + fmt(tr.y_l) + ", " + fmt(tr.y_r) + "] crisp " + fmt(crisp(tr)));
    if (m.plot) {
      const auto rec = export_set(agg);
      write_chart(report, m.out_dir / (name + "_out.svg"),
                  {"Aggregated output " + name, name, "membership", {{"upper", rec.x, rec.upper}, {"lower", rec.x, rec.lower}}});
    }
  }
  {
    auto out = open_artifact(report, m.out_dir / "crisp.csv");
    csv::Writer w(out, {"output", "crisp"});
    for (const auto& name : sys.outputs()) w.row({name, result.crisp(name)});
  }
  if (m.plot) {
    svg::Chart chart{"Input sets", "x", "membership", {}};
    for (const auto& [name, set] : def.sets) {
      const auto rec = export_set(set);
      chart.series.push_back({name + " upper", rec.x, rec.upper});
      chart.series.push_back({name + " lower", rec.x, rec.lower});
    }
    write_chart(report, m.out_dir / "simp_ex_sets.svg", chart);
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

constexpr const char* kPredictorSetNames[] = {"A1", "A2", "A3", "B1", "B2", "B3", "C1", "C2", "C3", "O1", "O2", "O3"};

}  // namespace

void write_predictor_params(std::ostream& out, std::span<const double> params) {
  const auto p = decode_predictor_params(params);
  csv::Writer w(out, {"set", "mean", "std_center", "std_spread"});
  for (std::size_t s = 0; s < 12; ++s) w.row({std::string(kPredictorSetNames[s]), p[3 * s], p[3 * s + 1], p[3 * s + 2]});
}

std::vector<double> read_predictor_params(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("parameter file is empty");
  std::vector<double> out;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError("parameter row '" + line + "' has no values");
    const auto v = parse_numbers(line.substr(comma + 1), "parameter row");
    if (v.size() != 3) throw ConfigError("parameter row '" + line + "' needs mean, std_center, std_spread");
    out.insert(out.end(), v.begin(), v.end());
  }
  if (out.size() != kPredictorParams) throw ConfigError("parameter file needs 12 rows");
  return out;
}

RunReport cmd_mackey_glass(const RunManifest& m) {
  const Config cfg = load_run_config(m);
  cfg.expect_keys("mackey_glass", {"beta", "gamma", "tau", "n", "dt", "history_lo", "history_hi"});
  cfg.expect_keys("sampling", {"stride", "transient", "train", "test"});
  cfg.expect_keys("predictor",
                  {"lo", "hi", "points", "algorithm", "method", "mean_lo", "mean_hi", "std_lo", "std_hi"});
  cfg.expect_keys("pso", {"swarm_size", "iterations", "w", "c1", "c2", "threads"});

  MackeyGlassParams mg;
  mg.beta = cfg.get_double("mackey_glass", "beta", mg.beta);
  mg.gamma = cfg.get_double("mackey_glass", "gamma", mg.gamma);
  mg.tau = cfg.get_double("mackey_glass", "tau", mg.tau);
  mg.n = cfg.get_double("mackey_glass", "n", mg.n);
  mg.dt = m.dt.value_or(cfg.get_double("mackey_glass", "dt", mg.dt));
  const double h_lo = cfg.get_double("mackey_glass", "history_lo", 0.2);
  const double h_hi = cfg.get_double("mackey_glass", "history_hi", 1.4);
  if (!(h_lo <= h_hi)) throw ConfigError(cfg.source() + ": history_lo exceeds history_hi");
  std::mt19937_64 rng(m.seed);
  mg.history = {h_lo + (h_hi - h_lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng)};

  auto count = [&](const char* key, std::int64_t fallback, std::int64_t min) {
    const auto v = cfg.get_int("sampling", key, fallback);
    if (v < min) throw ConfigError(cfg.source() + ": [sampling] " + key + " must be at least " + std::to_string(min));
    return static_cast<std::size_t>(v);
  };
  const std::size_t stride = count("stride", 10, 1);
  const std::size_t transient = count("transient", 100, 2);
  const std::size_t train = count("train", 100, 1);
  const std::size_t test = count("test", 100, 1);
  const std::size_t samples = transient + train + test + 1;
  const double t_end = static_cast<double>((samples - 1) * stride) * mg.dt;

  const SimTrace trace = simulate_mackey_glass(mg, t_end);
  const std::vector<double> series = subsample(trace.signal("x"), stride);
  const double period = static_cast<double>(stride) * mg.dt;

  const std::size_t points = m.domain_points.value_or(static_cast<std::size_t>(cfg.get_int("predictor", "points", 100)));
  const Grid grid = Grid::uniform(cfg.get_double("predictor", "lo", 0.0), cfg.get_double("predictor", "hi", 2.0), points);
  PredictionOptions popt;
  popt.algorithm = m.algorithm.value_or(config_algorithm(cfg, "predictor", Algorithm::KM));
  popt.method = m.method.value_or(config_method(cfg, "predictor", Method::Centroid));
  for (double v : series) {
    if (!grid.contains(v)) throw ParameterError("series value " + fmt(v) + " lies outside the predictor universe");
  }

  const std::size_t train_begin = transient, train_end = transient + train, test_end = train_end + test;
  RunReport report;
  prepare_out_dir(m.out_dir);
  std::vector<double> best;
  std::optional<PSOResult> pso;
  if (m.skip_optimize) {
    if (!m.params_path) throw ConfigError("--skip-optimize needs --params");
    std::ifstream in(*m.params_path);
    if (!in) throw ConfigError("cannot open parameter file " + m.params_path->string());
    best = read_predictor_params(in);
  } else {
    PSOConfig pc;
    pc.swarm_size = static_cast<std::size_t>(cfg.get_int("pso", "swarm_size", 30));
    pc.iterations = m.iterations.value_or(static_cast<std::size_t>(cfg.get_int("pso", "iterations", 200)));
    pc.w = cfg.get_double("pso", "w", pc.w);
    pc.c1 = cfg.get_double("pso", "c1", pc.c1);
    pc.c2 = cfg.get_double("pso", "c2", pc.c2);
    pc.threads = static_cast<unsigned>(cfg.get_int("pso", "threads", 0));
    pc.seed = m.seed;
    const std::pair<double, double> mean{cfg.get_double("predictor", "mean_lo", 0.3), cfg.get_double("predictor", "mean_hi", 1.4)};
    const std::pair<double, double> sd{cfg.get_double("predictor", "std_lo", 0.01), cfg.get_double("predictor", "std_hi", 1.0)};
    for (std::size_t s = 0; s < 12; ++s) pc.bounds.insert(pc.bounds.end(), {mean, sd, sd});
    const Objective objective = [&](std::span<const double> v) {
      try {
        return prediction_mse(make_predictor_system(v, grid), series, train_begin, train_end, popt);
      } catch (const std::exception&) {
        return 1e6;
      }
    };
    pso = optimize(objective, pc);
    best = pso->best_position;
    for (std::size_t i = 1; i < pso->convergence.size(); ++i) {
      if (pso->convergence[i] > pso->convergence[i - 1]) {
        report.failures.push_back("PSO convergence increased at iteration " + std::to_string(i));
        break;
      }
    }
  }

  const FuzzySystem predictor = make_predictor_system(best, grid);
  const double train_mse = prediction_mse(predictor, series, train_begin, train_end, popt);
  const double test_mse = prediction_mse(predictor, series, train_end, test_end, popt);
  const std::vector<double> yhat = predict(predictor, series, train_begin, test_end, popt);
  if (!std::isfinite(train_mse) || !std::isfinite(test_mse)) report.failures.push_back("prediction MSE is not finite");

  {
    auto out = open_artifact(report, m.out_dir / "series.csv");
    csv::Writer w(out, {"t", "x"});
    for (std::size_t i = 0; i < series.size(); ++i) w.row({static_cast<double>(i) * period, series[i]});
  }
  std::vector<double> pt, pa, pp;
  {
    auto out = open_artifact(report, m.out_dir / "prediction.csv");
    csv::Writer w(out, {"t", "actual", "predicted", "abs_error"});
    for (std::size_t t = train_begin; t < test_end; ++t) {
      const double time = static_cast<double>(t + 1) * period;
      const double actual = series[t + 1];
      const double guess = yhat[t - train_begin];
      w.row({time, actual, guess, std::abs(guess - actual)});
      pt.push_back(time);
      pa.push_back(actual);
      pp.push_back(guess);
    }
  }
  if (pso) {
    auto out = open_artifact(report, m.out_dir / "convergence.csv");
    write_convergence_csv(out, *pso);
  }
  {
    auto out = open_artifact(report, m.out_dir / "params.csv");
    write_predictor_params(out, best);
  }
  {
    auto out = open_artifact(report, m.out_dir / "summary.csv");
    csv::Writer w(out, {"key", "value"});
    w.row({std::string("seed"), static_cast<std::int64_t>(m.seed)});
    w.row({std::string("history"), mg.history[0]});
    if (pso) {
      w.row({std::string("initial_best_mse"), pso->convergence.front()});
      w.row({std::string("final_best_mse"), pso->convergence.back()});
    }
    w.row({std::string("train_mse"), train_mse});
    w.row({std::string("test_mse"), test_mse});
  }
  if (pso) {
    report.notes.push_back("PSO best MSE " + fmt(pso->convergence.front()) + " -> " + fmt(pso->convergence.back()));
  }
  report.notes.push_back("train MSE " + fmt(train_mse) + ", test MSE " + fmt(test_mse));

  if (m.plot) {
    write_chart(report, m.out_dir / "prediction.svg",
                {"Mackey-Glass one-step prediction", "t", "x", {{"actual", pt, pa}, {"predicted", pt, pp}}});
    if (pso) {
      std::vector<double> it(pso->convergence.size());
      for (std::size_t i = 0; i < it.size(); ++i) it[i] = static_cast<double>(i);
      write_chart(report, m.out_dir / "convergence.svg",
                  {"PSO convergence", "iteration", "best MSE", {{"best MSE", it, pso->convergence}}});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

template <std::size_t N>
std::array<double, N> fixed_numbers(const Config& cfg, const std::string& section, const std::string& key,
                                    const std::array<double, N>& fallback) {
  const auto v = cfg.get_doubles(section, key, std::vector<double>(fallback.begin(), fallback.end()));
  if (v.size() != N) {
    throw ConfigError(cfg.source() + ": [" + section + "] " + key + " needs " + std::to_string(N) + " numbers");
  }
  std::array<double, N> out{};
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

}  // namespace

RunReport cmd_it2fpid(const RunManifest& m) {
  const Config cfg = load_run_config(m);
  cfg.expect_keys("controller", {"Ka", "Kb", "Ke", "Kd"});
  cfg.expect_keys("fls", {"points", "input_centers", "input_std_center", "input_std_spread", "output_centers",
                          "output_std_center", "output_std_spread", "rule_pz", "method"});
  cfg.expect_keys("simulation", {"dt", "t_end", "setpoint", "band"});
  cfg.expect_keys("sweep", {"plants", "algorithms"});

  ScalingFactors sf;
  sf.Ka = cfg.get_double("controller", "Ka", sf.Ka);
  sf.Kb = cfg.get_double("controller", "Kb", sf.Kb);
  sf.Ke = cfg.get_double("controller", "Ke", sf.Ke);
  sf.Kd = cfg.get_double("controller", "Kd", sf.Kd);

  FpidDesign d;
  d.grid_points = m.domain_points.value_or(static_cast<std::size_t>(cfg.get_int("fls", "points", 100)));
  d.input_centers = fixed_numbers(cfg, "fls", "input_centers", d.input_centers);
  d.input_std_center = cfg.get_double("fls", "input_std_center", d.input_std_center);
  d.input_std_spread = cfg.get_double("fls", "input_std_spread", d.input_std_spread);
  d.output_centers = fixed_numbers(cfg, "fls", "output_centers", d.output_centers);
  d.output_std_center = cfg.get_double("fls", "output_std_center", d.output_std_center);
  d.output_std_spread = cfg.get_double("fls", "output_std_spread", d.output_std_spread);
  const std::string pz = cfg.get_string("fls", "rule_pz", "NM");
  if (pz != "NM" && pz != "PM") throw ConfigError(cfg.source() + ": [fls] rule_pz must be NM or PM");
  d.rule_pz = m.rule_pz.value_or(pz == "NM" ? RulePZ::NM : RulePZ::PM);
  const Method method = m.method.value_or(config_method(cfg, "fls", Method::Centroid));

  const double dt = m.dt.value_or(cfg.get_double("simulation", "dt", 0.005));
  const double t_end = cfg.get_double("simulation", "t_end", 20.0);
  const double setpoint = cfg.get_double("simulation", "setpoint", 1.0);
  const double band = cfg.get_double("simulation", "band", 0.02);

  std::vector<std::string> plant_names =
      m.plants.empty() ? cfg.get_words("sweep", "plants", {"nominal", "perturbed-1", "perturbed-2"}) : m.plants;
  std::vector<std::pair<std::string, PlantParams>> plants;
  for (const auto& name : plant_names) {
    const std::string section = "plant " + name;
    if (!cfg.has_section(section)) throw ConfigError(cfg.source() + ": no [" + section + "] section");
    cfg.expect_keys(section, {"K", "T", "L"});
    PlantParams p;
    p.K = cfg.get_double(section, "K", p.K);
    p.T = cfg.get_double(section, "T", p.T);
    p.L = cfg.get_double(section, "L", p.L);
    plants.emplace_back(name, p);
  }
  std::vector<Algorithm> algorithms = m.algorithms;
  if (algorithms.empty() && m.algorithm) algorithms = {*m.algorithm};
  if (algorithms.empty()) {
    for (const auto& w : cfg.get_words("sweep", "algorithms", {"KM", "EIASC", "WM", "BMM", "NT"})) {
      try {
        algorithms.push_back(parse_algorithm(w));
      } catch (const ParameterError& e) {
        throw ConfigError(cfg.source() + ": [sweep] " + e.what());
      }
    }
  }

  const FuzzySystem fls = make_it2fpid_system(d);
  struct Run {
    std::size_t plant;
    Algorithm algorithm;
    SimTrace trace;
    PerfReport perf;
  };
  std::vector<Run> runs;
  for (std::size_t p = 0; p < plants.size(); ++p) {
    for (Algorithm a : algorithms) runs.push_back({p, a, {}, {}});
  }
  parallel_for(runs.size(), [&](std::size_t i) {
    Run& r = runs[i];
    r.trace = simulate_closed_loop(plants[r.plant].second, sf, fls, ControllerOptions{method, r.algorithm}, dt, t_end,
                                   setpoint);
    r.perf = performance(r.trace, setpoint, band);
  });

  prepare_out_dir(m.out_dir);
  RunReport report;
  for (const Run& r : runs) {
    const std::string tag = plants[r.plant].first + "_" + std::string(algorithm_name(r.algorithm));
    auto out = open_artifact(report, m.out_dir / ("trace_" + tag + ".csv"));
    r.trace.write_csv(out);
    if (!r.perf.settled) report.notes.push_back("warning: " + tag + " does not settle within t_end");
  }
  {
    auto out = open_artifact(report, m.out_dir / "table8.csv");
    csv::Writer w(out, {"system", "algorithm", "settling_time", "overshoot_pct", "itae"});
    for (const Run& r : runs) {
      w.row({plants[r.plant].first, std::string(algorithm_name(r.algorithm)), r.perf.settling_time, r.perf.overshoot,
             r.perf.itae});
      report.notes.push_back(plants[r.plant].first + " " + std::string(algorithm_name(r.algorithm)) + ": settling " +
                             fmt(r.perf.settling_time) + " s, overshoot " + fmt(r.perf.overshoot) + " %, ITAE " +
                             fmt(r.perf.itae));
    }
  }
  // Exact type reducers must give the same closed loop.
  for (const Run& a : runs) {
    for (const Run& b : runs) {
      if (a.plant != b.plant || &a == &b || !is_exact(a.algorithm) || !is_exact(b.algorithm)) continue;
      const auto& ya = a.trace.signal("y");
      const auto& yb = b.trace.signal("y");
      for (std::size_t k = 0; k < ya.size(); ++k) {
        if (std::abs(ya[k] - yb[k]) > 1e-6) {
          report.failures.push_back(plants[a.plant].first + ": " + std::string(algorithm_name(a.algorithm)) + " and " +
                                    std::string(algorithm_name(b.algorithm)) + " responses differ");
          break;
        }
      }
    }
  }
  if (m.plot) {
    for (std::size_t p = 0; p < plants.size(); ++p) {
      svg::Chart chart{"Closed-loop step response: " + plants[p].first, "t (s)", "y", {}};
      for (const Run& r : runs) {
        if (r.plant == p) chart.series.push_back({std::string(algorithm_name(r.algorithm)), r.trace.t(), r.trace.signal("y")});
      }
      write_chart(report, m.out_dir / ("step_" + plants[p].first + ".svg"), chart);
    }
  }
  return report;
}

RunReport run(const RunManifest& m) {
  if (m.subcommand == "simple") return cmd_simple(m);
  if (m.subcommand == "mackey-glass") return cmd_mackey_glass(m);
  if (m.subcommand == "it2fpid") return cmd_it2fpid(m);
  throw ConfigError("unknown subcommand '" + m.subcommand + "'");
}

}  // namespace it2fls
