#include "it2fls/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "it2fls/csv.hpp"
#include "it2fls/error.hpp"

namespace it2fls {

namespace {

void require_finite_positive(double v, const char* what) {
  if (!std::isfinite(v) || !(v > 0.0)) throw ParameterError(std::string(what) + " must be finite and positive");
}

std::vector<double> time_axis(std::size_t steps, double dt) {
  std::vector<double> t(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) t[k] = static_cast<double>(k) * dt;
  return t;
}

}  // namespace

SimTrace::SimTrace(double dt, std::vector<double> t) : dt_(dt), t_(std::move(t)) {}

void SimTrace::add(std::string name, std::vector<double> values) {
  if (values.size() != t_.size()) throw ParameterError("column '" + name + "' does not match the time axis length");
  for (const auto& [n, v] : signals_) {
    if (n == name) throw ParameterError("duplicate column '" + name + "'");
  }
  signals_.emplace_back(std::move(name), std::move(values));
}

const std::vector<double>& SimTrace::signal(const std::string& name) const {
  for (const auto& [n, v] : signals_) {
    if (n == name) return v;
  }
  throw std::out_of_range("trace has no column '" + name + "'");
}

void SimTrace::write_csv(std::ostream& out) const {
  std::vector<std::string> header{"t"};
  for (const auto& s : signals_) header.push_back(s.first);
  csv::Writer w(out, header);
  std::vector<csv::Cell> cells(header.size());
  for (std::size_t k = 0; k < t_.size(); ++k) {
    cells[0] = t_[k];
    for (std::size_t c = 0; c < signals_.size(); ++c) cells[c + 1] = signals_[c].second[k];
    w.row(cells);
  }
}

DelayLine::DelayLine(std::size_t lags, double fill) : buffer_(lags + 1, fill) {}

void DelayLine::push(double v) {
  head_ = (head_ + 1) % buffer_.size();
  buffer_[head_] = v;
}

double DelayLine::at(std::size_t lag) const {
  if (lag >= buffer_.size()) throw std::out_of_range("delay line lag out of range");
  return buffer_[(head_ + buffer_.size() - lag) % buffer_.size()];
}

std::size_t steps_in(double span, double dt, const char* what) {
  require_finite_positive(dt, "dt");
  if (!std::isfinite(span) || span < 0.0) throw ParameterError(std::string(what) + " must be finite and non-negative");
  const double q = std::round(span / dt);
  if (std::abs(q * dt - span) > 1e-9) throw ParameterError(std::string(what) + " is not a whole number of steps of dt");
  return static_cast<std::size_t>(q);
}

// ---------------------------------------------------------------------------

SimTrace simulate_mackey_glass(const MackeyGlassParams& p, double t_end) {
  require_finite_positive(p.beta, "beta");
  require_finite_positive(p.gamma, "gamma");
  require_finite_positive(p.tau, "tau");
  require_finite_positive(p.n, "n");
  require_finite_positive(t_end, "t_end");
  const std::size_t m = steps_in(p.tau, p.dt, "tau");
  const std::size_t steps = steps_in(t_end, p.dt, "t_end");
  if (p.history.size() != 1 && p.history.size() != m + 1) {
    throw ParameterError("history needs 1 or tau/dt + 1 samples");
  }
  for (double h : p.history) {
    if (!std::isfinite(h)) throw ParameterError("history must be finite");
  }

  auto f = [&](double x, double xd) { return p.beta * xd / (1.0 + std::pow(std::abs(xd), p.n)) - p.gamma * x; };
  const double dt = p.dt;

  // Delayed state and its derivative; history slopes come from finite
  // differences. x(0) has distinct one-sided slopes.
  DelayLine past(m, p.history.front());
  DelayLine slope(m, 0.0);
  for (std::size_t i = 1; i < p.history.size(); ++i) {
    past.push(p.history[i]);
    slope.push((p.history[i] - p.history[i - 1]) / dt);
  }
  const double slope0_right = f(past.at(0), past.at(m));

  std::vector<double> xs(steps + 1);
  double x = past.at(0);
  xs[0] = x;
  for (std::size_t k = 0; k < steps; ++k) {
    const double d0 = past.at(m);
    const double d1 = past.at(m - 1);
    const double s0 = k == m ? slope0_right : slope.at(m);
    const double dh = 0.5 * (d0 + d1) + dt / 8.0 * (s0 - slope.at(m - 1));
    const double k1 = f(x, d0);
    const double k2 = f(x + 0.5 * dt * k1, dh);
    const double k3 = f(x + 0.5 * dt * k2, dh);
    const double k4 = f(x + dt * k3, d1);
    x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    past.push(x);
    slope.push(f(x, d1));
    xs[k + 1] = x;
  }
  SimTrace trace(dt, time_axis(steps, dt));
  trace.add("x", std::move(xs));
  return trace;
}

std::vector<double> subsample(std::span<const double> values, std::size_t stride) {
  if (stride == 0) throw ParameterError("stride must be positive");
  std::vector<double> out;
  for (std::size_t i = 0; i < values.size(); i += stride) out.push_back(values[i]);
  return out;
}

// ---------------------------------------------------------------------------

Grid default_predictor_grid() { return Grid::uniform(0.0, 2.0, 100); }

std::vector<double> decode_predictor_params(std::span<const double> raw) {
  if (raw.size() != kPredictorParams) {
    throw ParameterError("predictor needs " + std::to_string(kPredictorParams) + " parameters, got " +
                         std::to_string(raw.size()));
  }
  std::vector<double> out(raw.begin(), raw.end());
  for (std::size_t s = 0; s < kPredictorParams; s += 3) {
    if (!std::isfinite(out[s]) || !std::isfinite(out[s + 1]) || !std::isfinite(out[s + 2])) {
      throw ParameterError("predictor parameters must be finite");
    }
    out[s + 1] = std::clamp(out[s + 1], 0.01, 1.0);
    out[s + 2] = std::clamp(out[s + 2], 0.01, out[s + 1]);
  }
  return out;
}

FuzzySystem make_predictor_system(std::span<const double> params, const Grid& grid) {
  const std::vector<double> p = decode_predictor_params(params);
  auto set = [&](std::size_t index) {
    return gaussian_uncert_std_set(grid, std::span<const double>(p).subspan(3 * index, 3));
  };
  FuzzySystem sys(grid);
  sys.add_input("A").add_input("B").add_input("C").add_output("O");
  for (std::size_t i = 0; i < 3; ++i) {
    sys.add_rule({{"A", set(i)}, {"B", set(3 + i)}, {"C", set(6 + i)}}, {{"O", set(9 + i)}});
  }
  return sys;
}

namespace {

void check_window(std::span<const double> series, std::size_t begin, std::size_t end) {
  if (begin < 2 || end <= begin || end >= series.size()) {
    throw ParameterError("prediction window needs 2 <= begin < end < series length");
  }
}

}  // namespace

std::vector<double> predict(const FuzzySystem& sys, std::span<const double> series, std::size_t begin, std::size_t end,
                            const PredictionOptions& options) {
  check_window(series, begin, end);
  EvalRequest req;
  req.method = options.method;
  req.algorithm = options.algorithm;
  std::vector<double> out;
  out.reserve(end - begin);
  for (std::size_t t = begin; t < end; ++t) {
    req.values = {{"A", series[t - 2]}, {"B", series[t - 1]}, {"C", series[t]}};
    try {
      out.push_back(sys.evaluate(req).crisp("O"));
    } catch (const NoRuleFired&) {
      out.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }
  return out;
}

double prediction_mse(const FuzzySystem& sys, std::span<const double> series, std::size_t begin, std::size_t end,
                      const PredictionOptions& options) {
  const std::vector<double> yhat = predict(sys, series, begin, end, options);
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(series.size());
  double sum = 0.0;
  for (std::size_t t = begin; t < end; ++t) {
    const double target = series[t + 1];
    const double guess = std::isnan(yhat[t - begin]) ? mean : yhat[t - begin];
    sum += (guess - target) * (guess - target);
  }
  return sum / static_cast<double>(end - begin);
}

// ---------------------------------------------------------------------------

namespace {

void validate_plant(const PlantParams& p) {
  if (!std::isfinite(p.K)) throw ParameterError("plant gain must be finite");
  require_finite_positive(p.T, "plant time constant");
  if (!std::isfinite(p.L) || p.L < 0.0) throw ParameterError("plant dead time must be non-negative");
}

}  // namespace

FopdtPlant::FopdtPlant(const PlantParams& p, double dt)
    : gain_(p.K), pole_((validate_plant(p), std::exp(-dt / p.T))), input_(steps_in(p.L, dt, "dead time")) {}

double FopdtPlant::step(double u) {
  input_.push(u);
  y_ = pole_ * y_ + (1.0 - pole_) * gain_ * input_.at(input_.lags());
  return y_;
}

SimTrace simulate_fopdt_step(const PlantParams& p, std::span<const double> u, double dt, double t_end) {
  if (u.empty()) throw ParameterError("input signal is empty");
  const std::size_t steps = steps_in(t_end, dt, "t_end");
  FopdtPlant plant(p, dt);
  std::vector<double> us(steps + 1), ys(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    us[k] = u[std::min(k, u.size() - 1)];
    ys[k] = plant.output();
    plant.step(us[k]);
  }
  SimTrace trace(dt, time_axis(steps, dt));
  trace.add("u", std::move(us));
  trace.add("y", std::move(ys));
  return trace;
}

double fopdt_step_response(const PlantParams& p, double t) {
  validate_plant(p);
  return t < p.L ? 0.0 : p.K * (1.0 - std::exp(-(t - p.L) / p.T));
}

// ---------------------------------------------------------------------------

FuzzySystem make_it2fpid_system(const FpidDesign& d) {
  const Grid grid = Grid::uniform(-1.0, 1.0, d.grid_points);
  auto input_set = [&](std::size_t i) {
    const double p[] = {d.input_centers[i], d.input_std_center, d.input_std_spread};
    return gaussian_uncert_std_set(grid, p);
  };
  auto output_set = [&](std::size_t i) {
    const double p[] = {d.output_centers[i], d.output_std_center, d.output_std_spread};
    return gaussian_uncert_std_set(grid, p);
  };
  enum { NB, NM, Z, PM, PB };
  const std::size_t pz = d.rule_pz == RulePZ::NM ? NM : PM;
  // rows: de = N, Z, P; columns: e = N, Z, P
  const std::size_t table[3][3] = {{NB, NM, Z}, {NM, Z, PM}, {Z, pz, PB}};

  FuzzySystem sys(grid);
  sys.add_input("e").add_input("de").add_output("u");
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      sys.add_rule({{"e", input_set(c)}, {"de", input_set(r)}}, {{"u", output_set(table[r][c])}});
    }
  }
  return sys;
}

It2Fpid::It2Fpid(ScalingFactors sf, const FuzzySystem& fls, double dt, ControllerOptions options)
    : sf_(sf), fls_(fls), dt_(dt) {
  require_finite_positive(dt, "dt");
  for (double k : {sf.Ka, sf.Kb, sf.Ke, sf.Kd}) {
    if (!std::isfinite(k)) throw ParameterError("scaling factors must be finite");
  }
  request_.method = options.method;
  request_.algorithm = options.algorithm;
}

double It2Fpid::step(double error) {
  const double de = first_ ? 0.0 : (error - previous_error_) / dt_;
  first_ = false;
  previous_error_ = error;
  const double lo = fls_.grid().lo();
  const double hi = fls_.grid().hi();
  request_.values = {{"e", std::clamp(sf_.Ke * error, lo, hi)}, {"de", std::clamp(sf_.Kd * de, lo, hi)}};
  request_.fallback = psi_;
  psi_ = fls_.evaluate(request_).crisp("u");
  const double u = sf_.Ka * psi_ + sf_.Kb * integral_;
  integral_ += psi_ * dt_;
  return u;
}

SimTrace simulate_closed_loop(const PlantParams& p, const ScalingFactors& sf, const FuzzySystem& fls,
                              Algorithm algorithm, double dt, double t_end, double setpoint) {
  return simulate_closed_loop(p, sf, fls, ControllerOptions{Method::Centroid, algorithm}, dt, t_end, setpoint);
}

SimTrace simulate_closed_loop(const PlantParams& p, const ScalingFactors& sf, const FuzzySystem& fls,
                              const ControllerOptions& options, double dt, double t_end, double setpoint) {
  if (!std::isfinite(setpoint)) throw ParameterError("setpoint must be finite");
  const std::size_t steps = steps_in(t_end, dt, "t_end");
  FopdtPlant plant(p, dt);
  It2Fpid controller(sf, fls, dt, options);
  std::vector<double> r(steps + 1, setpoint), e(steps + 1), u(steps + 1), y(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    y[k] = plant.output();
    e[k] = setpoint - y[k];
    u[k] = controller.step(e[k]);
    if (!std::isfinite(u[k])) throw AlgorithmFailure("controller output is not finite");
    plant.step(u[k]);
  }
  SimTrace trace(dt, time_axis(steps, dt));
  trace.add("r", std::move(r));
  trace.add("e", std::move(e));
  trace.add("u", std::move(u));
  trace.add("y", std::move(y));
  return trace;
}

PerfReport performance(const SimTrace& trace, double setpoint, double band) {
  if (!(band >= 0.0) || !std::isfinite(setpoint)) throw ParameterError("invalid performance band or setpoint");
  const auto& t = trace.t();
  const auto& y = trace.signal("y");
  PerfReport rep;
  if (t.empty()) return rep;

  if (setpoint != 0.0) {
    double peak = setpoint > 0.0 ? *std::max_element(y.begin(), y.end()) : *std::min_element(y.begin(), y.end());
    rep.overshoot = std::max(0.0, 100.0 * (peak - setpoint) / setpoint);
  }
  const double tol = band * std::abs(setpoint);
  std::size_t last_out = t.size();
  for (std::size_t k = t.size(); k-- > 0;) {
    if (std::abs(y[k] - setpoint) > tol) {
      last_out = k;
      break;
    }
  }
  if (last_out == t.size()) {
    rep.settling_time = 0.0;
  } else if (last_out + 1 < t.size()) {
    rep.settling_time = t[last_out + 1];
  } else {
    rep.settling_time = t.back();
    rep.settled = false;
  }
  for (std::size_t k = 0; k < t.size(); ++k) rep.itae += t[k] * std::abs(setpoint - y[k]) * trace.dt();
  return rep;
}

}  // namespace it2fls
