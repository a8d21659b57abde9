#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "it2fls/inference.hpp"

namespace it2fls {

/// Time-stamped signals on a uniform step.
class SimTrace {
 public:
  SimTrace() = default;
  SimTrace(double dt, std::vector<double> t);

  double dt() const { return dt_; }
  const std::vector<double>& t() const { return t_; }
  std::size_t size() const { return t_.size(); }

  /// Appends a column; its length must match the time axis.
  void add(std::string name, std::vector<double> values);
  const std::vector<double>& signal(const std::string& name) const;
  const std::vector<std::pair<std::string, std::vector<double>>>& signals() const { return signals_; }

  /// Header `t,<columns in insertion order>`.
  void write_csv(std::ostream& out) const;

 private:
  double dt_ = 0.0;
  std::vector<double> t_;
  std::vector<std::pair<std::string, std::vector<double>>> signals_;
};

/// Fixed-capacity ring buffer of the most recent samples.
class DelayLine {
 public:
  /// Holds `lags + 1` samples, all initialised to `fill`.
  DelayLine(std::size_t lags, double fill = 0.0);

  void push(double v);
  /// Sample pushed `lag` steps ago; lag 0 is the most recent.
  double at(std::size_t lag) const;
  std::size_t lags() const { return buffer_.size() - 1; }

 private:
  std::vector<double> buffer_;
  std::size_t head_ = 0;
};

/// Number of whole steps of `dt` in `span`; throws ParameterError unless dt divides span within 1e-9.
std::size_t steps_in(double span, double dt, const char* what);

// ---------------------------------------------------------------------------
// Mackey-Glass: dx/dt = beta * x(t - tau) / (1 + x(t - tau)^n) - gamma * x

struct MackeyGlassParams {
  double beta = 2.0;
  double gamma = 1.0;
  double tau = 2.0;
  double n = 9.65;
  double dt = 0.1;
  /// Either one constant value or tau/dt + 1 samples on [-tau, 0]; the last sample is x(0).
  std::vector<double> history{0.5};
};

/// Fixed-step RK4. Half-step delayed values use cubic Hermite interpolation between buffered samples.
/// Trace columns: `x`.
SimTrace simulate_mackey_glass(const MackeyGlassParams& p, double t_end);

/// Every `stride`-th sample of a column, starting at index 0.
std::vector<double> subsample(std::span<const double> values, std::size_t stride);

// ---------------------------------------------------------------------------
// Series prediction with a three-lag interval type-2 system.

inline constexpr std::size_t kPredictorParams = 36;

/// Universe of discourse for predictor inputs and output.
Grid default_predictor_grid();

/// Decoded predictor parameters: per set (mean, std_center, std_spread) in
/// the order A1..A3, B1..B3, C1..C3, O1..O3. std_center is clamped to
/// [0.01, 1]; std_spread to [0.01, min(1, std_center)].
std::vector<double> decode_predictor_params(std::span<const double> raw);

/// Inputs A = s[t-2], B = s[t-1], C = s[t]; output O = s[t+1]; rules Ai & Bi & Ci -> Oi.
FuzzySystem make_predictor_system(std::span<const double> params, const Grid& grid = default_predictor_grid());

struct PredictionOptions {
  Method method = Method::Centroid;
  Algorithm algorithm = Algorithm::KM;
};

/// One-step predictions for targets series[t + 1], t in [begin, end). NaN marks samples no rule fired for.
std::vector<double> predict(const FuzzySystem& sys, std::span<const double> series, std::size_t begin, std::size_t end,
                            const PredictionOptions& options = {});

/// Mean squared one-step error over t in [begin, end). Requires begin >= 2 and end < series.size().
/// Samples with no firing rule contribute the squared error of the series mean.
double prediction_mse(const FuzzySystem& sys, std::span<const double> series, std::size_t begin, std::size_t end,
                      const PredictionOptions& options = {});

// ---------------------------------------------------------------------------
// First-order plus dead time plant: G(s) = K e^{-Ls} / (T s + 1)

struct PlantParams {
  double K = 1.0;
  double T = 1.0;
  double L = 0.2;
};

/// Zero-order-hold discretisation of the plant with the input delayed by L/dt samples.
class FopdtPlant {
 public:
  FopdtPlant(const PlantParams& p, double dt);

  double output() const { return y_; }
  /// Applies input `u` over one step and returns the new output.
  double step(double u);

 private:
  double gain_;
  double pole_;
  DelayLine input_;
  double y_ = 0.0;
};

/// Open-loop response to `u` (held at its last value past its end). Columns: `u`, `y`.
SimTrace simulate_fopdt_step(const PlantParams& p, std::span<const double> u, double dt, double t_end);

/// Continuous-time unit-step response K (1 - exp(-(t - L)/T)) for t >= L, else 0.
double fopdt_step_response(const PlantParams& p, double t);

// ---------------------------------------------------------------------------
// Interval type-2 fuzzy PID

struct ScalingFactors {
  double Ka = 0.25;
  double Kb = 4.25;
  double Ke = 0.8;
  double Kd = 0.5;
};

/// Consequent of the rule (de = P, e = Z). The printed table reads NM; PM restores antisymmetry.
enum class RulePZ { NM, PM };

/// Set layout of the controller's rule base on the universe [-1, 1].
struct FpidDesign {
  std::size_t grid_points = 100;
  std::array<double, 3> input_centers{-1.0, 0.0, 1.0};
  double input_std_center = 0.6;
  double input_std_spread = 0.3;
  std::array<double, 5> output_centers{-1.0, -0.5, 0.0, 0.5, 1.0};
  double output_std_center = 0.35;
  double output_std_spread = 0.35;
  RulePZ rule_pz = RulePZ::NM;
};

/// Two inputs `e`, `de` (sets N, Z, P) and one output `u` (NB, NM, Z, PM, PB), nine rules.
FuzzySystem make_it2fpid_system(const FpidDesign& design = {});

struct ControllerOptions {
  Method method = Method::Centroid;
  Algorithm algorithm = Algorithm::KM;
};

/// u = Ka * psi + Kb * integral(psi), psi the crisp fuzzy output for the
/// clamped scaled error Ke*e and derivative Kd*de/dt. The derivative is a
/// backward difference (zero on the first step) and the integral a forward
/// rectangle. If no rule fires, psi holds its previous value.
class It2Fpid {
 public:
  It2Fpid(ScalingFactors sf, const FuzzySystem& fls, double dt, ControllerOptions options = {});

  double step(double error);
  double psi() const { return psi_; }

 private:
  ScalingFactors sf_;
  const FuzzySystem& fls_;
  double dt_;
  EvalRequest request_;
  bool first_ = true;
  double previous_error_ = 0.0;
  double integral_ = 0.0;
  double psi_ = 0.0;
};

/// Unity-feedback step response. Columns: `r`, `e`, `u`, `y`.
SimTrace simulate_closed_loop(const PlantParams& p, const ScalingFactors& sf, const FuzzySystem& fls,
                              Algorithm algorithm, double dt, double t_end, double setpoint = 1.0);
SimTrace simulate_closed_loop(const PlantParams& p, const ScalingFactors& sf, const FuzzySystem& fls,
                              const ControllerOptions& options, double dt, double t_end, double setpoint = 1.0);

struct PerfReport {
  double settling_time = 0.0;
  double overshoot = 0.0;  ///< percent
  double itae = 0.0;
  bool settled = true;
};

/// Overshoot relative to the setpoint, settling into +/- band*|setpoint|, and sum of t*|e|*dt.
PerfReport performance(const SimTrace& trace, double setpoint, double band = 0.02);

}  // namespace it2fls
