#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "it2fls/it2fs.hpp"

namespace it2fls {

/// Type-reduced output [y_l, y_r] of one output variable.
struct TRInterval {
  double y_l = 0.0;
  double y_r = 0.0;

  friend bool operator==(const TRInterval&, const TRInterval&) = default;
};

/// Midpoint of the type-reduced interval.
double crisp(const TRInterval& t);

/// Abscissae with interval weights [w_lower, w_upper].
///
/// Points are stored in ascending order of x; unsorted input is sorted
/// together with its weights. Duplicate abscissae are allowed (center-of-sets
/// reduction produces them).
class WeightedDomain {
 public:
  WeightedDomain(std::vector<double> x, std::vector<double> w_lower, std::vector<double> w_upper);

  /// The sampled envelopes of a set over its own grid.
  static WeightedDomain from_set(const IT2FS& set);

  std::span<const double> x() const { return x_; }
  std::span<const double> lower() const { return lower_; }
  std::span<const double> upper() const { return upper_; }
  std::size_t size() const { return x_.size(); }

 private:
  std::vector<double> x_;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

struct BMMWeights {
  double m = 0.5;
  double n = 0.5;
};

/// Iteration counts reported by the KM-family routines.
struct IterationStats {
  int left = 0;
  int right = 0;
};

/// Exhaustive reference: extremes of the switched centroid over every switch index.
TRInterval centroid_exact(const WeightedDomain& d);

// Karnik-Mendel family. Each returns the exact centroid interval and differs
// only in how the switch points are searched for.
TRInterval km(const WeightedDomain& d, IterationStats* stats = nullptr);
TRInterval ekm(const WeightedDomain& d, IterationStats* stats = nullptr);

/// EKM whose starting switch points come from the centroid of the mid
/// weights under the quadrature `quadrature` (one entry per point). An empty
/// span selects trapezoidal quadrature.
TRInterval wekm(const WeightedDomain& d, std::span<const double> quadrature = {}, IterationStats* stats = nullptr);
TRInterval twekm(const WeightedDomain& d, IterationStats* stats = nullptr);
TRInterval eiasc(const WeightedDomain& d, IterationStats* stats = nullptr);

/// Trapezoidal quadrature weights: 0.5 at both ends, 1 elsewhere.
std::vector<double> trapezoidal_weights(std::size_t n);

/// Wu-Mendel uncertainty bounds: outer_left <= y_l <= inner_left and inner_right <= y_r <= outer_right.
struct WMBounds {
  double outer_left = 0.0;
  double inner_left = 0.0;
  double inner_right = 0.0;
  double outer_right = 0.0;
};

WMBounds wm_bounds(const WeightedDomain& d);

/// Midpoints of the left and right uncertainty bounds.
TRInterval wm(const WeightedDomain& d);

/// m * c(lower) + n * c(upper) as a degenerate interval. When the lower
/// weights are all zero, c(lower) falls back to c(upper).
TRInterval bmm(const WeightedDomain& d, BMMWeights w = {});
TRInterval lbmm(const WeightedDomain& d, BMMWeights w = {});

/// Centroid of the averaged envelope, as a degenerate interval.
TRInterval nt(const WeightedDomain& d);

enum class Algorithm { KM, EKM, WEKM, TWEKM, EIASC, WM, BMM, LBMM, NT };

struct AlgorithmParams {
  BMMWeights bmm;
  BMMWeights lbmm;
  std::vector<double> wekm_quadrature;
};

/// Accepts the exact names "KM", "EKM", "WEKM", "TWEKM", "EIASC", "WM", "BMM", "LBMM", "NT".
Algorithm parse_algorithm(std::string_view name);
std::string_view algorithm_name(Algorithm a);

/// True for the algorithms that return the exact centroid interval.
bool is_exact(Algorithm a);

TRInterval reduce(Algorithm algorithm, const WeightedDomain& d, const AlgorithmParams& params = {});

}  // namespace it2fls
