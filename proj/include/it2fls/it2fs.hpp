#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "it2fls/membership.hpp"

namespace it2fls {

/// Discretized universe of discourse: at least two strictly increasing points.
///
/// Grids are immutable; copies share storage. Two grids compare equal when
/// they share storage or hold identical points.
class Grid {
 public:
  explicit Grid(std::vector<double> points);

  /// `count` evenly spaced points from `lo` to `hi` inclusive.
  static Grid uniform(double lo, double hi, std::size_t count);

  std::span<const double> points() const { return *points_; }
  std::size_t size() const { return points_->size(); }
  double operator[](std::size_t i) const { return (*points_)[i]; }
  double lo() const { return points_->front(); }
  double hi() const { return points_->back(); }
  bool contains(double x) const { return x >= lo() && x <= hi(); }

  bool same_storage(const Grid& other) const { return points_ == other.points_; }
  friend bool operator==(const Grid& a, const Grid& b);

 private:
  std::shared_ptr<const std::vector<double>> points_;
};

/// Membership interval [lower, upper] at a single abscissa.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

/// Slack allowed when checking lower <= upper.
inline constexpr double kEnvelopeSlack = 1e-12;

/// Interval type-2 fuzzy set sampled on a grid.
///
/// Invariant: 0 <= lower[i] <= upper[i] <= 1 at every grid point (with
/// kEnvelopeSlack on the middle inequality). Construction throws
/// ConstraintError otherwise.
class IT2FS {
 public:
  IT2FS(Grid grid, std::vector<double> upper, std::vector<double> lower);

  const Grid& grid() const { return grid_; }
  std::span<const double> upper() const { return upper_; }
  std::span<const double> lower() const { return lower_; }
  std::size_t size() const { return upper_.size(); }

  /// Envelopes at `x` by linear interpolation between the bracketing samples.
  /// Throws ParameterError when `x` lies outside the grid span.
  Interval membership(double x) const;

  friend bool operator==(const IT2FS&, const IT2FS&) = default;

 private:
  Grid grid_;
  std::vector<double> upper_;
  std::vector<double> lower_;
};

/// Samples both envelopes on `grid`. Throws ConstraintError where LMF > UMF.
IT2FS make_it2fs(const Grid& grid, MFKind umf, Params umf_params, MFKind lmf, Params lmf_params);

/// Gaussian set with uncertain mean: params = [mean_center, mean_spread, std].
IT2FS gaussian_uncert_mean_set(const Grid& grid, Params params);

/// Gaussian set with uncertain std: params = [mean, std_center, std_spread].
IT2FS gaussian_uncert_std_set(const Grid& grid, Params params);

IT2FS copy_set(const IT2FS& set);

// Elementwise norms. Throw std::invalid_argument on length mismatch.
std::vector<double> min_t_norm(std::span<const double> a, std::span<const double> b);
std::vector<double> product_t_norm(std::span<const double> a, std::span<const double> b);
std::vector<double> max_s_norm(std::span<const double> a, std::span<const double> b);

enum class NormKind { TNorm, SNorm };

/// A named binary operator on membership grades, applied elementwise.
class Norm {
 public:
  using Fn = std::function<double(double, double)>;

  Norm(std::string name, NormKind kind, Fn fn);

  static const Norm& min_t();
  static const Norm& product_t();
  static const Norm& max_s();

  /// Looks up a shipped norm by name: "min", "product", "max".
  static const Norm& by_name(const std::string& name);

  const std::string& name() const { return name_; }
  NormKind kind() const { return kind_; }
  double operator()(double a, double b) const { return fn_(a, b); }
  std::vector<double> apply(std::span<const double> a, std::span<const double> b) const;

 private:
  std::string name_;
  NormKind kind_;
  Fn fn_;
};

/// Axiom violations found on the 21x21 lattice of {0, 0.05, ..., 1}.
/// Checks range, commutativity, monotonicity and the identity element.
std::vector<std::string> check_norm_axioms(const Norm& norm);

/// Builds a user norm and validates it; violations are reported on `warn` but do not reject the norm.
Norm register_norm(std::string name, NormKind kind, Norm::Fn fn, std::ostream& warn);

/// Pointwise intersection: both envelopes combined with a t-norm.
IT2FS meet(const IT2FS& a, const IT2FS& b, const Norm& t_norm);

/// Pointwise union: both envelopes combined with an s-norm.
IT2FS join(const IT2FS& a, const IT2FS& b, const Norm& s_norm);

/// Plot data for one set: rows of (x, lower, upper).
struct SetRecord {
  std::vector<double> x;
  std::vector<double> lower;
  std::vector<double> upper;
};

SetRecord export_set(const IT2FS& set);

/// Writes `x,lower,upper` with one row per grid point.
void write_set_csv(std::ostream& out, const SetRecord& record);

}  // namespace it2fls
