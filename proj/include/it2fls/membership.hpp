#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace it2fls {

/// Pointwise membership functions used as upper or lower envelopes.
///
/// Every function takes the sample abscissae and a parameter list whose
/// layout depends on the shape. A trailing height may be omitted, in which
/// case it defaults to 1:
///
///   zero_mf                 (ignored)
///   singleton_mf            [center, height]
///   const_mf                [height]
///   tri_mf                  [left, peak, right, height]
///   trapezoid_mf            [left, left_top, right_top, right, height]
///   gaussian_mf             [mean, std, height]
///   gauss_uncert_mean_*     [mean_1, mean_2, std, height]
///   gauss_uncert_std_*      [mean, std_center, std_spread, height]
///
/// The uncertain-std pair splits the spread symmetrically: the upper
/// envelope uses std_center + std_spread / 2 and the lower one
/// std_center - std_spread / 2.
///
/// Invalid parameters raise ParameterError.
enum class MFKind {
  Zero,
  Singleton,
  Const,
  Triangular,
  Trapezoidal,
  Gaussian,
  GaussUncertMeanUmf,
  GaussUncertMeanLmf,
  GaussUncertStdUmf,
  GaussUncertStdLmf,
};

using Samples = std::vector<double>;
using Params = std::span<const double>;

Samples zero_mf(std::span<const double> x, Params params = {});
Samples singleton_mf(std::span<const double> x, Params params);
Samples const_mf(std::span<const double> x, Params params);
Samples tri_mf(std::span<const double> x, Params params);
Samples trapezoid_mf(std::span<const double> x, Params params);
Samples gaussian_mf(std::span<const double> x, Params params);
Samples gauss_uncert_mean_umf(std::span<const double> x, Params params);
Samples gauss_uncert_mean_lmf(std::span<const double> x, Params params);
Samples gauss_uncert_std_umf(std::span<const double> x, Params params);
Samples gauss_uncert_std_lmf(std::span<const double> x, Params params);

Samples evaluate_mf(MFKind kind, std::span<const double> x, Params params);

/// Maps the toolkit names ("tri_mf", "gaussian_mf", ...) to kinds. Throws ParameterError on unknown names.
MFKind parse_mf_kind(std::string_view name);
std::string_view mf_name(MFKind kind);

}  // namespace it2fls
