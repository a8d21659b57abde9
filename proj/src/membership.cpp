#include "it2fls/membership.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "it2fls/error.hpp"

namespace it2fls {
namespace {

constexpr double kSingletonTolerance = 1e-9;

void require_count(Params params, std::size_t min_count, std::size_t max_count, const char* fn) {
  if (params.size() < min_count || params.size() > max_count) {
    throw ParameterError(std::string(fn) + ": expected " + std::to_string(min_count) + " to " +
                         std::to_string(max_count) + " parameters, got " + std::to_string(params.size()));
  }
  for (double p : params) {
    if (!std::isfinite(p)) throw ParameterError(std::string(fn) + ": non-finite parameter");
  }
}

double height_at(Params params, std::size_t index, const char* fn) {
  double h = index < params.size() ? params[index] : 1.0;
  if (h < 0.0 || h > 1.0) throw ParameterError(std::string(fn) + ": height must lie in [0, 1]");
  return h;
}

double gauss(double x, double mean, double sd) {
  double z = (x - mean) / sd;
  return std::exp(-0.5 * z * z);
}

template <class F>
Samples map_points(std::span<const double> x, F&& f) {
  Samples out(x.size());
  std::transform(x.begin(), x.end(), out.begin(), std::forward<F>(f));
  return out;
}

// Ramp from 0 at `from` to 1 at `to`; a zero-width ramp is a step.
double ramp(double x, double from, double to) {
  if (from == to) return x >= to ? 1.0 : 0.0;
  return (x - from) / (to - from);
}

}  // namespace

Samples zero_mf(std::span<const double> x, Params) { return Samples(x.size(), 0.0); }

Samples singleton_mf(std::span<const double> x, Params params) {
  require_count(params, 1, 2, "singleton_mf");
  const double center = params[0];
  const double h = height_at(params, 1, "singleton_mf");
  auto hit = std::find_if(x.begin(), x.end(),
                          [&](double xi) { return std::abs(xi - center) <= kSingletonTolerance; });
  if (hit == x.end()) throw ParameterError("singleton_mf: center does not lie on the grid");
  Samples out(x.size(), 0.0);
  out[static_cast<std::size_t>(hit - x.begin())] = h;
  return out;
}

Samples const_mf(std::span<const double> x, Params params) {
  require_count(params, 1, 1, "const_mf");
  const double h = height_at(params, 0, "const_mf");
  return Samples(x.size(), h);
}

Samples tri_mf(std::span<const double> x, Params params) {
  require_count(params, 3, 4, "tri_mf");
  const double l = params[0], p = params[1], r = params[2];
  if (!(l <= p && p <= r)) throw ParameterError("tri_mf: require left <= peak <= right");
  const double h = height_at(params, 3, "tri_mf");
  return map_points(x, [=](double xi) {
    if (xi == p) return h;
    if (xi <= l || xi >= r) return 0.0;
    return xi < p ? h * ramp(xi, l, p) : h * ramp(-xi, -r, -p);
  });
}

Samples trapezoid_mf(std::span<const double> x, Params params) {
  require_count(params, 4, 5, "trapezoid_mf");
  const double l = params[0], lt = params[1], rt = params[2], r = params[3];
  if (!(l <= lt && lt <= rt && rt <= r)) {
    throw ParameterError("trapezoid_mf: require left <= left_top <= right_top <= right");
  }
  const double h = height_at(params, 4, "trapezoid_mf");
  return map_points(x, [=](double xi) {
    if (xi >= lt && xi <= rt) return h;
    if (xi <= l || xi >= r) return 0.0;
    return xi < lt ? h * ramp(xi, l, lt) : h * ramp(-xi, -r, -rt);
  });
}

Samples gaussian_mf(std::span<const double> x, Params params) {
  require_count(params, 2, 3, "gaussian_mf");
  const double mean = params[0], sd = params[1];
  if (sd <= 0.0) throw ParameterError("gaussian_mf: std must be positive");
  const double h = height_at(params, 2, "gaussian_mf");
  return map_points(x, [=](double xi) { return h * gauss(xi, mean, sd); });
}

namespace {

struct UncertMean {
  double m1, m2, sd, h;
};

UncertMean uncert_mean(Params params, const char* fn) {
  require_count(params, 3, 4, fn);
  UncertMean u{params[0], params[1], params[2], height_at(params, 3, fn)};
  if (u.m1 > u.m2) throw ParameterError(std::string(fn) + ": require mean_1 <= mean_2");
  if (u.sd <= 0.0) throw ParameterError(std::string(fn) + ": std must be positive");
  return u;
}

struct UncertStd {
  double mean, lower_sd, upper_sd, h;
};

UncertStd uncert_std(Params params, const char* fn) {
  require_count(params, 3, 4, fn);
  const double center = params[1], spread = params[2];
  UncertStd u{params[0], center - 0.5 * spread, center + 0.5 * spread, height_at(params, 3, fn)};
  if (u.lower_sd <= 0.0 || u.upper_sd <= 0.0) {
    throw ParameterError(std::string(fn) + ": effective std must be positive");
  }
  return u;
}

}  // namespace

Samples gauss_uncert_mean_umf(std::span<const double> x, Params params) {
  const auto u = uncert_mean(params, "gauss_uncert_mean_umf");
  return map_points(x, [=](double xi) {
    if (xi < u.m1) return u.h * gauss(xi, u.m1, u.sd);
    if (xi > u.m2) return u.h * gauss(xi, u.m2, u.sd);
    return u.h;
  });
}

Samples gauss_uncert_mean_lmf(std::span<const double> x, Params params) {
  const auto u = uncert_mean(params, "gauss_uncert_mean_lmf");
  return map_points(x, [=](double xi) {
    return u.h * std::min(gauss(xi, u.m1, u.sd), gauss(xi, u.m2, u.sd));
  });
}

Samples gauss_uncert_std_umf(std::span<const double> x, Params params) {
  const auto u = uncert_std(params, "gauss_uncert_std_umf");
  return map_points(x, [=](double xi) { return u.h * gauss(xi, u.mean, u.upper_sd); });
}

Samples gauss_uncert_std_lmf(std::span<const double> x, Params params) {
  const auto u = uncert_std(params, "gauss_uncert_std_lmf");
  return map_points(x, [=](double xi) { return u.h * gauss(xi, u.mean, u.lower_sd); });
}

namespace {

constexpr std::array<std::pair<MFKind, std::string_view>, 10> kNames{{
    {MFKind::Zero, "zero_mf"},
    {MFKind::Singleton, "singleton_mf"},
    {MFKind::Const, "const_mf"},
    {MFKind::Triangular, "tri_mf"},
    {MFKind::Trapezoidal, "trapezoid_mf"},
    {MFKind::Gaussian, "gaussian_mf"},
    {MFKind::GaussUncertMeanUmf, "gauss_uncert_mean_umf"},
    {MFKind::GaussUncertMeanLmf, "gauss_uncert_mean_lmf"},
    {MFKind::GaussUncertStdUmf, "gauss_uncert_std_umf"},
    {MFKind::GaussUncertStdLmf, "gauss_uncert_std_lmf"},
}};

}  // namespace

Samples evaluate_mf(MFKind kind, std::span<const double> x, Params params) {
  switch (kind) {
    case MFKind::Zero: return zero_mf(x, params);
    case MFKind::Singleton: return singleton_mf(x, params);
    case MFKind::Const: return const_mf(x, params);
    case MFKind::Triangular: return tri_mf(x, params);
    case MFKind::Trapezoidal: return trapezoid_mf(x, params);
    case MFKind::Gaussian: return gaussian_mf(x, params);
    case MFKind::GaussUncertMeanUmf: return gauss_uncert_mean_umf(x, params);
    case MFKind::GaussUncertMeanLmf: return gauss_uncert_mean_lmf(x, params);
    case MFKind::GaussUncertStdUmf: return gauss_uncert_std_umf(x, params);
    case MFKind::GaussUncertStdLmf: return gauss_uncert_std_lmf(x, params);
  }
  throw ParameterError("unknown membership function kind");
}

MFKind parse_mf_kind(std::string_view name) {
  for (const auto& [kind, n] : kNames) {
    if (n == name) return kind;
  }
  throw ParameterError("unknown membership function '" + std::string(name) + "'");
}

std::string_view mf_name(MFKind kind) {
  for (const auto& [k, n] : kNames) {
    if (k == kind) return n;
  }
  return "?";
}

}  // namespace it2fls
