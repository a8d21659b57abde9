#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "it2fls/it2fs.hpp"
#include "it2fls/typereduce.hpp"

namespace it2fls::test_support {

/// Random interval set on `grid`: uncertain-std Gaussian, uncertain-mean
/// Gaussian, or a triangle with a shrunken lower triangle. Envelopes are
/// optionally clipped at random firing levels, the way inference produces them.
inline IT2FS random_set(const Grid& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double lo = grid.lo(), span = grid.hi() - grid.lo();
  const int shape = static_cast<int>(rng() % 3);
  std::vector<double> upper, lower;
  if (shape == 0) {
    const double mean = lo + span * unit(rng);
    const double sd = span * (0.03 + 0.3 * unit(rng));
    const double spread = sd * unit(rng);
    const std::vector<double> p{mean, sd, spread, 1.0};
    upper = gauss_uncert_std_umf(grid.points(), p);
    lower = gauss_uncert_std_lmf(grid.points(), p);
  } else if (shape == 1) {
    const double center = lo + span * unit(rng);
    const double spread = span * 0.3 * unit(rng);
    const double sd = span * (0.03 + 0.2 * unit(rng));
    const std::vector<double> p{center - spread / 2, center + spread / 2, sd, 1.0};
    upper = gauss_uncert_mean_umf(grid.points(), p);
    lower = gauss_uncert_mean_lmf(grid.points(), p);
  } else {
    double a = lo + span * unit(rng), b = lo + span * unit(rng);
    if (a > b) std::swap(a, b);
    const double width = std::max(b - a, span * 0.05);
    const double left = a - 0.1 * width, right = a + width;
    const double peak = left + (right - left) * (0.2 + 0.6 * unit(rng));
    const double shrink = 0.2 + 0.5 * unit(rng);
    upper = tri_mf(grid.points(), std::vector<double>{left, peak, right, 1.0});
    const double ll = peak - (peak - left) * shrink, lr = peak + (right - peak) * shrink;
    lower = tri_mf(grid.points(), std::vector<double>{ll, peak, lr, 0.3 + 0.7 * unit(rng)});
  }
  if (unit(rng) < 0.5) {
    const double fu = 0.2 + 0.8 * unit(rng);
    const double fl = fu * unit(rng);
    for (auto& v : upper) v = std::min(v, fu);
    for (auto& v : lower) v = std::min(v, fl);
  }
  for (std::size_t i = 0; i < upper.size(); ++i) lower[i] = std::min(lower[i], upper[i]);
  return IT2FS(grid, std::move(upper), std::move(lower));
}

/// Random weighted domain with N in [11, 501] built from one or two random sets.
inline WeightedDomain random_domain(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> size(11, 501);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double lo = -2.0 + 4.0 * unit(rng);
  const Grid grid = Grid::uniform(lo, lo + 0.5 + 3.0 * unit(rng), size(rng));
  for (;;) {
    IT2FS set = random_set(grid, rng);
    if (unit(rng) < 0.4) set = join(set, random_set(grid, rng), Norm::max_s());
    const auto up = set.upper();
    if (std::any_of(up.begin(), up.end(), [](double v) { return v > 1e-6; })) return WeightedDomain::from_set(set);
  }
}

}  // namespace it2fls::test_support
