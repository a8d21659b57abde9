#include "it2fls/pso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <thread>

#include "it2fls/csv.hpp"
#include "it2fls/error.hpp"

namespace it2fls {

namespace {

void validate(const PSOConfig& c) {
  if (c.swarm_size < 2) throw ParameterError("swarm size must be at least 2");
  if (c.bounds.empty()) throw ParameterError("search box has no dimensions");
  for (const auto& [lo, hi] : c.bounds) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) throw ParameterError("bounds need finite lo < hi");
  }
  for (double k : {c.w, c.c1, c.c2}) {
    if (!std::isfinite(k) || k < 0.0) throw ParameterError("PSO coefficients must be finite and non-negative");
  }
}

void evaluate_all(const Objective& f, const std::vector<std::vector<double>>& x, std::vector<double>& out,
                  unsigned threads) {
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double v = f(x[i]);
      out[i] = std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    }
  };
  const std::size_t n = x.size();
  const std::size_t workers = std::min<std::size_t>(threads, n);
  if (workers <= 1) {
    run(0, n);
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, n * w / workers, n * (w + 1) / workers);
}

}  // namespace

PSOResult optimize(const Objective& objective, const PSOConfig& config) {
  validate(config);
  const std::size_t dims = config.bounds.size();
  const std::size_t n = config.swarm_size;
  unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> vmax(dims);
  for (std::size_t d = 0; d < dims; ++d) vmax[d] = 0.2 * (config.bounds[d].second - config.bounds[d].first);

  std::vector<std::vector<double>> x(n, std::vector<double>(dims)), v = x;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < dims; ++d) {
      const auto [lo, hi] = config.bounds[d];
      x[i][d] = lo + (hi - lo) * unit(rng);
      v[i][d] = vmax[d] * (2.0 * unit(rng) - 1.0);
    }
  }
  std::vector<double> fx(n);
  evaluate_all(objective, x, fx, threads);

  std::vector<std::vector<double>> pbest = x;
  std::vector<double> pbest_value = fx;
  const auto first_best = std::min_element(fx.begin(), fx.end());
  if (!std::isfinite(*first_best)) throw AlgorithmFailure("objective is non-finite for every initial particle");
  PSOResult result;
  result.best_value = *first_best;
  result.best_position = x[static_cast<std::size_t>(first_best - fx.begin())];
  result.convergence.reserve(config.iterations + 1);
  result.convergence.push_back(result.best_value);

  for (std::size_t it = 0; it < config.iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t d = 0; d < dims; ++d) {
        const double r1 = unit(rng);
        const double r2 = unit(rng);
        double vel = config.w * v[i][d] + config.c1 * r1 * (pbest[i][d] - x[i][d]) +
                     config.c2 * r2 * (result.best_position[d] - x[i][d]);
        vel = std::clamp(vel, -vmax[d], vmax[d]);
        v[i][d] = vel;
        x[i][d] = std::clamp(x[i][d] + vel, config.bounds[d].first, config.bounds[d].second);
      }
    }
    evaluate_all(objective, x, fx, threads);
    for (std::size_t i = 0; i < n; ++i) {
      if (fx[i] < pbest_value[i]) {
        pbest_value[i] = fx[i];
        pbest[i] = x[i];
      }
    }
    // Global best is refreshed once per iteration, after all particles moved.
    for (std::size_t i = 0; i < n; ++i) {
      if (pbest_value[i] < result.best_value) {
        result.best_value = pbest_value[i];
        result.best_position = pbest[i];
      }
    }
    result.convergence.push_back(result.best_value);
  }
  return result;
}

void write_convergence_csv(std::ostream& out, const PSOResult& result) {
  csv::Writer w(out, {"iteration", "best_mse"});
  for (std::size_t i = 0; i < result.convergence.size(); ++i) {
    w.row({static_cast<std::int64_t>(i), result.convergence[i]});
  }
}

}  // namespace it2fls
