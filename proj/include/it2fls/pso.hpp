#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace it2fls {

struct PSOConfig {
  std::size_t swarm_size = 30;
  std::size_t iterations = 200;
  double w = 0.729;
  double c1 = 1.49445;
  double c2 = 1.49445;
  /// Search box, one (lo, hi) pair per dimension.
  std::vector<std::pair<double, double>> bounds;
  std::uint64_t seed = 0;
  /// Worker threads for fitness evaluation; 0 means hardware concurrency. Results do not depend on it.
  unsigned threads = 1;
};

struct PSOResult {
  std::vector<double> best_position;
  double best_value = 0.0;
  /// Entry 0 is the best value after initialisation, entry i the best after iteration i.
  std::vector<double> convergence;
};

/// Must be safe to call concurrently. Non-finite values never become a personal or global best.
using Objective = std::function<double(std::span<const double>)>;

/// Synchronous global-best particle swarm minimisation.
PSOResult optimize(const Objective& objective, const PSOConfig& config);

/// Header `iteration,best_mse`.
void write_convergence_csv(std::ostream& out, const PSOResult& result);

}  // namespace it2fls
