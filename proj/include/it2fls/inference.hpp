#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "it2fls/it2fs.hpp"
#include "it2fls/typereduce.hpp"

namespace it2fls {

using Clause = std::pair<std::string, IT2FS>;

/// IF x1 is A1 AND ... THEN y1 is B1, ...
struct Rule {
  std::vector<Clause> antecedent;
  std::vector<Clause> consequent;
};

enum class Method { Centroid, CoSet, CoSum, Height, ModiHe };

/// Accepts "Centroid", "CoSet", "CoSum", "Height", "ModiHe".
Method parse_method(std::string_view name);
std::string_view method_name(Method m);

struct EvalRequest {
  std::map<std::string, double> values;
  Norm t_norm = Norm::min_t();
  Norm s_norm = Norm::max_s();
  Method method = Method::Centroid;
  Algorithm algorithm = Algorithm::KM;
  AlgorithmParams algorithm_params;
  /// Crisp value reported for an output no rule fired for. Without it, evaluate throws NoRuleFired.
  std::optional<double> fallback;
};

struct EvalResult {
  std::map<std::string, TRInterval> intervals;
  /// Aggregated output sets; present for the Centroid and CoSum methods.
  std::map<std::string, IT2FS> aggregated;

  double crisp(const std::string& output) const;
};

/// Firing interval of a rule for crisp inputs: the t-norm fold of the
/// antecedent memberships, lower and upper envelopes separately.
Interval firing_interval(const Rule& rule, const std::map<std::string, double>& values, const Norm& t_norm);

/// An interval type-2 rule base over a single universe of discourse.
///
/// Built single-threaded through the add_* calls; evaluate() is const and
/// may be called concurrently on a shared instance.
class FuzzySystem {
 public:
  explicit FuzzySystem(Grid grid);

  FuzzySystem& add_input(std::string name);
  FuzzySystem& add_output(std::string name);
  FuzzySystem& add_rule(std::vector<Clause> antecedent, std::vector<Clause> consequent);

  const Grid& grid() const { return grid_; }
  const std::vector<std::string>& inputs() const { return inputs_; }
  const std::vector<std::string>& outputs() const { return outputs_; }
  const std::vector<Rule>& rules() const { return rules_; }

  EvalResult evaluate(const EvalRequest& request) const;

 private:
  bool has_input(const std::string& name) const;
  bool has_output(const std::string& name) const;

  Grid grid_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::vector<Rule> rules_;
};

FuzzySystem copy_system(const FuzzySystem& system);

/// Abscissa of the maximum upper membership; the midpoint when the maximum spans several samples.
double peak_abscissa(const IT2FS& set);

/// Variance of the upper envelope treated as a density over the grid.
double upper_spread(const IT2FS& set);

}  // namespace it2fls
