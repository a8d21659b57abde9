#include "it2fls/inference.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "it2fls/error.hpp"

namespace it2fls {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 5> kMethods{{
    {Method::Centroid, "Centroid"},
    {Method::CoSet, "CoSet"},
    {Method::CoSum, "CoSum"},
    {Method::Height, "Height"},
    {Method::ModiHe, "ModiHe"},
}};

}  // namespace

Method parse_method(std::string_view name) {
  for (const auto& [m, n] : kMethods) {
    if (n == name) return m;
  }
  throw ParameterError("unknown type-reduction method '" + std::string(name) + "'");
}

std::string_view method_name(Method m) {
  for (const auto& [k, n] : kMethods) {
    if (k == m) return n;
  }
  return "?";
}

double EvalResult::crisp(const std::string& output) const {
  auto it = intervals.find(output);
  if (it == intervals.end()) throw std::out_of_range("no result for output '" + output + "'");
  return it2fls::crisp(it->second);
}

Interval firing_interval(const Rule& rule, const std::map<std::string, double>& values, const Norm& t_norm) {
  if (rule.antecedent.empty()) throw ConfigError("rule has an empty antecedent");
  Interval f{};
  bool first = true;
  for (const auto& [name, set] : rule.antecedent) {
    auto it = values.find(name);
    if (it == values.end()) throw ParameterError("no value supplied for input '" + name + "'");
    const Interval mu = set.membership(it->second);
    if (first) {
      f = mu;
      first = false;
    } else {
      f = {t_norm(f.lower, mu.lower), t_norm(f.upper, mu.upper)};
    }
  }
  return f;
}

FuzzySystem::FuzzySystem(Grid grid) : grid_(std::move(grid)) {}

bool FuzzySystem::has_input(const std::string& name) const {
  return std::find(inputs_.begin(), inputs_.end(), name) != inputs_.end();
}

bool FuzzySystem::has_output(const std::string& name) const {
  return std::find(outputs_.begin(), outputs_.end(), name) != outputs_.end();
}

FuzzySystem& FuzzySystem::add_input(std::string name) {
  if (name.empty()) throw ConfigError("variable name must not be empty");
  if (has_input(name)) throw ConfigError("input '" + name + "' is already registered");
  inputs_.push_back(std::move(name));
  return *this;
}

FuzzySystem& FuzzySystem::add_output(std::string name) {
  if (name.empty()) throw ConfigError("variable name must not be empty");
  if (has_output(name)) throw ConfigError("output '" + name + "' is already registered");
  outputs_.push_back(std::move(name));
  return *this;
}

FuzzySystem& FuzzySystem::add_rule(std::vector<Clause> antecedent, std::vector<Clause> consequent) {
  if (antecedent.empty()) throw ConfigError("rule has an empty antecedent");
  if (consequent.empty()) throw ConfigError("rule has an empty consequent");
  for (const auto& [name, set] : antecedent) {
    if (!has_input(name)) throw ConfigError("rule references unknown input '" + name + "'");
    if (!(set.grid() == grid_)) throw GridMismatch("antecedent set for '" + name + "' is on a different grid");
  }
  for (const auto& [name, set] : consequent) {
    if (!has_output(name)) throw ConfigError("rule references unknown output '" + name + "'");
    if (!(set.grid() == grid_)) throw GridMismatch("consequent set for '" + name + "' is on a different grid");
  }
  rules_.push_back({std::move(antecedent), std::move(consequent)});
  return *this;
}

double peak_abscissa(const IT2FS& set) {
  const auto up = set.upper();
  const double top = *std::max_element(up.begin(), up.end());
  std::size_t first = up.size(), last = 0;
  for (std::size_t i = 0; i < up.size(); ++i) {
    if (up[i] >= top - kEnvelopeSlack) {
      first = std::min(first, i);
      last = i;
    }
  }
  return 0.5 * (set.grid()[first] + set.grid()[last]);
}

double upper_spread(const IT2FS& set) {
  const auto x = set.grid().points();
  const auto up = set.upper();
  double mass = 0.0, mean = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mass += up[i];
    mean += x[i] * up[i];
  }
  if (!(mass > 0.0)) throw UndefinedCentroid("spread of an all-zero set");
  mean /= mass;
  double var = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) var += up[i] * (x[i] - mean) * (x[i] - mean);
  return var / mass;
}

namespace {

struct Contribution {
  Interval firing;
  const IT2FS* set;
};

std::vector<double> scaled(const Norm& t_norm, double f, std::span<const double> envelope) {
  std::vector<double> out(envelope.size());
  std::transform(envelope.begin(), envelope.end(), out.begin(), [&](double m) { return t_norm(f, m); });
  return out;
}

}  // namespace

EvalResult FuzzySystem::evaluate(const EvalRequest& request) const {
  if (request.t_norm.kind() != NormKind::TNorm) throw ParameterError("evaluate: t_norm must be a t-norm");
  if (request.s_norm.kind() != NormKind::SNorm) throw ParameterError("evaluate: s_norm must be an s-norm");
  for (const auto& name : inputs_) {
    auto it = request.values.find(name);
    if (it == request.values.end()) throw ParameterError("no value supplied for input '" + name + "'");
    if (!grid_.contains(it->second)) {
      throw ParameterError("input '" + name + "' lies outside the universe of discourse");
    }
  }

  std::vector<Interval> firing;
  firing.reserve(rules_.size());
  for (const auto& rule : rules_) firing.push_back(firing_interval(rule, request.values, request.t_norm));

  EvalResult result;
  for (const auto& output : outputs_) {
    std::vector<Contribution> active;
    for (std::size_t r = 0; r < rules_.size(); ++r) {
      if (!(firing[r].upper > 0.0)) continue;
      for (const auto& [name, set] : rules_[r].consequent) {
        if (name == output) active.push_back({firing[r], &set});
      }
    }
    if (active.empty()) {
      if (!request.fallback) throw NoRuleFired(output);
      result.intervals[output] = {*request.fallback, *request.fallback};
      continue;
    }

    const auto reduce_with = [&](const WeightedDomain& d) {
      return reduce(request.algorithm, d, request.algorithm_params);
    };

    switch (request.method) {
      case Method::Centroid:
      case Method::CoSum: {
        const bool sum = request.method == Method::CoSum;
        std::vector<double> upper(grid_.size(), 0.0), lower(grid_.size(), 0.0);
        for (std::size_t i = 0; i < active.size(); ++i) {
          auto up = scaled(request.t_norm, active[i].firing.upper, active[i].set->upper());
          auto lo = scaled(request.t_norm, active[i].firing.lower, active[i].set->lower());
          if (i == 0) {
            upper = std::move(up);
            lower = std::move(lo);
          } else if (sum) {
            for (std::size_t k = 0; k < upper.size(); ++k) {
              upper[k] += up[k];
              lower[k] += lo[k];
            }
          } else {
            upper = request.s_norm.apply(upper, up);
            lower = request.s_norm.apply(lower, lo);
          }
        }
        if (sum) {
          for (auto& v : upper) v = std::min(v, 1.0);
          for (auto& v : lower) v = std::min(v, 1.0);
        }
        IT2FS aggregate(grid_, std::move(upper), std::move(lower));
        result.intervals[output] = reduce_with(WeightedDomain::from_set(aggregate));
        result.aggregated.emplace(output, std::move(aggregate));
        break;
      }
      case Method::CoSet: {
        std::vector<double> left_x, right_x, w_lo, w_up;
        for (const auto& c : active) {
          const TRInterval centroid = reduce_with(WeightedDomain::from_set(*c.set));
          left_x.push_back(centroid.y_l);
          right_x.push_back(centroid.y_r);
          w_lo.push_back(c.firing.lower);
          w_up.push_back(c.firing.upper);
        }
        const double y_l = reduce_with(WeightedDomain(left_x, w_lo, w_up)).y_l;
        const double y_r = reduce_with(WeightedDomain(right_x, w_lo, w_up)).y_r;
        result.intervals[output] = {y_l, y_r};
        break;
      }
      case Method::Height:
      case Method::ModiHe: {
        const bool modified = request.method == Method::ModiHe;
        std::vector<double> x, w_lo, w_up;
        for (const auto& c : active) {
          double scale = 1.0;
          if (modified) {
            const double var = upper_spread(*c.set);
            if (!(var > 0.0)) throw ParameterError("ModiHe requires consequents with non-zero spread");
            scale = 1.0 / var;
          }
          x.push_back(peak_abscissa(*c.set));
          w_lo.push_back(c.firing.lower * scale);
          w_up.push_back(c.firing.upper * scale);
        }
        result.intervals[output] = reduce_with(WeightedDomain(x, w_lo, w_up));
        break;
      }
    }
  }
  return result;
}

FuzzySystem copy_system(const FuzzySystem& system) { return system; }

}  // namespace it2fls
