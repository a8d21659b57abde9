#include "it2fls/typereduce.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "it2fls/error.hpp"

namespace it2fls {

double crisp(const TRInterval& t) { return 0.5 * (t.y_l + t.y_r); }

WeightedDomain::WeightedDomain(std::vector<double> x, std::vector<double> w_lower, std::vector<double> w_upper)
    : x_(std::move(x)), lower_(std::move(w_lower)), upper_(std::move(w_upper)) {
  if (x_.empty()) throw ParameterError("weighted domain is empty");
  if (lower_.size() != x_.size() || upper_.size() != x_.size()) {
    throw ParameterError("weighted domain: weight vectors must match the number of points");
  }
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i]) || !std::isfinite(lower_[i]) || !std::isfinite(upper_[i])) {
      throw ParameterError("weighted domain: non-finite entry");
    }
    if (lower_[i] < 0.0 || lower_[i] > upper_[i] + kEnvelopeSlack) {
      throw ConstraintError("weighted domain: require 0 <= w_lower <= w_upper");
    }
  }
  if (!std::is_sorted(x_.begin(), x_.end())) {
    std::vector<std::size_t> order(x_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x_[a] < x_[b]; });
    auto permute = [&](std::vector<double>& v) {
      std::vector<double> out(v.size());
      for (std::size_t i = 0; i < order.size(); ++i) out[i] = v[order[i]];
      v = std::move(out);
    };
    permute(x_);
    permute(lower_);
    permute(upper_);
  }
}

WeightedDomain WeightedDomain::from_set(const IT2FS& set) {
  const auto pts = set.grid().points();
  return WeightedDomain({pts.begin(), pts.end()}, {set.lower().begin(), set.lower().end()},
                        {set.upper().begin(), set.upper().end()});
}

namespace {

void require_defined(const WeightedDomain& d) {
  const auto up = d.upper();
  if (std::none_of(up.begin(), up.end(), [](double w) { return w > 0.0; })) {
    throw UndefinedCentroid("centroid undefined: all upper weights are zero");
  }
}

// Left switched centroid: the first k points take upper weights, the rest lower.
double left_centroid(const WeightedDomain& d, std::size_t k) {
  const auto x = d.x(), lo = d.lower(), up = d.upper();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = i < k ? up[i] : lo[i];
    num += x[i] * w;
    den += w;
  }
  if (!(den > 0.0)) throw AlgorithmFailure("switched centroid has zero total weight");
  return num / den;
}

// Right switched centroid: the first k points take lower weights, the rest upper.
double right_centroid(const WeightedDomain& d, std::size_t k) {
  const auto x = d.x(), lo = d.lower(), up = d.upper();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = i < k ? lo[i] : up[i];
    num += x[i] * w;
    den += w;
  }
  if (!(den > 0.0)) throw AlgorithmFailure("switched centroid has zero total weight");
  return num / den;
}

// Points at or left of y join the upper block for y_l.
std::size_t left_switch(std::span<const double> x, double y) {
  return static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), y) - x.begin());
}

// Points strictly left of y join the lower block for y_r.
std::size_t right_switch(std::span<const double> x, double y) {
  return static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), y) - x.begin());
}

double weighted_mean(std::span<const double> x, std::span<const double> w) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += x[i] * w[i];
    den += w[i];
  }
  return num / den;
}

double mid_weight_centroid(const WeightedDomain& d, std::span<const double> quadrature) {
  const auto x = d.x(), lo = d.lower(), up = d.upper();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double q = quadrature.empty() ? 1.0 : quadrature[i];
    const double theta = q * 0.5 * (lo[i] + up[i]);
    num += x[i] * theta;
    den += theta;
  }
  return num / den;
}

}  // namespace

TRInterval centroid_exact(const WeightedDomain& d) {
  require_defined(d);
  const auto x = d.x(), lo = d.lower(), up = d.upper();
  const std::size_t n = x.size();
  double y_l = std::numeric_limits<double>::infinity();
  double y_r = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k <= n; ++k) {
    double num_l = 0.0, den_l = 0.0, num_r = 0.0, den_r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool head = i < k;
      num_l += x[i] * (head ? up[i] : lo[i]);
      den_l += head ? up[i] : lo[i];
      num_r += x[i] * (head ? lo[i] : up[i]);
      den_r += head ? lo[i] : up[i];
    }
    if (den_l > 0.0) y_l = std::min(y_l, num_l / den_l);
    if (den_r > 0.0) y_r = std::max(y_r, num_r / den_r);
  }
  return {y_l, y_r};
}

TRInterval km(const WeightedDomain& d, IterationStats* stats) {
  require_defined(d);
  const auto x = d.x();
  const std::size_t n = x.size();
  const double start = mid_weight_centroid(d, {});

  auto solve = [&](auto switch_of, auto centroid_of, int& iterations) {
    std::size_t k = switch_of(x, start);
    for (std::size_t iter = 0; iter <= n + 1; ++iter) {
      ++iterations;
      const double y = centroid_of(d, k);
      const std::size_t next = switch_of(x, y);
      if (next == k) return y;
      k = next;
    }
    throw AlgorithmFailure("KM did not converge");
  };

  IterationStats local;
  TRInterval out{solve(left_switch, left_centroid, local.left), solve(right_switch, right_centroid, local.right)};
  if (stats) *stats = local;
  return out;
}

namespace {

double left_weight(const WeightedDomain& d, std::size_t k) {
  const auto lo = d.lower(), up = d.upper();
  return std::accumulate(up.begin(), up.begin() + static_cast<std::ptrdiff_t>(k), 0.0) +
         std::accumulate(lo.begin() + static_cast<std::ptrdiff_t>(k), lo.end(), 0.0);
}

double right_weight(const WeightedDomain& d, std::size_t k) {
  const auto lo = d.lower(), up = d.upper();
  return std::accumulate(lo.begin(), lo.begin() + static_cast<std::ptrdiff_t>(k), 0.0) +
         std::accumulate(up.begin() + static_cast<std::ptrdiff_t>(k), up.end(), 0.0);
}

// Exact KM steps from switch index k. Incremental sums can drift across a
// tie onto an index whose switched weight is zero; such indices are skipped
// toward the weighted mass.
double polish_left(const WeightedDomain& d, std::size_t k) {
  const std::size_t n = d.size();
  for (std::size_t iter = 0; iter <= n + 1; ++iter) {
    while (k < n && !(left_weight(d, k) > 0.0)) ++k;
    const double y = left_centroid(d, k);
    const std::size_t next = left_switch(d.x(), y);
    if (next == k) return y;
    k = next;
  }
  throw AlgorithmFailure("EKM (left) did not converge");
}

double polish_right(const WeightedDomain& d, std::size_t k) {
  const std::size_t n = d.size();
  for (std::size_t iter = 0; iter <= n + 1; ++iter) {
    while (k > 0 && !(right_weight(d, k) > 0.0)) --k;
    const double y = right_centroid(d, k);
    const std::size_t next = right_switch(d.x(), y);
    if (next == k) return y;
    k = next;
  }
  throw AlgorithmFailure("EKM (right) did not converge");
}

// Enhanced KM search with incremental sum updates. `start_left`/`start_right`
// are the initial switch indices.
TRInterval enhanced_search(const WeightedDomain& d, std::size_t start_left, std::size_t start_right,
                           IterationStats* stats) {
  const auto x = d.x(), lo = d.lower(), up = d.upper();
  const std::size_t n = x.size();
  IterationStats local;

  auto init_sums = [&](std::size_t k, bool left, double& a, double& b) {
    a = b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = (i < k) == left ? up[i] : lo[i];
      a += x[i] * w;
      b += w;
    }
  };

  // Left endpoint: moving the switch right turns lower weights into upper ones.
  std::size_t k = start_left;
  double a, b;
  init_sums(k, true, a, b);
  if (!(b > 0.0)) {
    k = left_switch(x, mid_weight_centroid(d, {}));
    init_sums(k, true, a, b);
  }
  double y = a / b;
  for (;;) {
    if (++local.left > static_cast<int>(n) + 2) throw AlgorithmFailure("EKM (left) did not converge");
    const std::size_t next = left_switch(x, y);
    if (next == k) break;
    const double sign = next > k ? 1.0 : -1.0;
    for (std::size_t i = std::min(k, next); i < std::max(k, next); ++i) {
      a += sign * x[i] * (up[i] - lo[i]);
      b += sign * (up[i] - lo[i]);
    }
    k = next;
    if (!(b > 0.0)) break;
    y = a / b;
  }
  const double y_l = polish_left(d, k);

  // Right endpoint: moving the switch right turns upper weights into lower ones.
  k = start_right;
  init_sums(k, false, a, b);
  if (!(b > 0.0)) {
    k = right_switch(x, mid_weight_centroid(d, {}));
    init_sums(k, false, a, b);
  }
  y = a / b;
  for (;;) {
    if (++local.right > static_cast<int>(n) + 2) throw AlgorithmFailure("EKM (right) did not converge");
    const std::size_t next = right_switch(x, y);
    if (next == k) break;
    const double sign = next > k ? 1.0 : -1.0;
    for (std::size_t i = std::min(k, next); i < std::max(k, next); ++i) {
      a -= sign * x[i] * (up[i] - lo[i]);
      b -= sign * (up[i] - lo[i]);
    }
    k = next;
    if (!(b > 0.0)) break;
    y = a / b;
  }
  const double y_r = polish_right(d, k);

  if (stats) *stats = local;
  return {y_l, y_r};
}

}  // namespace

TRInterval ekm(const WeightedDomain& d, IterationStats* stats) {
  require_defined(d);
  const double n = static_cast<double>(d.size());
  return enhanced_search(d, static_cast<std::size_t>(std::lround(n / 2.4)), static_cast<std::size_t>(std::lround(n / 1.7)),
                         stats);
}

std::vector<double> trapezoidal_weights(std::size_t n) {
  std::vector<double> q(n, 1.0);
  if (n >= 1) q.front() = 0.5;
  if (n >= 2) q.back() = 0.5;
  return q;
}

TRInterval wekm(const WeightedDomain& d, std::span<const double> quadrature, IterationStats* stats) {
  require_defined(d);
  std::vector<double> trapezoid;
  if (quadrature.empty()) {
    trapezoid = trapezoidal_weights(d.size());
    quadrature = trapezoid;
  }
  if (quadrature.size() != d.size()) throw ParameterError("WEKM: quadrature length must match the domain");
  if (std::any_of(quadrature.begin(), quadrature.end(), [](double q) { return !(q > 0.0) || !std::isfinite(q); })) {
    throw ParameterError("WEKM: quadrature weights must be positive");
  }
  const double seed = mid_weight_centroid(d, quadrature);
  return enhanced_search(d, left_switch(d.x(), seed), right_switch(d.x(), seed), stats);
}

TRInterval twekm(const WeightedDomain& d, IterationStats* stats) {
  const auto q = trapezoidal_weights(d.size());
  return wekm(d, q, stats);
}

TRInterval eiasc(const WeightedDomain& d, IterationStats* stats) {
  require_defined(d);
  const auto x = d.x(), lo = d.lower(), up = d.upper();
  const std::size_t n = x.size();
  IterationStats local;

  const double base_num = std::inner_product(x.begin(), x.end(), lo.begin(), 0.0);
  const double base_den = std::accumulate(lo.begin(), lo.end(), 0.0);

  // Left: sweep from the left edge, promoting points to upper weights until
  // the running centroid no longer exceeds the next abscissa.
  double a = base_num, b = base_den;
  std::size_t k = 0;
  while (k < n) {
    a += x[k] * (up[k] - lo[k]);
    b += up[k] - lo[k];
    ++k;
    ++local.left;
    if (b > 0.0 && (k == n || a / b <= x[k])) break;
  }
  const double y_l = left_centroid(d, k);

  // Right: the mirror sweep from the right edge.
  a = base_num;
  b = base_den;
  k = n;
  while (k > 0) {
    --k;
    a += x[k] * (up[k] - lo[k]);
    b += up[k] - lo[k];
    ++local.right;
    if (b > 0.0 && (k == 0 || a / b >= x[k - 1])) break;
  }
  const double y_r = right_centroid(d, k);

  if (stats) *stats = local;
  return {y_l, y_r};
}

WMBounds wm_bounds(const WeightedDomain& d) {
  require_defined(d);
  const auto x = d.x(), lo = d.lower(), up = d.upper();
  const double x_first = x.front(), x_last = x.back();
  const double sum_lo = std::accumulate(lo.begin(), lo.end(), 0.0);
  const double sum_up = std::accumulate(up.begin(), up.end(), 0.0);
  const double c_up = weighted_mean(x, up);

  WMBounds b;
  if (!(sum_lo > 0.0)) {
    // Only the upper envelope is informative; the outer bounds fall back to the span.
    b = {x_first, c_up, c_up, x_last};
    return b;
  }
  const double c_lo = weighted_mean(x, lo);
  b.inner_left = std::min(c_lo, c_up);
  b.inner_right = std::max(c_lo, c_up);

  double spread = 0.0, lo_from_first = 0.0, up_to_last = 0.0, up_from_first = 0.0, lo_to_last = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    spread += up[i] - lo[i];
    lo_from_first += lo[i] * (x[i] - x_first);
    up_to_last += up[i] * (x_last - x[i]);
    up_from_first += up[i] * (x[i] - x_first);
    lo_to_last += lo[i] * (x_last - x[i]);
  }
  const double scale = spread / (sum_up * sum_lo);
  auto correction = [scale](double p, double q) { return p + q > 0.0 ? scale * p * q / (p + q) : 0.0; };
  b.outer_left = std::max(x_first, b.inner_left - correction(lo_from_first, up_to_last));
  b.outer_right = std::min(x_last, b.inner_right + correction(up_from_first, lo_to_last));
  return b;
}

TRInterval wm(const WeightedDomain& d) {
  const auto b = wm_bounds(d);
  return {0.5 * (b.outer_left + b.inner_left), 0.5 * (b.inner_right + b.outer_right)};
}

TRInterval bmm(const WeightedDomain& d, BMMWeights w) {
  require_defined(d);
  const auto lo = d.lower();
  const double c_up = weighted_mean(d.x(), d.upper());
  const bool lower_defined = std::any_of(lo.begin(), lo.end(), [](double v) { return v > 0.0; });
  const double c_lo = lower_defined ? weighted_mean(d.x(), lo) : c_up;
  const double y = w.m * c_lo + w.n * c_up;
  return {y, y};
}

TRInterval lbmm(const WeightedDomain& d, BMMWeights w) { return bmm(d, w); }

TRInterval nt(const WeightedDomain& d) {
  require_defined(d);
  const auto x = d.x(), lo = d.lower(), up = d.upper();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += x[i] * (lo[i] + up[i]);
    den += lo[i] + up[i];
  }
  const double y = num / den;
  return {y, y};
}

namespace {

constexpr std::array<std::pair<Algorithm, std::string_view>, 9> kAlgorithms{{
    {Algorithm::KM, "KM"},
    {Algorithm::EKM, "EKM"},
    {Algorithm::WEKM, "WEKM"},
    {Algorithm::TWEKM, "TWEKM"},
    {Algorithm::EIASC, "EIASC"},
    {Algorithm::WM, "WM"},
    {Algorithm::BMM, "BMM"},
    {Algorithm::LBMM, "LBMM"},
    {Algorithm::NT, "NT"},
}};

}  // namespace

Algorithm parse_algorithm(std::string_view name) {
  for (const auto& [a, n] : kAlgorithms) {
    if (n == name) return a;
  }
  throw ParameterError("unknown type-reduction algorithm '" + std::string(name) + "'");
}

std::string_view algorithm_name(Algorithm a) {
  for (const auto& [k, n] : kAlgorithms) {
    if (k == a) return n;
  }
  return "?";
}

bool is_exact(Algorithm a) {
  switch (a) {
    case Algorithm::KM:
    case Algorithm::EKM:
    case Algorithm::WEKM:
    case Algorithm::TWEKM:
    case Algorithm::EIASC: return true;
    default: return false;
  }
}

TRInterval reduce(Algorithm algorithm, const WeightedDomain& d, const AlgorithmParams& params) {
  switch (algorithm) {
    case Algorithm::KM: return km(d);
    case Algorithm::EKM: return ekm(d);
    case Algorithm::WEKM: return wekm(d, params.wekm_quadrature);
    case Algorithm::TWEKM: return twekm(d);
    case Algorithm::EIASC: return eiasc(d);
    case Algorithm::WM: return wm(d);
    case Algorithm::BMM: return bmm(d, params.bmm);
    case Algorithm::LBMM: return lbmm(d, params.lbmm);
    case Algorithm::NT: return nt(d);
  }
  throw ParameterError("unknown type-reduction algorithm");
}

}  // namespace it2fls
