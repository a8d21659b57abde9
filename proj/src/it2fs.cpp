#include "it2fls/it2fs.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "it2fls/csv.hpp"
#include "it2fls/error.hpp"

namespace it2fls {

Grid::Grid(std::vector<double> points) {
  if (points.size() < 2) throw ParameterError("grid needs at least two points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i])) throw ParameterError("grid points must be finite");
    if (i > 0 && !(points[i] > points[i - 1])) throw ParameterError("grid points must be strictly increasing");
  }
  points_ = std::make_shared<const std::vector<double>>(std::move(points));
}

Grid Grid::uniform(double lo, double hi, std::size_t count) {
  if (count < 2) throw ParameterError("uniform grid needs at least two points");
  if (!(lo < hi)) throw ParameterError("uniform grid requires lo < hi");
  std::vector<double> pts(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) pts[i] = lo + step * static_cast<double>(i);
  pts.back() = hi;
  return Grid(std::move(pts));
}

bool operator==(const Grid& a, const Grid& b) {
  return a.same_storage(b) || *a.points_ == *b.points_;
}

IT2FS::IT2FS(Grid grid, std::vector<double> upper, std::vector<double> lower)
    : grid_(std::move(grid)), upper_(std::move(upper)), lower_(std::move(lower)) {
  if (upper_.size() != grid_.size() || lower_.size() != grid_.size()) {
    throw ConstraintError("envelope length does not match grid size");
  }
  for (std::size_t i = 0; i < upper_.size(); ++i) {
    const double lo = lower_[i], up = upper_[i];
    if (!(lo >= 0.0) || !(up <= 1.0)) {
      throw ConstraintError("membership outside [0, 1] at x = " + csv::format_number(grid_[i]));
    }
    if (lo > up + kEnvelopeSlack) {
      throw ConstraintError("lower envelope exceeds upper envelope at x = " + csv::format_number(grid_[i]));
    }
  }
}

Interval IT2FS::membership(double x) const {
  if (!grid_.contains(x)) {
    throw ParameterError("input " + csv::format_number(x) + " lies outside the universe of discourse");
  }
  const auto pts = grid_.points();
  auto it = std::upper_bound(pts.begin(), pts.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - pts.begin());
  if (hi == pts.size()) return {lower_.back(), upper_.back()};
  const std::size_t lo = hi - 1;
  const double t = (x - pts[lo]) / (pts[hi] - pts[lo]);
  return {lower_[lo] + t * (lower_[hi] - lower_[lo]), upper_[lo] + t * (upper_[hi] - upper_[lo])};
}

IT2FS make_it2fs(const Grid& grid, MFKind umf, Params umf_params, MFKind lmf, Params lmf_params) {
  return IT2FS(grid, evaluate_mf(umf, grid.points(), umf_params), evaluate_mf(lmf, grid.points(), lmf_params));
}

IT2FS gaussian_uncert_mean_set(const Grid& grid, Params params) {
  if (params.size() != 3) throw ParameterError("gaussian_uncert_mean_set: expected [mean_center, mean_spread, std]");
  const double center = params[0], spread = params[1], sd = params[2];
  if (spread < 0.0) throw ParameterError("gaussian_uncert_mean_set: mean spread must be non-negative");
  const std::vector<double> p{center - 0.5 * spread, center + 0.5 * spread, sd, 1.0};
  return make_it2fs(grid, MFKind::GaussUncertMeanUmf, p, MFKind::GaussUncertMeanLmf, p);
}

IT2FS gaussian_uncert_std_set(const Grid& grid, Params params) {
  if (params.size() != 3) throw ParameterError("gaussian_uncert_std_set: expected [mean, std_center, std_spread]");
  if (params[2] < 0.0) throw ParameterError("gaussian_uncert_std_set: std spread must be non-negative");
  const std::vector<double> p{params[0], params[1], params[2], 1.0};
  return make_it2fs(grid, MFKind::GaussUncertStdUmf, p, MFKind::GaussUncertStdLmf, p);
}

IT2FS copy_set(const IT2FS& set) { return set; }

namespace {

template <class Op>
std::vector<double> elementwise(std::span<const double> a, std::span<const double> b, Op op) {
  if (a.size() != b.size()) throw std::invalid_argument("norm operands differ in length");
  std::vector<double> out(a.size());
  std::transform(a.begin(), a.end(), b.begin(), out.begin(), op);
  return out;
}

}  // namespace

std::vector<double> min_t_norm(std::span<const double> a, std::span<const double> b) {
  return elementwise(a, b, [](double x, double y) { return std::min(x, y); });
}

std::vector<double> product_t_norm(std::span<const double> a, std::span<const double> b) {
  return elementwise(a, b, [](double x, double y) { return x * y; });
}

std::vector<double> max_s_norm(std::span<const double> a, std::span<const double> b) {
  return elementwise(a, b, [](double x, double y) { return std::max(x, y); });
}

Norm::Norm(std::string name, NormKind kind, Fn fn) : name_(std::move(name)), kind_(kind), fn_(std::move(fn)) {
  if (!fn_) throw ParameterError("norm '" + name_ + "' has no function");
}

const Norm& Norm::min_t() {
  static const Norm n("min", NormKind::TNorm, [](double a, double b) { return std::min(a, b); });
  return n;
}

const Norm& Norm::product_t() {
  static const Norm n("product", NormKind::TNorm, [](double a, double b) { return a * b; });
  return n;
}

const Norm& Norm::max_s() {
  static const Norm n("max", NormKind::SNorm, [](double a, double b) { return std::max(a, b); });
  return n;
}

const Norm& Norm::by_name(const std::string& name) {
  if (name == "min") return min_t();
  if (name == "product") return product_t();
  if (name == "max") return max_s();
  throw ParameterError("unknown norm '" + name + "' (expected min, product or max)");
}

std::vector<double> Norm::apply(std::span<const double> a, std::span<const double> b) const {
  return elementwise(a, b, fn_);
}

std::vector<std::string> check_norm_axioms(const Norm& norm) {
  constexpr int kSteps = 20;
  constexpr double kTol = 1e-12;
  const double identity = norm.kind() == NormKind::TNorm ? 1.0 : 0.0;
  std::vector<std::string> violations;
  auto report = [&](const std::string& what, double a, double b) {
    std::ostringstream msg;
    msg << what << " at (" << a << ", " << b << ")";
    violations.push_back(msg.str());
  };
  for (int i = 0; i <= kSteps; ++i) {
    const double a = static_cast<double>(i) / kSteps;
    if (std::abs(norm(a, identity) - a) > kTol) report("identity", a, identity);
    for (int j = 0; j <= kSteps; ++j) {
      const double b = static_cast<double>(j) / kSteps;
      const double v = norm(a, b);
      if (!(v >= -kTol && v <= 1.0 + kTol)) report("range", a, b);
      if (std::abs(v - norm(b, a)) > kTol) report("commutativity", a, b);
      if (i < kSteps && norm(static_cast<double>(i + 1) / kSteps, b) < v - kTol) report("monotonicity", a, b);
    }
  }
  return violations;
}

Norm register_norm(std::string name, NormKind kind, Norm::Fn fn, std::ostream& warn) {
  Norm norm(std::move(name), kind, std::move(fn));
  const auto violations = check_norm_axioms(norm);
  if (!violations.empty()) {
    warn << "warning: norm '" << norm.name() << "' violates " << violations.size()
         << " axiom check(s); first: " << violations.front() << '\n';
  }
  return norm;
}

namespace {

IT2FS combine(const IT2FS& a, const IT2FS& b, const Norm& norm) {
  if (!(a.grid() == b.grid())) throw GridMismatch("operands are defined on different grids");
  return IT2FS(a.grid(), norm.apply(a.upper(), b.upper()), norm.apply(a.lower(), b.lower()));
}

}  // namespace

IT2FS meet(const IT2FS& a, const IT2FS& b, const Norm& t_norm) {
  if (t_norm.kind() != NormKind::TNorm) throw ParameterError("meet requires a t-norm");
  return combine(a, b, t_norm);
}

IT2FS join(const IT2FS& a, const IT2FS& b, const Norm& s_norm) {
  if (s_norm.kind() != NormKind::SNorm) throw ParameterError("join requires an s-norm");
  return combine(a, b, s_norm);
}

SetRecord export_set(const IT2FS& set) {
  const auto pts = set.grid().points();
  return {std::vector<double>(pts.begin(), pts.end()), std::vector<double>(set.lower().begin(), set.lower().end()),
          std::vector<double>(set.upper().begin(), set.upper().end())};
}

void write_set_csv(std::ostream& out, const SetRecord& record) {
  csv::Writer w(out, {"x", "lower", "upper"});
  for (std::size_t i = 0; i < record.x.size(); ++i) w.row({record.x[i], record.lower[i], record.upper[i]});
}

}  // namespace it2fls
