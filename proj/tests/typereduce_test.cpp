#include "it2fls/typereduce.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "it2fls/error.hpp"
#include "test_support.hpp"

using namespace it2fls;

namespace {

using V = std::vector<double>;

V linspace(double lo, double hi, int n) {
  V x(n);
  for (int i = 0; i < n; ++i) x[i] = lo + (hi - lo) * i / (n - 1);
  return x;
}

double plain_centroid(const V& x, const V& w) {
  return std::inner_product(x.begin(), x.end(), w.begin(), 0.0) / std::accumulate(w.begin(), w.end(), 0.0);
}

WeightedDomain symmetric_domain() {
  const V x = linspace(0, 1, 41);
  V lo(x.size()), up(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    up[i] = std::exp(-std::pow((x[i] - 0.5) / 0.2, 2));
    lo[i] = 0.4 * std::exp(-std::pow((x[i] - 0.5) / 0.1, 2));
  }
  return WeightedDomain(x, lo, up);
}

WeightedDomain triangle_golden_domain() {
  const V x = linspace(0, 1, 101);
  V up(x.size()), lo(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    up[i] = x[i] <= 0.5 ? x[i] / 0.5 : (1 - x[i]) / 0.5;
    lo[i] = 0.5 * up[i];
  }
  return WeightedDomain(x, lo, up);
}

using Reducer = TRInterval (*)(const WeightedDomain&);

const std::vector<std::pair<const char*, Reducer>>& exact_family() {
  static const std::vector<std::pair<const char*, Reducer>> f{
      {"KM", [](const WeightedDomain& d) { return km(d); }},
      {"EKM", [](const WeightedDomain& d) { return ekm(d); }},
      {"WEKM", [](const WeightedDomain& d) { return wekm(d); }},
      {"TWEKM", [](const WeightedDomain& d) { return twekm(d); }},
      {"EIASC", [](const WeightedDomain& d) { return eiasc(d); }},
  };
  return f;
}

}  // namespace

TEST(Oracle, TypeOneDegenerates) {
  const V x{0.0, 0.2, 0.5, 0.9};
  const V w{0.1, 0.7, 0.3, 0.5};
  const TRInterval t = centroid_exact(WeightedDomain(x, w, w));
  EXPECT_NEAR(t.y_l, plain_centroid(x, w), 1e-15);
  EXPECT_NEAR(t.y_r, plain_centroid(x, w), 1e-15);
}

TEST(Oracle, Symmetry) {
  const TRInterval t = centroid_exact(symmetric_domain());
  EXPECT_NEAR(t.y_l + t.y_r, 1.0, 1e-9);
  EXPECT_LT(t.y_l, t.y_r);
}

TEST(Oracle, FrozenTriangleGolden) {
  // Exact rational brute force over all switch indices, rounded to double.
  const TRInterval t = centroid_exact(triangle_golden_domain());
  EXPECT_NEAR(t.y_l, 0.4423209169054441, 1e-14);
  EXPECT_NEAR(t.y_r, 0.5576790830945558, 1e-14);
}

TEST(Oracle, AllZeroIsUndefined) {
  const WeightedDomain zero(V{0, 1, 2}, V{0, 0, 0}, V{0, 0, 0});
  EXPECT_THROW(centroid_exact(zero), UndefinedCentroid);
  for (const auto& [name, fn] : exact_family()) EXPECT_THROW(fn(zero), UndefinedCentroid) << name;
  EXPECT_THROW(wm(zero), UndefinedCentroid);
  EXPECT_THROW(bmm(zero), UndefinedCentroid);
  EXPECT_THROW(nt(zero), UndefinedCentroid);
}

TEST(WeightedDomain, ValidatesAndSorts) {
  EXPECT_THROW(WeightedDomain(V{}, V{}, V{}), ParameterError);
  EXPECT_THROW(WeightedDomain(V{0, 1}, V{0.5}, V{0.5, 1}), ParameterError);
  EXPECT_THROW(WeightedDomain(V{0, 1}, V{0.6, 0.1}, V{0.5, 1}), ConstraintError);
  EXPECT_THROW(WeightedDomain(V{0, 1}, V{-0.1, 0.1}, V{0.5, 1}), ConstraintError);
  const WeightedDomain d(V{2, 0, 1}, V{0.2, 0.0, 0.1}, V{0.3, 0.5, 0.4});
  EXPECT_EQ(V(d.x().begin(), d.x().end()), (V{0, 1, 2}));
  EXPECT_EQ(V(d.upper().begin(), d.upper().end()), (V{0.5, 0.4, 0.3}));
}

TEST(ExactFamily, GoldenAndSymmetric) {
  for (const auto& [name, fn] : exact_family()) {
    const TRInterval g = fn(triangle_golden_domain());
    EXPECT_NEAR(g.y_l, 0.4423209169054441, 1e-12) << name;
    EXPECT_NEAR(g.y_r, 0.5576790830945558, 1e-12) << name;
    const TRInterval s = fn(symmetric_domain());
    EXPECT_NEAR(crisp(s), 0.5, 1e-12) << name;
  }
}

TEST(ExactFamily, TypeOnePointInterval) {
  const V x{-1, 0, 0.5, 3};
  const V w{0.3, 0.1, 0.9, 0.2};
  for (const auto& [name, fn] : exact_family()) {
    const TRInterval t = fn(WeightedDomain(x, w, w));
    EXPECT_NEAR(t.y_l, plain_centroid(x, w), 1e-12) << name;
    EXPECT_NEAR(t.y_r, plain_centroid(x, w), 1e-12) << name;
  }
}

TEST(ExactFamily, MatchesOracleOnRandomDomains) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const WeightedDomain d = test_support::random_domain(rng);
    const TRInterval ref = centroid_exact(d);
    for (const auto& [name, fn] : exact_family()) {
      const TRInterval t = fn(d);
      ASSERT_NEAR(t.y_l, ref.y_l, 1e-9) << name << " trial " << trial;
      ASSERT_NEAR(t.y_r, ref.y_r, 1e-9) << name << " trial " << trial;
    }
  }
}

TEST(ExactFamily, SparseWeights) {
  // Zero lower weights everywhere and zero upper weights on the left half.
  const V x = linspace(0, 1, 20);
  V lo(20, 0.0), up(20, 0.0);
  for (int i = 12; i < 20; ++i) up[i] = 0.1 * (i - 11);
  const WeightedDomain d(x, lo, up);
  const TRInterval ref = centroid_exact(d);
  for (const auto& [name, fn] : exact_family()) {
    const TRInterval t = fn(d);
    EXPECT_NEAR(t.y_l, ref.y_l, 1e-12) << name;
    EXPECT_NEAR(t.y_r, ref.y_r, 1e-12) << name;
  }
}

TEST(ExactFamily, KMTerminatesWithinN) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const WeightedDomain d = test_support::random_domain(rng);
    IterationStats stats;
    km(d, &stats);
    ASSERT_LE(stats.left, static_cast<int>(d.size()));
    ASSERT_LE(stats.right, static_cast<int>(d.size()));
  }
}

TEST(ExactFamily, CustomQuadratureOnlySeedsTheSearch) {
  std::mt19937_64 rng(17);
  const WeightedDomain d = test_support::random_domain(rng);
  V q(d.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = 1.0 + static_cast<double>(i % 3);
  const TRInterval ref = centroid_exact(d);
  const TRInterval t = wekm(d, q);
  EXPECT_NEAR(t.y_l, ref.y_l, 1e-9);
  EXPECT_NEAR(t.y_r, ref.y_r, 1e-9);
  EXPECT_THROW(wekm(d, V{1.0}), ParameterError);
  EXPECT_EQ(trapezoidal_weights(4), (V{0.5, 1, 1, 0.5}));
}

TEST(Properties, ContainmentAndShrinkingUncertainty) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const WeightedDomain d = test_support::random_domain(rng);
    const TRInterval t = km(d);
    EXPECT_GE(t.y_l, d.x().front());
    EXPECT_LE(t.y_r, d.x().back());

    double previous_width = t.y_r - t.y_l;
    for (double s : {0.8, 0.5, 0.2, 0.05, 0.0}) {
      V lo(d.size()), up(d.size());
      for (std::size_t i = 0; i < d.size(); ++i) {
        const double mid = 0.5 * (d.lower()[i] + d.upper()[i]);
        const double half = 0.5 * (d.upper()[i] - d.lower()[i]);
        lo[i] = mid - s * half;
        up[i] = mid + s * half;
      }
      const TRInterval shrunk = km(WeightedDomain(V(d.x().begin(), d.x().end()), lo, up));
      const double width = shrunk.y_r - shrunk.y_l;
      EXPECT_LE(width, previous_width + 1e-12);
      previous_width = width;
    }
    EXPECT_NEAR(previous_width, 0.0, 1e-12);
  }
}

TEST(WuMendel, TypeOneIsPoint) {
  const V x{0, 1, 2, 3};
  const V w{0.2, 0.5, 0.4, 0.1};
  const TRInterval t = wm(WeightedDomain(x, w, w));
  EXPECT_NEAR(t.y_l, plain_centroid(x, w), 1e-12);
  EXPECT_NEAR(t.y_r, plain_centroid(x, w), 1e-12);
}

TEST(WuMendel, BracketsExactInterval) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const WeightedDomain d = test_support::random_domain(rng);
    const WMBounds b = wm_bounds(d);
    const TRInterval exact = km(d);
    ASSERT_LE(b.outer_left, exact.y_l + 1e-12);
    ASSERT_GE(b.inner_left, exact.y_l - 1e-12);
    ASSERT_LE(b.inner_right, exact.y_r + 1e-12);
    ASSERT_GE(b.outer_right, exact.y_r - 1e-12);
  }
}

TEST(WuMendel, Symmetric) {
  const TRInterval t = wm(symmetric_domain());
  EXPECT_NEAR(t.y_l + t.y_r, 1.0, 1e-9);
}

TEST(BMM, WeightExtremesAndDirectSum) {
  const V x{0, 0.3, 0.6, 1.0};
  const V w{0.2, 0.6, 0.6, 0.1};
  EXPECT_NEAR(bmm(WeightedDomain(x, w, w)).y_l, plain_centroid(x, w), 1e-12);

  const V lo{0.1, 0.2, 0.05, 0.0};
  const V up{0.5, 0.9, 0.4, 0.3};
  const WeightedDomain d(x, lo, up);
  EXPECT_NEAR(bmm(d, {1.0, 0.0}).y_l, plain_centroid(x, lo), 1e-12);
  EXPECT_NEAR(bmm(d, {0.0, 1.0}).y_r, plain_centroid(x, up), 1e-12);

  // Independent direct summation.
  const double direct = 0.5 * (0 * 0.1 + 0.3 * 0.2 + 0.6 * 0.05) / 0.35 + 0.5 * (0.3 * 0.9 + 0.6 * 0.4 + 0.3) / 2.1;
  EXPECT_NEAR(bmm(d).y_l, direct, 1e-12);
  EXPECT_NEAR(lbmm(d).y_l, direct, 1e-12);
  EXPECT_NEAR(lbmm(d, {0.3, 0.7}).y_l, 0.3 * plain_centroid(x, lo) + 0.7 * plain_centroid(x, up), 1e-12);
}

TEST(BMM, ZeroLowerFallsBackToUpper) {
  const WeightedDomain d(V{0, 1}, V{0, 0}, V{0.2, 0.6});
  EXPECT_NEAR(bmm(d).y_l, 0.75, 1e-12);
}

TEST(NieTan, SymmetricTypeOneAndDirect) {
  EXPECT_NEAR(nt(symmetric_domain()).y_l, 0.5, 1e-12);
  const V x{1, 2, 4};
  const V w{0.5, 0.25, 0.25};
  EXPECT_NEAR(nt(WeightedDomain(x, w, w)).y_r, plain_centroid(x, w), 1e-12);
  const WeightedDomain d(x, V{0.1, 0.0, 0.2}, V{0.3, 0.4, 0.2});
  EXPECT_NEAR(crisp(nt(d)), (1 * 0.4 + 2 * 0.4 + 4 * 0.4) / 1.2, 1e-12);
}

TEST(Crisp, Midpoint) {
  EXPECT_NEAR(crisp({0.2, 0.6}), 0.4, 1e-15);
  EXPECT_EQ(crisp({0.7, 0.7}), 0.7);
}

TEST(Selectors, NamesAreExactAndCaseSensitive) {
  for (const char* n : {"KM", "EKM", "WEKM", "TWEKM", "EIASC", "WM", "BMM", "LBMM", "NT"}) {
    EXPECT_EQ(algorithm_name(parse_algorithm(n)), n);
  }
  EXPECT_THROW(parse_algorithm("km"), ParameterError);
  EXPECT_THROW(parse_algorithm("IASC"), ParameterError);
  EXPECT_TRUE(is_exact(Algorithm::TWEKM));
  EXPECT_FALSE(is_exact(Algorithm::WM));
}

TEST(Selectors, ReduceDispatches) {
  const WeightedDomain d = symmetric_domain();
  EXPECT_EQ(reduce(Algorithm::KM, d), km(d));
  EXPECT_EQ(reduce(Algorithm::WM, d), wm(d));
  AlgorithmParams p;
  p.bmm = {1.0, 0.0};
  EXPECT_EQ(reduce(Algorithm::BMM, d, p), bmm(d, {1.0, 0.0}));
}
