#include "it2fls/inference.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <thread>

#include "it2fls/error.hpp"

using namespace it2fls;

namespace {

using V = std::vector<double>;

struct SimpleExample {
  Grid grid = Grid::uniform(0.0, 1.0, 100);
  IT2FS small = gaussian_uncert_std_set(grid, V{0.0, 0.15, 0.1});
  IT2FS medium = gaussian_uncert_std_set(grid, V{0.5, 0.15, 0.1});
  IT2FS large = gaussian_uncert_std_set(grid, V{1.0, 0.15, 0.1});
  FuzzySystem system{grid};

  SimpleExample() {
    system.add_input("x1").add_input("x2").add_output("y1").add_output("y2");
    system.add_rule({{"x1", small}, {"x2", small}}, {{"y1", small}, {"y2", large}});
    system.add_rule({{"x1", medium}, {"x2", medium}}, {{"y1", medium}, {"y2", small}});
    system.add_rule({{"x1", large}, {"x2", large}}, {{"y1", large}, {"y2", small}});
  }
};

EvalRequest request(double x1, double x2, Method m = Method::Centroid, Algorithm a = Algorithm::KM) {
  EvalRequest r;
  r.values = {{"x1", x1}, {"x2", x2}};
  r.method = m;
  r.algorithm = a;
  return r;
}

constexpr Algorithm kAllAlgorithms[] = {Algorithm::KM, Algorithm::EKM, Algorithm::WEKM, Algorithm::TWEKM, Algorithm::EIASC,
                                        Algorithm::WM, Algorithm::BMM,  Algorithm::LBMM, Algorithm::NT};
constexpr Method kAllMethods[] = {Method::Centroid, Method::CoSet, Method::CoSum, Method::Height, Method::ModiHe};

}  // namespace

TEST(Registry, InputsAndOutputs) {
  FuzzySystem sys(Grid::uniform(0, 1, 10));
  sys.add_input("x1").add_input("x2");
  EXPECT_EQ(sys.inputs(), (std::vector<std::string>{"x1", "x2"}));
  EXPECT_THROW(sys.add_input("x1"), ConfigError);
  EXPECT_THROW(sys.add_input(""), ConfigError);
  EXPECT_THROW(sys.add_output(""), ConfigError);
  sys.add_output("x1");  // separate registries
  EXPECT_THROW(sys.add_output("x1"), ConfigError);
}

TEST(Registry, RuleValidation) {
  SimpleExample ex;
  EXPECT_EQ(ex.system.rules().size(), 3u);
  EXPECT_THROW(ex.system.add_rule({{"x9", ex.small}}, {{"y1", ex.small}}), ConfigError);
  EXPECT_THROW(ex.system.add_rule({}, {{"y1", ex.small}}), ConfigError);
  EXPECT_THROW(ex.system.add_rule({{"x1", ex.small}}, {}), ConfigError);
  EXPECT_THROW(ex.system.add_rule({{"x1", ex.small}}, {{"y7", ex.small}}), ConfigError);
  const IT2FS other = gaussian_uncert_std_set(Grid::uniform(0, 2, 100), V{0.5, 0.15, 0.1});
  EXPECT_THROW(ex.system.add_rule({{"x1", other}}, {{"y1", ex.small}}), GridMismatch);
  EXPECT_EQ(ex.system.rules().size(), 3u);
}

TEST(Firing, SingleAntecedentAtPeak) {
  const Grid g = Grid::uniform(0, 1, 11);
  const IT2FS s = gaussian_uncert_std_set(g, V{0.5, 0.15, 0.1});
  const Rule r{{{"x", s}}, {{"y", s}}};
  const Interval f = firing_interval(r, {{"x", 0.5}}, Norm::min_t());
  EXPECT_DOUBLE_EQ(f.upper, 1.0);
  EXPECT_DOUBLE_EQ(f.lower, s.membership(0.5).lower);
}

TEST(Firing, ZeroMembershipAbsorbs) {
  const Grid g = Grid::uniform(0, 1, 11);
  const IT2FS s = gaussian_uncert_std_set(g, V{0.5, 0.15, 0.1});
  const IT2FS z(g, V(11, 0.0), V(11, 0.0));
  const Rule r{{{"a", s}, {"b", z}}, {{"y", s}}};
  const Interval f = firing_interval(r, {{"a", 0.5}, {"b", 0.3}}, Norm::min_t());
  EXPECT_EQ(f.lower, 0.0);
  EXPECT_EQ(f.upper, 0.0);
}

TEST(Firing, TwoAntecedentsMatchHandFold) {
  SimpleExample ex;
  const Rule& r = ex.system.rules()[1];
  const double v1 = 0.37, v2 = 0.61;
  // Hand interpolation on the 100-point grid.
  auto interp = [&](std::span<const double> env, double v) {
    const double pos = v * 99.0;
    const auto i = static_cast<std::size_t>(pos);
    return env[i] + (pos - static_cast<double>(i)) * (env[i + 1] - env[i]);
  };
  const double lo = std::min(interp(ex.medium.lower(), v1), interp(ex.medium.lower(), v2));
  const double up = std::min(interp(ex.medium.upper(), v1), interp(ex.medium.upper(), v2));
  const Interval f = firing_interval(r, {{"x1", v1}, {"x2", v2}}, Norm::min_t());
  EXPECT_NEAR(f.lower, lo, 1e-12);
  EXPECT_NEAR(f.upper, up, 1e-12);
  const Interval p = firing_interval(r, {{"x1", v1}, {"x2", v2}}, Norm::product_t());
  EXPECT_NEAR(p.upper, interp(ex.medium.upper(), v1) * interp(ex.medium.upper(), v2), 1e-12);
  EXPECT_LE(p.lower, p.upper);
}

TEST(Firing, OutOfSpanInput) {
  SimpleExample ex;
  EXPECT_THROW(firing_interval(ex.system.rules()[0], {{"x1", 1.2}, {"x2", 0.5}}, Norm::min_t()), ParameterError);
  EXPECT_THROW(ex.system.evaluate(request(1.2, 0.5)), ParameterError);
  EvalRequest missing;
  missing.values = {{"x1", 0.5}};
  EXPECT_THROW(ex.system.evaluate(missing), ParameterError);
}

TEST(Evaluate, SimpleExampleGolden) {
  SimpleExample ex;
  // Frozen from an independent brute-force run of the same pipeline.
  const EvalResult r = ex.system.evaluate(request(0.9, 0.9));
  EXPECT_NEAR(r.intervals.at("y1").y_l, 0.6583602522629025, 1e-9);
  EXPECT_NEAR(r.intervals.at("y1").y_r, 0.9206400551140221, 1e-9);
  EXPECT_NEAR(r.intervals.at("y2").y_l, 0.07856263727724193, 1e-9);
  EXPECT_NEAR(r.intervals.at("y2").y_r, 0.1809412265570003, 1e-9);
  EXPECT_GT(r.crisp("y1"), 0.5);
  EXPECT_LT(r.crisp("y2"), 0.5);
  ASSERT_EQ(r.aggregated.count("y1"), 1u);
  EXPECT_EQ(r.aggregated.at("y1").size(), 100u);

  const EvalResult e = ex.system.evaluate(request(0.9, 0.9, Method::Centroid, Algorithm::EIASC));
  EXPECT_NEAR(e.crisp("y1"), r.crisp("y1"), 1e-9);
  EXPECT_NEAR(e.crisp("y2"), r.crisp("y2"), 1e-9);
}

TEST(Evaluate, SymmetricInputGivesMidpoint) {
  SimpleExample ex;
  const EvalResult r = ex.system.evaluate(request(0.5, 0.5));
  EXPECT_NEAR(r.crisp("y1"), 0.5, 1e-6);
}

TEST(Evaluate, SingleFullyFiringRuleReproducesConsequent) {
  const Grid g = Grid::uniform(-1, 1, 101);
  const IT2FS peak = gaussian_uncert_std_set(g, V{0.0, 0.3, 0.2});
  const IT2FS cons = gaussian_uncert_std_set(g, V{0.3, 0.2, 0.1});
  FuzzySystem sys(g);
  sys.add_input("x").add_output("y").add_rule({{"x", peak}}, {{"y", cons}});
  for (Algorithm a : kAllAlgorithms) {
    EvalRequest req;
    req.values = {{"x", 0.0}};
    req.algorithm = a;
    const TRInterval t = sys.evaluate(req).intervals.at("y");
    const TRInterval expected = reduce(a, WeightedDomain::from_set(cons));
    EXPECT_NEAR(t.y_l, expected.y_l, 1e-12) << algorithm_name(a);
    EXPECT_NEAR(t.y_r, expected.y_r, 1e-12) << algorithm_name(a);
    if (is_exact(a)) {
      const TRInterval oracle = centroid_exact(WeightedDomain::from_set(cons));
      EXPECT_NEAR(t.y_l, oracle.y_l, 1e-9);
      EXPECT_NEAR(t.y_r, oracle.y_r, 1e-9);
    }
  }
}

TEST(Evaluate, ZeroFiringRuleIsNoOp) {
  SimpleExample ex;
  const EvalResult before = ex.system.evaluate(request(0.8, 0.7));
  const IT2FS zero(ex.grid, V(100, 0.0), V(100, 0.0));
  FuzzySystem extended = copy_system(ex.system);
  extended.add_rule({{"x1", zero}, {"x2", ex.medium}}, {{"y1", ex.small}, {"y2", ex.large}});
  const EvalResult after = extended.evaluate(request(0.8, 0.7));
  for (const char* y : {"y1", "y2"}) {
    EXPECT_NEAR(after.intervals.at(y).y_l, before.intervals.at(y).y_l, 1e-12);
    EXPECT_NEAR(after.intervals.at(y).y_r, before.intervals.at(y).y_r, 1e-12);
  }
}

TEST(Evaluate, RuleOrderInvariance) {
  SimpleExample ex;
  std::vector<Rule> rules = ex.system.rules();
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(rules.begin(), rules.end(), rng);
    FuzzySystem shuffled(ex.grid);
    shuffled.add_input("x1").add_input("x2").add_output("y1").add_output("y2");
    for (const auto& r : rules) shuffled.add_rule(r.antecedent, r.consequent);
    for (Method m : {Method::Centroid, Method::CoSum}) {
      const auto a = ex.system.evaluate(request(0.3, 0.6, m));
      const auto b = shuffled.evaluate(request(0.3, 0.6, m));
      EXPECT_NEAR(a.intervals.at("y1").y_l, b.intervals.at("y1").y_l, 1e-12);
      EXPECT_NEAR(a.intervals.at("y2").y_r, b.intervals.at("y2").y_r, 1e-12);
    }
  }
}

TEST(Evaluate, AllMethodsAndAlgorithmsStayInSpan) {
  SimpleExample ex;
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double x1 = u(rng), x2 = u(rng);
    for (Method m : kAllMethods) {
      for (Algorithm a : kAllAlgorithms) {
        const EvalResult r = ex.system.evaluate(request(x1, x2, m, a));
        ASSERT_EQ(r.intervals.size(), 2u);
        for (const auto& [name, t] : r.intervals) {
          EXPECT_GE(t.y_l, 0.0) << method_name(m) << "/" << algorithm_name(a);
          EXPECT_LE(t.y_r, 1.0) << method_name(m) << "/" << algorithm_name(a);
          EXPECT_LE(t.y_l, t.y_r + 1e-9) << method_name(m) << "/" << algorithm_name(a);
        }
        const bool has_sets = m == Method::Centroid || m == Method::CoSum;
        EXPECT_EQ(r.aggregated.empty(), !has_sets);
      }
    }
  }
}

TEST(Evaluate, MethodsAgreeOnSymmetricInput) {
  SimpleExample ex;
  for (Method m : kAllMethods) {
    const EvalResult r = ex.system.evaluate(request(0.5, 0.5, m));
    EXPECT_NEAR(r.crisp("y1"), 0.5, 1e-6) << method_name(m);
  }
}

TEST(Evaluate, HeightUsesPeakAbscissae) {
  SimpleExample ex;
  const EvalResult r = ex.system.evaluate(request(0.5, 0.5, Method::Height));
  // Only the medium rule is active enough to matter for y1; all peaks are at 0, 0.5 (plateau midpoint), 1.
  EXPECT_NEAR(peak_abscissa(ex.medium), 0.5, 1e-12);
  EXPECT_NEAR(peak_abscissa(ex.small), 0.0, 1e-12);
  EXPECT_GT(r.intervals.at("y1").y_r, r.intervals.at("y1").y_l);
}

TEST(Evaluate, ModifiedHeightPenalisesWideConsequents) {
  const Grid g = Grid::uniform(0, 1, 101);
  const IT2FS in = gaussian_uncert_std_set(g, V{0.5, 0.2, 0.1});
  const IT2FS narrow = gaussian_uncert_std_set(g, V{0.2, 0.05, 0.02});
  const IT2FS wide = gaussian_uncert_std_set(g, V{0.8, 0.2, 0.1});
  FuzzySystem sys(g);
  sys.add_input("x").add_output("y");
  sys.add_rule({{"x", in}}, {{"y", narrow}});
  sys.add_rule({{"x", in}}, {{"y", wide}});
  EvalRequest req;
  req.values = {{"x", 0.5}};
  req.method = Method::Height;
  const double plain = sys.evaluate(req).crisp("y");
  req.method = Method::ModiHe;
  const double modified = sys.evaluate(req).crisp("y");
  EXPECT_NEAR(plain, 0.5, 1e-9);
  EXPECT_LT(modified, plain);
  EXPECT_GT(upper_spread(wide), upper_spread(narrow));
}

TEST(Evaluate, NoRuleFired) {
  const Grid g = Grid::uniform(0, 1, 101);
  const IT2FS left(g, tri_mf(g.points(), V{0, 0.1, 0.2}), tri_mf(g.points(), V{0, 0.1, 0.2, 0.5}));
  FuzzySystem sys(g);
  sys.add_input("x").add_output("y").add_rule({{"x", left}}, {{"y", left}});
  EvalRequest req;
  req.values = {{"x", 0.9}};
  EXPECT_THROW(sys.evaluate(req), NoRuleFired);
  req.fallback = 0.25;
  const EvalResult r = sys.evaluate(req);
  EXPECT_EQ(r.intervals.at("y"), (TRInterval{0.25, 0.25}));
  EXPECT_TRUE(r.aggregated.empty());
}

TEST(Evaluate, SelectorsAndNormKinds) {
  EXPECT_THROW(parse_method("centroid"), ParameterError);
  EXPECT_EQ(parse_method("ModiHe"), Method::ModiHe);
  EXPECT_EQ(method_name(Method::CoSet), "CoSet");
  SimpleExample ex;
  EvalRequest r = request(0.2, 0.2);
  r.t_norm = Norm::max_s();
  EXPECT_THROW(ex.system.evaluate(r), ParameterError);
}

TEST(Copy, IndependentSystem) {
  SimpleExample ex;
  FuzzySystem copy = copy_system(ex.system);
  const auto a = ex.system.evaluate(request(0.1, 0.2));
  const auto b = copy.evaluate(request(0.1, 0.2));
  EXPECT_EQ(a.intervals.at("y1"), b.intervals.at("y1"));
  copy.add_rule({{"x1", ex.small}}, {{"y1", ex.large}});
  EXPECT_EQ(ex.system.rules().size(), 3u);
  EXPECT_EQ(copy.rules().size(), 4u);
  const FuzzySystem empty = copy_system(FuzzySystem(ex.grid));
  EXPECT_TRUE(empty.rules().empty());
  EXPECT_TRUE(empty.inputs().empty());
}

TEST(Evaluate, ConcurrentCallsAgree) {
  SimpleExample ex;
  const auto expected = ex.system.evaluate(request(0.42, 0.77)).intervals.at("y1");
  std::vector<TRInterval> got(4);
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < got.size(); ++i) {
    threads.emplace_back([&, i] {
      for (int k = 0; k < 50; ++k) got[i] = ex.system.evaluate(request(0.42, 0.77)).intervals.at("y1");
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& t : got) EXPECT_EQ(t, expected);
}
