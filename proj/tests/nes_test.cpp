#include "nhc/nes.hpp"
#include "nhc/selftest.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace nhc;
using Vector = Eigen::VectorXd;

TEST_CASE("population sampling") {
  std::mt19937_64 a(7), b(7);
  const auto pa = sample_population(30, 20, a);
  const auto pb = sample_population(30, 20, b);
  REQUIRE(pa.size() == 20);
  for (std::size_t o = 0; o < pa.size(); ++o) {
    CHECK(pa[o].size() == 30);
    CHECK(pa[o] == pb[o]);
  }
}

TEST_CASE("perturbations have zero mean") {
  std::mt19937_64 rng(42);
  const int draws = 100000;
  const auto eps = sample_population(4, draws, rng);
  Vector mean = Vector::Zero(4);
  for (const auto& e : eps) mean += e;
  mean /= draws;
  for (Eigen::Index k = 0; k < 4; ++k) CHECK(std::abs(mean(k)) < 3.0 / std::sqrt(double(draws)));
}

TEST_CASE("rank utilities") {
  SUBCASE("two offspring") {
    const std::vector<double> f{1.0, 0.0};
    const Vector u = rank_transform(f);
    CHECK(u(0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(u(1) == doctest::Approx(-0.5).epsilon(1e-15));
  }
  SUBCASE("sum to zero, even for equal fitness") {
    const std::vector<double> equal(20, 1.3);
    CHECK(std::abs(rank_transform(equal).sum()) < 1e-12);
    std::mt19937_64 rng(2);
    std::vector<double> f(20);
    for (auto& x : f) x = std::uniform_real_distribution<double>(0, 2)(rng);
    CHECK(std::abs(rank_transform(f).sum()) < 1e-12);
  }
  SUBCASE("depend only on the ranks") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> f(20), g(20);
      for (std::size_t k = 0; k < f.size(); ++k) {
        f[k] = std::uniform_real_distribution<double>(-1, 1)(rng);
        g[k] = std::exp(3.0 * f[k]) + f[k] * f[k] * f[k];
      }
      CHECK(rank_transform(f) == rank_transform(g));
    }
  }
  SUBCASE("better offspring never get less") {
    const std::vector<double> f{0.1, 0.7, 0.3, 0.9, 0.5};
    const Vector u = rank_transform(f);
    CHECK(u(3) > u(1));
    CHECK(u(1) > u(4));
    CHECK(u(4) >= u(2));
    CHECK(u(2) >= u(0));
  }
}

TEST_CASE("parameter update") {
  NesConfig cfg;
  std::mt19937_64 rng(5);
  const Vector theta = Vector::Random(12);
  const auto eps = sample_population(12, cfg.population, rng);

  SUBCASE("zero utilities only decay") {
    CHECK(nes_update(theta, eps, Vector::Zero(cfg.population), cfg) == cfg.lambda * theta);
  }
  SUBCASE("a dominant offspring pulls theta towards itself") {
    std::vector<double> f(cfg.population, 0.0);
    f[4] = 1.0;
    const Vector moved = nes_update(theta, eps, rank_transform(f), cfg) / cfg.lambda - theta;
    CHECK(moved.dot(eps[4]) > 0.0);
  }
  SUBCASE("matches the closed form") {
    const Vector u = Vector::Random(cfg.population);
    Vector sum = Vector::Zero(12);
    for (int o = 0; o < cfg.population; ++o) sum += u(o) * eps[o];
    const Vector expected = cfg.lambda * (theta + cfg.alpha / (cfg.population * cfg.sigma) * sum);
    CHECK((nes_update(theta, eps, u, cfg) - expected).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("sphere objective converges") {
  const suites::SuiteResult r = suites::nes_sphere(5, 2000, 0.05);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("restart monitor") {
  SUBCASE("strictly improving never restarts") {
    RestartMonitor m(2000);
    for (int k = 0; k < 10000; ++k) CHECK_FALSE(m.observe(k * 1e-3));
  }
  SUBCASE("flat history restarts at the window") {
    RestartMonitor m(2000);
    for (int k = 1; k < 2000; ++k) REQUIRE_FALSE(m.observe(0.5));
    CHECK(m.observe(0.5));
  }
  SUBCASE("an improvement at 1999 resets the count") {
    RestartMonitor m(2000);
    for (int k = 1; k < 1999; ++k) REQUIRE_FALSE(m.observe(0.5));
    CHECK_FALSE(m.observe(0.6));
    int fired_at = 0;
    for (int k = 2000; k < 6000 && !fired_at; ++k)
      if (m.observe(0.5)) fired_at = k;
    CHECK(fired_at == 3999);
  }
  SUBCASE("lower values do not count as improvements") {
    RestartMonitor m(3);
    CHECK_FALSE(m.observe(1.0));
    CHECK_FALSE(m.observe(0.2));
    CHECK(m.observe(0.9));
  }
}

TEST_CASE("config validation") {
  NesConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.sigma = 0.0;
  CHECK_THROWS(cfg.validate());
}
