#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "varinterp/error.hpp"
#include "varinterp/exponent.hpp"
#include "varinterp/varleb.hpp"

using namespace varinterp;
using doctest::Approx;

namespace {

double ramp(double t) { return t <= 1.0 ? t : 0.0; }

double q_log(double t) { return 2.0 + 1.0 / std::log(std::numbers::e + 1.0 / t); }

/// Random nonnegative step function on the grid.
SampledFunction random_phi(oracle::Rng& rng, const HaarGrid& grid) {
  std::vector<double> v(grid.size(), 0.0);
  const int runs = rng.integer(1, 4);
  for (int r = 0; r < runs; ++r) {
    const int a = rng.integer(0, static_cast<int>(grid.size()) - 1);
    const int b = std::min<int>(static_cast<int>(grid.size()), a + rng.integer(1, 200));
    const double h = rng.log_uniform(1e-2, 1e2);
    for (int i = a; i < b; ++i) v[static_cast<std::size_t>(i)] = h;
  }
  return {grid, std::move(v)};
}

ExponentFunction random_q(oracle::Rng& rng) {
  switch (rng.integer(0, 2)) {
    case 0:
      return ExponentFunction::constant(rng.uniform(1.0, 4.0));
    case 1:
      return parse_exponent("2 + 1/log(e + 1/t) @0=2 @inf=3");
    default:
      return ExponentFunction::table({0.01, 10.0}, {rng.uniform(1, 4), rng.uniform(1, 4), rng.uniform(1, 4)});
  }
}

}  // namespace

TEST_SUITE("varleb") {
  TEST_CASE("grid layout") {
    const HaarGrid g(16, 32);
    CHECK(g.size() == 2 * 16 * 32);
    CHECK(g.lower() == std::exp2(-16.0));
    CHECK(g.upper() == Approx(std::exp2(16.0)).epsilon(1e-15));
    const auto nodes = g.nodes();
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      CHECK(nodes[i] > nodes[i - 1]);
      CHECK(nodes[i] / nodes[i - 1] == Approx(std::exp2(1.0 / 32)).epsilon(1e-13));
    }
    CHECK(g.log_step() == Approx(std::numbers::ln2 / 32));
    // Probe points nest under refinement.
    const auto coarse = HaarGrid(4, 2).probe_points();
    const auto fine = HaarGrid(4, 4).probe_points();
    for (double x : coarse) {
      CHECK(std::any_of(fine.begin(), fine.end(), [&](double y) { return std::abs(x - y) <= 1e-14 * x; }));
    }
    CHECK_THROWS(HaarGrid(0, 4));
    CHECK_THROWS(HaarGrid(4, 0));
  }

  TEST_CASE("modular of t on (0, 1] with q = 2 is 1/2") {
    const SampledFunction phi = SampledFunction::sample(HaarGrid(16, 256), ramp);
    CHECK(std::abs(modular(phi, ExponentFunction::constant(2.0)) - 0.5) < 1e-6);
    // Default grid: midpoint error of order (ln 2 / spo)^2.
    const SampledFunction coarse = SampledFunction::sample(HaarGrid(16, 32), ramp);
    CHECK(std::abs(modular(coarse, ExponentFunction::constant(2.0)) - 0.5) < 1e-4);
  }

  TEST_CASE("modular of zero is zero") {
    const SampledFunction zero = SampledFunction::zero(HaarGrid(4, 4));
    CHECK(modular(zero, parse_exponent("2 + 1/log(e + 1/t)")) == 0.0);
    CHECK(luxemburg_norm(zero, ExponentFunction::constant(3.0)) == 0.0);
  }

  TEST_CASE("modular with variable exponent against a Simpson oracle") {
    const ExponentFunction q = parse_exponent("2 + 1/log(e + 1/t) @0=2 @inf=3");
    const double exact = oracle::log_integral([](double t) { return std::pow(ramp(t), q_log(t)); }, std::exp2(-16.0), 1.0);
    const double fine = modular(SampledFunction::sample(HaarGrid(16, 256), ramp), q);
    const double coarse = modular(SampledFunction::sample(HaarGrid(16, 32), ramp), q);
    CHECK(fine == Approx(exact).epsilon(2e-6));
    CHECK(coarse == Approx(exact).epsilon(2e-4));
  }

  TEST_CASE("norm of t on (0, 1] with q = 2 is 1/sqrt 2") {
    const SampledFunction phi = SampledFunction::sample(HaarGrid(16, 4096), ramp);
    CHECK(std::abs(luxemburg_norm(phi, ExponentFunction::constant(2.0)) - std::sqrt(0.5)) < 1e-8);
  }

  TEST_CASE("norm of the indicator of [1, e] with q = 1 is 1") {
    // Cell averages of the indicator make the q = 1 quadrature exact.
    const HaarGrid grid(4, 32);
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double lo = std::max(std::log(grid.edge(i)), 0.0);
      const double hi = std::min(std::log(grid.edge(i + 1)), 1.0);
      v[i] = std::max(hi - lo, 0.0) / grid.log_step();
    }
    CHECK(std::abs(luxemburg_norm(SampledFunction(grid, v), ExponentFunction::constant(1.0)) - 1.0) < 1e-8);
  }

  TEST_CASE("variable-exponent norm against bisection on the Simpson modular") {
    const ExponentFunction q = parse_exponent("2 + 1/log(e + 1/t) @0=2 @inf=3");
    const double expected = oracle::bisect_norm([](double lambda) {
      return oracle::log_integral([&](double t) { return std::pow(ramp(t) / lambda, q_log(t)); }, std::exp2(-16.0), 1.0);
    });
    const double got = luxemburg_norm(SampledFunction::sample(HaarGrid(16, 32), ramp), q);
    CHECK(got == Approx(expected).epsilon(1e-4));
  }

  TEST_CASE("unit ball") {
    const HaarGrid grid(4, 8);
    const ExponentFunction q2 = ExponentFunction::constant(2.0);
    // Unit modular: constant value on the whole grid with sum v^2 du = 1.
    const double total = static_cast<double>(grid.size()) * grid.log_step();
    const SampledFunction unit(grid, std::vector<double>(grid.size(), 1.0 / std::sqrt(total)));
    const UnitBallReport r = unit_ball_check(unit, q2);
    CHECK(r.norm == Approx(1.0).epsilon(1e-12));
    CHECK(r.modular == Approx(1.0).epsilon(1e-12));
    CHECK(r.consistent);
    const UnitBallReport twice = unit_ball_check(unit.scaled(2.0), q2);
    CHECK(twice.norm == Approx(2.0).epsilon(1e-12));
    CHECK(twice.modular == Approx(4.0).epsilon(1e-12));
    CHECK_FALSE(twice.norm_in_ball);
    CHECK(twice.consistent);
  }

  TEST_CASE("unit-ball equivalence on random instances") {
    oracle::Rng rng(11);
    const HaarGrid grid(8, 16);
    for (int i = 0; i < 100; ++i) {
      const SampledFunction phi = random_phi(rng, grid);
      const ExponentFunction q = random_q(rng);
      CHECK(unit_ball_check(phi, q).consistent);
    }
  }

  TEST_CASE("sandwich") {
    const HaarGrid grid(4, 16);
    const SandwichReport c = modular_norm_sandwich(SampledFunction::sample(grid, ramp), ExponentFunction::constant(3.0));
    CHECK(c.lower == Approx(c.norm).epsilon(1e-12));
    CHECK(c.upper == Approx(c.norm).epsilon(1e-12));

    const ExponentFunction q = ExponentFunction::table({1.0}, {2.0, 4.0});
    auto chi = [](double t) { return t >= 0.5 && t <= 2.0 ? 1.0 : 0.0; };
    const SandwichReport r = modular_norm_sandwich(SampledFunction::sample(grid, chi), q);
    CHECK(r.holds);
    CHECK(r.q_minus == 2.0);
    CHECK(r.q_plus == 4.0);
    // chi^q integrates to 2 ln 2 whatever the exponent.
    CHECK(r.modular == Approx(2.0 * std::numbers::ln2).epsilon(1e-12));
    CHECK(r.lower == Approx(std::pow(r.modular, 0.25)).epsilon(1e-12));
    CHECK(r.upper == Approx(std::pow(r.modular, 0.5)).epsilon(1e-12));

    const SandwichReport z = modular_norm_sandwich(SampledFunction::zero(grid), q);
    CHECK(z.norm == 0.0);
    CHECK(z.lower == 0.0);
    CHECK(z.upper == 0.0);
    CHECK(z.holds);
  }

  TEST_CASE("lambda norm") {
    TwoSidedSequence a(4);
    a.set(-1, 1.0);
    a.set(0, 1.0);
    a.set(1, 1.0);
    CHECK(lambda_norm(a, {1.0, 1.0, 1.0}) == Approx(3.5).epsilon(1e-15));
    CHECK(lambda_norm(TwoSidedSequence(4), {0.5, 2.0, 3.0}) == 0.0);

    const TwoSidedSequence b = TwoSidedSequence::generate(6, [](int v) { return std::abs(v) <= 4 ? std::exp2(0.5 * v) : 0.0; });
    double lower = 0.0;
    double upper = 0.0;
    for (int v = -6; v <= 6; ++v) {
      const double x = std::exp2(-0.5 * v) * b[v];
      (v <= 0 ? lower : upper) += v <= 0 ? x * x : x * x * x;
    }
    CHECK(lambda_norm(b, {0.5, 2.0, 3.0}) == Approx(std::sqrt(lower) + std::cbrt(upper)).epsilon(1e-14));
    CHECK_THROWS_AS(TwoSidedSequence(2, {1.0, 2.0}), DimensionError);
    CHECK_THROWS(TwoSidedSequence(1, {1.0, -1.0, 0.0}));
  }

  TEST_CASE("sampled functions reject bad input") {
    CHECK_THROWS_AS(SampledFunction(HaarGrid(1, 1), {1.0}), DimensionError);
    CHECK_THROWS_AS(SampledFunction(HaarGrid(1, 1), {1.0, -1.0}), DomainError);
    CHECK_THROWS_AS(SampledFunction(HaarGrid(1, 1), {1.0, NAN}), DomainError);
  }

  TEST_CASE("norms that overflow a double raise divergence") {
    const SampledFunction huge(HaarGrid(1, 1), {1.7e308, 1.7e308});
    CHECK_THROWS_AS(luxemburg_norm(huge, ExponentFunction::constant(1.0)), DivergenceError);
  }

  TEST_CASE("property: homogeneity, monotonicity, unit modular, triangle inequality") {
    oracle::Rng rng(5);
    const HaarGrid grid(8, 16);
    for (int i = 0; i < 60; ++i) {
      const SampledFunction phi = random_phi(rng, grid);
      const SampledFunction psi = random_phi(rng, grid);
      const ExponentFunction q = random_q(rng);
      const double n = luxemburg_norm(phi, q);
      const double c = rng.log_uniform(1e-3, 1e3);
      CHECK(luxemburg_norm(phi.scaled(c), q) == Approx(c * n).epsilon(1e-8));
      CHECK(modular(phi.scaled(1.0 / n), q) == Approx(1.0).epsilon(1e-6));

      std::vector<double> sum(grid.size());
      std::vector<double> larger(grid.size());
      for (std::size_t k = 0; k < grid.size(); ++k) {
        sum[k] = phi[k] + psi[k];
        larger[k] = std::max(phi[k], psi[k]);
      }
      const double np = luxemburg_norm(psi, q);
      CHECK(luxemburg_norm(SampledFunction(grid, sum), q) <= n + np + 1e-8);
      CHECK(n <= luxemburg_norm(SampledFunction(grid, larger), q) + 1e-10);
    }
  }

  TEST_CASE("property: lambda norm with equal exponents matches the weighted l^q norm") {
    // The two-sum form equals the single l^q norm at q = 1 and lies within 2^(1 - 1/q) of it otherwise.
    oracle::Rng rng(6);
    for (int i = 0; i < 50; ++i) {
      const int V = rng.integer(1, 10);
      const double theta = rng.uniform(0.0, 1.0);
      const double q = i % 5 == 0 ? 1.0 : rng.uniform(1.0, 5.0);
      std::vector<double> vals;
      std::vector<double> weighted;
      for (int v = -V; v <= V; ++v) {
        vals.push_back(rng.uniform(0.0, 3.0));
        weighted.push_back(std::exp2(-v * theta) * vals.back());
      }
      const double single = oracle::lq(weighted, q);
      const double two_sum = lambda_norm(TwoSidedSequence(V, vals), {theta, q, q});
      CHECK(two_sum >= single * (1.0 - 1e-12));
      CHECK(two_sum <= std::pow(2.0, 1.0 - 1.0 / q) * single * (1.0 + 1e-12));
      if (q == 1.0) CHECK(two_sum == Approx(single).epsilon(1e-12));
    }
  }
}
