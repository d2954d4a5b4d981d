#include <cmath>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "varinterp/error.hpp"
#include "varinterp/exponent.hpp"
#include "varinterp/rearrange.hpp"

using namespace varinterp;
using doctest::Approx;

namespace {

oracle::Atoms random_atoms(oracle::Rng& rng, int n) {
  oracle::Atoms a;
  for (int i = 0; i < n; ++i) {
    const double v = (i > 0 && rng.uniform(0, 1) < 0.2) ? a.back().first : rng.log_uniform(0.1, 10.0);
    a.emplace_back(v, rng.log_uniform(0.01, 10.0));
  }
  return a;
}

AtomFunction to_function(const oracle::Atoms& a) {
  std::vector<Atom> atoms;
  for (const auto& [v, m] : a) atoms.push_back({v, m});
  return AtomFunction(atoms);
}

const ExponentFunction two = ExponentFunction::constant(2.0);

}  // namespace

TEST_SUITE("rearrange") {
  TEST_CASE("distribution function") {
    const AtomFunction f({{1.0, 1.0}, {2.0, 0.5}});
    CHECK(distribution_function(f, 1.5) == 0.5);
    CHECK(distribution_function(f, 2.0) == 0.0);
    CHECK(distribution_function(f, 7.0) == 0.0);
    CHECK(distribution_function(AtomFunction({{3.0, 2.0}}), 0.0) == 2.0);
    CHECK_THROWS_AS(distribution_function(f, -1.0), DomainError);
  }

  TEST_CASE("rearrangement of simple atom sets") {
    const RearrangementProfile one = rearrangement(AtomFunction({{3.0, 2.0}}));
    REQUIRE(one.levels().size() == 1);
    CHECK(one.levels()[0] == 3.0);
    CHECK(one(0.0) == 3.0);
    CHECK(one(1.999) == 3.0);
    CHECK(one(2.0) == 0.0);

    const RearrangementProfile two_atoms = rearrangement(AtomFunction({{1.0, 1.0}, {2.0, 0.5}}));
    REQUIRE(two_atoms.levels().size() == 2);
    CHECK(two_atoms.levels()[0] == 2.0);
    CHECK(two_atoms.levels()[1] == 1.0);
    CHECK(two_atoms.breakpoints()[1] == 0.5);
    CHECK(two_atoms.breakpoints()[2] == 1.5);
    CHECK(two_atoms(0.5) == 1.0);  // right-continuous
    CHECK(two_atoms.integral(1.0) == Approx(1.5));
  }

  TEST_CASE("equal values merge and zeros drop") {
    const RearrangementProfile p = rearrangement(AtomFunction({{2.0, 1.0}, {0.0, 5.0}, {2.0, 0.5}}));
    REQUIRE(p.levels().size() == 1);
    CHECK(p.total_mass() == 1.5);
    CHECK(rearrangement(AtomFunction()).empty());
  }

  TEST_CASE("atoms reject negative values and non-positive masses") {
    CHECK_THROWS_AS(AtomFunction({{-1.0, 1.0}}), DomainError);
    CHECK_THROWS_AS(AtomFunction({{1.0, 0.0}}), DomainError);
    CHECK_THROWS_AS(AtomFunction({{INFINITY, 1.0}}), DomainError);
  }

  TEST_CASE("property: equimeasurability, mass preservation and monotonicity") {
    oracle::Rng rng(21);
    for (int i = 0; i < 50; ++i) {
      const oracle::Atoms a = random_atoms(rng, 20);
      const RearrangementProfile p = rearrangement(to_function(a));
      for (int k = 0; k < 50; ++k) {
        const double lambda = rng.uniform(0.0, 11.0);
        CHECK(p.distribution(lambda) == Approx(oracle::distribution(a, lambda)).epsilon(1e-13));
      }
      CHECK(p.total_integral() == Approx(oracle::l1(a)).epsilon(1e-13));
      for (std::size_t k = 1; k < p.levels().size(); ++k) CHECK(p.levels()[k] < p.levels()[k - 1]);
    }
  }

  TEST_CASE("lorentz norm of an indicator") {
    CHECK(std::abs(lorentz_norm(AtomFunction({{1.0, 1.0}}), two, two, HaarGrid(16, 32)) - 1.0) < 1e-6);
    CHECK(lorentz_norm(AtomFunction(), two, two, HaarGrid(16, 32)) == 0.0);
  }

  TEST_CASE("lorentz norm with p = q is the L^p norm") {
    const AtomFunction f({{2.0, 1.0}, {1.0, 2.0}});
    CHECK(lorentz_norm(f, two, two, HaarGrid(16, 32)) == Approx(std::sqrt(6.0)).epsilon(1e-6));
    oracle::Rng rng(22);
    const HaarGrid grid(16, 32);
    for (int i = 0; i < 30; ++i) {
      const oracle::Atoms a = random_atoms(rng, rng.integer(1, 20));
      const double p = rng.uniform(1.0, 4.0);
      double s = 0.0;
      for (const auto& [v, m] : a) s += std::pow(v, p) * m;
      const ExponentFunction pp = ExponentFunction::constant(p);
      CHECK(lorentz_norm(to_function(a), pp, pp, grid) == Approx(std::pow(s, 1.0 / p)).epsilon(1e-4));
    }
  }

  TEST_CASE("lorentz norm with p != q against the closed-form step integral") {
    oracle::Rng rng(23);
    const HaarGrid grid(16, 32);
    for (int i = 0; i < 30; ++i) {
      const oracle::Atoms a = random_atoms(rng, rng.integer(1, 20));
      const double p = rng.uniform(1.0, 4.0);
      const double q = rng.uniform(1.0, 4.0);
      CHECK(lorentz_norm(to_function(a), ExponentFunction::constant(p), ExponentFunction::constant(q), grid) ==
            Approx(oracle::lorentz_closed(a, p, q)).epsilon(1e-3));
    }
  }

  TEST_CASE("discrete lorentz norm of an indicator") {
    // f* is right-continuous, so f*(1) = 0 and only v = -16..-1 contribute
    const double got = lorentz_discrete_norm(AtomFunction({{1.0, 1.0}}), two, two, 16);
    CHECK(got == Approx(std::sqrt(1.0 - std::exp2(-16.0))).epsilon(1e-14));
    CHECK(lorentz_discrete_norm(AtomFunction(), two, two, 16) == 0.0);
  }

  TEST_CASE("discrete and quadrature lorentz norms stay in a fixed bracket") {
    oracle::Rng rng(24);
    const HaarGrid grid(16, 32);
    double c = 1.0;
    for (int i = 0; i < 50; ++i) {
      const AtomFunction f = to_function(random_atoms(rng, rng.integer(1, 20)));
      const ExponentFunction p = ExponentFunction::constant(rng.uniform(1.0, 4.0));
      const ExponentFunction q = ExponentFunction::constant(rng.uniform(1.0, 4.0));
      const double r = lorentz_discrete_norm(f, p, q, 16) / lorentz_norm(f, p, q, grid);
      c = std::max({c, r, 1.0 / r});
    }
    MESSAGE("discrete/continuous Lorentz bracket C = " << c);
    CHECK(std::isfinite(c));
    CHECK(c < 4.0);
  }

  TEST_CASE("property: lorentz norms are homogeneous") {
    oracle::Rng rng(25);
    const HaarGrid grid(16, 32);
    for (int i = 0; i < 30; ++i) {
      const AtomFunction f = to_function(random_atoms(rng, rng.integer(1, 20)));
      const ExponentFunction p = ExponentFunction::constant(rng.uniform(1.0, 4.0));
      const ExponentFunction q = i % 2 ? ExponentFunction::constant(rng.uniform(1.0, 4.0))
                                       : parse_exponent("2 + 1/log(e + t + 1/t) @0=2 @inf=2");
      const double c = rng.log_uniform(0.1, 10.0);
      CHECK(lorentz_norm(f.scaled(c), p, q, grid) == Approx(c * lorentz_norm(f, p, q, grid)).epsilon(1e-8));
      CHECK(lorentz_discrete_norm(f.scaled(c), p, q, 16) == Approx(c * lorentz_discrete_norm(f, p, q, 16)).epsilon(1e-8));
    }
  }
}
