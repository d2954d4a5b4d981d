#include <cmath>
#include <numbers>

#include <doctest.h>

#include "varinterp/error.hpp"
#include "varinterp/exponent.hpp"
#include "varinterp/expression.hpp"

using namespace varinterp;
using doctest::Approx;

namespace {
constexpr double e = std::numbers::e;
double p_log(double t) { return 2.0 + 1.0 / std::log(e + 1.0 / t); }
}  // namespace

TEST_SUITE("exponents") {
  TEST_CASE("constant exponent evaluates to its value everywhere") {
    const ExponentFunction p = ExponentFunction::constant(2.0);
    CHECK(p(5.0) == 2.0);
    CHECK(p(1e-300) == 2.0);
    CHECK(p.at_zero() == 2.0);
    CHECK(p.at_infinity() == 2.0);
    CHECK(p.is_constant());
  }

  TEST_CASE("expression exponent: limit at the origin and direct evaluation") {
    const ExponentFunction p = parse_exponent("2 + 1/log(e + 1/t)");
    CHECK(std::abs(p(1e-12) - 2.0) < 0.04);
    CHECK(p.at_zero() == Approx(p_log(1e-12)).epsilon(1e-12));
    CHECK(p(1.0) == Approx(p_log(1.0)).epsilon(1e-15));
    CHECK(p.at_infinity() == Approx(p_log(1e12)).epsilon(1e-12));
  }

  TEST_CASE("limit of 2 + 1/log(e + 1/t) at the origin is 2 within 1e-9 once annotated") {
    // Probing at t = 1e-12 is still 0.036 away from the limit; the annotation carries the exact value.
    const ExponentFunction p = parse_exponent("2 + 1/log(e + 1/t) @0=2 @inf=3");
    CHECK(std::abs(p.at_zero() - 2.0) < 1e-9);
    CHECK(p.at_infinity() == 3.0);
  }

  TEST_CASE("annotations disagreeing with the probe by more than 0.1 are rejected") {
    CHECK_THROWS_AS(parse_exponent("2 + 1/log(e + 1/t) @0=2.5"), ConfigError);
    CHECK_THROWS_AS(parse_exponent("2 + 1/log(e + 1/t) @inf=2"), ConfigError);
    CHECK_NOTHROW(parse_exponent("2 + 1/log(e + 1/t) @0=2.05 @inf=2.95"));
  }

  TEST_CASE("syntax errors carry the 0-based column") {
    try {
      parse_exponent("2 +");
      FAIL("expected a syntax error");
    } catch (const SyntaxError& err) {
      CHECK(err.offset() == 3);
      CHECK(std::string(err.what()).find("column 3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_exponent("2 * (t + 1"), SyntaxError);
    CHECK_THROWS_AS(parse_exponent("foo(t)"), SyntaxError);
    CHECK_THROWS_AS(parse_exponent(""), SyntaxError);
  }

  TEST_CASE("domain and range errors") {
    const ExponentFunction p = parse_exponent("1 + t");
    CHECK_THROWS_AS(p(0.0), DomainError);
    CHECK_THROWS_AS(p(-1.0), DomainError);
    CHECK_THROWS_AS(ExponentFunction::constant(0.5), InvalidExponentError);
    const ExponentFunction below = ExponentFunction::expression(Expression::parse("2 - t"), 2.0, 2.0);
    CHECK_THROWS_AS(below(1.5), InvalidExponentError);
    CHECK_THROWS_AS(parse_exponent("1/(t - t)"), InvalidExponentError);
  }

  TEST_CASE("table exponent uses left-closed cells") {
    const ExponentFunction p = ExponentFunction::table({1.0}, {2.0, 4.0});
    CHECK(p(0.999) == 2.0);
    CHECK(p(1.0) == 4.0);
    CHECK(p(std::nextafter(1.0, 0.0)) == 2.0);
    CHECK(p.at_zero() == 2.0);
    CHECK(p.at_infinity() == 4.0);
    CHECK_THROWS(ExponentFunction::table({1.0}, {2.0}));
    CHECK_THROWS(ExponentFunction::table({2.0, 1.0}, {2.0, 3.0, 4.0}));
  }

  TEST_CASE("essential bounds") {
    const HaarGrid grid(16, 32);
    auto [lo, hi] = essential_bounds(ExponentFunction::constant(3.0), grid);
    CHECK(lo == 3.0);
    CHECK(hi == 3.0);

    std::tie(lo, hi) = essential_bounds(parse_exponent("2 + 1/log(e + 1/t)"), grid);
    CHECK(lo == Approx(p_log(std::exp2(-16.0))).epsilon(1e-13));
    CHECK(hi == Approx(p_log(std::exp2(16.0))).epsilon(1e-13));

    std::tie(lo, hi) = essential_bounds(ExponentFunction::table({1.0}, {2.0, 4.0}), grid);
    CHECK(lo == 2.0);
    CHECK(hi == 4.0);
  }

  TEST_CASE("log-Hölder constants vanish for constant exponents") {
    const LogHolderReport r = estimate_log_holder(ExponentFunction::constant(2.5), HaarGrid(8, 8));
    CHECK(r.c_log_origin == 0.0);
    CHECK(r.c_log_infinity == 0.0);
    CHECK(r.c_log_local == 0.0);
    CHECK(r.locally_log_holder);
  }

  TEST_CASE("origin constant of 2 + 1/log(e + 1/t) is 1") {
    const ExponentFunction p = parse_exponent("2 + 1/log(e + 1/t) @0=2 @inf=3");
    const LogHolderReport coarse = estimate_log_holder(p, HaarGrid(8, 8));
    const LogHolderReport fine = estimate_log_holder(p, HaarGrid(16, 16));
    CHECK(coarse.c_log_origin <= 1.0 + 1e-12);
    CHECK(fine.c_log_origin == Approx(1.0).epsilon(1e-12));
    CHECK(fine.c_log_origin >= coarse.c_log_origin - 1e-12);
    CHECK(fine.locally_log_holder);
  }

  TEST_CASE("a jump is flagged as not locally log-Hölder") {
    const LogHolderReport r = estimate_log_holder(ExponentFunction::table({1.0}, {2.0, 3.0}), HaarGrid(8, 8));
    CHECK_FALSE(r.locally_log_holder);
    CHECK(r.c_log_local_4x > r.c_log_local_2x);
    CHECK(r.c_log_local_2x > r.c_log_local);
  }

  TEST_CASE("estimates never decrease under refinement") {
    for (const char* src : {"2 + 1/log(e + 1/t) @0=2 @inf=3", "3 - 1/log(e + t) @0=2 @inf=3",
                            "1.5 + 0.5/log(e + t + 1/t) @0=1.5 @inf=1.5"}) {
      const ExponentFunction p = parse_exponent(src);
      const LogHolderReport a = estimate_log_holder(p, HaarGrid(8, 4));
      const LogHolderReport b = estimate_log_holder(p, HaarGrid(8, 8));
      CHECK(b.c_log_origin >= a.c_log_origin - 1e-12);
      CHECK(b.c_log_infinity >= a.c_log_infinity - 1e-12);
      CHECK(b.c_log_local >= a.c_log_local - 1e-12);
    }
  }

  TEST_CASE("reciprocal constants use the limits 1/p(0) and 1/p_inf") {
    const ExponentFunction p = parse_exponent("2 + 1/log(e + 1/t) @0=2 @inf=3");
    const HaarGrid grid(8, 8);
    const LogHolderReport r = estimate_log_holder_reciprocal(p, grid);
    const LogHolderReport g = estimate_log_holder([&](double t) { return 1.0 / p(t); }, 0.5, 1.0 / 3.0, grid);
    CHECK(r.c_log_origin == Approx(g.c_log_origin).epsilon(1e-14));
    CHECK(r.c_log_local == Approx(g.c_log_local).epsilon(1e-14));
    CHECK(r.c_log_origin < 1.0);
  }

  TEST_CASE("expressions round-trip through their canonical text") {
    const Expression a = Expression::parse("min(t, 2) * exp(0 - t) + max(1, log(e + t)) / 3");
    const Expression b = Expression::parse(a.to_string());
    for (double t : {0.1, 1.0, 7.5}) CHECK(a(t) == b(t));
    CHECK(a.depends_on_t());
    CHECK_FALSE(Expression::parse("2 * e").depends_on_t());
  }
}
