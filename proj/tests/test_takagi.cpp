#include <cmath>
#include <random>

#include "doctest.h"
#include "limcurve/digitsum.hpp"
#include "limcurve/error.hpp"
#include "limcurve/takagi.hpp"
#include "oracle.hpp"

using namespace limcurve;

namespace {

Rational R(const char* s) { return parse_rational(s); }

Rational T(const char* a, const char* t) {
  return takagi_dyadic_exact(*DyadicRational::from_rational(R(t)), R(a));
}

}  // namespace

TEST_CASE("DyadicRational canonical form") {
  const DyadicRational d(Integer(12), 5);
  CHECK(d.numerator() == 3);
  CHECK(d.exponent() == 3);
  CHECK(d.value() == R("3/8"));
  CHECK(DyadicRational(Integer(0), 9).exponent() == 0);
  CHECK(DyadicRational::from_rational(R("5/16"))->exponent() == 4);
  CHECK_FALSE(DyadicRational::from_rational(R("1/3")).has_value());
  CHECK(DyadicRational(Integer(1), 0).in_unit_interval());
  CHECK_FALSE(DyadicRational(Integer(3), 1).in_unit_interval());
}

TEST_CASE("nearest_int_dist") {
  CHECK(nearest_int_dist(R("3/4")) == R("1/4"));
  CHECK(nearest_int_dist(R("-3/4")) == R("1/4"));
  CHECK(nearest_int_dist(R("5/2")) == R("1/2"));
  CHECK(nearest_int_dist(R("7")) == 0);
}

TEST_CASE("Takagi values at dyadic points") {
  CHECK(T("2/3", "1/4") == R("7/12"));
  CHECK(T("1/2", "1/2") == R("1/2"));
  CHECK(T("2/3", "0") == 0);
  CHECK(T("2/3", "1") == 0);
  // a = 1/4 is the parabola 2t(1-t)
  CHECK(T("1/4", "3/8") == R("15/32"));
  CHECK(T("1/4", "1/2") == R("1/2"));
  for (int j = 0; j <= 64; ++j) {
    const Rational t(j, 64);
    Rational tc = t;
    tc.canonicalize();
    CHECK(takagi_dyadic_exact(*DyadicRational::from_rational(tc), R("1/4")) == 2 * tc * (1 - tc));
  }
}

TEST_CASE("takagi_dyadic_exact agrees with the terminating series") {
  for (const char* a : {"2/3", "-2/3", "1/2", "9/10", "1/4", "-1/3"}) {
    for (std::uint64_t k = 0; k <= 256; ++k) {
      CHECK(takagi_dyadic_exact(DyadicRational(Integer(static_cast<unsigned long>(k)), 8), R(a)) ==
            oracle::takagi_dyadic(k, 8, R(a)));
    }
  }
}

TEST_CASE("takagi_dyadic_exact rejects bad input") {
  CHECK_THROWS_AS(takagi_dyadic_exact(DyadicRational(Integer(3), 1), R("2/3")), Error);
  CHECK_THROWS_AS(takagi_dyadic_exact(DyadicRational(Integer(1), 1), R("1")), Error);
  CHECK_THROWS_AS(takagi_dyadic_exact(DyadicRational(Integer(1), 1), R("-3/2")), Error);
}

TEST_CASE("takagi_series truncation bound") {
  const Rational a = R("2/3");
  const SeriesValue v = takagi_series(R("1/3"), a, 1e-12);
  // 1/3 has period 2 in base 2: T_a(1/3) = (1/3) / (1 - a)
  const double exact = 1.0 / 3.0 / (1.0 - 2.0 / 3.0);
  CHECK(std::abs(v.value - exact) <= v.bound);
  CHECK(v.bound <= 1e-12);
  CHECK(v.terms > 0);
  const SeriesValue d = takagi_series(R("1/4"), a, 1e-12);
  CHECK(d.partial == R("7/12"));
  CHECK_THROWS_AS(takagi_series(R("1/3"), R("1"), 1e-9), Error);
  CHECK_THROWS_AS(takagi_series(R("1/3"), a, 0.0), Error);
}

TEST_CASE("takagi_series is 1-periodic") {
  const Rational a = R("-3/5");
  const SeriesValue v0 = takagi_series(R("2/7"), a, 1e-10);
  const SeriesValue v1 = takagi_series(R("23/7"), a, 1e-10);
  CHECK(v0.partial == v1.partial);
}

TEST_CASE("de Rham: Takagi system reproduces T_a") {
  for (const char* a : {"2/3", "-2/3", "1/4"}) {
    const DeRhamSystem sys = DeRhamSystem::takagi(R(a));
    CHECK(derham_consistency(sys).consistent);
    for (std::uint64_t k = 0; k <= 64; ++k) {
      const Rational x = ratio(Integer(static_cast<unsigned long>(k)), Integer(64));
      const DeRhamValue v = derham_eval(sys, x, EvalMode::exact_dyadic);
      CHECK(v.value == oracle::takagi_dyadic(k, 6, R(a)));
      CHECK(v.bound == 0.0);
    }
  }
}

TEST_CASE("de Rham: fluctuation profile system solves q x - T_a(x)/2") {
  for (const char* qs : {"3/4", "2/3", "-3/4", "1"}) {
    const QParam p(R(qs));
    const DeRhamSystem sys = DeRhamSystem::fluctuation_profile(p.q());
    CHECK(derham_consistency(sys).consistent);
    for (std::uint64_t k = 0; k <= 32; ++k) {
      const Rational x = ratio(Integer(static_cast<unsigned long>(k)), Integer(32));
      const Rational expect = p.q() * x - oracle::takagi_dyadic(k, 5, p.a()) / 2;
      CHECK(derham_eval(sys, x, EvalMode::exact_dyadic).value == expect);
    }
  }
}

TEST_CASE("de Rham: certified approximation at non-dyadic points") {
  const DeRhamSystem sys = DeRhamSystem::takagi(R("2/3"));
  const DeRhamValue v = derham_eval(sys, R("1/3"), EvalMode::certified_approx, 1e-10);
  CHECK(std::abs(to_double(v.value) - 1.0) <= v.bound);
  CHECK(v.bound <= 1e-10);
  CHECK(v.depth > 0);
  CHECK_THROWS_AS(derham_eval(sys, R("1/3"), EvalMode::exact_dyadic), Error);

  std::mt19937_64 gen(5);
  const Rational a = R("-3/4");
  const DeRhamSystem neg = DeRhamSystem::takagi(a);
  for (int i = 0; i < 50; ++i) {
    const Rational x = ratio(Integer(static_cast<unsigned long>(gen() % 1000)), Integer(999));
    const DeRhamValue dv = derham_eval(neg, x, EvalMode::certified_approx, 1e-9);
    const SeriesValue sv = takagi_series(x, a, 1e-12);
    CHECK(std::abs(to_double(dv.value) - sv.value) <= dv.bound + sv.bound + 1e-15);
  }
}

TEST_CASE("de Rham: error paths") {
  DeRhamSystem bad = DeRhamSystem::takagi(R("2/3"));
  bad.g1.offset = R("1/3");
  const Consistency c = derham_consistency(bad);
  CHECK_FALSE(c.consistent);
  CHECK(c.residual != 0);
  try {
    derham_eval(bad, R("1/2"), EvalMode::exact_dyadic);
    FAIL("expected an inconsistent_system error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::inconsistent_system);
  }
  CHECK_THROWS_AS(derham_consistency(DeRhamSystem::takagi(R("1"))), Error);
  try {
    derham_eval(DeRhamSystem::takagi(R("2/3")), R("3/2"), EvalMode::certified_approx);
    FAIL("expected an invalid_point error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_point);
  }
}

TEST_CASE("scaling identity and symmetry") {
  for (const char* a : {"2/3", "-2/3", "1/2", "1/4"}) {
    const Report r = check_takagi_scaling(8, 6, R(a));
    CHECK(r.passed());
    CHECK(r.find("T-scaling")->checked == 257 * 6);
    CHECK(r.find("symmetry")->checked == 257);
  }
}
