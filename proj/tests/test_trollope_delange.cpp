#include <cmath>
#include <random>

#include "doctest.h"
#include "limcurve/error.hpp"
#include "limcurve/trollope_delange.hpp"
#include "oracle.hpp"

using namespace limcurve;

namespace {

Rational R(const char* s) { return parse_rational(s); }
Integer I(unsigned long v) { return Integer(v); }

}  // namespace

TEST_CASE("ScaleDecomposition") {
  const auto d = ScaleDecomposition::of(I(11), QParam(R("3/4")));
  CHECK(d.k == 3);
  CHECK(d.p == 8);
  CHECK(d.r == R("27/64"));
  CHECK(d.x == R("3/8"));
  CHECK(d.two_pow_u() == R("11/8"));
  CHECK(d.x_dyadic().value() == R("3/8"));
  CHECK(ScaleDecomposition::of(I(1), QParam(R("3/4"))).x == 0);
  CHECK_THROWS_AS(ScaleDecomposition::of(I(0), QParam(R("3/4"))), Error);
}

TEST_CASE("G_q examples") {
  const QParam p(R("3/4"));
  CHECK(g_profile(I(3), p) == R("1/8"));
  CHECK(g_profile(I(5), p) == R("-5/48"));
  CHECK(g_profile(I(1), p) == 0);
  CHECK(g_profile(I(64), p) == 0);
  CHECK(g_profile(I(6), p) == g_profile(I(3), p));
  CHECK_THROWS_AS(g_profile(I(3), QParam(R("1/3"))), Error);
}

TEST_CASE("G_q is F_q at x_n") {
  for (const char* qs : {"3/4", "-3/4", "2/3", "1", "2"}) {
    const QParam p(R(qs));
    for (unsigned long n = 1; n <= 300; ++n) {
      const auto d = ScaleDecomposition::of(I(n), p);
      CHECK(g_profile(I(n), p) == f_closed(d.x_dyadic(), p));
    }
  }
}

TEST_CASE("G identities report") {
  for (const char* qs : {"3/4", "-3/4", "9/10", "1", "2"}) {
    const Report r = check_g_identities(512, QParam(R(qs)));
    CHECK_MESSAGE(r.passed(), std::string(qs));
    for (const auto& c : r.checks) CHECK(c.checked > 0);
  }
  CHECK_THROWS_AS(check_g_identities(512, QParam(R("1/2"))), Error);
  CHECK_THROWS_AS(check_g_identities(2, QParam(R("3/4"))), Error);
}

TEST_CASE("generalized and classical formulas, examples") {
  CHECK(td_generalized(I(3), QParam(R("3/4"))) == R("7/16"));
  CHECK(td_classical(I(3)) == R("2/3"));
  CHECK(td_classical(I(1)) == 0);
  CHECK(td_classical(I(8)) == R("3/2"));
  CHECK_THROWS_AS(td_generalized(I(3), QParam(R("1"))), Error);
  CHECK_THROWS_AS(td_generalized(I(3), QParam(R("1/3"))), Error);
  CHECK_THROWS_AS(td_classical(I(0)), Error);
}

TEST_CASE("generalized formula against the oracle") {
  for (const char* qs : {"3/4", "-3/4", "2/3", "-9/10", "3/2"}) {
    const QParam p(R(qs));
    const auto S = oracle::summatory_table(1024, p.q());
    for (unsigned long n = 1; n <= 1024; ++n) {
      REQUIRE(Rational(I(n)) * td_generalized(I(n), p) == S[n]);
    }
  }
}

TEST_CASE("classical formula against popcount sums") {
  unsigned long total = 0;
  for (unsigned long n = 1; n <= 4096; ++n) {
    total += static_cast<unsigned long>(__builtin_popcountl(n - 1));
    REQUIRE(Rational(I(n)) * td_classical(I(n)) == Rational(I(total)));
  }
}

TEST_CASE("formula at large n agrees with the fast sum") {
  std::mt19937_64 gen(9);
  const QParam p(R("3/4"));
  for (int i = 0; i < 20; ++i) {
    Integer n = Integer(static_cast<unsigned long>(gen() | 1)) * Integer(static_cast<unsigned long>(gen() | 1));
    CHECK(Rational(n) * td_generalized(n, p) == partial_sum_fast(n, p));
    CHECK(Rational(n) * td_classical(n) == partial_sum_fast(n, QParam(R("1"))));
  }
}

TEST_CASE("trollope-delange report") {
  for (const char* qs : {"3/4", "-2/3", "1"}) {
    const Report r = check_trollope_delange(1024, QParam(R(qs)));
    CHECK(r.passed());
    CHECK(r.find("td-forms-agree")->checked == 1024);
  }
}

TEST_CASE("summatory scaling report") {
  for (const char* qs : {"3/4", "-3/4", "1", "1/3"}) CHECK(check_summatory_scaling(12, QParam(R(qs))).passed());
  CHECK_THROWS_AS(check_summatory_scaling(0, QParam(R("3/4"))), Error);
}

TEST_CASE("F_hat sampler matches the exact bracket at u_n") {
  const QParam p(R("3/4"));
  const double q = 0.75;
  for (unsigned long n : {3ul, 5ul, 11ul, 100ul, 777ul}) {
    const double u = std::log2(static_cast<double>(n)) - std::floor(std::log2(static_cast<double>(n)));
    const double k = std::floor(std::log2(static_cast<double>(n)));
    const double lhs = (1.0 - std::pow(q, k + u)) / (1.0 - q) + std::pow(q, k + u) * f_hat_sample(u, p);
    // u is rounded to a double; T_a is only Hoelder of order log2(1/a) there
    CHECK(lhs == doctest::Approx(to_double(f_hat_bracket(I(n), p))).epsilon(1e-7));
  }
  CHECK(f_hat_sample(0.0, p) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(f_hat_sample(1.0, p) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(f_hat_sample(0.5, QParam(R("-3/4"))), Error);
  CHECK_THROWS_AS(f_hat_sample(1.5, p), Error);
}

TEST_CASE("de Rham systems report") {
  for (const char* qs : {"3/4", "-2/3", "1", "2"}) {
    const Report r = check_derham_systems(8, QParam(R(qs)));
    CHECK_MESSAGE(r.passed(), std::string(qs));
    CHECK(r.find("F-system")->checked == 257);
  }
  CHECK_THROWS_AS(check_derham_systems(8, QParam(R("1/2"))), Error);
}
