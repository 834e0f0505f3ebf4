#include <random>

#include "doctest.h"
#include "limcurve/digitsum.hpp"
#include "limcurve/error.hpp"
#include "oracle.hpp"

using namespace limcurve;

namespace {

Rational R(const char* s) { return parse_rational(s); }
Integer I(unsigned long v) { return Integer(v); }

const char* kTestQs[] = {"3/4", "2/3", "9/10", "-3/4", "-2/3", "1", "2", "1/3"};

}  // namespace

TEST_CASE("QParam derives a and the regime") {
  QParam p(R("3/4"));
  CHECK(p.a() == R("2/3"));
  CHECK(2 * p.q() * p.a() == 1);
  CHECK(p.regime() == Regime::contracting);
  CHECK(QParam(R("-1/2")).regime() == Regime::boundary);
  CHECK(QParam(R("1/4")).regime() == Regime::expanding);
  CHECK(QParam(R("1/4")).a() == 2);
  CHECK(QParam(R("3/4")).admits_bridge());
  CHECK_FALSE(QParam(R("2")).admits_bridge());
  CHECK_THROWS_AS(QParam(R("0")), Error);
  CHECK(QParam(R("1")).is_one());
}

TEST_CASE("DigitWord round-trips through its value") {
  std::mt19937_64 gen(7);
  for (int i = 0; i < 200; ++i) {
    const Integer v(static_cast<unsigned long>(gen() >> (gen() % 64)));
    const DigitWord w = DigitWord::from_value(v);
    CHECK(w.value() == v);
    if (v != 0) CHECK(w.bits.back() == 1);
  }
  CHECK(DigitWord::from_value(I(6)).bits == std::vector<std::uint8_t>{0, 1, 1});
}

TEST_CASE("weighted_digit_sum examples") {
  CHECK(weighted_digit_sum(I(0), QParam(R("3/4"))) == 0);
  CHECK(weighted_digit_sum(I(5), QParam(R("1"))) == 2);
  CHECK(weighted_digit_sum(I(6), QParam(R("3/4"))) == R("63/64"));
  CHECK(weighted_digit_sum(I(3), QParam(R("3/4"))) == R("21/16"));
}

TEST_CASE("weighted_digit_sum agrees with the direct definition") {
  for (const char* qs : kTestQs) {
    const QParam p(R(qs));
    for (std::uint64_t j = 0; j < 600; ++j) CHECK(weighted_digit_sum(I(j), p) == oracle::digit_sum(j, p.q()));
  }
}

TEST_CASE("partial_sum_bruteforce examples and budget") {
  CHECK(partial_sum_bruteforce(1, QParam(R("3/4"))) == 0);
  CHECK(partial_sum_bruteforce(4, QParam(R("3/4"))) == R("21/8"));
  CHECK(partial_sum_bruteforce(8, QParam(R("1"))) == 12);
  CHECK_THROWS_AS(partial_sum_bruteforce(100, QParam(R("3/4")), 64), Error);
  try {
    partial_sum_bruteforce(100, QParam(R("3/4")), 64);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::budget_exceeded);
  }
}

TEST_CASE("oracle table matches the direct summation") {
  for (const char* qs : {"3/4", "-2/3", "1"}) {
    const QParam p(R(qs));
    PartialSumOracle oracle(p, 512);
    const auto table = oracle.table(512);
    const auto ref = oracle::summatory_table(512, p.q());
    CHECK(table == ref);
  }
}

TEST_CASE("partial_sum_fast examples") {
  CHECK(partial_sum_fast(I(4), QParam(R("3/4"))) == R("21/8"));
  CHECK(partial_sum_fast(I(1), QParam(R("3/4"))) == 0);
  CHECK(partial_sum_fast(I(1ul << 20), QParam(R("1"))) == Rational(10485760));
  CHECK(partial_sum_fast(I(0), QParam(R("3/4"))) == 0);
}

TEST_CASE("partial_sum_fast equals brute force for n <= 4096") {
  for (const char* qs : kTestQs) {
    const QParam p(R(qs));
    PartialSumOracle oracle(p, 4096);
    for (std::uint64_t n = 1; n <= 4096; ++n) {
      REQUIRE(partial_sum_fast(I(n), p) == oracle.advance_to(n));
    }
  }
}

TEST_CASE("partial_sum_fast takes one step per bit") {
  FastSumStats stats;
  const Integer n = pow2(40) + 12345;
  partial_sum_fast(n, QParam(R("3/4")), &stats);
  CHECK(stats.steps == 41);
  FastSumStats big;
  partial_sum_fast(pow2(4000) + 1, QParam(R("3/4")), &big);
  CHECK(big.steps == 4001);
}

TEST_CASE("partial_sum_pow2 closed form") {
  CHECK(partial_sum_pow2(0, QParam(R("3/4"))) == 0);
  CHECK(partial_sum_pow2(2, QParam(R("3/4"))) == R("21/8"));
  CHECK(partial_sum_pow2(3, QParam(R("1"))) == 12);
  // the printed factor (1 - q^{k-1}) gives 3/2 here, which the oracle rejects
  CHECK(partial_sum_pow2_printed(2, QParam(R("3/4"))) == R("3/2"));
  for (const char* qs : kTestQs) {
    const QParam p(R(qs));
    PartialSumOracle oracle(p, 4096);
    for (std::uint64_t k = 0; k <= 12; ++k) CHECK(partial_sum_pow2(k, p) == oracle.advance_to(1ul << k));
  }
}

TEST_CASE("block identity S(m 2^t + w)") {
  std::mt19937_64 gen(11);
  for (const char* qs : {"3/4", "-2/3", "1", "2"}) {
    const QParam p(R(qs));
    const auto S = oracle::summatory_table(4096, p.q());
    for (std::uint64_t t = 0; t <= 6; ++t) {
      for (int trial = 0; trial < 6; ++trial) {
        const std::uint64_t w = t == 0 ? 0 : gen() % (1ul << t);
        const BlockSumEvaluator block(p, t, I(w));
        for (std::uint64_t m = 0; (m << t) + w <= 4096; m += 1 + gen() % 7) {
          CHECK(block.at(I(m)) == S[(m << t) + w]);
        }
      }
    }
  }
  CHECK_THROWS_AS(BlockSumEvaluator(QParam(R("3/4")), 2, I(4)), Error);
}

TEST_CASE("bit recurrence report, corrected forms") {
  for (const char* qs : {"3/4", "-3/4", "2/3", "1"}) {
    const Report r = check_bit_recurrences(64, QParam(R(qs)));
    CHECK(r.passed());
    for (const auto& c : r.checks) CHECK_MESSAGE(c.checked > 0, c.identity);
  }
  CHECK(check_bit_recurrences(2, QParam(R("-3/4"))).passed());
  CHECK_THROWS_AS(check_bit_recurrences(1, QParam(R("3/4"))), Error);
}

TEST_CASE("bit recurrence report, printed forms fail with witnesses") {
  const Report r = check_bit_recurrences(64, QParam(R("3/4")), IdentityForm::printed);
  CHECK_FALSE(r.passed());
  const Check* shift_2p = r.find("S-shift-2p");
  const Check* shift_p = r.find("S-shift-p");
  const Check* pow2_sum = r.find("S-pow2");
  REQUIRE(shift_2p);
  REQUIRE(shift_p);
  REQUIRE(pow2_sum);
  CHECK(*shift_2p->first_failure == 1);  // S(3) = q + q^2, printed form gives 2q
  CHECK(*shift_p->first_failure == 3);
  CHECK(*pow2_sum->first_failure == 1);  // S(2) = q, printed form gives 0
  CHECK(r.find("s-even")->passed);
  CHECK(r.find("S-double")->passed);

  // the hand-checked witness at n = 2: S(6) = 3q + 2q^2 + 2q^3 vs printed 3q + 4q^2
  const Rational q = R("3/4");
  const Rational s6 = partial_sum_bruteforce(6, QParam(q));
  CHECK(s6 == 3 * q + 2 * q * q + 2 * q * q * q);
  CHECK(partial_sum_bruteforce(2, QParam(q)) + partial_sum_bruteforce(4, QParam(q)) + 2 * q * q ==
        3 * q + 4 * q * q);
}

TEST_CASE("property: s(2j) = q s(j) and s(2j+1) = q s(j) + q for random large j") {
  std::mt19937_64 gen(3);
  const QParam p(R("-3/4"));
  for (int i = 0; i < 100; ++i) {
    Integer j = Integer(static_cast<unsigned long>(gen()));
    j = j * Integer(static_cast<unsigned long>(gen()));
    CHECK(weighted_digit_sum(2 * j, p) == p.q() * weighted_digit_sum(j, p));
    CHECK(weighted_digit_sum(2 * j + 1, p) == p.q() * weighted_digit_sum(j, p) + p.q());
    CHECK(partial_sum_fast(2 * j, p) == 2 * p.q() * partial_sum_fast(j, p) + Rational(j) * p.q());
  }
}
