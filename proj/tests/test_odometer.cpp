#include <random>

#include "doctest.h"
#include "limcurve/error.hpp"
#include "limcurve/odometer.hpp"
#include "oracle.hpp"

using namespace limcurve;

namespace {

Rational R(const char* s) { return parse_rational(s); }
Integer I(unsigned long v) { return Integer(v); }

std::uint64_t value_of(const OdometerState& s) { return num_value(s, s.length()).get_ui(); }

}  // namespace

TEST_CASE("register construction") {
  const auto s = OdometerState::from_bits({1, 0, 1, 1});
  CHECK(s.length() == 4);
  CHECK(num_value(s, 4) == 13);
  CHECK(num_value(s, 2) == 1);
  CHECK(s.origin() == OdometerState::Origin::explicit_bits);
  CHECK(OdometerState::from_value(I(13), 4) == s);
  CHECK_THROWS_AS(OdometerState::from_value(I(16), 4), Error);
  CHECK_THROWS_AS(OdometerState::from_bits({0, 2}), Error);
  CHECK_THROWS_AS(num_value(s, 5), Error);
  CHECK(OdometerState::zero(8).length() == 8);
  CHECK(num_value(OdometerState::zero(8), 8) == 0);
}

TEST_CASE("seeded registers are reproducible") {
  const auto a = OdometerState::seeded(42, 300);
  const auto b = OdometerState::seeded(42, 300);
  CHECK(a == b);
  CHECK(a.seed() == std::uint64_t{42});
  CHECK(a.origin() == OdometerState::Origin::seeded);
  CHECK_FALSE(a == OdometerState::seeded(43, 300));
  // first 64 bits are the first draw, least significant first
  std::mt19937_64 gen(42);
  const std::uint64_t w = gen();
  for (std::size_t i = 0; i < 64; ++i) CHECK(a.bits()[i] == ((w >> i) & 1u));
  // a prefix of a longer register is the shorter register
  const auto c = OdometerState::seeded(42, 100);
  for (std::size_t i = 0; i < 100; ++i) CHECK(a.bits()[i] == c.bits()[i]);
}

TEST_CASE("successor adds one with carry") {
  auto s = OdometerState::from_value(I(11), 5);
  s = successor(s);
  CHECK(value_of(s) == 12);
  for (unsigned v = 12; v < 31; ++v) {
    s = successor(s);
    CHECK(value_of(s) == v + 1);
  }
  CHECK(s.all_ones());
  try {
    successor(s);
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::overflow);
  }
}

TEST_CASE("weighted sum of a register") {
  const QParam p(R("3/4"));
  const auto s = OdometerState::from_bits({0, 1, 1});
  const auto w = weighted_sum_state(s, p);
  CHECK(w.value == R("63/64"));
  REQUIRE(w.tail_bound.has_value());
  CHECK(*w.tail_bound == pow(R("3/4"), 4) / R("1/4"));
  CHECK_FALSE(weighted_sum_state(s, QParam(R("1"))).tail_bound.has_value());
}

TEST_CASE("orbit_partial_sums matches successor iteration") {
  std::mt19937_64 gen(1);
  for (const char* qs : {"3/4", "-2/3", "1"}) {
    const QParam p(R(qs));
    for (int trial = 0; trial < 10; ++trial) {
      const auto s = OdometerState::from_value(I(gen() % 4096), 14);
      const auto sums = orbit_partial_sums(s, p, 300);
      REQUIRE(sums.size() == 301);
      auto x = s;
      Rational acc = 0;
      for (std::size_t k = 0; k < 300; ++k) {
        CHECK(sums[k] == acc);
        acc += oracle::digit_sum(value_of(x), p.q());
        x = successor(x);
      }
      CHECK(sums[300] == acc);
    }
  }
}

TEST_CASE("orbit sums respect the register") {
  const QParam p(R("3/4"));
  const auto s = OdometerState::from_value(I(250), 8);
  CHECK_NOTHROW(orbit_partial_sums(s, p, 6));
  CHECK_THROWS_AS(orbit_partial_sums(s, p, 7), Error);
  CHECK_THROWS_AS(orbit_sum(s, p, I(7)), Error);
  CHECK(orbit_sum(s, p, I(6)) == orbit_partial_sums(s, p, 6).back());
}

TEST_CASE("orbit_sum is the difference of summatory values") {
  std::mt19937_64 gen(2);
  const QParam p(R("-3/4"));
  const auto S = oracle::summatory_table(8192, p.q());
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t start = gen() % 4096;
    const std::uint64_t steps = gen() % 4096;
    const auto s = OdometerState::from_value(I(start), 13);
    CHECK(orbit_sum(s, p, I(steps)) == S[start + steps] - S[start]);
  }
}

TEST_CASE("stabilizing levels") {
  //                         x1 ...
  const auto s = OdometerState::from_bits({1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0});
  const auto lv = find_stabilizing_levels(s, 3, 10);
  REQUIRE(lv.size() == 3);
  CHECK(lv[0].level == 4);
  CHECK(lv[0].run_start == 1);
  CHECK(lv[0].ratio == R("1/16"));
  CHECK(lv[1].level == 9);
  CHECK(lv[1].run_start == 6);
  CHECK(lv[1].ratio == ratio(I(49), I(512)));
  CHECK(lv[2].level == 15);
  for (const auto& l : lv) CHECK(l.ratio < ratio(I(1), pow2(l.run)));
  CHECK(find_stabilizing_levels(s, 3, 1).size() == 1);
  CHECK(find_stabilizing_levels(s, 5, 10).size() == 1);
  try {
    find_stabilizing_levels(s, 6, 10);
    FAIL("expected not_found");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_found);
  }
  CHECK_THROWS_AS(find_stabilizing_levels(s, 0, 10), Error);
}

TEST_CASE("stabilizing levels of random registers") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = OdometerState::seeded(seed, 65536);
    for (std::size_t r : {4, 8, 12}) {
      const auto lv = find_stabilizing_levels(s, r, 1000);
      std::size_t prev = 0;
      for (const auto& l : lv) {
        CHECK(l.level > prev);
        prev = l.level;
        CHECK(l.level - l.run_start >= r);
        for (std::size_t i = l.run_start; i < l.level; ++i) CHECK(s.bits()[i] == 0);
        CHECK(l.ratio < ratio(I(1), pow2(r)));
      }
    }
  }
}

TEST_CASE("guard bits") {
  // (3/4)^g <= 4e-12 needs g = 92
  CHECK(guard_bits(QParam(R("3/4")), 1e-12) == 92);
  CHECK(guard_bits(QParam(R("1/2")), 0.5) == 0);
  CHECK_THROWS_AS(guard_bits(QParam(R("1")), 1e-12), Error);
}

TEST_CASE("LevelOrbit matches successor iteration over a full period") {
  std::mt19937_64 gen(4);
  for (const char* qs : {"3/4", "-2/3"}) {
    const QParam p(R(qs));
    for (int trial = 0; trial < 8; ++trial) {
      const std::size_t level = 3 + trial % 4;
      const auto s = OdometerState::from_value(I(gen() % 16384), 16);
      if (bit_length(num_value(s, 16) + pow2(level)) > 16) continue;
      const LevelOrbit orbit(s, p, level);
      CHECK(orbit.prefix_value() == num_value(s, level));
      auto x = s;
      Rational acc = 0;
      const std::uint64_t period = std::uint64_t{1} << level;
      for (std::uint64_t i = 0; i <= period; ++i) {
        CHECK(orbit.sum(I(i)) == acc);
        acc += oracle::digit_sum(value_of(x), p.q());
        if (i < period) x = successor(x);
      }
      for (std::uint64_t g = 0; g <= level; ++g) {
        const auto grid = orbit.grid_sums(g);
        REQUIRE(grid.size() == (std::size_t{1} << g) + 1);
        for (std::uint64_t j = 0; j < grid.size(); ++j) CHECK(grid[j] == orbit.sum(I(j << (level - g))));
      }
      CHECK_THROWS_AS(orbit.grid_sums(level + 1), Error);
      CHECK_THROWS_AS(orbit.sum(I(period + 1)), Error);
    }
  }
}

TEST_CASE("LevelOrbit rejects levels that carry out") {
  const QParam p(R("3/4"));
  const auto s = OdometerState::from_bits({1, 0, 0, 1});
  CHECK_THROWS_AS(LevelOrbit(s, p, 3), Error);
  CHECK_THROWS_AS(LevelOrbit(s, p, 0), Error);
  CHECK_THROWS_AS(LevelOrbit(s, p, 5), Error);
  CHECK_THROWS_AS(LevelOrbit(s, p, 4), Error);
  CHECK_NOTHROW(LevelOrbit(OdometerState::from_bits({0, 0, 0, 1}), p, 3));
}

TEST_CASE("small worked examples") {
  const QParam p(R("3/4"));
  CHECK(value_of(successor(OdometerState::from_bits({1, 0, 1, 0}))) == 6);
  CHECK(successor(OdometerState::zero(4)) == OdometerState::from_bits({1, 0, 0, 0}));
  CHECK(num_value(OdometerState::from_bits({0, 1}), 2) == 2);
  CHECK(num_value(OdometerState::from_bits({1, 0, 1}), 3) == 5);
  CHECK(weighted_sum_state(OdometerState::from_bits({1, 0, 1, 0, 0, 0}), p).value == R("75/64"));
  const auto z = weighted_sum_state(OdometerState::zero(10), p);
  CHECK(z.value == 0);
  CHECK(*z.tail_bound == pow(R("3/4"), 11) / R("1/4"));
  CHECK(orbit_partial_sums(OdometerState::from_bits({1, 1}), p, 0) == std::vector<Rational>{0});

  const auto lv = find_stabilizing_levels(OdometerState::from_bits({1, 0, 1, 0, 0, 0, 0, 0}), 3, 5);
  REQUIRE(lv.size() == 1);
  CHECK(lv[0].level == 6);
  CHECK(lv[0].run_start == 3);
  CHECK(lv[0].ratio == R("5/64"));
  const auto zl = find_stabilizing_levels(OdometerState::zero(32), 7, 5);
  CHECK(zl[0].level == 7);
  CHECK(zl[0].ratio == 0);
  CHECK_THROWS_AS(find_stabilizing_levels(OdometerState::from_bits({1, 1, 1, 1}), 1, 5), Error);
}

TEST_CASE("zero-state orbit is the summatory function") {
  for (const char* qs : {"3/4", "-2/3"}) {
    const QParam p(R(qs));
    const auto orbit = orbit_partial_sums(OdometerState::zero(11), p, 1024);
    CHECK(orbit == oracle::summatory_table(1024, p.q()));
  }
}

TEST_CASE("frozen tail shifts each orbit term by a constant") {
  const QParam p(R("3/4"));
  const std::size_t n = 8;
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 5; ++trial) {
    const Integer prefix = I(gen() % 200);
    const Integer tail = I(gen() % 1000) * pow2(n);
    const auto s = OdometerState::from_value(prefix + tail, 24);
    const auto zero_orbit = orbit_partial_sums(OdometerState::from_value(prefix, 24), p, 50);
    const auto orbit = orbit_partial_sums(s, p, 50);
    const Rational c = weighted_digit_sum(tail, p);
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      CHECK(orbit[k] - zero_orbit[k] == Rational(static_cast<long>(k)) * c);
    }
  }
}

TEST_CASE("successor increments Num") {
  std::mt19937_64 gen(6);
  for (int i = 0; i < 200; ++i) {
    const auto s = OdometerState::seeded(gen(), 130);
    if (s.all_ones()) continue;
    CHECK(num_value(successor(s), 130) == num_value(s, 130) + 1);
  }
}
