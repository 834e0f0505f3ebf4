#include "limcurve/odometer.hpp"

#include <cmath>
#include <random>
#include <string>

#include "limcurve/error.hpp"

namespace limcurve {

OdometerState::OdometerState(std::vector<std::uint8_t> bits, Origin origin,
                             std::optional<std::uint64_t> seed)
    : bits_(std::move(bits)), origin_(origin), seed_(seed) {}

OdometerState OdometerState::from_bits(std::vector<std::uint8_t> bits) {
  for (auto& b : bits) {
    if (b > 1) throw Error(ErrorKind::invalid_parameter, "register bits must be 0 or 1");
  }
  return OdometerState(std::move(bits), Origin::explicit_bits, std::nullopt);
}

OdometerState OdometerState::zero(std::size_t length) {
  return OdometerState(std::vector<std::uint8_t>(length, 0), Origin::explicit_bits, std::nullopt);
}

OdometerState OdometerState::from_value(const Integer& value, std::size_t length) {
  if (value < 0 || bit_length(value) > length) {
    throw Error(ErrorKind::invalid_parameter, "value does not fit the register");
  }
  std::vector<std::uint8_t> bits(length, 0);
  for (std::size_t i = 0; i < length; ++i) bits[i] = static_cast<std::uint8_t>(mpz_tstbit(value.get_mpz_t(), i));
  return OdometerState(std::move(bits), Origin::explicit_bits, std::nullopt);
}

OdometerState OdometerState::seeded(std::uint64_t seed, std::size_t length) {
  std::mt19937_64 gen(seed);
  std::vector<std::uint8_t> bits(length);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < length; ++i) {
    if (i % 64 == 0) word = gen();
    bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
  }
  return OdometerState(std::move(bits), Origin::seeded, seed);
}

bool OdometerState::all_ones() const {
  for (auto b : bits_) {
    if (b == 0) return false;
  }
  return true;
}

OdometerState successor(const OdometerState& s) {
  std::vector<std::uint8_t> bits = s.bits_;
  for (auto& b : bits) {
    if (b == 0) {
      b = 1;
      return OdometerState(std::move(bits), OdometerState::Origin::explicit_bits, std::nullopt);
    }
    b = 0;
  }
  throw Error(ErrorKind::overflow, "odometer carry leaves the " + std::to_string(s.length()) + "-bit register");
}

Integer num_value(const OdometerState& s, std::size_t n) {
  if (n > s.length()) {
    throw Error(ErrorKind::invalid_parameter, "prefix length exceeds the register length");
  }
  Integer v = 0;
  const auto bits = s.bits();
  for (std::size_t i = 0; i < n; ++i) {
    if (bits[i]) mpz_setbit(v.get_mpz_t(), i);
  }
  return v;
}

WeightedValue weighted_sum_state(const OdometerState& s, const QParam& p) {
  WeightedValue out;
  out.value = weighted_digit_sum(num_value(s, s.length()), p);
  const Rational mag = abs(p.q());
  if (mag < 1) out.tail_bound = pow(mag, static_cast<long>(s.length()) + 1) / (1 - mag);
  return out;
}

std::vector<Rational> orbit_partial_sums(const OdometerState& s, const QParam& p, std::size_t count) {
  const Integer room = pow2(s.length()) - num_value(s, s.length());
  if (Integer(static_cast<unsigned long>(count)) > room) {
    throw Error(ErrorKind::overflow, "orbit of length " + std::to_string(count) + " carries past the register");
  }
  std::vector<std::uint8_t> bits(s.bits().begin(), s.bits().end());
  std::vector<Rational> qpow{Rational(1)};  // qpow[i] = q^i
  auto power = [&](std::size_t i) -> const Rational& {
    while (qpow.size() <= i) qpow.push_back(qpow.back() * p.q());
    return qpow[i];
  };

  std::vector<Rational> out;
  out.reserve(count + 1);
  out.emplace_back(0);
  Rational weight = weighted_sum_state(s, p).value;
  for (std::size_t k = 1; k <= count; ++k) {
    out.push_back(out.back() + weight);
    if (k == count) break;
    // x + 1: x_1..x_z were ones and become zero, x_{z+1} becomes one.
    std::size_t z = 0;
    while (bits[z] == 1) {
      bits[z] = 0;
      weight -= power(z + 1);
      ++z;
    }
    bits[z] = 1;
    weight += power(z + 1);
  }
  return out;
}

Rational orbit_sum(const OdometerState& s, const QParam& p, const Integer& steps) {
  if (steps < 0) throw Error(ErrorKind::invalid_parameter, "orbit length must be nonnegative");
  const Integer start = num_value(s, s.length());
  if (start + steps > pow2(s.length())) {
    throw Error(ErrorKind::overflow, "orbit carries past the " + std::to_string(s.length()) + "-bit register");
  }
  return partial_sum_fast(start + steps, p) - partial_sum_fast(start, p);
}

std::vector<StabilizingLevel> find_stabilizing_levels(const OdometerState& s, std::size_t r,
                                                      std::size_t max_levels) {
  if (r == 0) throw Error(ErrorKind::invalid_parameter, "run length must be positive");
  std::vector<StabilizingLevel> levels;
  const auto bits = s.bits();
  std::size_t last_one = 0;
  std::size_t run = 0;
  for (std::size_t i = 1; i <= bits.size() && levels.size() < max_levels; ++i) {
    if (bits[i - 1]) {
      last_one = i;
      run = 0;
      continue;
    }
    if (++run == r) {
      StabilizingLevel level;
      level.level = i;
      level.run_start = last_one;
      level.run = r;
      level.ratio = ratio(num_value(s, last_one), pow2(i));
      levels.push_back(std::move(level));
    }
  }
  if (levels.empty()) {
    throw Error(ErrorKind::not_found, "no run of " + std::to_string(r) + " zeros in the " +
                                          std::to_string(bits.size()) + "-bit register");
  }
  return levels;
}

std::size_t guard_bits(const QParam& p, double tol) {
  const double mag = std::fabs(to_double(p.q()));
  if (!(mag < 1.0)) throw Error(ErrorKind::invalid_parameter, "guard bits need |q| < 1");
  if (!(tol > 0.0)) throw Error(ErrorKind::invalid_parameter, "tolerance must be positive");
  const double g = std::ceil(std::log((1.0 - mag) / tol) / std::log(1.0 / mag));
  return g > 0.0 ? static_cast<std::size_t>(g) : 0;
}

LevelOrbit::LevelOrbit(const OdometerState& s, const QParam& p, std::size_t level)
    : p_(p), level_(level) {
  if (level == 0 || level > s.length()) {
    throw Error(ErrorKind::invalid_parameter, "level must lie within the register");
  }
  const Integer full = num_value(s, s.length());
  prefix_ = num_value(s, level);
  period_ = pow2(level);
  const Integer tail = full - prefix_;
  tail_weight_ = weighted_digit_sum(tail, p);
  if (prefix_ != 0) {
    const Integer carried = tail + period_;
    if (bit_length(carried) > s.length()) {
      throw Error(ErrorKind::overflow, "orbit of level " + std::to_string(level) + " carries past the register");
    }
    carried_tail_weight_ = weighted_digit_sum(carried, p);
  }
  prefix_sum_ = partial_sum_fast(prefix_, p);
  period_sum_ = partial_sum_pow2(level, p);
}

Rational LevelOrbit::sum(const Integer& i) const {
  if (i < 0 || i > period_) throw Error(ErrorKind::invalid_parameter, "orbit index outside one period");
  const Integer end = prefix_ + i;
  if (end <= period_) {
    return partial_sum_fast(end, p_) - prefix_sum_ + Rational(i) * tail_weight_;
  }
  const Integer wrapped = end - period_;
  return period_sum_ - prefix_sum_ + Rational(period_ - prefix_) * tail_weight_ +
         partial_sum_fast(wrapped, p_) + Rational(wrapped) * carried_tail_weight_;
}

std::vector<Rational> LevelOrbit::grid_sums(std::uint64_t grid_bits) const {
  if (grid_bits > level_) throw Error(ErrorKind::invalid_parameter, "grid finer than the level");
  const std::uint64_t shift = level_ - grid_bits;
  Integer low;
  mpz_tdiv_r_2exp(low.get_mpz_t(), prefix_.get_mpz_t(), shift);
  const BlockSumEvaluator block(p_, shift, low);

  const Rational before_carry = period_sum_ - prefix_sum_ + Rational(period_ - prefix_) * tail_weight_;
  const Integer count = pow2(grid_bits);
  std::vector<Rational> out;
  out.reserve(count.get_ui() + 1);
  for (Integer j = 0; j <= count; ++j) {
    Integer i = j;
    mpz_mul_2exp(i.get_mpz_t(), i.get_mpz_t(), shift);
    const Integer end = prefix_ + i;
    Integer high;
    if (end <= period_) {
      mpz_fdiv_q_2exp(high.get_mpz_t(), end.get_mpz_t(), shift);
      out.push_back(block.at(high) - prefix_sum_ + Rational(i) * tail_weight_);
    } else {
      const Integer wrapped = end - period_;
      mpz_fdiv_q_2exp(high.get_mpz_t(), wrapped.get_mpz_t(), shift);
      out.push_back(before_carry + block.at(high) + Rational(wrapped) * carried_tail_weight_);
    }
  }
  return out;
}

}  // namespace limcurve
