#include "limcurve/digitsum.hpp"

#include <string>

#include "limcurve/error.hpp"

namespace limcurve {

namespace {

std::string str(const Rational& x) { return to_string(x); }

}  // namespace

const char* to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::contracting: return "contracting";
    case Regime::boundary: return "boundary";
    case Regime::expanding: return "expanding";
  }
  return "unknown";
}

QParam::QParam(Rational q) : q_(std::move(q)) {
  q_.canonicalize();
  if (q_ == 0) throw Error(ErrorKind::invalid_parameter, "q must be nonzero");
  a_ = Rational(1) / (2 * q_);
  const Rational half(1, 2);
  const Rational mag = abs(q_);
  regime_ = mag > half ? Regime::contracting : (mag == half ? Regime::boundary : Regime::expanding);
}

bool QParam::admits_bridge() const {
  const Rational mag = abs(q_);
  return mag > Rational(1, 2) && mag < 1;
}

Rational QParam::q_integer(std::uint64_t t) const {
  if (is_one()) return Rational(Integer(static_cast<unsigned long>(t)));
  return (1 - pow(q_, static_cast<long>(t))) / (1 - q_);
}

DigitWord DigitWord::from_value(const Integer& value) {
  if (value < 0) throw Error(ErrorKind::invalid_parameter, "digit word of a negative integer");
  DigitWord w;
  const std::size_t len = bit_length(value);
  w.bits.resize(len);
  for (std::size_t i = 0; i < len; ++i) {
    w.bits[i] = static_cast<std::uint8_t>(mpz_tstbit(value.get_mpz_t(), i));
  }
  return w;
}

Integer DigitWord::value() const {
  Integer v = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) mpz_setbit(v.get_mpz_t(), i);
  }
  return v;
}

Rational weighted_digit_sum(const Integer& j, const QParam& p) {
  if (j < 0) throw Error(ErrorKind::invalid_parameter, "weighted digit sum of a negative integer");
  const std::size_t len = bit_length(j);
  if (len == 0) return 0;
  // Horner from the top bit: v <- q (w_i + v), kept as N / d^{len-i}.
  const Integer& c = p.q().get_num();
  const Integer& d = p.q().get_den();
  Integer acc = 0;
  Integer dpow = 1;  // d^{len-i-1}
  for (std::size_t i = len; i-- > 0;) {
    if (mpz_tstbit(j.get_mpz_t(), i)) acc += dpow;
    acc *= c;
    if (i > 0) {
      dpow *= d;
    }
  }
  Integer den;
  mpz_pow_ui(den.get_mpz_t(), d.get_mpz_t(), len);
  Rational r(acc, den);
  r.canonicalize();
  return r;
}

PartialSumOracle::PartialSumOracle(const QParam& p, std::uint64_t budget) : budget_(budget) {
  std::size_t width = 1;
  while (width < 64 && (std::uint64_t{1} << width) <= budget) ++width;
  const Integer& c = p.q().get_num();
  const Integer& d = p.q().get_den();
  weights_.resize(width);
  for (std::size_t i = 0; i < width; ++i) {
    Integer cp, dp;
    mpz_pow_ui(cp.get_mpz_t(), c.get_mpz_t(), i + 1);
    mpz_pow_ui(dp.get_mpz_t(), d.get_mpz_t(), width - i - 1);
    weights_[i] = cp * dp;
  }
  mpz_pow_ui(scale_.get_mpz_t(), d.get_mpz_t(), width);
}

Rational PartialSumOracle::advance_to(std::uint64_t n) {
  if (n > budget_) {
    throw Error(ErrorKind::budget_exceeded,
                "brute-force oracle limited to n <= " + std::to_string(budget_));
  }
  if (n < position_) {
    throw Error(ErrorKind::invalid_parameter, "oracle cannot move backwards");
  }
  for (; position_ < n; ++position_) {
    for (std::uint64_t j = position_, i = 0; j != 0; j >>= 1, ++i) {
      if (j & 1) accumulated_ += weights_[i];
    }
  }
  Rational r(accumulated_, scale_);
  r.canonicalize();
  return r;
}

std::vector<Rational> PartialSumOracle::table(std::uint64_t n_max) {
  std::vector<Rational> out;
  out.reserve(n_max + 1);
  for (std::uint64_t n = position_; n <= n_max; ++n) out.push_back(advance_to(n));
  return out;
}

Rational partial_sum_bruteforce(std::uint64_t n, const QParam& p, std::uint64_t budget) {
  if (n > budget) {
    throw Error(ErrorKind::budget_exceeded,
                "brute-force oracle limited to n <= " + std::to_string(budget));
  }
  PartialSumOracle oracle(p, budget);
  return oracle.advance_to(n);
}

Rational partial_sum_fast(const Integer& n, const QParam& p, FastSumStats* stats) {
  if (n < 0) throw Error(ErrorKind::invalid_parameter, "partial sum of a negative length");
  const Integer& c = p.q().get_num();
  const Integer& d = p.q().get_den();

  // State for the prefix m of n read so far (t bits), scaled by D = d^t:
  //   sum = S(m) D, digit = s(m) D, index = m D.
  Integer sum = 0, digit = 0, index = 0, scale = 1;
  const std::size_t len = bit_length(n);
  for (std::size_t i = len; i-- > 0;) {
    const bool bit = mpz_tstbit(n.get_mpz_t(), i) != 0;
    // S(2m) = 2q S(m) + m q;  S(2m+1) = S(2m) + q s(m);  s(2m+b) = q s(m) + b q.
    Integer next_sum = 2 * sum + index;
    if (bit) next_sum += digit;
    sum = c * next_sum;
    digit = c * digit;
    if (bit) digit += c * scale;
    index = d * (2 * index + (bit ? scale : Integer(0)));
    scale *= d;
    if (stats) ++stats->steps;
  }
  Rational r(sum, scale);
  r.canonicalize();
  return r;
}

Rational partial_sum_pow2(std::uint64_t k, const QParam& p) {
  if (k == 0) return 0;
  const Rational half_p(pow2(k - 1));
  if (p.is_one()) return Rational(Integer(static_cast<unsigned long>(k))) * half_p;
  return p.q() * p.q_integer(k) * half_p;
}

Rational partial_sum_pow2_printed(std::uint64_t k, const QParam& p) {
  const Rational half_p = k == 0 ? Rational(1, 2) : Rational(pow2(k - 1));
  const long e = static_cast<long>(k) - 1;
  if (p.is_one()) return Rational(e) * half_p;
  return p.q() * (1 - pow(p.q(), e)) / (1 - p.q()) * half_p;
}

BlockSumEvaluator::BlockSumEvaluator(const QParam& p, std::uint64_t shift, Integer low)
    : p_(p), shift_(shift), low_(std::move(low)) {
  if (low_ < 0 || bit_length(low_) > shift_) {
    throw Error(ErrorKind::invalid_parameter, "block low part must satisfy 0 <= w < 2^t");
  }
  const Rational qt = pow(p.q(), static_cast<long>(shift_));
  scale_ = pow(Rational(2) * p.q(), static_cast<long>(shift_));
  linear_ = shift_ == 0 ? Rational(0) : Rational(pow2(shift_ - 1)) * p.q() * p.q_integer(shift_);
  low_sum_ = partial_sum_fast(low_, p);
  low_weight_ = Rational(low_) * qt;
}

Rational BlockSumEvaluator::at(const Integer& high) const {
  Rational r = scale_ * partial_sum_fast(high, p_);
  r += Rational(high) * linear_;
  r += low_sum_;
  if (low_ != 0) r += low_weight_ * weighted_digit_sum(high, p_);
  return r;
}

Report check_bit_recurrences(std::uint64_t n_max, const QParam& p, IdentityForm form) {
  if (n_max < 2) throw Error(ErrorKind::invalid_parameter, "n_max must be at least 2");
  const bool printed = form == IdentityForm::printed;
  const Rational& q = p.q();

  PartialSumOracle oracle(p, 3 * n_max + 1);
  const std::vector<Rational> S = oracle.table(3 * n_max);
  std::vector<Rational> s(2 * n_max + 2);
  for (std::uint64_t j = 0; j < s.size(); ++j) s[j] = weighted_digit_sum(Integer(static_cast<unsigned long>(j)), p);

  std::vector<Rational> qpow(66);
  for (long i = 0; i < 66; ++i) qpow[static_cast<std::size_t>(i)] = pow(q, i);

  Report report;
  report.suite = printed ? "recurrences (printed exponents)" : "recurrences";
  const std::string j_range = "0 <= j < " + std::to_string(n_max);
  const std::string n_range = "1 <= n <= " + std::to_string(n_max);

  Check s_even{"s-even", "s(2j) = q s(j)", j_range};
  Check s_odd{"s-odd", "s(2j+1) = q s(j) + q", j_range};
  for (std::uint64_t j = 0; j < n_max; ++j) {
    const auto idx = static_cast<std::int64_t>(j);
    s_even.record(s[2 * j] == q * s[j], idx, [&] {
      return "j=" + std::to_string(j) + ": " + str(s[2 * j]) + " vs " + str(q * s[j]);
    });
    s_odd.record(s[2 * j + 1] == q * s[j] + q, idx, [&] {
      return "j=" + std::to_string(j) + ": " + str(s[2 * j + 1]) + " vs " + str(q * s[j] + q);
    });
  }

  Check s_carry_free{"s-carry-free", "s(j+p) = s(j) + q^k, 0 <= j < p = 2^{k-1}", "2p <= " + std::to_string(n_max)};
  Check s_carry{"s-carry", "s(j+p) = s(j) - q^k (1-q), p <= j < 2p", "2p <= " + std::to_string(n_max)};
  for (std::uint64_t k = 1; (std::uint64_t{1} << k) <= n_max; ++k) {
    const std::uint64_t half = std::uint64_t{1} << (k - 1);
    for (std::uint64_t j = 0; j < half; ++j) {
      const Rational rhs = s[j] + qpow[k];
      s_carry_free.record(s[j + half] == rhs, static_cast<std::int64_t>(j), [&] {
        return "k=" + std::to_string(k) + ", j=" + std::to_string(j) + ": " + str(s[j + half]) + " vs " + str(rhs);
      });
    }
    for (std::uint64_t j = half; j < 2 * half; ++j) {
      const Rational rhs = s[j] - qpow[k] * (1 - q);
      s_carry.record(s[j + half] == rhs, static_cast<std::int64_t>(j), [&] {
        return "k=" + std::to_string(k) + ", j=" + std::to_string(j) + ": " + str(s[j + half]) + " vs " + str(rhs);
      });
    }
  }

  const long exp_2p = printed ? 1 : 2;
  const long exp_p = printed ? 0 : 1;
  Check shift_2p{"S-shift-2p", printed ? "S(n+2p_n) = S(n) + S(2p_n) + n q^{k_n+1}" : "S(n+2p_n) = S(n) + S(2p_n) + n q^{k_n+2}", n_range};
  Check shift_p{"S-shift-p",
             printed ? "S(n+p_n) = S(n) + (2q-1) S(p_n) - (n-p_n) q^{k_n} (1-q) + q p_n"
                     : "S(n+p_n) = S(n) + (2q-1) S(p_n) - (n-p_n) q^{k_n+1} (1-q) + q p_n",
             n_range};
  Check doubling{"S-double", "S(2n) = 2q S(n) + n q", n_range};
  Check fast{"fast", "partial_sum_fast(n) = brute force S(n)", n_range};
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    std::uint64_t k = 0;
    while ((std::uint64_t{1} << (k + 1)) <= n) ++k;
    const std::uint64_t pn = std::uint64_t{1} << k;
    const Rational rn(Integer(static_cast<unsigned long>(n)));
    const Rational rp(Integer(static_cast<unsigned long>(pn)));
    const auto idx = static_cast<std::int64_t>(n);

    const Rational rhs_2p = S[n] + S[2 * pn] + rn * qpow[static_cast<std::size_t>(static_cast<long>(k) + exp_2p)];
    shift_2p.record(S[n + 2 * pn] == rhs_2p, idx, [&] {
      return "n=" + std::to_string(n) + ": S(" + std::to_string(n + 2 * pn) + ") = " + str(S[n + 2 * pn]) +
             ", formula gives " + str(rhs_2p);
    });

    const Rational rhs_p = S[n] + (2 * q - 1) * S[pn] -
                           (rn - rp) * qpow[static_cast<std::size_t>(static_cast<long>(k) + exp_p)] * (1 - q) + q * rp;
    shift_p.record(S[n + pn] == rhs_p, idx, [&] {
      return "n=" + std::to_string(n) + ": S(" + std::to_string(n + pn) + ") = " + str(S[n + pn]) +
             ", formula gives " + str(rhs_p);
    });

    const Rational rhs_double = 2 * q * S[n] + rn * q;
    doubling.record(S[2 * n] == rhs_double, idx, [&] {
      return "n=" + std::to_string(n) + ": " + str(S[2 * n]) + " vs " + str(rhs_double);
    });

    const Rational f = partial_sum_fast(Integer(static_cast<unsigned long>(n)), p);
    fast.record(f == S[n], idx, [&] {
      return "n=" + std::to_string(n) + ": fast " + str(f) + " vs oracle " + str(S[n]);
    });
  }

  Check pow2_sum{"S-pow2", printed ? "S(2^k) = q (1-q^{k-1})/(1-q) 2^{k-1}" : "S(2^k) = q (1-q^k)/(1-q) 2^{k-1}",
             "1 <= k, 2^k <= " + std::to_string(n_max)};
  for (std::uint64_t k = 1; (std::uint64_t{1} << k) <= n_max; ++k) {
    const Rational closed = printed ? partial_sum_pow2_printed(k, p) : partial_sum_pow2(k, p);
    const Rational& brute = S[std::uint64_t{1} << k];
    pow2_sum.record(closed == brute, static_cast<std::int64_t>(k), [&] {
      return "k=" + std::to_string(k) + ": S(2^k) = " + str(brute) + ", formula gives " + str(closed);
    });
  }

  for (Check* c : {&s_even, &s_odd, &s_carry_free, &s_carry, &shift_2p, &shift_p, &doubling, &pow2_sum, &fast}) {
    report.checks.push_back(std::move(*c));
  }
  return report;
}

}  // namespace limcurve
