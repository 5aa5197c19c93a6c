#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "orthoprob/bigint.hpp"

namespace orthoprob {

// Exact probability with a power-of-two denominator: numerator / 2^log2_den.
// Invariant: 0 <= numerator <= 2^log2_den.
struct DyadicProbability {
  BigCount numerator;
  std::uint64_t log2_den = 0;

  DyadicProbability() : numerator(0) {}
  DyadicProbability(BigCount num, std::uint64_t k)
      : numerator(std::move(num)), log2_den(k) {
    if (numerator < 0 || numerator > pow2(log2_den))
      throw std::invalid_argument("DyadicProbability: value outside [0, 1]");
  }

  // Truncating conversion; correct to one ulp and monotone in the exact value.
  double to_double() const {
    if (numerator == 0) return 0.0;
    long e2 = 0;
    double frac = mpz_get_d_2exp(&e2, numerator.get_mpz_t());
    return std::ldexp(frac, static_cast<int>(e2 - static_cast<long>(log2_den)));
  }

  // Strips common factors of two from numerator and denominator.
  DyadicProbability normalized() const {
    if (numerator == 0) return DyadicProbability(BigCount(0), 0);
    BigCount num = numerator;
    std::uint64_t k = log2_den;
    while (k > 0 && mpz_even_p(num.get_mpz_t())) {
      num >>= 1;
      --k;
    }
    return DyadicProbability(std::move(num), k);
  }

  std::string fraction_string() const {
    return numerator.get_str() + "/2^" + std::to_string(log2_den);
  }
};

// Sign of a - b, computed exactly over the common denominator.
inline int dyadic_compare(const DyadicProbability& a, const DyadicProbability& b) {
  const std::uint64_t k = std::max(a.log2_den, b.log2_den);
  BigCount na = a.numerator << static_cast<mp_bitcnt_t>(k - a.log2_den);
  BigCount nb = b.numerator << static_cast<mp_bitcnt_t>(k - b.log2_den);
  return cmp(na, nb) < 0 ? -1 : (na == nb ? 0 : 1);
}

inline bool operator==(const DyadicProbability& a, const DyadicProbability& b) {
  return dyadic_compare(a, b) == 0;
}
inline bool operator<(const DyadicProbability& a, const DyadicProbability& b) {
  return dyadic_compare(a, b) < 0;
}
inline bool operator>(const DyadicProbability& a, const DyadicProbability& b) {
  return dyadic_compare(a, b) > 0;
}
inline bool operator<=(const DyadicProbability& a, const DyadicProbability& b) {
  return dyadic_compare(a, b) <= 0;
}
inline bool operator>=(const DyadicProbability& a, const DyadicProbability& b) {
  return dyadic_compare(a, b) >= 0;
}

// Exact a - b; requires a >= b.
inline DyadicProbability dyadic_sub(const DyadicProbability& a,
                                    const DyadicProbability& b) {
  const std::uint64_t k = std::max(a.log2_den, b.log2_den);
  BigCount na = a.numerator << static_cast<mp_bitcnt_t>(k - a.log2_den);
  BigCount nb = b.numerator << static_cast<mp_bitcnt_t>(k - b.log2_den);
  if (na < nb) throw std::invalid_argument("dyadic_sub: result would be negative");
  return DyadicProbability(na - nb, k);
}

inline DyadicProbability dyadic_one_minus(const DyadicProbability& a) {
  return DyadicProbability(pow2(a.log2_den) - a.numerator, a.log2_den);
}

inline DyadicProbability dyadic_pow(const DyadicProbability& a, std::uint64_t e) {
  BigCount num;
  mpz_pow_ui(num.get_mpz_t(), a.numerator.get_mpz_t(),
             static_cast<unsigned long>(e));
  return DyadicProbability(std::move(num), a.log2_den * e);
}

// Sign of (a - num/den) for den > 0, computed exactly by cross-multiplication.
inline int dyadic_compare_fraction(const DyadicProbability& a, std::uint64_t num,
                                   std::uint64_t den) {
  if (den == 0) throw std::invalid_argument("dyadic_compare_fraction: den == 0");
  BigCount lhs = a.numerator * BigCount(static_cast<unsigned long>(den));
  BigCount rhs = BigCount(static_cast<unsigned long>(num))
                 << static_cast<mp_bitcnt_t>(a.log2_den);
  return cmp(lhs, rhs) < 0 ? -1 : (lhs == rhs ? 0 : 1);
}

}  // namespace orthoprob
