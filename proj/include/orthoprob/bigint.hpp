#pragma once

#include <cstdint>
#include <stdexcept>

#include <gmpxx.h>

namespace orthoprob {

// Arbitrary-precision integer. Counts are nonnegative by convention; signed
// quantities (d_scaled, differences) use the same type.
using BigInt = mpz_class;
using BigCount = mpz_class;

// C(n, k); zero outside 0 <= k <= n.
inline BigCount binomial(std::int64_t n, std::int64_t k) {
  if (n < 0) throw std::invalid_argument("binomial: n must be >= 0");
  if (k < 0 || k > n) return BigCount(0);
  BigCount r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

inline BigCount pow2(std::uint64_t e) {
  BigCount r(1);
  r <<= static_cast<mp_bitcnt_t>(e);
  return r;
}

}  // namespace orthoprob
