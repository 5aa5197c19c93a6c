#pragma once

#include <cstdint>
#include <vector>

#include "orthoprob/dyadic.hpp"
#include "orthoprob/rng.hpp"

namespace orthoprob {

// Orthant label: one sign per coordinate. Canonical form pins the first sign
// to +1, which quotients out the antipodal symmetry of lines.
struct SignPattern {
  std::vector<std::int8_t> signs;  // each +1 or -1, signs[0] == +1

  std::int64_t size() const { return static_cast<std::int64_t>(signs.size()); }

  static SignPattern all_plus(std::int64_t p);
  // Flips every sign if the first is negative.
  static SignPattern canonical(std::vector<std::int8_t> raw);
  // Uniform over the 2^(p-1) canonical patterns: first sign pinned, the rest
  // fair coin flips.
  static SignPattern sample(std::int64_t p, SplitMix64& gen);
};

// Disagreement count folded to the line quotient: min(h, p - h) where h is
// the number of positions where the two patterns differ.
std::int64_t sign_difference(const SignPattern& a, const SignPattern& b);

// Cosine of the angle between a coordinate axis and the centroid direction
// of an orthant: p^(-1/2).
double centroid_cosine_axis(std::int64_t p);

// Cosine between the centroid directions of two orthants whose folded
// disagreement count is j: 1 - 2j/p.
double centroid_cosine_pair(std::int64_t p, std::int64_t j);

// centroid_cosine_axis - centroid_cosine_pair, evaluated as
// (sqrt(p) + 2j - p) / p: one rounding after an exact-for-squares numerator,
// so the sign is exact for every reachable (p, j), including the zero at
// perfect-square p with j = (p - sqrt(p)) / 2.
double cosine_margin(std::int64_t p, std::int64_t j);

struct McEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;  // sqrt(est * (1 - est) / n)
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

// Exact model probability by enumerating all 2^(p-1) canonical patterns
// against a fixed pattern; p <= 24.
DyadicProbability brute_force_probability(std::int64_t p);

// Monte Carlo: n independent pairs of canonical patterns, frequency of
// margin >= 0 (ties count as favorable).
McEstimate mc_orthant_estimate(std::int64_t p, std::int64_t n, std::uint64_t seed);

// Counts of folded disagreement j over all canonical pattern pairs:
// C(p, j) for j < p/2, and C(p, p/2)/2 at the tie column for even p.
std::vector<BigCount> pattern_pair_counts(std::int64_t p);

}  // namespace orthoprob
