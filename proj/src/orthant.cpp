#include "orthoprob/orthant.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace orthoprob {

SignPattern SignPattern::all_plus(std::int64_t p) {
  if (p < 1) throw std::invalid_argument("SignPattern: p must be >= 1");
  SignPattern s;
  s.signs.assign(static_cast<std::size_t>(p), std::int8_t{1});
  return s;
}

SignPattern SignPattern::canonical(std::vector<std::int8_t> raw) {
  if (raw.empty()) throw std::invalid_argument("SignPattern: empty pattern");
  for (std::int8_t v : raw)
    if (v != 1 && v != -1)
      throw std::invalid_argument("SignPattern: signs must be +1 or -1");
  if (raw[0] < 0)
    for (std::int8_t& v : raw) v = static_cast<std::int8_t>(-v);
  SignPattern s;
  s.signs = std::move(raw);
  return s;
}

SignPattern SignPattern::sample(std::int64_t p, SplitMix64& gen) {
  SignPattern s = all_plus(p);
  for (std::int64_t i = 1; i < p; ++i)
    s.signs[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(gen.next_sign());
  return s;
}

std::int64_t sign_difference(const SignPattern& a, const SignPattern& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("sign_difference: size mismatch");
  const std::int64_t p = a.size();
  std::int64_t h = 0;
  for (std::int64_t i = 0; i < p; ++i)
    h += a.signs[static_cast<std::size_t>(i)] != b.signs[static_cast<std::size_t>(i)];
  return std::min(h, p - h);
}

double centroid_cosine_axis(std::int64_t p) {
  if (p < 1) throw std::invalid_argument("centroid_cosine_axis: p must be >= 1");
  return 1.0 / std::sqrt(static_cast<double>(p));
}

double centroid_cosine_pair(std::int64_t p, std::int64_t j) {
  if (p < 1 || j < 0 || 2 * j > p)
    throw std::invalid_argument("centroid_cosine_pair: need 0 <= j <= p/2");
  return static_cast<double>(p - 2 * j) / static_cast<double>(p);
}

double cosine_margin(std::int64_t p, std::int64_t j) {
  if (p < 1 || j < 0 || 2 * j > p)
    throw std::invalid_argument("cosine_margin: need 0 <= j <= p/2");
  return (std::sqrt(static_cast<double>(p)) + static_cast<double>(2 * j - p)) /
         static_cast<double>(p);
}

namespace {

std::vector<char> favorable_by_j(std::int64_t p) {
  std::vector<char> fav(static_cast<std::size_t>(p / 2 + 1));
  for (std::int64_t j = 0; j <= p / 2; ++j)
    fav[static_cast<std::size_t>(j)] = cosine_margin(p, j) >= 0.0;
  return fav;
}

}  // namespace

DyadicProbability brute_force_probability(std::int64_t p) {
  if (p < 2 || p > 24)
    throw std::invalid_argument("brute_force_probability: need 2 <= p <= 24");
  const std::vector<char> fav = favorable_by_j(p);
  const std::uint64_t patterns = std::uint64_t{1} << (p - 1);
  std::uint64_t hits = 0;
  for (std::uint64_t bits = 0; bits < patterns; ++bits) {
    const std::int64_t h = std::popcount(bits);
    const std::int64_t j = std::min(h, p - h);
    hits += static_cast<std::uint64_t>(fav[static_cast<std::size_t>(j)]);
  }
  return DyadicProbability(BigCount(static_cast<unsigned long>(hits)),
                           static_cast<std::uint64_t>(p - 1));
}

McEstimate mc_orthant_estimate(std::int64_t p, std::int64_t n, std::uint64_t seed) {
  if (p < 2) throw std::invalid_argument("mc_orthant_estimate: p must be >= 2");
  if (n < 1) throw std::invalid_argument("mc_orthant_estimate: n must be >= 1");
  const std::vector<char> fav = favorable_by_j(p);

  // Patterns packed as words over the p-1 free coordinates; the pinned first
  // coordinates always agree, so the disagreement count is a masked popcount.
  const std::int64_t bits = p - 1;
  const std::int64_t words = (bits + 63) / 64;
  const std::uint64_t last_mask =
      (bits % 64) ? ((std::uint64_t{1} << (bits % 64)) - 1) : ~std::uint64_t{0};

  SplitMix64 gen(seed);
  std::vector<std::uint64_t> a(static_cast<std::size_t>(words));
  std::vector<std::uint64_t> b(static_cast<std::size_t>(words));
  std::int64_t hits = 0;
  for (std::int64_t t = 0; t < n; ++t) {
    for (auto& w : a) w = gen.next();
    for (auto& w : b) w = gen.next();
    std::int64_t h = 0;
    for (std::int64_t w = 0; w < words; ++w) {
      std::uint64_t x = a[static_cast<std::size_t>(w)] ^ b[static_cast<std::size_t>(w)];
      if (w == words - 1) x &= last_mask;
      h += std::popcount(x);
    }
    const std::int64_t j = std::min(h, p - h);
    hits += fav[static_cast<std::size_t>(j)];
  }

  McEstimate est;
  est.n_samples = n;
  est.seed = seed;
  est.estimate = static_cast<double>(hits) / static_cast<double>(n);
  est.standard_error =
      std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(n));
  return est;
}

std::vector<BigCount> pattern_pair_counts(std::int64_t p) {
  if (p < 2) throw std::invalid_argument("pattern_pair_counts: p must be >= 2");
  std::vector<BigCount> counts(static_cast<std::size_t>(p / 2 + 1));
  for (std::int64_t j = 0; j <= p / 2; ++j) {
    BigCount c = binomial(p, j);
    if (p % 2 == 0 && j == p / 2) c /= 2;
    counts[static_cast<std::size_t>(j)] = c;
  }
  return counts;
}

}  // namespace orthoprob
