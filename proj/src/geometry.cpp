#include "orthoprob/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace orthoprob {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_mc_args(std::int64_t p, std::int64_t n) {
  if (p < 2) throw std::invalid_argument("geometry: p must be >= 2");
  if (n < 1) throw std::invalid_argument("geometry: n must be >= 1");
}

McEstimate bernoulli_estimate(double mean, std::int64_t n, std::uint64_t seed) {
  McEstimate est;
  est.estimate = mean;
  est.standard_error = std::sqrt(mean * (1.0 - mean) / static_cast<double>(n));
  est.n_samples = n;
  est.seed = seed;
  return est;
}

}  // namespace

UnitLine sample_uniform_line(std::int64_t p, SplitMix64& gen) {
  if (p < 1) throw std::invalid_argument("sample_uniform_line: p must be >= 1");
  UnitLine line;
  line.direction.resize(static_cast<std::size_t>(p));
  double norm2 = 0.0;
  for (int attempt = 0;; ++attempt) {
    if (attempt >= 100)
      throw std::runtime_error("sample_uniform_line: generator keeps returning 0");
    norm2 = 0.0;
    for (auto& x : line.direction) {
      x = gen.next_normal();
      norm2 += x * x;
    }
    if (norm2 != 0.0) break;
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& x : line.direction) x *= inv;
  for (const double x : line.direction) {
    if (x > 0.0) break;
    if (x < 0.0) {
      for (auto& y : line.direction) y = -y;
      break;
    }
  }
  return line;
}

double line_cosine(const UnitLine& a, const UnitLine& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("line_cosine: size mismatch");
  return std::fabs(dot(a.direction, b.direction));
}

SignPattern orthant_class_of(const UnitLine& w) {
  std::vector<std::int8_t> signs(w.direction.size());
  for (std::size_t i = 0; i < signs.size(); ++i)
    signs[i] = w.direction[i] >= 0.0 ? std::int8_t{1} : std::int8_t{-1};
  return SignPattern::canonical(std::move(signs));
}

DirectEventResult estimate_direct_event(std::int64_t p, std::int64_t n,
                                        std::uint64_t seed) {
  check_mc_args(p, n);
  SplitMix64 gen(seed);
  std::int64_t hits = 0, ties = 0;
  for (std::int64_t t = 0; t < n; ++t) {
    const UnitLine w = sample_uniform_line(p, gen);
    const UnitLine v = sample_uniform_line(p, gen);
    const double to_axis = std::fabs(w.direction[0]);
    const double to_line = line_cosine(w, v);
    if (to_axis >= to_line) ++hits;
    if (to_axis == to_line) ++ties;
  }
  DirectEventResult res;
  res.estimate =
      bernoulli_estimate(static_cast<double>(hits) / static_cast<double>(n), n, seed);
  res.tie_count = ties;
  return res;
}

std::vector<double> estimate_centroid_direction(std::int64_t p, std::int64_t n,
                                                std::uint64_t seed) {
  check_mc_args(p, n);
  SplitMix64 gen(seed);
  std::vector<double> sum(static_cast<std::size_t>(p), 0.0);
  for (std::int64_t t = 0; t < n; ++t) {
    const UnitLine w = sample_uniform_line(p, gen);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += std::fabs(w.direction[i]);
  }
  const double norm = std::sqrt(dot(sum, sum));
  for (auto& x : sum) x /= norm;
  return sum;
}

McEstimate estimate_mean_folded_cosine(std::int64_t p, std::int64_t n,
                                       std::uint64_t seed) {
  check_mc_args(p, n);
  SplitMix64 gen(seed);
  double acc = 0.0;
  for (std::int64_t t = 0; t < n; ++t)
    acc += std::fabs(sample_uniform_line(p, gen).direction[0]);
  return bernoulli_estimate(acc / static_cast<double>(n), n, seed);
}

GeoReport geo_report(std::int64_t p, std::int64_t n, std::uint64_t seed) {
  check_mc_args(p, n);
  SplitMix64 gen(seed);
  GeoReport rep;
  rep.p = p;
  rep.n_samples = n;
  rep.seed = seed;
  rep.centroid_direction.assign(static_cast<std::size_t>(p), 0.0);
  rep.j_histogram.assign(static_cast<std::size_t>(p / 2 + 1), 0);

  std::int64_t hits = 0, ties = 0;
  double cosine_acc = 0.0;
  for (std::int64_t t = 0; t < n; ++t) {
    const UnitLine w = sample_uniform_line(p, gen);
    const UnitLine v = sample_uniform_line(p, gen);
    const double to_axis = std::fabs(w.direction[0]);
    const double to_line = line_cosine(w, v);
    if (to_axis >= to_line) ++hits;
    if (to_axis == to_line) ++ties;
    for (std::size_t i = 0; i < rep.centroid_direction.size(); ++i)
      rep.centroid_direction[i] += std::fabs(w.direction[i]);
    cosine_acc += to_axis;
    const std::int64_t j = sign_difference(orthant_class_of(w), orthant_class_of(v));
    ++rep.j_histogram[static_cast<std::size_t>(j)];
  }

  rep.direct_event.estimate =
      bernoulli_estimate(static_cast<double>(hits) / static_cast<double>(n), n, seed);
  rep.direct_event.tie_count = ties;
  const double norm =
      std::sqrt(dot(rep.centroid_direction, rep.centroid_direction));
  for (auto& x : rep.centroid_direction) x /= norm;
  rep.mean_folded_cosine =
      bernoulli_estimate(cosine_acc / static_cast<double>(n), n, seed);
  return rep;
}

}  // namespace orthoprob
