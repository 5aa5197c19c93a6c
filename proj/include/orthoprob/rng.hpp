#pragma once

#include <cmath>
#include <cstdint>

namespace orthoprob {

inline constexpr const char* kGeneratorName = "splitmix64";

// Default seed used by the CLI when --seed is not given.
inline constexpr std::uint64_t kDefaultSeed = 0x5EEDBA5Eull;

// SplitMix64 (Steele, Lea & Flood's mixing constants). Chosen because the
// whole state is one word, seeding is trivial, and independent substreams can
// be derived by hashing (seed, stream) pairs.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Standard normal via Marsaglia's polar method; second variate is cached.
  double next_normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_unit() - 1.0;
      v = 2.0 * next_unit() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  // Fair sign, +1 or -1.
  int next_sign() { return (next() >> 63) ? 1 : -1; }

  // Independent generator for substream `stream` of `seed`. Both words go
  // through a full mix so that nearby (seed, stream) pairs decorrelate.
  static SplitMix64 derive(std::uint64_t seed, std::uint64_t stream) {
    return SplitMix64(mix(seed + 0x9E3779B97F4A7C15ull) ^
                      mix(stream + 0x94D049BB133111EBull));
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace orthoprob
