#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orthoprob/linalg.hpp"
#include "orthoprob/orthant.hpp"
#include "orthoprob/rng.hpp"

namespace orthoprob {

// Population covariance to experiment against.
struct CovarianceSpec {
  enum class Kind { identity, diagonal, random_spd };

  std::int64_t p = 0;
  Kind kind = Kind::identity;
  std::vector<double> spectrum;     // diagonal / random_spd; positive, nonincreasing
  std::uint64_t rotation_seed = 0;  // random_spd only

  static CovarianceSpec identity(std::int64_t p);
  static CovarianceSpec diagonal(std::vector<double> spectrum);
  static CovarianceSpec random_spd(std::vector<double> spectrum, std::uint64_t seed);

  const char* kind_name() const;
  void validate() const;  // throws std::invalid_argument
};

Matrix make_spd(const CovarianceSpec& spec);

// Principal component basis: columns of `components` are unit eigenvector
// directions in descending eigenvalue order.
struct PcBasis {
  Matrix components;
  std::vector<double> eigenvalues;
};

PcBasis eigen_decompose(const Matrix& sigma);

// Centered Pearson correlation. Throws std::invalid_argument for n < 3 or
// size mismatch, std::domain_error when either vector is constant.
double pearson_corr(const std::vector<double>& x, const std::vector<double>& y);

// Response models; the experiment names the one in force in its report.
struct ZModel {
  enum class Kind { random_direction, noisy_linear, independent };
  Kind kind = Kind::random_direction;
  double noise_sigma = 1.0;  // noisy_linear only

  const char* name() const;
};

struct ExperimentConfig {
  CovarianceSpec cov;
  std::int64_t k = 1;  // component index, 1-based
  std::int64_t i = 1;  // input-coordinate index, 1-based
  std::int64_t n_obs = 0;
  std::int64_t n_trials = 0;
  ZModel z;
  std::uint64_t seed = kDefaultSeed;
  bool all_pairs = false;   // estimate every (k, i) cell
  bool sample_pca = false;  // per-trial sample-covariance PCs instead of population
};

// Frequencies of |corr(Y_k, Z)| >= |corr(X_i, Z)| over non-skipped trials.
struct ExperimentReport {
  ExperimentConfig config;
  std::vector<McEstimate> estimates;  // 1 cell, or p*p row-major when all_pairs
  std::int64_t skipped_trials = 0;

  const McEstimate& at(std::int64_t k, std::int64_t i) const;  // 1-based
};

// Per trial: draw an n_obs x p Gaussian sample with the configured covariance,
// rotate onto the principal axes, draw Z, record the correlation event.
// Trials with a degenerate (constant) column are skipped and counted.
// Trial t uses the derived generator (seed, t), so results are independent
// of execution order.
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace orthoprob
