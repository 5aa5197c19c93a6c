#include "orthoprob/pca.hpp"

#include <cmath>
#include <stdexcept>

namespace orthoprob {

CovarianceSpec CovarianceSpec::identity(std::int64_t p) {
  CovarianceSpec s;
  s.p = p;
  s.kind = Kind::identity;
  s.validate();
  return s;
}

CovarianceSpec CovarianceSpec::diagonal(std::vector<double> spectrum) {
  CovarianceSpec s;
  s.p = static_cast<std::int64_t>(spectrum.size());
  s.kind = Kind::diagonal;
  s.spectrum = std::move(spectrum);
  s.validate();
  return s;
}

CovarianceSpec CovarianceSpec::random_spd(std::vector<double> spectrum,
                                          std::uint64_t seed) {
  CovarianceSpec s;
  s.p = static_cast<std::int64_t>(spectrum.size());
  s.kind = Kind::random_spd;
  s.spectrum = std::move(spectrum);
  s.rotation_seed = seed;
  s.validate();
  return s;
}

const char* CovarianceSpec::kind_name() const {
  switch (kind) {
    case Kind::identity: return "identity";
    case Kind::diagonal: return "diagonal";
    case Kind::random_spd: return "random_spd";
  }
  return "?";
}

void CovarianceSpec::validate() const {
  if (p < 2) throw std::invalid_argument("CovarianceSpec: p must be >= 2");
  if (kind == Kind::identity) {
    if (!spectrum.empty() && static_cast<std::int64_t>(spectrum.size()) != p)
      throw std::invalid_argument("CovarianceSpec: spectrum length != p");
    return;
  }
  if (static_cast<std::int64_t>(spectrum.size()) != p)
    throw std::invalid_argument("CovarianceSpec: spectrum length != p");
  for (std::size_t n = 0; n < spectrum.size(); ++n) {
    if (!(spectrum[n] > 0.0))
      throw std::invalid_argument("CovarianceSpec: spectrum must be positive");
    if (n > 0 && spectrum[n] > spectrum[n - 1])
      throw std::invalid_argument("CovarianceSpec: spectrum must be nonincreasing");
  }
}

Matrix make_spd(const CovarianceSpec& spec) {
  spec.validate();
  const std::int64_t p = spec.p;
  switch (spec.kind) {
    case CovarianceSpec::Kind::identity:
      return Matrix::identity(p);
    case CovarianceSpec::Kind::diagonal: {
      Matrix m(p, p);
      for (std::int64_t d = 0; d < p; ++d)
        m(d, d) = spec.spectrum[static_cast<std::size_t>(d)];
      return m;
    }
    case CovarianceSpec::Kind::random_spd: {
      SplitMix64 gen(spec.rotation_seed);
      const Matrix q = random_orthogonal(p, gen);
      Matrix ql(p, p);  // Q * diag(spectrum)
      for (std::int64_t r = 0; r < p; ++r)
        for (std::int64_t c = 0; c < p; ++c)
          ql(r, c) = q(r, c) * spec.spectrum[static_cast<std::size_t>(c)];
      return matmul(ql, transpose(q));
    }
  }
  throw std::logic_error("make_spd: unreachable");
}

PcBasis eigen_decompose(const Matrix& sigma) {
  EigenDecomposition dec = jacobi_eigen(sigma);
  PcBasis basis;
  basis.components = std::move(dec.vectors);
  basis.eigenvalues = std::move(dec.values);
  return basis;
}

double pearson_corr(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("pearson_corr: length mismatch");
  const std::size_t n = x.size();
  if (n < 3) throw std::invalid_argument("pearson_corr: need n >= 3");
  double mx = 0.0, my = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    mx += x[t];
    my += y[t];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const double dx = x[t] - mx, dy = y[t] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw std::domain_error("pearson_corr: constant input");
  const double r = sxy / std::sqrt(sxx * syy);
  return std::min(1.0, std::max(-1.0, r));
}

const char* ZModel::name() const {
  switch (kind) {
    case Kind::random_direction: return "random_direction";
    case Kind::noisy_linear: return "noisy_linear";
    case Kind::independent: return "independent";
  }
  return "?";
}

const McEstimate& ExperimentReport::at(std::int64_t k, std::int64_t i) const {
  const std::int64_t p = config.cov.p;
  if (k < 1 || k > p || i < 1 || i > p)
    throw std::invalid_argument("ExperimentReport::at: index out of range");
  if (!config.all_pairs) {
    if (k != config.k || i != config.i)
      throw std::invalid_argument("ExperimentReport::at: cell was not estimated");
    return estimates[0];
  }
  return estimates[static_cast<std::size_t>((k - 1) * p + (i - 1))];
}

namespace {

// One correlation per column of m against z; NaN marks a degenerate column.
std::vector<double> abs_column_correlations(const Matrix& m,
                                            const std::vector<double>& z,
                                            std::vector<double>& col_buf) {
  std::vector<double> out(static_cast<std::size_t>(m.cols()));
  for (std::int64_t c = 0; c < m.cols(); ++c) {
    for (std::int64_t r = 0; r < m.rows(); ++r)
      col_buf[static_cast<std::size_t>(r)] = m(r, c);
    try {
      out[static_cast<std::size_t>(c)] = std::fabs(pearson_corr(col_buf, z));
    } catch (const std::domain_error&) {
      out[static_cast<std::size_t>(c)] = std::nan("");
    }
  }
  return out;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.cov.validate();
  const std::int64_t p = config.cov.p;
  if (config.k < 1 || config.k > p || config.i < 1 || config.i > p)
    throw std::invalid_argument("run_experiment: need 1 <= k, i <= p");
  if (config.n_obs < 10 * p)
    throw std::invalid_argument("run_experiment: need n_obs >= 10 * p");
  if (config.n_trials < 100)
    throw std::invalid_argument("run_experiment: need n_trials >= 100");

  const Matrix sigma = make_spd(config.cov);
  const PcBasis basis = eigen_decompose(sigma);
  // Mixing matrix A = Q * diag(sqrt(lambda)): rows of G*A^T have covariance
  // A*A^T = Sigma.
  Matrix a(p, p);
  for (std::int64_t r = 0; r < p; ++r)
    for (std::int64_t c = 0; c < p; ++c)
      a(r, c) = basis.components(r, c) *
                std::sqrt(basis.eigenvalues[static_cast<std::size_t>(c)]);

  const std::int64_t cells = config.all_pairs ? p * p : 1;
  std::vector<std::int64_t> event_counts(static_cast<std::size_t>(cells), 0);
  std::int64_t skipped = 0;

  const std::int64_t n = config.n_obs;
  Matrix x(n, p);
  std::vector<double> g(static_cast<std::size_t>(p));
  std::vector<double> beta(static_cast<std::size_t>(p));
  std::vector<double> z(static_cast<std::size_t>(n));
  std::vector<double> col_buf(static_cast<std::size_t>(n));

  for (std::int64_t trial = 0; trial < config.n_trials; ++trial) {
    SplitMix64 gen = SplitMix64::derive(config.seed, static_cast<std::uint64_t>(trial));

    for (std::int64_t r = 0; r < n; ++r) {
      for (auto& v : g) v = gen.next_normal();
      for (std::int64_t c = 0; c < p; ++c) {
        double s = 0.0;
        for (std::int64_t m = 0; m < p; ++m)
          s += a(c, m) * g[static_cast<std::size_t>(m)];
        x(r, c) = s;
      }
    }

    Matrix y;
    if (config.sample_pca) {
      std::vector<double> mean(static_cast<std::size_t>(p), 0.0);
      for (std::int64_t r = 0; r < n; ++r)
        for (std::int64_t c = 0; c < p; ++c)
          mean[static_cast<std::size_t>(c)] += x(r, c);
      for (auto& v : mean) v /= static_cast<double>(n);
      Matrix s(p, p);
      for (std::int64_t c1 = 0; c1 < p; ++c1)
        for (std::int64_t c2 = c1; c2 < p; ++c2) {
          double acc = 0.0;
          for (std::int64_t r = 0; r < n; ++r)
            acc += (x(r, c1) - mean[static_cast<std::size_t>(c1)]) *
                   (x(r, c2) - mean[static_cast<std::size_t>(c2)]);
          acc /= static_cast<double>(n - 1);
          s(c1, c2) = acc;
          s(c2, c1) = acc;
        }
      y = matmul(x, eigen_decompose(s).components);
    } else {
      y = matmul(x, basis.components);
    }

    switch (config.z.kind) {
      case ZModel::Kind::random_direction:
      case ZModel::Kind::noisy_linear: {
        double norm2 = 0.0;
        do {
          norm2 = 0.0;
          for (auto& v : beta) {
            v = gen.next_normal();
            norm2 += v * v;
          }
        } while (norm2 == 0.0);
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& v : beta) v *= inv;
        for (std::int64_t r = 0; r < n; ++r) {
          double s = 0.0;
          for (std::int64_t c = 0; c < p; ++c)
            s += x(r, c) * beta[static_cast<std::size_t>(c)];
          z[static_cast<std::size_t>(r)] = s;
        }
        if (config.z.kind == ZModel::Kind::noisy_linear)
          for (auto& v : z) v += config.z.noise_sigma * gen.next_normal();
        break;
      }
      case ZModel::Kind::independent:
        for (auto& v : z) v = gen.next_normal();
        break;
    }

    const std::vector<double> ry = abs_column_correlations(y, z, col_buf);
    const std::vector<double> rx = abs_column_correlations(x, z, col_buf);

    bool degenerate = false;
    if (config.all_pairs) {
      for (double v : ry) degenerate |= std::isnan(v);
      for (double v : rx) degenerate |= std::isnan(v);
    } else {
      degenerate = std::isnan(ry[static_cast<std::size_t>(config.k - 1)]) ||
                   std::isnan(rx[static_cast<std::size_t>(config.i - 1)]);
    }
    if (degenerate) {
      ++skipped;
      continue;
    }

    if (config.all_pairs) {
      for (std::int64_t k = 1; k <= p; ++k)
        for (std::int64_t i = 1; i <= p; ++i)
          event_counts[static_cast<std::size_t>((k - 1) * p + (i - 1))] +=
              ry[static_cast<std::size_t>(k - 1)] >=
              rx[static_cast<std::size_t>(i - 1)];
    } else {
      event_counts[0] += ry[static_cast<std::size_t>(config.k - 1)] >=
                         rx[static_cast<std::size_t>(config.i - 1)];
    }
  }

  ExperimentReport rep;
  rep.config = config;
  rep.skipped_trials = skipped;
  const std::int64_t used = config.n_trials - skipped;
  rep.estimates.resize(static_cast<std::size_t>(cells));
  for (std::int64_t c = 0; c < cells; ++c) {
    McEstimate& est = rep.estimates[static_cast<std::size_t>(c)];
    est.n_samples = used;
    est.seed = config.seed;
    if (used > 0) {
      est.estimate = static_cast<double>(event_counts[static_cast<std::size_t>(c)]) /
                     static_cast<double>(used);
      est.standard_error =
          std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(used));
    }
  }
  return rep;
}

}  // namespace orthoprob
