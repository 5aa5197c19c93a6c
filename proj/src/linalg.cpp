#include "orthoprob/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace orthoprob {

Matrix Matrix::identity(std::int64_t n) {
  Matrix m(n, n);
  for (std::int64_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::int64_t i = 0; i < a.rows(); ++i)
    for (std::int64_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::int64_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::int64_t i = 0; i < a.rows(); ++i)
    for (std::int64_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

bool is_symmetric(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  for (std::int64_t i = 0; i < a.rows(); ++i)
    for (std::int64_t j = i + 1; j < a.cols(); ++j)
      if (std::fabs(a(i, j) - a(j, i)) > tol) return false;
  return true;
}

namespace {

double frobenius(const Matrix& a) {
  double s = 0.0;
  for (std::int64_t i = 0; i < a.rows(); ++i)
    for (std::int64_t j = 0; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

double off_diagonal_frobenius(const Matrix& a) {
  double s = 0.0;
  for (std::int64_t i = 0; i < a.rows(); ++i)
    for (std::int64_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition jacobi_eigen(const Matrix& input) {
  if (input.rows() != input.cols())
    throw std::invalid_argument("jacobi_eigen: matrix must be square");
  if (!is_symmetric(input, 1e-10))
    throw std::invalid_argument("jacobi_eigen: matrix must be symmetric");
  const std::int64_t n = input.rows();

  Matrix a = input;
  // Symmetrize exactly so rotations keep both triangles consistent.
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = i + 1; j < n; ++j) {
      const double v = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = v;
      a(j, i) = v;
    }
  Matrix q = Matrix::identity(n);
  const double target = 1e-12 * std::max(frobenius(a), 1e-300);

  int sweeps = 0;
  while (off_diagonal_frobenius(a) > target) {
    if (++sweeps > 100) throw std::runtime_error("jacobi_eigen: no convergence");
    for (std::int64_t p = 0; p < n - 1; ++p)
      for (std::int64_t r = p + 1; r < n; ++r) {
        const double apr = a(p, r);
        if (apr == 0.0) continue;
        const double theta = (a(r, r) - a(p, p)) / (2.0 * apr);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::int64_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akr = a(k, r);
          a(k, p) = c * akp - s * akr;
          a(k, r) = s * akp + c * akr;
        }
        for (std::int64_t k = 0; k < n; ++k) {
          const double apk = a(p, k), ark = a(r, k);
          a(p, k) = c * apk - s * ark;
          a(r, k) = s * apk + c * ark;
        }
        for (std::int64_t k = 0; k < n; ++k) {
          const double qkp = q(k, p), qkr = q(k, r);
          q(k, p) = c * qkp - s * qkr;
          q(k, r) = s * qkp + c * qkr;
        }
      }
  }

  std::vector<std::int64_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::int64_t x, std::int64_t y) {
    return a(x, x) > a(y, y);
  });

  EigenDecomposition dec;
  dec.sweeps = sweeps;
  dec.values.resize(static_cast<std::size_t>(n));
  dec.vectors = Matrix(n, n);
  for (std::int64_t col = 0; col < n; ++col) {
    const std::int64_t src = order[static_cast<std::size_t>(col)];
    dec.values[static_cast<std::size_t>(col)] = a(src, src);
    for (std::int64_t k = 0; k < n; ++k) dec.vectors(k, col) = q(k, src);
  }
  return dec;
}

Matrix random_orthogonal(std::int64_t p, SplitMix64& gen) {
  if (p < 1) throw std::invalid_argument("random_orthogonal: p must be >= 1");
  Matrix g(p, p);
  for (std::int64_t i = 0; i < p; ++i)
    for (std::int64_t j = 0; j < p; ++j) g(i, j) = gen.next_normal();

  // Modified Gram-Schmidt on columns. Dividing by the positive residual norm
  // is what pins the triangular factor's diagonal positive; that makes the
  // factorization unique and the resulting rotation Haar-distributed.
  for (std::int64_t j = 0; j < p; ++j) {
    for (std::int64_t k = 0; k < j; ++k) {
      double d = 0.0;
      for (std::int64_t i = 0; i < p; ++i) d += g(i, k) * g(i, j);
      for (std::int64_t i = 0; i < p; ++i) g(i, j) -= d * g(i, k);
    }
    double norm2 = 0.0;
    for (std::int64_t i = 0; i < p; ++i) norm2 += g(i, j) * g(i, j);
    if (norm2 == 0.0) throw std::runtime_error("random_orthogonal: degenerate draw");
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::int64_t i = 0; i < p; ++i) g(i, j) *= inv;
  }
  return g;
}

}  // namespace orthoprob
