#pragma once

#include <cstdint>
#include <vector>

#include "orthoprob/rng.hpp"

namespace orthoprob {

// Dense row-major matrix of doubles; just enough for the experiments here.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::int64_t rows, std::int64_t cols)
      : rows_(rows), cols_(cols),
        a_(static_cast<std::size_t>(rows * cols), 0.0) {}

  static Matrix identity(std::int64_t n);

  std::int64_t rows() const { return rows_; }
  std::int64_t cols() const { return cols_; }

  double& operator()(std::int64_t i, std::int64_t j) {
    return a_[static_cast<std::size_t>(i * cols_ + j)];
  }
  double operator()(std::int64_t i, std::int64_t j) const {
    return a_[static_cast<std::size_t>(i * cols_ + j)];
  }

 private:
  std::int64_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
bool is_symmetric(const Matrix& a, double tol);

struct EigenDecomposition {
  std::vector<double> values;  // descending
  Matrix vectors;              // columns match values
  int sweeps = 0;
};

// Cyclic Jacobi for symmetric matrices: row-major sweeps over the upper
// triangle, rotations applied until the off-diagonal Frobenius mass falls
// below 1e-12 times the total Frobenius norm; throws after 100 sweeps.
// Eigenpairs are sorted by descending eigenvalue with a stable tie rule
// (original diagonal position).
EigenDecomposition jacobi_eigen(const Matrix& a);

// Haar-distributed rotation: Gaussian matrix through modified Gram-Schmidt.
// Normalizing by the positive residual norm keeps the triangular factor's
// diagonal positive, which is what makes the rotation Haar rather than
// merely orthogonal.
Matrix random_orthogonal(std::int64_t p, SplitMix64& gen);

}  // namespace orthoprob
