#pragma once

#include "ncig/numerics.hpp"

namespace ncig {

// Covariance matrix of a zero-mean Gaussian state: symmetric within 1e-12 and
// positive definite. Stored symmetrized.
class CovarianceMatrix {
 public:
  // Throws DimensionError, SymmetryError or NumericalError (not positive definite).
  explicit CovarianceMatrix(const Matrix& m);

  const Matrix& matrix() const noexcept { return matrix_; }
  Eigen::Index dim() const noexcept { return matrix_.rows(); }

  // Lower Cholesky factor L with matrix() = L L^T.
  Matrix cholesky_factor() const;

 private:
  Matrix matrix_;
};

}  // namespace ncig
