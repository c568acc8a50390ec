#include "ncig/covariance.hpp"

#include "ncig/errors.hpp"

namespace ncig {

CovarianceMatrix::CovarianceMatrix(const Matrix& m) {
  require_square(m, "CovarianceMatrix");
  require_finite(m, "CovarianceMatrix");
  if (!is_symmetric(m)) {
    throw SymmetryError("CovarianceMatrix: matrix is not symmetric");
  }
  matrix_ = symmetrized(m);
  Eigen::LLT<Matrix> llt(matrix_);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("CovarianceMatrix: matrix is not positive definite");
  }
}

Matrix CovarianceMatrix::cholesky_factor() const {
  Eigen::LLT<Matrix> llt(matrix_);
  return llt.matrixL();
}

}  // namespace ncig
