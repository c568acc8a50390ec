#include "ncig/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ncig/errors.hpp"

namespace ncig {
namespace {

// Reciprocal condition estimate below which det * inverse loses too many digits.
constexpr double kAdjugateRcondThreshold = 1e-8;

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Matrix minor_of(const Matrix& m, Eigen::Index row, Eigen::Index col) {
  const Eigen::Index n = m.rows();
  Matrix out(n - 1, n - 1);
  for (Eigen::Index i = 0, oi = 0; i < n; ++i) {
    if (i == row) continue;
    for (Eigen::Index j = 0, oj = 0; j < n; ++j) {
      if (j == col) continue;
      out(oi, oj++) = m(i, j);
    }
    ++oi;
  }
  return out;
}

}  // namespace

void require_square(const Matrix& m, std::string_view what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_finite(const Matrix& m, std::string_view what) {
  if (!m.allFinite()) {
    throw NumericalError(std::string(what) + ": matrix has non-finite entries");
  }
}

bool is_symmetric(const Matrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.transpose()) <= rel_tol * std::max(1.0, max_abs(m));
}

bool is_antisymmetric(const Matrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m + m.transpose()) <= rel_tol * std::max(1.0, max_abs(m));
}

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

SymmetricEigen eig_symmetric_vectors(const Matrix& m) {
  require_square(m, "eig_symmetric");
  require_finite(m, "eig_symmetric");
  if (!is_symmetric(m)) {
    throw SymmetryError("eig_symmetric: matrix is not symmetric within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(m));
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_symmetric: eigensolver did not converge");
  }
  // Eigen already returns ascending eigenvalues.
  const Vector& ev = solver.eigenvalues();
  return {std::vector<double>(ev.data(), ev.data() + ev.size()), solver.eigenvectors()};
}

std::vector<double> eig_symmetric(const Matrix& m) {
  require_square(m, "eig_symmetric");
  require_finite(m, "eig_symmetric");
  if (!is_symmetric(m)) {
    throw SymmetryError("eig_symmetric: matrix is not symmetric within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_symmetric: eigensolver did not converge");
  }
  const Vector& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

GeneralEigen eig_general(const Matrix& m) {
  require_square(m, "spectrum_real_general");
  require_finite(m, "spectrum_real_general");
  Eigen::EigenSolver<Matrix> solver(m, true);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("spectrum_real_general: eigensolver did not converge");
  }
  const Eigen::VectorXcd& ev = solver.eigenvalues();
  return {std::vector<std::complex<double>>(ev.data(), ev.data() + ev.size()),
          solver.eigenvectors()};
}

std::vector<std::complex<double>> spectrum_real_general(const Matrix& m) {
  require_square(m, "spectrum_real_general");
  require_finite(m, "spectrum_real_general");
  Eigen::EigenSolver<Matrix> solver(m, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("spectrum_real_general: eigensolver did not converge");
  }
  const Eigen::VectorXcd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double determinant(const Matrix& m) {
  require_square(m, "determinant");
  require_finite(m, "determinant");
  return m.partialPivLu().determinant();
}

Matrix inverse(const Matrix& m) {
  require_square(m, "inverse");
  require_finite(m, "inverse");
  Eigen::FullPivLU<Matrix> lu(m);
  if (!lu.isInvertible()) {
    throw NumericalError("inverse: matrix is numerically singular");
  }
  return lu.inverse();
}

Matrix cofactor_adjugate(const Matrix& m) {
  require_square(m, "adjugate");
  const Eigen::Index n = m.rows();
  if (n == 1) return Matrix::Ones(1, 1);
  Matrix adj(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      // adj = C^T, so the (j, i) minor lands at (i, j).
      adj(i, j) = sign * minor_of(m, j, i).fullPivLu().determinant();
    }
  }
  return adj;
}

Adjugate adjugate(const Matrix& m) {
  require_square(m, "adjugate");
  require_finite(m, "adjugate");
  Eigen::PartialPivLU<Matrix> lu(m);
  if (m.rows() > 1 && lu.rcond() > kAdjugateRcondThreshold) {
    return {lu.determinant() * lu.inverse(), AdjugatePath::ScaledInverse};
  }
  return {cofactor_adjugate(m), AdjugatePath::Cofactor};
}

}  // namespace ncig
