#pragma once

// Dense small-matrix kernel. Every matrix in this project is at most 8x8, so
// everything here is a direct dense algorithm on Eigen's dynamic matrices.

#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ncig {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Relative tolerance used when validating (anti)symmetry.
inline constexpr double kSymmetryTolerance = 1e-12;

void require_square(const Matrix& m, std::string_view what);
void require_finite(const Matrix& m, std::string_view what);

// max|M - M^T| <= rel_tol * max(1, max|M|)
bool is_symmetric(const Matrix& m, double rel_tol = kSymmetryTolerance);
bool is_antisymmetric(const Matrix& m, double rel_tol = kSymmetryTolerance);

// (M + M^T) / 2
Matrix symmetrized(const Matrix& m);

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k pairs with values[k]
};

// Eigenvalues of a symmetric matrix, ascending. The input is validated for
// symmetry and then averaged with its transpose before solving.
std::vector<double> eig_symmetric(const Matrix& m);
SymmetricEigen eig_symmetric_vectors(const Matrix& m);

struct GeneralEigen {
  std::vector<std::complex<double>> values;  // unordered
  Eigen::MatrixXcd vectors;
};

// Complex spectrum of a real square matrix (unordered).
std::vector<std::complex<double>> spectrum_real_general(const Matrix& m);
GeneralEigen eig_general(const Matrix& m);

double determinant(const Matrix& m);

// Throws NumericalError when the matrix is numerically singular.
Matrix inverse(const Matrix& m);

enum class AdjugatePath {
  ScaledInverse,  // det(M) * M^-1
  Cofactor,       // transposed cofactor matrix, used near singularity
};

struct Adjugate {
  Matrix value;
  AdjugatePath path;
};

// adj(M), satisfying M adj(M) = det(M) I. Defined for singular M as well.
Adjugate adjugate(const Matrix& m);

// Transposed cofactor matrix, computed minor by minor.
Matrix cofactor_adjugate(const Matrix& m);

}  // namespace ncig
