#pragma once

// Symplectic structures on a bipartite phase space. Coordinates are ordered
// (z^A, z^B) with z^K = (x_1..x_nK, p_1..p_nK).

#include "ncig/covariance.hpp"
#include "ncig/numerics.hpp"

namespace ncig {

struct BlockSplit {
  int n_a = 0;  // modes held by A
  int n_b = 0;  // modes held by B

  int modes() const noexcept { return n_a + n_b; }
  int dim() const noexcept { return 2 * (n_a + n_b); }
  friend bool operator==(const BlockSplit&, const BlockSplit&) = default;
};

// Noncommutativity scales of the toy model: [x_1, x_2] = i theta,
// [p_1, p_2] = i eta within each party.
struct NCParams {
  double theta = 0.0;
  double eta = 0.0;

  // theta * eta < 1, the condition for a real Bopp shift.
  bool admits_darboux_map() const noexcept { return theta * eta < 1.0; }
};

// Real antisymmetric nonsingular block-diagonal matrix Diag[Omega^A, Omega^B].
class SymplecticForm {
 public:
  // Throws DimensionError, SymmetryError or DomainError (singular or mixing A/B).
  SymplecticForm(const Matrix& m, BlockSplit split);

  // Omega^K = [[Theta^K, I], [-I, Upsilon^K]] for K = A, B. Theta and Upsilon
  // must be antisymmetric n_K x n_K blocks.
  static SymplecticForm from_blocks(const Matrix& theta_a, const Matrix& upsilon_a,
                                    const Matrix& theta_b, const Matrix& upsilon_b);

  const Matrix& matrix() const noexcept { return matrix_; }
  BlockSplit split() const noexcept { return split_; }
  Eigen::Index dim() const noexcept { return matrix_.rows(); }
  Matrix inverse() const;

 private:
  Matrix matrix_;
  BlockSplit split_;
};

// Invertible block-diagonal S = Diag[S^A, S^B] with Omega = S J S^T.
class DarbouxMap {
 public:
  DarbouxMap(const Matrix& m, BlockSplit split);

  const Matrix& matrix() const noexcept { return matrix_; }
  BlockSplit split() const noexcept { return split_; }
  Eigen::Index dim() const noexcept { return matrix_.rows(); }
  Matrix inverse() const;

 private:
  Matrix matrix_;
  BlockSplit split_;
};

// J = Diag[J^A, J^B], J^K = [[0, I], [-I, 0]].
SymplecticForm commutative_form(int n_a, int n_b);

// Toy-model Omega with n_A = n_B = 2.
SymplecticForm nc_form(const NCParams& p);

// Omega' = Diag[Omega^A, -Omega^B]: the form seen by a partially transposed state.
SymplecticForm ppt_form(const SymplecticForm& omega);

// Bopp shift for the toy model in the symmetric gauge
// lambda = mu = sqrt((1 + sqrt(1 - eta theta)) / 2).
// Throws DomainError when theta * eta >= 1.
DarbouxMap bopp_shift(const NCParams& p);

// Scale factor lambda (= mu) of bopp_shift.
double bopp_scale(const NCParams& p);

enum class Direction {
  Push,  // S Sigma S^T
  Pull,  // S^-1 Sigma S^-T
};

// Throws DimensionError on size mismatch and NumericalError if the result is
// not positive definite.
CovarianceMatrix darboux_conjugate(const CovarianceMatrix& sigma, const DarbouxMap& s,
                                   Direction direction);

}  // namespace ncig
