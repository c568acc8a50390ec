#include "ncig/phase_space.hpp"

#include <cmath>
#include <string>

#include "ncig/errors.hpp"

namespace ncig {
namespace {

constexpr double kSingularDeterminant = 1e-12;

void require_split(const Matrix& m, BlockSplit split, const char* what) {
  require_square(m, what);
  if (split.n_a < 1 || split.n_b < 1) {
    throw DomainError(std::string(what) + ": both parties need at least one mode");
  }
  if (m.rows() != split.dim()) {
    throw DimensionError(std::string(what) + ": matrix size " + std::to_string(m.rows()) +
                         " does not match block split " + std::to_string(split.dim()));
  }
}

void require_block_diagonal(const Matrix& m, BlockSplit split, const char* what) {
  const Eigen::Index a = 2 * split.n_a;
  const Eigen::Index b = 2 * split.n_b;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double off = std::max(m.topRightCorner(a, b).cwiseAbs().maxCoeff(),
                              m.bottomLeftCorner(b, a).cwiseAbs().maxCoeff());
  if (off > kSymmetryTolerance * scale) {
    throw DomainError(std::string(what) + ": off-diagonal A/B blocks must vanish");
  }
}

// Real form of i * sigma_y.
Matrix epsilon2() {
  Matrix e(2, 2);
  e << 0.0, 1.0, -1.0, 0.0;
  return e;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Matrix party_form(const Matrix& theta, const Matrix& upsilon) {
  const Eigen::Index n = theta.rows();
  Matrix k(2 * n, 2 * n);
  k << theta, Matrix::Identity(n, n), -Matrix::Identity(n, n), upsilon;
  return k;
}

}  // namespace

SymplecticForm::SymplecticForm(const Matrix& m, BlockSplit split) : split_(split) {
  require_split(m, split, "SymplecticForm");
  require_finite(m, "SymplecticForm");
  if (!is_antisymmetric(m)) {
    throw SymmetryError("SymplecticForm: matrix is not antisymmetric");
  }
  require_block_diagonal(m, split, "SymplecticForm");
  matrix_ = 0.5 * (m - m.transpose());
  if (std::abs(determinant(matrix_)) <= kSingularDeterminant) {
    throw DomainError("SymplecticForm: matrix is singular");
  }
}

SymplecticForm SymplecticForm::from_blocks(const Matrix& theta_a, const Matrix& upsilon_a,
                                           const Matrix& theta_b, const Matrix& upsilon_b) {
  for (const Matrix* blk : {&theta_a, &upsilon_a, &theta_b, &upsilon_b}) {
    require_square(*blk, "SymplecticForm::from_blocks");
    if (!is_antisymmetric(*blk)) {
      throw SymmetryError("SymplecticForm::from_blocks: Theta/Upsilon blocks must be antisymmetric");
    }
  }
  if (theta_a.rows() != upsilon_a.rows() || theta_b.rows() != upsilon_b.rows()) {
    throw DimensionError("SymplecticForm::from_blocks: Theta and Upsilon sizes differ");
  }
  const BlockSplit split{static_cast<int>(theta_a.rows()), static_cast<int>(theta_b.rows())};
  return SymplecticForm(block_diag(party_form(theta_a, upsilon_a), party_form(theta_b, upsilon_b)),
                        split);
}

Matrix SymplecticForm::inverse() const { return ncig::inverse(matrix_); }

DarbouxMap::DarbouxMap(const Matrix& m, BlockSplit split) : matrix_(m), split_(split) {
  require_split(m, split, "DarbouxMap");
  require_finite(m, "DarbouxMap");
  require_block_diagonal(m, split, "DarbouxMap");
  if (std::abs(determinant(m)) <= kSingularDeterminant) {
    throw DomainError("DarbouxMap: matrix is not invertible");
  }
}

Matrix DarbouxMap::inverse() const { return ncig::inverse(matrix_); }

SymplecticForm commutative_form(int n_a, int n_b) {
  if (n_a < 1 || n_b < 1) {
    throw DomainError("commutative_form: both parties need at least one mode");
  }
  return SymplecticForm::from_blocks(Matrix::Zero(n_a, n_a), Matrix::Zero(n_a, n_a),
                                     Matrix::Zero(n_b, n_b), Matrix::Zero(n_b, n_b));
}

SymplecticForm nc_form(const NCParams& p) {
  if (!std::isfinite(p.theta) || !std::isfinite(p.eta)) {
    throw DomainError("nc_form: theta and eta must be finite");
  }
  const Matrix pos = p.theta * epsilon2();
  const Matrix mom = p.eta * epsilon2();
  return SymplecticForm::from_blocks(pos, mom, pos, mom);
}

SymplecticForm ppt_form(const SymplecticForm& omega) {
  const BlockSplit split = omega.split();
  Matrix m = omega.matrix();
  const Eigen::Index b = 2 * split.n_b;
  m.bottomRightCorner(b, b) *= -1.0;
  return SymplecticForm(m, split);
}

double bopp_scale(const NCParams& p) {
  if (!p.admits_darboux_map()) {
    throw DomainError("bopp_shift: Darboux map undefined for theta * eta >= 1");
  }
  return std::sqrt(0.5 * (1.0 + std::sqrt(1.0 - p.eta * p.theta)));
}

DarbouxMap bopp_shift(const NCParams& p) {
  if (!std::isfinite(p.theta) || !std::isfinite(p.eta)) {
    throw DomainError("bopp_shift: theta and eta must be finite");
  }
  const double lambda = bopp_scale(p);
  const double mu = lambda;
  const Matrix eps = epsilon2();
  const Matrix id = Matrix::Identity(2, 2);
  Matrix party(4, 4);
  // The momentum row uses the antisymmetric epsilon; a symmetric sigma_x there
  // would leave the momentum-momentum commutator at zero.
  party << lambda * id, -(p.theta / (2.0 * lambda)) * eps,
           (p.eta / (2.0 * mu)) * eps, mu * id;
  return DarbouxMap(block_diag(party, party), BlockSplit{2, 2});
}

CovarianceMatrix darboux_conjugate(const CovarianceMatrix& sigma, const DarbouxMap& s,
                                   Direction direction) {
  if (sigma.dim() != s.dim()) {
    throw DimensionError("darboux_conjugate: covariance and Darboux map sizes differ");
  }
  const Matrix& sm = s.matrix();
  Matrix out;
  if (direction == Direction::Push) {
    out = sm * sigma.matrix() * sm.transpose();
  } else {
    const Matrix inv = s.inverse();
    out = inv * sigma.matrix() * inv.transpose();
  }
  out = symmetrized(out);
  Eigen::LLT<Matrix> llt(out);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("darboux_conjugate: result is not positive definite");
  }
  return CovarianceMatrix(out);
}

}  // namespace ncig
