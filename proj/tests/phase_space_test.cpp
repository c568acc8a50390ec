#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ncig/errors.hpp"
#include "ncig/gaussian.hpp"
#include "ncig/phase_space.hpp"
#include "support/oracles.hpp"

using namespace ncig;

namespace {

Matrix eps2() {
  Matrix e(2, 2);
  e << 0, 1, -1, 0;
  return e;
}

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(CommutativeForm, Layout) {
  const SymplecticForm j = commutative_form(1, 1);
  Matrix expected = Matrix::Zero(4, 4);
  expected.block(0, 0, 2, 2) = eps2();
  expected.block(2, 2, 2, 2) = eps2();
  EXPECT_EQ(j.matrix(), expected);

  const SymplecticForm j22 = commutative_form(2, 2);
  EXPECT_EQ(j22.dim(), 8);
  EXPECT_EQ(j22.matrix() * j22.matrix(), -Matrix::Identity(8, 8));

  for (auto [a, b] : {std::pair{1, 1}, {1, 3}, {2, 2}, {3, 1}}) {
    EXPECT_NEAR(determinant(commutative_form(a, b).matrix()), 1.0, 1e-14);
  }
  EXPECT_THROW(commutative_form(0, 2), DomainError);
}

TEST(NcForm, CommutativeLimitAndBlocks) {
  EXPECT_EQ(nc_form({0, 0}).matrix(), commutative_form(2, 2).matrix());
  const Matrix om = nc_form({0.5, 0.0}).matrix();
  EXPECT_EQ(Matrix(om.block(0, 0, 2, 2)), Matrix(0.5 * eps2()));
  EXPECT_EQ(Matrix(om.block(4, 4, 2, 2)), Matrix(0.5 * eps2()));
  EXPECT_EQ(Matrix(om.block(2, 2, 2, 2)), Matrix::Zero(2, 2));
  EXPECT_EQ(Matrix(om.block(0, 2, 2, 2)), Matrix::Identity(2, 2));
}

// Frozen with numpy determinants of the explicit 8x8 matrix.
TEST(NcForm, DeterminantMatchesOracle) {
  struct Case { double theta, eta, det; };
  for (const Case c : {Case{0.3, 0.2, 0.78074896}, {0.5, 0.5, 0.31640625}, {0.9, 0.5, 0.09150625}}) {
    const Matrix om = nc_form({c.theta, c.eta}).matrix();
    EXPECT_NEAR(oracles::laplace_det(om), c.det, 1e-12);
    EXPECT_NEAR(determinant(om), std::pow(1 - c.eta * c.theta, 4), 1e-12);
    EXPECT_EQ(om + om.transpose(), Matrix::Zero(8, 8));
  }
}

TEST(PptForm, ReflectsPartyB) {
  const Matrix j = commutative_form(2, 2).matrix();
  const Matrix jp = ppt_form(commutative_form(2, 2)).matrix();
  EXPECT_EQ(Matrix(jp.topLeftCorner(4, 4)), Matrix(j.topLeftCorner(4, 4)));
  EXPECT_EQ(Matrix(jp.bottomRightCorner(4, 4)), Matrix(-j.bottomRightCorner(4, 4)));

  const SymplecticForm om = nc_form({0.3, 0.2});
  const Matrix op = ppt_form(om).matrix();
  EXPECT_EQ(Matrix(op.block(4, 4, 2, 2)), Matrix(-0.3 * eps2()));
  EXPECT_EQ(Matrix(op.block(0, 0, 2, 2)), Matrix(0.3 * eps2()));
  EXPECT_EQ(ppt_form(ppt_form(om)).matrix(), om.matrix());
  EXPECT_GT(std::abs(determinant(op)), 1e-12);
}

TEST(SymplecticForm, Validation) {
  Matrix sym = Matrix::Identity(4, 4);
  EXPECT_THROW(SymplecticForm(sym, {1, 1}), SymmetryError);
  Matrix mixing = commutative_form(1, 1).matrix();
  mixing(0, 2) = 0.5;
  mixing(2, 0) = -0.5;
  EXPECT_THROW(SymplecticForm(mixing, {1, 1}), DomainError);
  EXPECT_THROW(SymplecticForm(Matrix::Zero(4, 4), {1, 1}), DomainError);
  EXPECT_THROW(SymplecticForm(commutative_form(1, 1).matrix(), {2, 1}), DimensionError);
  // A general three-mode structure with a noncommutative A block.
  Matrix theta_a(2, 2);
  theta_a << 0, 0.2, -0.2, 0;
  const SymplecticForm g = SymplecticForm::from_blocks(theta_a, Matrix::Zero(2, 2),
                                                       Matrix::Zero(1, 1), Matrix::Zero(1, 1));
  EXPECT_EQ(g.dim(), 6);
  EXPECT_EQ(g.split(), (BlockSplit{2, 1}));
}

TEST(BoppShift, CommutativeIdentityAndScale) {
  EXPECT_LE(max_abs_diff(bopp_shift({0, 0}).matrix(), Matrix::Identity(8, 8)), 0.0);
  const double lambda = bopp_scale({0.5, 0.5});
  EXPECT_NEAR(lambda * lambda, 0.5 * (1 + std::sqrt(0.75)), 1e-15);
  EXPECT_NEAR(lambda * lambda, 0.9330127018922193, 1e-15);
  EXPECT_THROW(bopp_shift({2.0, 0.5}), DomainError);
  EXPECT_THROW(bopp_shift({1.0, 1.0}), DomainError);
}

TEST(BoppShift, ReproducesNcFormOnGrid) {
  const Matrix j = commutative_form(2, 2).matrix();
  for (int a = 0; a <= 9; ++a) {
    for (int b = 0; b <= 9; ++b) {
      const NCParams p{0.1 * a, 0.1 * b};
      if (!p.admits_darboux_map()) continue;
      const Matrix s = bopp_shift(p).matrix();
      EXPECT_LE(max_abs_diff(s * j * s.transpose(), nc_form(p).matrix()), 1e-12)
          << "theta=" << p.theta << " eta=" << p.eta;
    }
  }
}

TEST(BoppShift, ReproducesNcFormRandom) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const Matrix j = commutative_form(2, 2).matrix();
  for (int k = 0; k < 200; ++k) {
    const NCParams p{u(rng), u(rng)};
    if (!p.admits_darboux_map()) continue;
    const Matrix s = bopp_shift(p).matrix();
    EXPECT_LE(max_abs_diff(s * j * s.transpose(), nc_form(p).matrix()), 1e-12);
  }
}

TEST(DarbouxConjugate, IdentityAndRoundTrip) {
  const CovarianceMatrix sigma = toy_covariance(0.3, -0.4);
  const DarbouxMap id(Matrix::Identity(8, 8), {2, 2});
  EXPECT_EQ(darboux_conjugate(sigma, id, Direction::Push).matrix(), sigma.matrix());

  const DarbouxMap s = bopp_shift({0.7, 0.4});
  const CovarianceMatrix pushed = darboux_conjugate(sigma, s, Direction::Push);
  const CovarianceMatrix back = darboux_conjugate(pushed, s, Direction::Pull);
  EXPECT_LE(max_abs_diff(back.matrix(), sigma.matrix()), 1e-12);
}

TEST(DarbouxConjugate, PushOfVacuum) {
  const DarbouxMap s = bopp_shift({0.5, 0.5});
  const CovarianceMatrix vac(0.5 * Matrix::Identity(8, 8));
  const Matrix expected = 0.5 * s.matrix() * s.matrix().transpose();
  EXPECT_LE(max_abs_diff(darboux_conjugate(vac, s, Direction::Push).matrix(), expected), 1e-15);
  // lambda^2 + theta^2 / (4 lambda^2) on the position diagonal
  const double l2 = 0.5 * (1 + std::sqrt(0.75));
  EXPECT_NEAR(expected(0, 0), 0.5 * (l2 + 0.25 / (4 * l2)), 1e-15);
}

TEST(DarbouxConjugate, PreservesPositiveDefiniteness) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.95, 0.95);
  for (int k = 0; k < 100; ++k) {
    const auto [m, n] = oracles::random_disk_point(rng, 0.9);
    const NCParams p{u(rng), u(rng)};
    const CovarianceMatrix out =
        darboux_conjugate(toy_covariance(m, n), bopp_shift(p), k % 2 ? Direction::Push : Direction::Pull);
    EXPECT_GT(eig_symmetric(out.matrix()).front(), 0.0);
  }
  EXPECT_THROW(darboux_conjugate(CovarianceMatrix(Matrix::Identity(4, 4)), bopp_shift({0.1, 0.1}),
                                 Direction::Push),
               DimensionError);
}
