#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "ncig/errors.hpp"
#include "ncig/gaussian.hpp"
#include "support/oracles.hpp"

using namespace ncig;

namespace {

int count_entangled(double theta, double eta, int side) {
  int count = 0;
  for (const auto& [m, n] : oracles::disk_grid(side)) {
    if (classify(ToyPoint{m, n, {theta, eta}}) == StateClass::Entangled) ++count;
  }
  return count;
}

}  // namespace

TEST(ToyCovariance, VacuumAndStructure) {
  EXPECT_EQ(toy_covariance(0, 0).matrix(), 0.5 * Matrix::Identity(8, 8));
  const Matrix s = toy_covariance(0.6, 0.0).matrix();
  // b = 4 at R = 0.6; A-B coupling m sigma_z sits between x^A and p^B
  EXPECT_DOUBLE_EQ(s(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(s(0, 6), 2.0 * 0.6);
  EXPECT_DOUBLE_EQ(s(1, 7), -2.0 * 0.6);
  EXPECT_THROW(toy_covariance(0.6, 0.8), DomainError);
  EXPECT_THROW(toy_covariance(1.2, 0.0), DomainError);
}

TEST(ToyCovariance, AlwaysValidInsideDisk) {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 200; ++k) {
    const auto [m, n] = oracles::random_disk_point(rng, 0.999);
    const Matrix s = toy_covariance(m, n).matrix();
    EXPECT_EQ(s, s.transpose());
    EXPECT_GT(eig_symmetric(s).front(), 0.0);
  }
}

TEST(SymplecticSpectrum, VacuumSaturates) {
  const auto spec = symplectic_spectrum(toy_covariance(0, 0), commutative_form(2, 2));
  ASSERT_EQ(spec.values.size(), 4u);
  for (double v : spec.values) EXPECT_NEAR(v, 1.0, 1e-14);
}

TEST(SymplecticSpectrum, CommutativeMinimum) {
  const auto spec = symplectic_spectrum(toy_covariance(0.6, 0), commutative_form(2, 2));
  EXPECT_NEAR(spec.min(), 3.2, 1e-12);  // b sqrt(1 - R^2)
  const auto ppt = symplectic_spectrum(toy_covariance(0.6, 0), ppt_form(commutative_form(2, 2)));
  EXPECT_NEAR(ppt.min(), 1.6, 1e-12);  // 1 + R
}

TEST(SymplecticSpectrum, BothRoutesMatchBruteForce) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const auto [m, n] = oracles::random_disk_point(rng, 0.95);
    const NCParams p{u(rng), u(rng)};
    const SymplecticForm om = k % 2 ? nc_form(p) : ppt_form(nc_form(p));
    const CovarianceMatrix sigma = toy_covariance(m, n);
    const auto oracle = oracles::brute_symplectic_spectrum(sigma.matrix(), om.matrix());
    const auto real_route = symplectic_spectrum(sigma, om).values;
    const auto general_route = symplectic_spectrum_general(sigma, om).values;
    ASSERT_EQ(oracle.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_NEAR(real_route[i], oracle[i], 1e-9 * oracle[i]);
      EXPECT_NEAR(general_route[i], oracle[i], 1e-9 * oracle[i]);
    }
  }
}

TEST(SymplecticSpectrum, DarbouxInvariance) {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  int checked = 0;
  while (checked < 200) {
    const auto [m, n] = oracles::random_disk_point(rng, 0.95);
    const NCParams p{u(rng), u(rng)};
    if (!p.admits_darboux_map()) continue;
    const CovarianceMatrix sigma = toy_covariance(m, n);
    const CovarianceMatrix pulled = darboux_conjugate(sigma, bopp_shift(p), Direction::Pull);
    const auto nc = symplectic_spectrum(sigma, nc_form(p)).values;
    const auto comm = symplectic_spectrum(pulled, commutative_form(2, 2)).values;
    for (std::size_t i = 0; i < nc.size(); ++i) EXPECT_NEAR(nc[i], comm[i], 1e-9);
    ++checked;
  }
}

TEST(SymplecticSpectrum, DimensionMismatch) {
  EXPECT_THROW(symplectic_spectrum(toy_covariance(0, 0), commutative_form(1, 1)), DimensionError);
}

TEST(ClosedForms, CommutativeLimitOnAxis) {
  EXPECT_NEAR(nu_minus({0.6, 0, {0, 0}}), 3.2, 1e-12);
  EXPECT_NEAR(nu_prime_minus({0.6, 0, {0, 0}}), 1.6, 1e-12);
  EXPECT_NEAR(nu_minus({0, 0, {0, 0}}), 1.0, 1e-12);
  EXPECT_NEAR(nu_prime_minus({0, 0, {0, 0}}), 1.0, 1e-12);
  for (double m = -0.95; m < 0.96; m += 0.05) {
    const double r = std::abs(m);
    const double b = (1 + r) / (1 - r);
    EXPECT_NEAR(nu_minus({m, 0, {0, 0}}), b * std::sqrt(1 - r * r), 1e-8 * b);
    EXPECT_NEAR(nu_prime_minus({m, 0, {0, 0}}), 1 + r, 1e-8);
  }
}

// The closed forms depend on m^2 where the numeric spectrum depends on R^2;
// off the n = 0 axis they disagree even in the commutative limit.
TEST(ClosedForms, DisagreeOffAxis) {
  const ToyPoint p{0.3, 0.4, {0, 0}};
  EXPECT_NEAR(nu_prime_minus(p), 1.6405672263023332, 1e-12);
  const auto c = classify_detailed(p);
  EXPECT_NEAR(c.nu_prime_minus, 1.5, 1e-12);
  EXPECT_TRUE(c.closed_form_discrepancy);
  EXPECT_FALSE(classify_detailed({0.6, 0.0, {0, 0}}).closed_form_discrepancy);
}

TEST(ClosedForms, NegativeRadicandIsReported) {
  // numpy gives NaN here for the omega_- closed form.
  EXPECT_THROW(nu_minus({0.3, 0.2, {0.0, 0.5}}), NumericalError);
  const auto c = classify_detailed({0.3, 0.2, {0.0, 0.5}});
  EXPECT_TRUE(std::isnan(c.closed_nu_minus));
  EXPECT_TRUE(c.closed_form_discrepancy);
  EXPECT_THROW(nu_minus({0.9, 0.9, {0, 0}}), DomainError);
  EXPECT_THROW(nu_minus({0.1, 0.1, {2.0, 0.6}}), DomainError);
}

TEST(ClosedForms, NumericCommutativeLimitOnDiskGrid) {
  for (const auto& [m, n] : oracles::disk_grid(41, 0.999)) {
    const double r = std::hypot(m, n);
    const auto c = classify_detailed({m, n, {0, 0}});
    EXPECT_NEAR(c.nu_prime_minus, 1 + r, 1e-10);
  }
}

TEST(Classify, CommutativeNeverEntangled) {
  EXPECT_EQ(classify({0, 0, {0, 0}}), StateClass::Separable);
  EXPECT_EQ(count_entangled(0.0, 0.0, 61), 0);
}

TEST(Classify, ExhaustiveAndNested) {
  const auto grid = oracles::disk_grid(41);
  int seen[3] = {0, 0, 0};
  for (const auto& [m, n] : grid) {
    const auto c = classify_detailed({m, n, {0.9, 0.0}});
    ++seen[static_cast<int>(c.state)];
    if (c.state == StateClass::Separable) EXPECT_GE(c.nu_minus, 1.0 - kClassifyTolerance);
  }
  EXPECT_EQ(seen[0] + seen[1] + seen[2], static_cast<int>(grid.size()));
  EXPECT_GT(seen[0], 0);
  EXPECT_GT(seen[1], 0);
  EXPECT_GT(seen[2], 0);
}

TEST(Classify, EntanglementGrowsWithTheta) {
  EXPECT_GT(count_entangled(0.9, 0.0, 200), count_entangled(0.1, 0.0, 200));
  int previous = 0;
  for (int k = 1; k <= 10; ++k) {
    const int count = count_entangled(0.1 * k, 0.0, 81);
    EXPECT_GE(count, previous) << "theta=" << 0.1 * k;
    previous = count;
  }
}

TEST(FlattenIndex, Examples) {
  EXPECT_EQ(flatten_index(1, 1, 3), 1);
  EXPECT_EQ(flatten_index(1, 6, 3), 6);
  EXPECT_EQ(flatten_index(2, 2, 3), 7);
  EXPECT_EQ(flatten_index(2, 2, 4), 9);
  EXPECT_THROW(flatten_index(3, 2, 2), DomainError);
  EXPECT_THROW(flatten_index(1, 5, 2), DomainError);
  EXPECT_THROW(flatten_index(0, 1, 2), DomainError);
}

TEST(FlattenIndex, RowMajorBijection) {
  for (int n = 1; n <= 4; ++n) {
    int expected = 1;
    std::set<int> seen;
    for (int mu = 1; mu <= 2 * n; ++mu) {
      for (int nu = mu; nu <= 2 * n; ++nu) {
        const int l = flatten_index(mu, nu, n);
        EXPECT_EQ(l, expected++);
        seen.insert(l);
      }
    }
    EXPECT_EQ(static_cast<int>(seen.size()), n * (2 * n + 1));
  }
}
