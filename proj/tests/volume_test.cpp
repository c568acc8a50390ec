#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "ncig/errors.hpp"
#include "ncig/volume.hpp"

using namespace ncig;

namespace {

VolumeOptions closed_form_quadrature(std::size_t budget = 200'000) {
  VolumeOptions o;
  o.backend = MetricBackend::ClosedForm;
  o.method = Method::GaussLegendrePolar;
  o.budget = budget;
  return o;
}

VolumeOptions closed_form_mc(std::uint64_t seed, std::size_t budget = 40'000) {
  VolumeOptions o;
  o.backend = MetricBackend::ClosedForm;
  o.method = Method::StratifiedPolar;
  o.budget = budget;
  o.seed = seed;
  return o;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

// Reference values: mpmath radial quadrature (30 digits) of
// 2 pi r Upsilon(r) Delta_g(r) over [0, 1).
TEST(IntegrateRegion, DiskQuadratureMatchesReference) {
  const RegionSpec disk{Region::PositiveDisk, {}};
  const IntegralEstimate k2 = integrate_region(disk, 2.0, closed_form_quadrature());
  EXPECT_NEAR(k2.value, 0.436989780692643302, 1e-7);
  EXPECT_LT(k2.std_error, 1e-6);
  const IntegralEstimate k4 = integrate_region(disk, 4.0, closed_form_quadrature());
  EXPECT_NEAR(k4.value, 1.95268112928032195, 1e-6);

  VolumeOptions sq = closed_form_quadrature();
  sq.density = Density::SqrtDet;
  EXPECT_NEAR(integrate_region(disk, 2.0, sq).value, 0.0477731397642157035, 1e-8);
  EXPECT_NEAR(integrate_region(disk, 4.0, sq).value, 0.207861736286223994, 1e-7);
}

TEST(IntegrateRegion, NumericBackendAgreesWithClosedForm) {
  VolumeOptions numeric = closed_form_quadrature(20'000);
  numeric.backend = MetricBackend::NumericFisher;
  const RegionSpec disk{Region::PositiveDisk, {}};
  const double a = integrate_region(disk, 2.0, numeric).value;
  const double b = integrate_region(disk, 2.0, closed_form_quadrature(20'000)).value;
  EXPECT_NEAR(a, b, 1e-6 * b);
}

TEST(IntegrateRegion, CommutativeEntangledIsEmpty) {
  const IntegralEstimate e = integrate_region({Region::Entangled, {0, 0}}, 4.0, closed_form_mc(1));
  EXPECT_EQ(e.value, 0.0);
  EXPECT_TRUE(e.zero_measure);
  EXPECT_GT(e.evals, 0u);
}

TEST(IntegrateRegion, RegionNesting) {
  for (double theta : {0.0, 0.4, 0.9}) {
    const RegionVolumes v = integrate_regions({theta, 0.3}, 4.0, closed_form_mc(5));
    EXPECT_GE(v.disk.value, v.quantum.value);
    EXPECT_GE(v.quantum.value, v.separable.value);
    EXPECT_GE(v.separable.value, 0.0);
    EXPECT_GE(v.entangled.value, 0.0);
    EXPECT_NEAR(v.entangled.value, v.quantum.value - v.separable.value, 1e-12 * v.quantum.value);
  }
}

TEST(IntegrateRegion, Determinism) {
  const NCParams nc{0.7, 0.1};
  VolumeOptions one = closed_form_mc(42);
  one.threads = 1;
  VolumeOptions many = closed_form_mc(42);
  many.threads = 8;
  const RegionVolumes a = integrate_regions(nc, 4.0, one);
  const RegionVolumes b = integrate_regions(nc, 4.0, many);
  EXPECT_TRUE(same_bits(a.quantum.value, b.quantum.value));
  EXPECT_TRUE(same_bits(a.entangled.value, b.entangled.value));
  EXPECT_TRUE(same_bits(a.entangled.std_error, b.entangled.std_error));
  EXPECT_TRUE(same_bits(a.ratio, b.ratio));
  const RegionVolumes c = integrate_regions(nc, 4.0, closed_form_mc(43));
  EXPECT_FALSE(same_bits(a.quantum.value, c.quantum.value));
}

TEST(IntegrateRegion, BudgetDoublingWithinErrorBars) {
  const RegionSpec disk{Region::PositiveDisk, {}};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const IntegralEstimate a = integrate_region(disk, 2.0, closed_form_mc(seed, 20'000));
    const IntegralEstimate b = integrate_region(disk, 2.0, closed_form_mc(seed, 40'000));
    const double combined = std::hypot(a.std_error, b.std_error);
    EXPECT_LT(std::abs(a.value - b.value), 2.0 * combined) << "seed " << seed;
  }
}

TEST(IntegrateRegion, PolarAndCartesianAgree) {
  const RegionSpec disk{Region::PositiveDisk, {}};
  const IntegralEstimate polar = integrate_region(disk, 2.0, closed_form_mc(9, 100'000));
  VolumeOptions cart = closed_form_mc(9, 100'000);
  cart.method = Method::CartesianRejection;
  const IntegralEstimate box = integrate_region(disk, 2.0, cart);
  EXPECT_LT(std::abs(polar.value - box.value), 2.0 * std::hypot(polar.std_error, box.std_error));
  EXPECT_NEAR(polar.value, 0.436989780692643302, 4.0 * polar.std_error);
}

TEST(EntangledVolume, GrowsWithTheta) {
  const double low = entangled_volume({0.1, 0.0}, 4.0, closed_form_mc(3, 100'000)).value;
  const IntegralEstimate high = entangled_volume({0.9, 0.0}, 4.0, closed_form_mc(3, 100'000));
  EXPECT_GT(high.value, 0.0);
  EXPECT_GT(high.value - 2.0 * high.std_error, low);
}

TEST(EntangledVolume, CommutativeLimit) {
  const IntegralEstimate e = entangled_volume({1e-12, 1e-12}, 4.0, closed_form_mc(8));
  EXPECT_LE(e.value, 2.0 * e.std_error);
}

TEST(IntegrateRegion, Validation) {
  const RegionSpec disk{Region::PositiveDisk, {}};
  EXPECT_THROW(integrate_region(disk, 0.0, closed_form_mc(1)), DomainError);
  EXPECT_THROW(integrate_region(disk, 2.0, closed_form_mc(1, 9'999)), DomainError);
  EXPECT_THROW(integrate_region({Region::Quantum, {2.0, 0.6}}, 2.0, closed_form_mc(1)), DomainError);
}

TEST(Sweep, KappaVolumesIncrease) {
  const auto grid = linear_grid(0.5, 4.0, 8);
  const SweepTable t = sweep(SweepParameter::Kappa, grid, {0, 0}, 4.0, closed_form_quadrature(20'000));
  ASSERT_EQ(t.rows.size(), 8u);
  for (std::size_t k = 1; k < t.rows.size(); ++k) {
    EXPECT_GT(t.rows[k].volumes.disk.value, t.rows[k - 1].volumes.disk.value);
    EXPECT_EQ(t.rows[k].volumes.disk.value, t.rows[k].volumes.quantum.value);
  }
  EXPECT_DOUBLE_EQ(t.rows.front().param, 0.5);
}

TEST(Sweep, Validation) {
  const std::vector<double> empty;
  EXPECT_THROW(sweep(SweepParameter::Theta, empty, {}, 4.0, closed_form_mc(1)), DomainError);
  const std::vector<double> unsorted{0.2, 0.1};
  EXPECT_THROW(sweep(SweepParameter::Theta, unsorted, {}, 4.0, closed_form_mc(1)), DomainError);
  EXPECT_THROW(linear_grid(0, 1, 0), DomainError);
  const auto g = linear_grid(0.1, 1.0, 10);
  ASSERT_EQ(g.size(), 10u);
  EXPECT_DOUBLE_EQ(g.back(), 1.0);
  EXPECT_NEAR(g[4], 0.5, 1e-15);
}
