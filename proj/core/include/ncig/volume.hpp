#pragma once

// Regularized Fisher-Rao volumes of the toy model's parameter regions:
//   Gamma(region) = integral over region of Upsilon(Sigma(m, n)) * D(m, n) dm dn
// with D = det g or sqrt(det g).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ncig/gaussian.hpp"
#include "ncig/phase_space.hpp"

namespace ncig {

enum class Region { PositiveDisk, Quantum, Separable, Entangled };

struct RegionSpec {
  Region kind = Region::PositiveDisk;
  NCParams nc{};
};

enum class MetricBackend {
  ClosedForm,  // closed-form Delta_g and closed-form Upsilon
  NumericFisher,    // finite-difference Fisher metric and adjugate-based Upsilon
};

enum class Density { Det, SqrtDet };

enum class Method {
  StratifiedPolar,     // stratified Monte Carlo on (r, phi), Jacobian r
  CartesianRejection,  // stratified Monte Carlo on [-1, 1]^2, rejecting R > r_max
  GaussLegendrePolar,  // composite tensor Gauss-Legendre on (r, phi)
};

std::string_view to_string(Region r) noexcept;
std::string_view to_string(MetricBackend b) noexcept;
std::string_view to_string(Density d) noexcept;
std::string_view to_string(Method m) noexcept;

struct IntegralEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t evals = 0;
  Method method = Method::StratifiedPolar;
  // Set when no evaluated point with a nonzero integrand fell inside the region.
  bool zero_measure = false;
};

inline constexpr std::size_t kMinBudget = 10'000;
// Integrand is evaluated only for R <= kRimRadius.
inline constexpr double kRimRadius = 1.0 - 1e-9;

struct VolumeOptions {
  MetricBackend backend = MetricBackend::NumericFisher;
  Density density = Density::Det;
  Method method = Method::StratifiedPolar;
  std::size_t budget = 100'000;
  std::uint64_t seed = 0;
  double tol = kClassifyTolerance;
  // Worker threads; 0 picks hardware concurrency. Results do not depend on it.
  unsigned threads = 0;
};

// All four region integrals from one shared set of evaluation points.
struct RegionVolumes {
  IntegralEstimate disk;
  IntegralEstimate quantum;
  IntegralEstimate separable;
  IntegralEstimate entangled;
  double ratio = 0.0;  // entangled / separable (NaN when both vanish)
  double ratio_std_error = 0.0;
};

// Upsilon(Sigma(m, n)) * D(m, n); zero outside R <= kRimRadius.
double volume_integrand(double m, double n, double kappa, MetricBackend backend, Density density);

// Throws DomainError for kappa <= 0, budget < kMinBudget, or theta * eta >= 1
// with a region other than PositiveDisk.
RegionVolumes integrate_regions(const NCParams& nc, double kappa, const VolumeOptions& opts);
IntegralEstimate integrate_region(const RegionSpec& region, double kappa, const VolumeOptions& opts);

// Gamma_quantum - Gamma_separable, accumulated directly over the points that
// are quantum but not separable, so it is nonnegative.
IntegralEstimate entangled_volume(const NCParams& nc, double kappa, const VolumeOptions& opts);

enum class SweepParameter { Kappa, Theta, Eta };

std::string_view to_string(SweepParameter p) noexcept;

struct SweepRow {
  double param = 0.0;
  RegionVolumes volumes;
};

struct SweepTable {
  SweepParameter parameter = SweepParameter::Kappa;
  std::vector<SweepRow> rows;
};

// Grid must be non-empty and strictly increasing. The swept value replaces
// the matching field of (nc, kappa).
SweepTable sweep(SweepParameter parameter, std::span<const double> grid, const NCParams& nc,
                 double kappa, const VolumeOptions& opts);

// steps evenly spaced values from `from` to `to` inclusive (steps == 1 gives {from}).
std::vector<double> linear_grid(double from, double to, int steps);

}  // namespace ncig
