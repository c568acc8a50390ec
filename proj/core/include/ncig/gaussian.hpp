#pragma once

#include <string_view>
#include <vector>

#include "ncig/covariance.hpp"
#include "ncig/phase_space.hpp"

namespace ncig {

// Point of the two-parameter toy family. (m, n) must lie in the open unit disk.
struct ToyPoint {
  double m = 0.0;
  double n = 0.0;
  NCParams nc{};

  double radius() const noexcept;
  // b = (1 + R) / (1 - R)
  double scale() const noexcept;
};

enum class StateClass { Unphysical, Separable, Entangled };

std::string_view to_string(StateClass c) noexcept;

struct SymplecticSpectrum {
  std::vector<double> values;  // ascending, one per mode

  double min() const { return values.front(); }
};

// Default tolerance on the nu >= 1 thresholds.
inline constexpr double kClassifyTolerance = 1e-9;

// (b/2) [[I4, gamma^T], [gamma, I4]], gamma = [[n I2, m sz], [m sz, -n I2]].
// Throws DomainError outside the open unit disk.
CovarianceMatrix toy_covariance(const ToyPoint& p);
CovarianceMatrix toy_covariance(double m, double n);

// The n positive values nu such that +-i nu / 2 are eigenvalues of
// Omega^-1 Sigma. Computed in real arithmetic: with Sigma = L L^T the matrix
// A = L^T Omega^-1 L is antisymmetric and similar to Omega^-1 Sigma, and the
// doubled eigenvalues of A^T A are (nu / 2)^2.
SymplecticSpectrum symplectic_spectrum(const CovarianceMatrix& sigma, const SymplecticForm& omega);

// Same quantity from the complex spectrum of Omega^-1 Sigma. Throws
// NumericalError when an eigenvalue has a real part above 1e-8 relative.
SymplecticSpectrum symplectic_spectrum_general(const CovarianceMatrix& sigma,
                                               const SymplecticForm& omega);

// Closed-form smallest symplectic eigenvalues of the toy family with respect
// to Omega (nu_minus, built from omega_-) and Omega' (nu_prime_minus, built
// from omega_+). Radicands in [-1e-12, 0) are clamped to zero; anything more
// negative throws NumericalError.
double omega_coefficient(const ToyPoint& p, int sign);
// The closed form built from omega_{sign}.
double closed_form_nu(const ToyPoint& p, int sign);
double nu_minus(const ToyPoint& p);
double nu_prime_minus(const ToyPoint& p);

struct Classification {
  StateClass state = StateClass::Unphysical;
  double nu_minus = 0.0;        // numeric, w.r.t. Omega
  double nu_prime_minus = 0.0;  // numeric, w.r.t. Omega'
  // Closed-form values; NaN when the closed form leaves its real domain.
  double closed_nu_minus = 0.0;
  double closed_nu_prime_minus = 0.0;
  // True when a closed form differs from the numeric value by more than 1e-6
  // (or is undefined). The classification always uses the numeric values.
  bool closed_form_discrepancy = false;
};

Classification classify_detailed(const ToyPoint& p, double tol = kClassifyTolerance);
StateClass classify(const ToyPoint& p, double tol = kClassifyTolerance);

// Position l (1-based) of the upper-triangle entry (mu, nu), 1 <= mu <= nu <= 2n,
// in the flattened parameter vector of length n (2n + 1).
int flatten_index(int mu, int nu, int n);

}  // namespace ncig
