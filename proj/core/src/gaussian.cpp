#include "ncig/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ncig/errors.hpp"

namespace ncig {
namespace {

constexpr double kRadicandClamp = 1e-12;
constexpr double kRealPartTolerance = 1e-8;
constexpr double kClosedFormAgreement = 1e-6;

double clamped_sqrt(double radicand, const char* what) {
  if (radicand < 0.0) {
    if (radicand < -kRadicandClamp) {
      throw NumericalError(std::string(what) + ": negative radicand " + std::to_string(radicand));
    }
    return 0.0;
  }
  return std::sqrt(radicand);
}

}  // namespace

// nu = b / ((1 - eta theta) sqrt 2) * sqrt(w - sqrt(w^2 - 4 (1 - eta theta)^2 (1 - R^2)^2))
double closed_form_nu(const ToyPoint& p, int sign) {
  const char* what = sign >= 0 ? "closed_form_nu(omega+)" : "closed_form_nu(omega-)";
  const double r = p.radius();
  if (!(r < 1.0)) throw DomainError(std::string(what) + ": (m, n) outside positivity disk");
  if (!p.nc.admits_darboux_map()) throw DomainError(std::string(what) + ": theta * eta >= 1");
  const double b = p.scale();
  const double c = 1.0 - p.nc.eta * p.nc.theta;
  const double w = omega_coefficient(p, sign);
  const double q = 1.0 - r * r;
  const double inner = clamped_sqrt(w * w - 4.0 * c * c * q * q, what);
  return b / (c * std::sqrt(2.0)) * clamped_sqrt(w - inner, what);
}

namespace {

double closed_or_nan(double (*f)(const ToyPoint&), const ToyPoint& p) {
  try {
    return f(p);
  } catch (const NumericalError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

std::vector<double> pair_up(std::vector<double> doubled) {
  std::sort(doubled.begin(), doubled.end());
  std::vector<double> out;
  out.reserve(doubled.size() / 2);
  for (std::size_t k = 0; k + 1 < doubled.size(); k += 2) {
    out.push_back(0.5 * (doubled[k] + doubled[k + 1]));
  }
  return out;
}

}  // namespace

double ToyPoint::radius() const noexcept { return std::hypot(m, n); }

double ToyPoint::scale() const noexcept {
  const double r = radius();
  return (1.0 + r) / (1.0 - r);
}

std::string_view to_string(StateClass c) noexcept {
  switch (c) {
    case StateClass::Unphysical: return "Unphysical";
    case StateClass::Separable: return "Separable";
    case StateClass::Entangled: return "Entangled";
  }
  return "?";
}

CovarianceMatrix toy_covariance(double m, double n) {
  return toy_covariance(ToyPoint{m, n, {}});
}

CovarianceMatrix toy_covariance(const ToyPoint& p) {
  if (!std::isfinite(p.m) || !std::isfinite(p.n)) {
    throw DomainError("toy_covariance: m and n must be finite");
  }
  const double r = p.radius();
  if (!(r < 1.0)) {
    throw DomainError("toy_covariance: (m, n) outside positivity disk");
  }
  const double b = p.scale();
  Matrix gamma = Matrix::Zero(4, 4);
  gamma(0, 0) = gamma(1, 1) = p.n;
  gamma(2, 2) = gamma(3, 3) = -p.n;
  // m sigma_z on both off-diagonal 2x2 blocks
  gamma(0, 2) = gamma(2, 0) = p.m;
  gamma(1, 3) = gamma(3, 1) = -p.m;

  Matrix sigma(8, 8);
  sigma << Matrix::Identity(4, 4), gamma.transpose(), gamma, Matrix::Identity(4, 4);
  return CovarianceMatrix(0.5 * b * sigma);
}

SymplecticSpectrum symplectic_spectrum(const CovarianceMatrix& sigma, const SymplecticForm& omega) {
  if (sigma.dim() != omega.dim()) {
    throw DimensionError("symplectic_spectrum: covariance and symplectic form sizes differ");
  }
  const Matrix l = sigma.cholesky_factor();
  Matrix a = l.transpose() * omega.inverse() * l;
  a = 0.5 * (a - a.transpose());
  const Matrix ata = a.transpose() * a;
  std::vector<double> sq = pair_up(eig_symmetric(symmetrized(ata)));
  SymplecticSpectrum out;
  out.values.reserve(sq.size());
  for (double v : sq) out.values.push_back(2.0 * std::sqrt(std::max(v, 0.0)));
  std::sort(out.values.begin(), out.values.end());
  return out;
}

SymplecticSpectrum symplectic_spectrum_general(const CovarianceMatrix& sigma,
                                               const SymplecticForm& omega) {
  if (sigma.dim() != omega.dim()) {
    throw DimensionError("symplectic_spectrum: covariance and symplectic form sizes differ");
  }
  const auto ev = spectrum_real_general(omega.inverse() * sigma.matrix());
  double scale = 0.0;
  for (const auto& z : ev) scale = std::max(scale, std::abs(z));
  std::vector<double> doubled;
  doubled.reserve(ev.size());
  for (const auto& z : ev) {
    if (std::abs(z.real()) > kRealPartTolerance * std::max(1.0, scale)) {
      throw NumericalError("symplectic_spectrum: not a valid symplectic spectrum (eigenvalue " +
                           std::to_string(z.real()) + (z.imag() < 0 ? "" : "+") +
                           std::to_string(z.imag()) + "i)");
    }
    doubled.push_back(2.0 * std::abs(z.imag()));
  }
  return {pair_up(std::move(doubled))};
}

double omega_coefficient(const ToyPoint& p, int sign) {
  const double s = sign >= 0 ? 1.0 : -1.0;
  const double th = p.nc.theta;
  const double et = p.nc.eta;
  const double m = p.m;
  const double n = p.n;
  return 2.0 * (1.0 + s * et * et) + (1.0 - s * n * n) * (et * et + th * th) +
         s * 2.0 * (1.0 + et * th) * m * m + n * (1.0 - s) * (et * et - th * th) +
         2.0 * m * (1.0 + s) * (et + th);
}

double nu_minus(const ToyPoint& p) { return closed_form_nu(p, -1); }

double nu_prime_minus(const ToyPoint& p) { return closed_form_nu(p, +1); }

Classification classify_detailed(const ToyPoint& p, double tol) {
  const CovarianceMatrix sigma = toy_covariance(p);
  const SymplecticForm omega = nc_form(p.nc);
  Classification out;
  out.nu_minus = symplectic_spectrum(sigma, omega).min();
  out.nu_prime_minus = symplectic_spectrum(sigma, ppt_form(omega)).min();
  if (!p.nc.admits_darboux_map()) {
    out.closed_nu_minus = out.closed_nu_prime_minus = std::numeric_limits<double>::quiet_NaN();
  } else {
    out.closed_nu_minus = closed_or_nan(nu_minus, p);
    out.closed_nu_prime_minus = closed_or_nan(nu_prime_minus, p);
  }
  const auto disagrees = [](double closed, double numeric) {
    return !(std::abs(closed - numeric) <= kClosedFormAgreement);
  };
  out.closed_form_discrepancy = disagrees(out.closed_nu_minus, out.nu_minus) ||
                                disagrees(out.closed_nu_prime_minus, out.nu_prime_minus);

  if (out.nu_minus < 1.0 - tol) {
    out.state = StateClass::Unphysical;
  } else if (out.nu_prime_minus >= 1.0 - tol) {
    out.state = StateClass::Separable;
  } else {
    out.state = StateClass::Entangled;
  }
  return out;
}

StateClass classify(const ToyPoint& p, double tol) {
  const CovarianceMatrix sigma = toy_covariance(p);
  const SymplecticForm omega = nc_form(p.nc);
  if (symplectic_spectrum(sigma, omega).min() < 1.0 - tol) return StateClass::Unphysical;
  if (symplectic_spectrum(sigma, ppt_form(omega)).min() >= 1.0 - tol) return StateClass::Separable;
  return StateClass::Entangled;
}

int flatten_index(int mu, int nu, int n) {
  if (n < 1 || mu < 1 || nu > 2 * n || mu > nu) {
    throw DomainError("flatten_index: need 1 <= mu <= nu <= 2n");
  }
  int l = 0;
  for (int r = 0; r <= mu - 2; ++r) l += 2 * n - r;
  return l + nu - mu + 1;
}

}  // namespace ncig
