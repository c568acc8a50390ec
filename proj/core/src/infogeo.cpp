#include "ncig/infogeo.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ncig/errors.hpp"
#include "ncig/gaussian.hpp"

namespace ncig {
namespace {

constexpr int kStepSearchHalvings = 40;

double relative_radius(double m, double n, const char* what) {
  const double r = std::hypot(m, n);
  if (!(r < 1.0)) throw DomainError(std::string(what) + ": (m, n) outside positivity disk");
  return r;
}

bool stencil_valid(const CovarianceFamily& family, std::span<const double> point,
                   const std::vector<double>& steps) {
  std::vector<double> x(point.begin(), point.end());
  for (std::size_t k = 0; k < x.size(); ++k) {
    for (double sgn : {1.0, -1.0}) {
      x[k] = point[k] + sgn * steps[k];
      try {
        (void)family.evaluate(x);
      } catch (const Error&) {
        return false;
      }
    }
    x[k] = point[k];
  }
  return true;
}

// Central differences of the family at the given per-coordinate steps.
std::vector<Matrix> central_derivatives(const CovarianceFamily& family,
                                        std::span<const double> point,
                                        const std::vector<double>& steps, double base_step) {
  std::vector<Matrix> d;
  d.reserve(point.size());
  std::vector<double> x(point.begin(), point.end());
  for (std::size_t k = 0; k < x.size(); ++k) {
    Matrix plus, minus;
    try {
      x[k] = point[k] + steps[k];
      plus = family.evaluate(x).matrix();
      x[k] = point[k] - steps[k];
      minus = family.evaluate(x).matrix();
    } catch (const Error&) {
      double suggested = 0.0;
      double h = base_step;
      for (int i = 0; i < kStepSearchHalvings; ++i) {
        h *= 0.5;
        std::vector<double> trial(steps.size());
        for (std::size_t j = 0; j < steps.size(); ++j) trial[j] = steps[j] * h / base_step;
        if (stencil_valid(family, point, trial)) {
          suggested = h;
          break;
        }
      }
      throw StepTooLargeError("fisher_metric_numeric: stencil leaves the family domain; shrink step"
                              " (suggested maximal step " + std::to_string(suggested) + ")",
                              suggested);
    }
    x[k] = point[k];
    d.push_back((plus - minus) / (2.0 * steps[k]));
  }
  return d;
}

Matrix metric_from_derivatives(const Matrix& sigma_inv, const std::vector<Matrix>& d) {
  const auto dim = static_cast<Eigen::Index>(d.size());
  std::vector<Matrix> w;
  w.reserve(d.size());
  for (const Matrix& dk : d) w.push_back(sigma_inv * dk);
  Matrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = i; j < dim; ++j) {
      g(i, j) = g(j, i) = 0.5 * (w[i] * w[j]).trace();
    }
  }
  return g;
}

}  // namespace

CovarianceFamily toy_family() {
  return {2, [](std::span<const double> x) { return toy_covariance(x[0], x[1]); }};
}

MetricTensor fisher_metric_numeric(const CovarianceFamily& family, std::span<const double> point,
                                   const FisherOptions& opts) {
  if (!(opts.step > 0.0)) throw DomainError("fisher_metric_numeric: step must be positive");
  if (static_cast<int>(point.size()) != family.param_dim) {
    throw DimensionError("fisher_metric_numeric: point has " + std::to_string(point.size()) +
                         " coordinates, family expects " + std::to_string(family.param_dim));
  }
  const Matrix sigma_inv = inverse(family.evaluate(point).matrix());

  std::vector<double> steps(point.size());
  for (std::size_t k = 0; k < point.size(); ++k) {
    steps[k] = opts.step * std::max(1.0, std::abs(point[k]));
  }
  std::vector<Matrix> d = central_derivatives(family, point, steps, opts.step);
  if (opts.richardson) {
    std::vector<double> half(steps.size());
    std::transform(steps.begin(), steps.end(), half.begin(), [](double h) { return 0.5 * h; });
    const std::vector<Matrix> d_half = central_derivatives(family, point, half, 0.5 * opts.step);
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = (4.0 * d_half[k] - d[k]) / 3.0;
  }
  return {metric_from_derivatives(sigma_inv, d)};
}

Matrix toy_metric_g0(double m, double n) {
  const double r = relative_radius(m, n, "toy_metric_g0");
  const double d0 = (1.0 - r * r) * (1.0 - r * r);
  Matrix g0(2, 2);
  g0 << 4.0 * (1.0 - m * m + n * n) / d0, 8.0 * m * n / d0,
        8.0 * m * n / d0, 4.0 * (1.0 + m * m - n * n) / d0;
  return g0;
}

ToyMetricDecomposition toy_metric_closed_form(double m, double n) {
  const double r = relative_radius(m, n, "toy_metric_closed_form");
  if (r == 0.0) {
    throw DomainError("toy_metric_closed_form: b terms are singular at R = 0; use the numeric metric");
  }
  const double r2 = r * r;
  const double db = r2 * (r2 - 1.0) * (r + 1.0);
  ToyMetricDecomposition out;
  out.g0 = toy_metric_g0(m, n);
  out.b.resize(2, 2);
  out.b << 16.0 * n * n / db, 16.0 * m * n / db,
           16.0 * m * n / db, 16.0 * m * m / db;
  out.total.g = out.g0 + out.b;
  return out;
}

double toy_metric_det(double m, double n) {
  const double r = relative_radius(m, n, "toy_metric_det");
  const double q = 1.0 - r * r;
  return 16.0 / (q * q * q) * (1.0 + (2.0 - r) * (2.0 - r));
}

double toy_tau(double m, double n) {
  const double r = relative_radius(m, n, "toy_tau");
  const double b = (1.0 + r) / (1.0 - r);
  const double q = 1.0 - r * r;
  return q * q * q * std::pow(b, 7) / 16.0;
}

double regularizer(const CovarianceMatrix& sigma, double kappa, int exponent) {
  if (!(kappa > 0.0)) throw DomainError("regularizer: kappa must be positive");
  if (exponent < 1) throw DomainError("regularizer: exponent must be at least 1");
  const Adjugate adj = adjugate(sigma.matrix());
  const double tau = adj.value.trace();
  const double det = determinant(sigma.matrix());
  return std::exp(-tau / kappa) * std::log1p(std::pow(det, exponent));
}

double toy_regularizer(double m, double n, double kappa) {
  if (!(kappa > 0.0)) throw DomainError("regularizer: kappa must be positive");
  const double r = relative_radius(m, n, "toy_regularizer");
  const double b = (1.0 + r) / (1.0 - r);
  const double q = 1.0 - r * r;
  const double tau = toy_tau(m, n);
  return std::exp(-tau / kappa) * std::log1p(b * b * tau * tau * q * q / 256.0);
}

}  // namespace ncig
