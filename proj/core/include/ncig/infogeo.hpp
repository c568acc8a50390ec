#pragma once

#include <functional>
#include <span>

#include "ncig/covariance.hpp"
#include "ncig/numerics.hpp"

namespace ncig {

// Fisher-Rao metric on a parameter space, g_{mu nu} = 1/2 Tr[S^-1 d_mu S S^-1 d_nu S].
struct MetricTensor {
  Matrix g;

  Eigen::Index dim() const noexcept { return g.rows(); }
  double determinant() const { return ncig::determinant(g); }
};

// A smooth map from parameters to covariance matrices. evaluate must throw
// (typically DomainError) outside its domain and be safe to call concurrently.
struct CovarianceFamily {
  int param_dim = 0;
  std::function<CovarianceMatrix(std::span<const double>)> evaluate;
};

// theta = (m, n) -> toy_covariance(m, n).
CovarianceFamily toy_family();

struct FisherOptions {
  // Relative step: h_mu = step * max(1, |theta_mu|).
  double step = 1e-5;
  // Combine steps h and h/2 as (4 D(h/2) - D(h)) / 3.
  bool richardson = false;
};

// Central-difference Fisher metric. Throws StepTooLargeError when a stencil
// point leaves the family's domain.
MetricTensor fisher_metric_numeric(const CovarianceFamily& family, std::span<const double> point,
                                   const FisherOptions& opts = {});

// Closed-form decomposition g = g0 + b for the toy family.
struct ToyMetricDecomposition {
  Matrix g0;
  Matrix b;
  MetricTensor total;
};

// g0 alone; defined on the whole open disk including R = 0.
Matrix toy_metric_g0(double m, double n);

// Throws DomainError at R = 0 (the b terms carry 1/R^2) and outside the disk.
ToyMetricDecomposition toy_metric_closed_form(double m, double n);

// Delta_g = 16 / (1 - R^2)^3 [1 + (2 - R)^2]
double toy_metric_det(double m, double n);

// Tr[adj Sigma] for the toy family: (1 - R^2)^3 b^7 / 16.
double toy_tau(double m, double n);

// exp(-Tr[adj Sigma] / kappa) * log(1 + det(Sigma)^exponent).
// Throws DomainError for kappa <= 0 or exponent < 1.
double regularizer(const CovarianceMatrix& sigma, double kappa, int exponent = 2);

// Toy closed form exp(-tau / kappa) log(1 + b^2 tau^2 (1 - R^2)^2 / 2^8).
double toy_regularizer(double m, double n, double kappa);

}  // namespace ncig
