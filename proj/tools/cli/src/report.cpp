#include "ncig/cli/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "ncig/cli/table_io.hpp"
#include "ncig/errors.hpp"
#include "ncig/gaussian.hpp"
#include "ncig/infogeo.hpp"
#include "ncig/numerics.hpp"
#include "ncig/volume.hpp"

namespace ncig::cli {
namespace {

double closed_or_nan(const ToyPoint& p, int sign) {
  try {
    return closed_form_nu(p, sign);
  } catch (const NumericalError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

void track(double closed, double numeric, double& max_dev, std::size_t& undefined, bool& worst,
           double tolerance) {
  if (std::isnan(closed)) {
    ++undefined;
    return;
  }
  const double dev = std::abs(closed - numeric);
  if (dev > max_dev) {
    max_dev = dev;
    worst = dev > tolerance;
  }
}

nlohmann::ordered_json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json convention_json(const ConventionAudit& c) {
  return {{"convention", c.name},
          {"max_dev_nu_minus", number_or_null(c.max_dev_nu_minus)},
          {"max_dev_nu_prime_minus", number_or_null(c.max_dev_nu_prime_minus)},
          {"undefined_nu_minus", c.undefined_nu_minus},
          {"undefined_nu_prime_minus", c.undefined_nu_prime_minus},
          {"worst_point", {c.worst_m, c.worst_n}}};
}

nlohmann::ordered_json anchor_json(const AnchorValue& a) {
  return {{"kappa", a.kappa},
          {"density", a.density},
          {"value", a.value},
          {"std_error", a.std_error},
          {"rel_dev", a.rel_dev}};
}

}  // namespace

std::vector<std::pair<double, double>> disk_grid(int side) {
  std::vector<std::pair<double, double>> out;
  const std::vector<double> axis = linear_grid(-1.0, 1.0, side);
  for (double m : axis) {
    for (double n : axis) {
      if (std::hypot(m, n) < 1.0) out.emplace_back(m, n);
    }
  }
  return out;
}

NuAudit audit_closed_forms(const NCParams& nc, int grid_side, double tolerance) {
  NuAudit audit;
  audit.nc = nc;
  audit.direct.name = "direct";
  audit.swapped.name = "swapped";
  for (auto [m, n] : disk_grid(grid_side)) {
    const ToyPoint p{m, n, nc};
    const Classification c = classify_detailed(p);
    ++audit.points;

    const std::array<double, 2> omega{closed_or_nan(p, -1), closed_or_nan(p, +1)};
    bool worst = false;
    track(omega[0], c.nu_minus, audit.direct.max_dev_nu_minus, audit.direct.undefined_nu_minus, worst,
          tolerance);
    track(omega[1], c.nu_prime_minus, audit.direct.max_dev_nu_prime_minus,
          audit.direct.undefined_nu_prime_minus, worst, tolerance);
    if (worst) audit.direct.worst_m = m, audit.direct.worst_n = n;

    worst = false;
    track(omega[1], c.nu_minus, audit.swapped.max_dev_nu_minus, audit.swapped.undefined_nu_minus, worst,
          tolerance);
    track(omega[0], c.nu_prime_minus, audit.swapped.max_dev_nu_prime_minus,
          audit.swapped.undefined_nu_prime_minus, worst, tolerance);
    if (worst) audit.swapped.worst_m = m, audit.swapped.worst_n = n;
  }
  const ConventionAudit& pc = audit.direct;
  audit.passes = pc.undefined_nu_minus == 0 && pc.undefined_nu_prime_minus == 0 &&
                 pc.max_dev_nu_minus <= tolerance && pc.max_dev_nu_prime_minus <= tolerance;
  return audit;
}

MetricAudit audit_metric(int grid_side) {
  MetricAudit audit;
  const CovarianceFamily family = toy_family();
  for (auto [m, n] : disk_grid(grid_side)) {
    if (std::hypot(m, n) == 0.0) continue;
    const std::array<double, 2> point{m, n};
    const MetricTensor numeric = fisher_metric_numeric(family, point);
    const ToyMetricDecomposition closed = toy_metric_closed_form(m, n);
    ++audit.points;

    const double dev = (closed.total.g - numeric.g).cwiseAbs().maxCoeff();
    const double scale = numeric.g.cwiseAbs().maxCoeff();
    if (dev > audit.max_entry_dev) {
      audit.max_entry_dev = dev;
      audit.worst_m = m;
      audit.worst_n = n;
    }
    audit.max_entry_rel_dev = std::max(audit.max_entry_rel_dev, dev / scale);
    const double det_closed = toy_metric_det(m, n);
    audit.max_det_rel_dev =
        std::max(audit.max_det_rel_dev, std::abs(numeric.determinant() - det_closed) / det_closed);
  }
  return audit;
}

AnchorAudit audit_anchor(std::size_t budget) {
  AnchorAudit audit;
  VolumeOptions opts;
  opts.backend = MetricBackend::ClosedForm;
  opts.method = Method::GaussLegendrePolar;
  opts.budget = budget;
  const RegionSpec disk{Region::PositiveDisk, {}};

  const auto evaluate = [&](double kappa, Density density) {
    opts.density = density;
    const IntegralEstimate est = integrate_region(disk, kappa, opts);
    return AnchorValue{kappa, std::string(to_string(density)), est.value, est.std_error,
                       std::abs(est.value - audit.target) / audit.target};
  };

  for (Density d : {Density::Det, Density::SqrtDet}) {
    const AnchorValue a = evaluate(audit.kappa, d);
    if (audit.matching_density.empty() && a.rel_dev <= audit.rel_tolerance) {
      audit.matching_density = a.density;
    }
    audit.at_kappa.push_back(a);
  }
  // Which kappa on the figure grid reproduces the target instead.
  for (double kappa : linear_grid(0.5, 4.0, 8)) {
    for (Density d : {Density::Det, Density::SqrtDet}) {
      const AnchorValue a = evaluate(kappa, d);
      if (a.rel_dev <= audit.rel_tolerance) audit.scan.push_back(a);
    }
  }
  return audit;
}

EigenAudit audit_eigenvalues(int grid_side) {
  EigenAudit audit;
  const CovarianceMatrix sigma = toy_covariance(audit.m, audit.n);
  audit.eigenvalues = eig_symmetric(sigma.matrix());
  const double r = std::hypot(audit.m, audit.n);
  const double b = (1.0 + r) / (1.0 - r);
  audit.half_b_low = 0.5 * b * (1.0 - r);
  audit.half_b_high = 0.5 * b * (1.0 + r);
  audit.inv_half_b_low = 2.0 / b * (1.0 - r);
  audit.inv_half_b_high = 2.0 / b * (1.0 + r);
  for (std::size_t k = 0; k < audit.eigenvalues.size(); ++k) {
    const bool low = k < audit.eigenvalues.size() / 2;
    const double ev = audit.eigenvalues[k];
    audit.max_dev_half_b =
        std::max(audit.max_dev_half_b, std::abs(ev - (low ? audit.half_b_low : audit.half_b_high)));
    audit.max_dev_inv_half_b = std::max(
        audit.max_dev_inv_half_b, std::abs(ev - (low ? audit.inv_half_b_low : audit.inv_half_b_high)));
  }
  for (auto [m, n] : disk_grid(grid_side)) {
    const double trace_adj = adjugate(toy_covariance(m, n).matrix()).value.trace();
    const double tau = toy_tau(m, n);
    audit.max_tau_rel_dev = std::max(audit.max_tau_rel_dev, std::abs(trace_adj - tau) / tau);
  }
  return audit;
}

DiscrepancyReport build_report(const ReportOptions& opts) {
  DiscrepancyReport report;
  report.grid_side = opts.grid_side;
  report.tolerance = opts.nu_tolerance;
  for (NCParams nc : {NCParams{0.0, 0.0}, NCParams{0.5, 0.0}, NCParams{0.0, 0.5}, NCParams{0.3, 0.3}}) {
    report.nu.push_back(audit_closed_forms(nc, opts.grid_side, opts.nu_tolerance));
  }
  report.metric = audit_metric(opts.grid_side);
  if (opts.include_anchor) report.anchor = audit_anchor(opts.anchor_budget);
  report.eigen = audit_eigenvalues(opts.grid_side);
  return report;
}

nlohmann::ordered_json to_json(const DiscrepancyReport& report) {
  nlohmann::ordered_json out;
  out["grid"] = {{"side", report.grid_side}, {"domain", "linspace(-1, 1, side)^2 with R < 1"}};

  nlohmann::ordered_json nu = nlohmann::ordered_json::array();
  for (const NuAudit& a : report.nu) {
    const bool swapped_better =
        std::max(a.swapped.max_dev_nu_minus, a.swapped.max_dev_nu_prime_minus) <
        std::max(a.direct.max_dev_nu_minus, a.direct.max_dev_nu_prime_minus);
    std::string failing;
    if (!a.passes) failing = swapped_better ? "direct" : "direct and swapped";
    nu.push_back({{"theta", a.nc.theta},
                  {"eta", a.nc.eta},
                  {"points", a.points},
                  {"tolerance", report.tolerance},
                  {"within_tolerance", a.passes},
                  {"failing_sign_convention", failing},
                  {"direct", convention_json(a.direct)},
                  {"swapped", convention_json(a.swapped)}});
  }
  out["closed_form_nu"] = std::move(nu);

  const MetricAudit& m = report.metric;
  out["metric"] = {{"points", m.points},
                   {"excluded", "R = 0 (closed-form b terms carry 1/R^2)"},
                   {"max_entry_dev", m.max_entry_dev},
                   {"max_entry_rel_dev", m.max_entry_rel_dev},
                   {"worst_point", {m.worst_m, m.worst_n}},
                   {"max_det_rel_dev", m.max_det_rel_dev}};

  const AnchorAudit& a = report.anchor;
  nlohmann::ordered_json at = nlohmann::ordered_json::array();
  for (const AnchorValue& v : a.at_kappa) at.push_back(anchor_json(v));
  nlohmann::ordered_json scan = nlohmann::ordered_json::array();
  for (const AnchorValue& v : a.scan) scan.push_back(anchor_json(v));
  out["anchor"] = {{"target", a.target},
                   {"rel_tolerance", a.rel_tolerance},
                   {"kappa", a.kappa},
                   {"values", std::move(at)},
                   {"matching_density", a.matching_density.empty() ? nlohmann::ordered_json(nullptr)
                                                                   : nlohmann::ordered_json(a.matching_density)},
                   {"matches_at_other_kappa", std::move(scan)}};

  const EigenAudit& e = report.eigen;
  out["covariance_eigenvalues"] = {
      {"point", {e.m, e.n}},
      {"numeric", e.eigenvalues},
      {"half_b", {e.half_b_low, e.half_b_high}},
      {"inverse_half_b", {e.inv_half_b_low, e.inv_half_b_high}},
      {"max_dev_half_b", e.max_dev_half_b},
      {"max_dev_inverse_half_b", e.max_dev_inv_half_b},
      {"supported", e.max_dev_half_b < e.max_dev_inv_half_b ? "(b/2)(1 -+ R)" : "(2/b)(1 -+ R)"},
      {"tau_max_rel_dev", e.max_tau_rel_dev}};
  return out;
}

std::string summarize(const DiscrepancyReport& report) {
  std::ostringstream out;
  for (const NuAudit& a : report.nu) {
    out << "nu closed forms at theta=" << format_number(a.nc.theta) << " eta=" << format_number(a.nc.eta)
        << ": max dev " << format_number(a.direct.max_dev_nu_minus) << " / "
        << format_number(a.direct.max_dev_nu_prime_minus) << ", undefined "
        << a.direct.undefined_nu_minus << " / " << a.direct.undefined_nu_prime_minus << " of "
        << a.points << (a.passes ? " (ok)" : " (mismatch)") << '\n';
  }
  out << "metric closed form: max entry dev " << format_number(report.metric.max_entry_dev)
      << ", det rel dev " << format_number(report.metric.max_det_rel_dev) << '\n';
  for (const AnchorValue& v : report.anchor.at_kappa) {
    out << "anchor kappa=" << format_number(v.kappa) << " density=" << v.density << ": "
        << format_number(v.value) << " (rel dev " << format_number(v.rel_dev) << ")\n";
  }
  for (const AnchorValue& v : report.anchor.scan) {
    out << "target reproduced at kappa=" << format_number(v.kappa) << " density=" << v.density << ": "
        << format_number(v.value) << '\n';
  }
  out << "covariance eigenvalues at (0.6, 0): max dev " << format_number(report.eigen.max_dev_half_b)
      << " from (b/2)(1 -+ R), " << format_number(report.eigen.max_dev_inv_half_b)
      << " from (2/b)(1 -+ R)\n";
  return out.str();
}

}  // namespace ncig::cli
