#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncig/phase_space.hpp"

namespace ncig::cli {

// Closed-form versus numeric smallest symplectic eigenvalues at one (theta, eta).
struct ConventionAudit {
  std::string name;                  // "direct" (nu- from omega-) or "swapped"
  double max_dev_nu_minus = 0.0;     // over points where the closed form is real
  double max_dev_nu_prime_minus = 0.0;
  std::size_t undefined_nu_minus = 0;  // negative radicand
  std::size_t undefined_nu_prime_minus = 0;
  double worst_m = 0.0, worst_n = 0.0;
};

struct NuAudit {
  NCParams nc;
  std::size_t points = 0;
  ConventionAudit direct;
  ConventionAudit swapped;
  bool passes = false;  // direct convention within tolerance everywhere
};

struct MetricAudit {
  std::size_t points = 0;             // grid points with R > 0
  double max_entry_dev = 0.0;         // |closed-form g - numeric g|
  double max_entry_rel_dev = 0.0;     // same, relative to max |numeric g|
  double worst_m = 0.0, worst_n = 0.0;
  double max_det_rel_dev = 0.0;       // closed-form Delta_g versus det of numeric g
};

struct AnchorValue {
  double kappa = 0.0;
  std::string density;
  double value = 0.0;
  double std_error = 0.0;
  double rel_dev = 0.0;  // relative to the target
};

struct AnchorAudit {
  double target = 1.95268;
  double rel_tolerance = 5e-3;
  double kappa = 2.0;
  std::vector<AnchorValue> at_kappa;   // one per density
  std::string matching_density;        // empty when none matches
  std::vector<AnchorValue> scan;       // other kappa values that reproduce the target
};

struct EigenAudit {
  double m = 0.6, n = 0.0;
  std::vector<double> eigenvalues;     // ascending
  double half_b_low = 0.0, half_b_high = 0.0;        // (b/2)(1 -+ R)
  double inv_half_b_low = 0.0, inv_half_b_high = 0.0;  // (2/b)(1 -+ R)
  double max_dev_half_b = 0.0;
  double max_dev_inv_half_b = 0.0;
  double max_tau_rel_dev = 0.0;        // Tr adj Sigma versus tau over the grid
};

struct DiscrepancyReport {
  int grid_side = 101;
  double tolerance = 1e-8;
  std::vector<NuAudit> nu;
  MetricAudit metric;
  AnchorAudit anchor;
  EigenAudit eigen;
};

struct ReportOptions {
  int grid_side = 101;
  double nu_tolerance = 1e-8;
  std::size_t anchor_budget = 400'000;
  bool include_anchor = true;
};

// Points of linspace(-1, 1, side)^2 with R < 1.
std::vector<std::pair<double, double>> disk_grid(int side);

NuAudit audit_closed_forms(const NCParams& nc, int grid_side, double tolerance);
MetricAudit audit_metric(int grid_side);
AnchorAudit audit_anchor(std::size_t budget);
EigenAudit audit_eigenvalues(int grid_side);

DiscrepancyReport build_report(const ReportOptions& opts = {});

nlohmann::ordered_json to_json(const DiscrepancyReport& report);

// A few human-readable lines.
std::string summarize(const DiscrepancyReport& report);

}  // namespace ncig::cli
