#include "ncig/cli/app.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncig/cli/report.hpp"
#include "ncig/cli/svg_plot.hpp"
#include "ncig/cli/table_io.hpp"
#include "ncig/errors.hpp"
#include "ncig/gaussian.hpp"
#include "ncig/infogeo.hpp"
#include "ncig/volume.hpp"

namespace ncig::cli {
namespace {

struct RunConfig {
  std::string command;
  double m = 0.0;
  double n = 0.0;
  double theta = 0.0;
  double eta = 0.0;
  std::optional<double> kappa;
  std::string backend = "paper";
  std::string density = "det";
  std::optional<std::size_t> budget;
  std::uint64_t seed = 0;
  std::string param = "kappa";
  std::optional<double> from;
  std::optional<double> to;
  std::optional<int> steps;
  std::string out;
  std::string format = "csv";
  std::string plot;
  double tol = kClassifyTolerance;
  std::optional<std::string> method;
  std::string region = "positive-disk";
  unsigned threads = 0;
};

MetricBackend parse_backend(const std::string& s) {
  return s == "numeric" ? MetricBackend::NumericFisher : MetricBackend::ClosedForm;
}

Density parse_density(const std::string& s) { return s == "sqrt-det" ? Density::SqrtDet : Density::Det; }

Method parse_method(const std::string& s) {
  if (s == "mc") return Method::StratifiedPolar;
  if (s == "mc-cartesian") return Method::CartesianRejection;
  return Method::GaussLegendrePolar;
}

Region parse_region(const std::string& s) {
  if (s == "quantum") return Region::Quantum;
  if (s == "separable") return Region::Separable;
  if (s == "entangled") return Region::Entangled;
  return Region::PositiveDisk;
}

SweepParameter parse_param(const std::string& s) {
  if (s == "theta") return SweepParameter::Theta;
  if (s == "eta") return SweepParameter::Eta;
  return SweepParameter::Kappa;
}

TableFormat parse_format(const std::string& s) { return s == "json" ? TableFormat::Json : TableFormat::Csv; }

bool uses_point(const std::string& c) { return c == "classify" || c == "spectrum" || c == "metric"; }

// Every numeric field is checked before any computation starts.
void validate(const RunConfig& cfg) {
  const auto finite = [](double v, const char* name) {
    if (!std::isfinite(v)) throw DomainError(std::string("--") + name + " must be finite");
  };
  finite(cfg.m, "m");
  finite(cfg.n, "n");
  finite(cfg.theta, "theta");
  finite(cfg.eta, "eta");
  if (cfg.command != "report" && !NCParams{cfg.theta, cfg.eta}.admits_darboux_map()) {
    throw DomainError("theta * eta must be below 1");
  }
  if (uses_point(cfg.command) && !(std::hypot(cfg.m, cfg.n) < 1.0)) {
    throw DomainError("(m, n) must satisfy m^2 + n^2 < 1");
  }
  if (cfg.kappa && !(*cfg.kappa > 0.0)) throw DomainError("--kappa must be positive");
  if (cfg.budget && *cfg.budget < kMinBudget) {
    throw DomainError("--budget must be at least " + std::to_string(kMinBudget));
  }
  if (cfg.steps && *cfg.steps < 1) throw DomainError("--steps must be at least 1");
  if (!(cfg.tol >= 0.0)) throw DomainError("--tol must be nonnegative");
  if (cfg.command == "sweep" && cfg.param != "kappa") {
    // Swept NC values must keep theta * eta < 1 across the grid.
    const double other = cfg.param == "theta" ? cfg.eta : cfg.theta;
    const double hi = std::max(std::abs(cfg.from.value_or(0.1)), std::abs(cfg.to.value_or(1.0)));
    if (hi * std::abs(other) >= 1.0) throw DomainError("theta * eta must be below 1 across the sweep");
  }
  if (cfg.command == "sweep" && cfg.param == "kappa" && cfg.from && *cfg.from <= 0.0) {
    throw DomainError("--from must be positive for a kappa sweep");
  }
}

VolumeOptions volume_options(const RunConfig& cfg, Method default_method, std::size_t default_budget) {
  VolumeOptions opts;
  opts.backend = parse_backend(cfg.backend);
  opts.density = parse_density(cfg.density);
  opts.method = cfg.method ? parse_method(*cfg.method) : default_method;
  opts.budget = cfg.budget.value_or(default_budget);
  opts.seed = cfg.seed;
  opts.tol = cfg.tol;
  opts.threads = cfg.threads;
  return opts;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + format_number(v[k]);
  return s;
}

void print_matrix(std::ostream& out, const std::string& name, const Matrix& g) {
  out << name << ":\n";
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    out << " ";
    for (Eigen::Index j = 0; j < g.cols(); ++j) out << ' ' << format_number(g(i, j));
    out << '\n';
  }
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  const ToyPoint p{cfg.m, cfg.n, {cfg.theta, cfg.eta}};
  const Classification c = classify_detailed(p, cfg.tol);
  out << to_string(c.state) << '\n'
      << "nu_minus=" << format_number(c.nu_minus) << " nu_prime_minus=" << format_number(c.nu_prime_minus)
      << '\n';
  if (c.closed_form_discrepancy) {
    out << "closed-form discrepancy: nu_minus=" << format_number(c.closed_nu_minus)
        << " nu_prime_minus=" << format_number(c.closed_nu_prime_minus) << '\n';
  }
  return kExitOk;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  const NCParams nc{cfg.theta, cfg.eta};
  const CovarianceMatrix sigma = toy_covariance(cfg.m, cfg.n);
  const SymplecticForm omega = nc_form(nc);
  out << "omega: " << join(symplectic_spectrum(sigma, omega).values) << '\n'
      << "omega_ppt: " << join(symplectic_spectrum(sigma, ppt_form(omega)).values) << '\n';
  const CovarianceMatrix pulled = darboux_conjugate(sigma, bopp_shift(nc), Direction::Pull);
  out << "darboux_pulled_j: " << join(symplectic_spectrum(pulled, commutative_form(2, 2)).values) << '\n';
  return kExitOk;
}

int cmd_metric(const RunConfig& cfg, std::ostream& out) {
  const std::array<double, 2> point{cfg.m, cfg.n};
  const MetricTensor numeric = fisher_metric_numeric(toy_family(), point);
  print_matrix(out, "numeric", numeric.g);
  if (std::hypot(cfg.m, cfg.n) > 0.0) {
    const ToyMetricDecomposition closed = toy_metric_closed_form(cfg.m, cfg.n);
    print_matrix(out, "closed_form_g0", closed.g0);
    print_matrix(out, "closed_form_b", closed.b);
    print_matrix(out, "closed_form", closed.total.g);
  } else {
    out << "closed_form: undefined at R = 0\n";
  }
  out << "det_numeric=" << format_number(numeric.determinant())
      << " det_closed_form=" << format_number(toy_metric_det(cfg.m, cfg.n)) << '\n';
  if (cfg.kappa) {
    out << "regularizer=" << format_number(toy_regularizer(cfg.m, cfg.n, *cfg.kappa)) << '\n';
  }
  return kExitOk;
}

int cmd_volume(const RunConfig& cfg, std::ostream& out) {
  const double kappa = cfg.kappa.value_or(2.0);
  const VolumeOptions opts = volume_options(cfg, Method::GaussLegendrePolar, 200'000);
  const RegionSpec region{parse_region(cfg.region), {cfg.theta, cfg.eta}};
  const IntegralEstimate est = integrate_region(region, kappa, opts);
  if (cfg.format == "json") {
    nlohmann::ordered_json j = {{"region", to_string(region.kind)},
                                {"kappa", kappa},
                                {"theta", cfg.theta},
                                {"eta", cfg.eta},
                                {"backend", to_string(opts.backend)},
                                {"density", to_string(opts.density)},
                                {"method", to_string(est.method)},
                                {"value", est.value},
                                {"std_error", est.std_error},
                                {"evals", est.evals},
                                {"zero_measure", est.zero_measure}};
    out << j.dump(2) << '\n';
  } else {
    out << "value=" << format_number(est.value) << " std_error=" << format_number(est.std_error)
        << " evals=" << est.evals << " method=" << to_string(est.method)
        << " region=" << to_string(region.kind) << " density=" << to_string(opts.density)
        << " backend=" << to_string(opts.backend) << (est.zero_measure ? " zero_measure" : "") << '\n';
  }
  return kExitOk;
}

std::vector<double> sweep_grid(const RunConfig& cfg) {
  if (cfg.param == "kappa") return linear_grid(cfg.from.value_or(0.5), cfg.to.value_or(4.0), cfg.steps.value_or(8));
  return linear_grid(cfg.from.value_or(0.1), cfg.to.value_or(1.0), cfg.steps.value_or(10));
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const SweepParameter param = parse_param(cfg.param);
  const std::vector<double> grid = sweep_grid(cfg);
  const VolumeOptions opts = volume_options(cfg, Method::StratifiedPolar, 100'000);
  const SweepTable table = sweep(param, grid, {cfg.theta, cfg.eta}, cfg.kappa.value_or(4.0), opts);
  const TableFormat format = parse_format(cfg.format);
  if (cfg.out.empty()) {
    out << render_table(table, format);
  } else {
    emit_table(table, format, cfg.out);
  }
  if (!cfg.plot.empty()) emit_plot(table, cfg.plot);
  return kExitOk;
}

int cmd_figures(const RunConfig& cfg, std::ostream& out) {
  const std::filesystem::path dir = cfg.out.empty() ? std::filesystem::path("figures") : std::filesystem::path(cfg.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());

  const VolumeOptions opts = volume_options(cfg, Method::StratifiedPolar, 100'000);
  const TableFormat format = parse_format(cfg.format);
  const std::string ext = format == TableFormat::Json ? ".json" : ".csv";
  const double kappa = cfg.kappa.value_or(4.0);
  const auto started = std::chrono::steady_clock::now();

  const auto write = [&](const SweepTable& table, const std::string& stem) {
    emit_table(table, format, dir / (stem + ext));
    out << (dir / (stem + ext)).string() << '\n';
  };
  const auto plot = [&](const SweepTable& table, const std::string& name, PlotKind kind) {
    emit_plot(table, dir / name, kind);
    out << (dir / name).string() << '\n';
  };

  const std::vector<double> kappas = linear_grid(0.5, 4.0, 8);
  const SweepTable fig1 = sweep(SweepParameter::Kappa, kappas, {0.0, 0.0}, kappa, opts);
  write(fig1, "fig1_kappa");
  plot(fig1, "fig1_kappa.svg", PlotKind::Disk);

  const std::vector<double> nc_grid = linear_grid(0.1, 1.0, 10);
  const SweepTable theta = sweep(SweepParameter::Theta, nc_grid, {0.0, 0.0}, kappa, opts);
  write(theta, "fig2_fig3_theta");
  plot(theta, "fig2_theta_volumes.svg", PlotKind::Volumes);
  plot(theta, "fig3_theta_ratio.svg", PlotKind::Ratio);

  const SweepTable eta = sweep(SweepParameter::Eta, nc_grid, {0.0, 0.0}, kappa, opts);
  write(eta, "fig4_eta");
  plot(eta, "fig4_eta_ratio.svg", PlotKind::Ratio);

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  out << "figures written in " << format_number(seconds) << " s\n";
  return kExitOk;
}

int cmd_report(const RunConfig& cfg, std::ostream& out) {
  ReportOptions opts;
  if (cfg.budget) opts.anchor_budget = *cfg.budget;
  const DiscrepancyReport report = build_report(opts);
  const std::string json = to_json(report).dump(2) + "\n";
  if (cfg.out.empty()) {
    out << json;
  } else {
    write_text_file(cfg.out, json);
    out << summarize(report);
  }
  return kExitOk;
}

void declare_options(CLI::App& app, RunConfig& cfg) {
  app.add_option("--m", cfg.m, "toy parameter m");
  app.add_option("--n", cfg.n, "toy parameter n");
  app.add_option("--theta", cfg.theta, "position noncommutativity");
  app.add_option("--eta", cfg.eta, "momentum noncommutativity");
  app.add_option("--kappa", cfg.kappa, "regularizer scale (volume 2, sweeps 4)");
  app.add_option("--backend", cfg.backend, "metric backend")->check(CLI::IsMember({"paper", "numeric"}));
  app.add_option("--density", cfg.density, "volume density")->check(CLI::IsMember({"det", "sqrt-det"}));
  app.add_option("--budget", cfg.budget, "integrand evaluations");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--param", cfg.param, "swept parameter")->check(CLI::IsMember({"kappa", "theta", "eta"}));
  app.add_option("--from", cfg.from, "first grid value");
  app.add_option("--to", cfg.to, "last grid value");
  app.add_option("--steps", cfg.steps, "grid points");
  app.add_option("--out", cfg.out, "output file (figures: directory)");
  app.add_option("--format", cfg.format, "table format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--plot", cfg.plot, "SVG plot path");
  app.add_option("--tol", cfg.tol, "classification tolerance on nu >= 1");
  app.add_option("--method", cfg.method, "integration method")
      ->check(CLI::IsMember({"mc", "mc-cartesian", "quadrature"}));
  app.add_option("--region", cfg.region, "volume region")
      ->check(CLI::IsMember({"positive-disk", "quantum", "separable", "entangled"}));
  app.add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
  app.set_config("--config", "", "key = value file; flags override it");
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Gaussian-state information geometry on noncommutative phase space", "ncig"};
  declare_options(app, cfg);
  const std::array<std::pair<const char*, const char*>, 7> commands{{
      {"classify", "classify a toy state as Unphysical, Separable or Entangled"},
      {"spectrum", "symplectic spectra of a toy state"},
      {"metric", "Fisher-Rao metric at a toy point"},
      {"volume", "regularized volume of one region"},
      {"sweep", "region volumes over a kappa, theta or eta grid"},
      {"figures", "regenerate the four figure tables and plots"},
      {"report", "closed-form discrepancy report (JSON)"},
  }};
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help)->fallthrough()->callback([&cfg, name = std::string(name)] {
      cfg.command = name;
    });
  }
  app.require_subcommand(1);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    validate(cfg);
    if (cfg.command == "classify") return cmd_classify(cfg, out);
    if (cfg.command == "spectrum") return cmd_spectrum(cfg, out);
    if (cfg.command == "metric") return cmd_metric(cfg, out);
    if (cfg.command == "volume") return cmd_volume(cfg, out);
    if (cfg.command == "sweep") return cmd_sweep(cfg, out);
    if (cfg.command == "figures") return cmd_figures(cfg, out);
    return cmd_report(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace ncig::cli
