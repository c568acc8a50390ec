#include "ncig/volume.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>

#include "ncig/errors.hpp"
#include "ncig/infogeo.hpp"

namespace ncig {
namespace {

constexpr int kRegions = 4;  // disk, quantum, separable, entangled
constexpr int kSamplesPerCell = 2;
constexpr int kGaussPoints = 8;

enum RegionIndex { kDisk = 0, kQuantum = 1, kSeparable = 2, kEntangled = 3 };

struct PointValue {
  double f = 0.0;  // integrand including the Jacobian
  std::array<bool, kRegions> inside{};
};

// Partial sums for one group of cells. Variances are already scaled to the
// contribution of their cells to the final estimate.
struct Accum {
  std::array<double, kRegions> value{};
  std::array<double, kRegions> var{};
  std::array<std::size_t, kRegions> hits{};
  double cov_es = 0.0;  // covariance of entangled and separable cell estimates
  std::size_t evals = 0;

  Accum& operator+=(const Accum& o) {
    for (int k = 0; k < kRegions; ++k) {
      value[k] += o.value[k];
      var[k] += o.var[k];
      hits[k] += o.hits[k];
    }
    cov_es += o.cov_es;
    evals += o.evals;
    return *this;
  }
};

// Fixed-topology pairwise reduction so the result does not depend on threading.
Accum pairwise_sum(std::span<const Accum> parts) {
  if (parts.empty()) return {};
  if (parts.size() == 1) return parts.front();
  const std::size_t half = parts.size() / 2;
  Accum left = pairwise_sum(parts.first(half));
  left += pairwise_sum(parts.subspan(half));
  return left;
}

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = n;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform on [0, 1) from the top 53 bits; identical on every platform.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct Problem {
  NCParams nc;
  double kappa;
  const VolumeOptions* opts;
  bool classify;
};

PointValue evaluate(const Problem& pb, double m, double n, double jacobian) {
  PointValue out;
  if (!(std::hypot(m, n) <= kRimRadius)) return out;
  out.inside[kDisk] = true;
  out.f = jacobian * volume_integrand(m, n, pb.kappa, pb.opts->backend, pb.opts->density);
  // A vanishing integrand adds nothing to any region, so classification is skipped.
  if (pb.classify && out.f != 0.0) {
    const StateClass c = classify(ToyPoint{m, n, pb.nc}, pb.opts->tol);
    out.inside[kQuantum] = c != StateClass::Unphysical;
    out.inside[kSeparable] = c == StateClass::Separable;
    out.inside[kEntangled] = c == StateClass::Entangled;
  }
  return out;
}

// One stratified Monte Carlo cell: kSamplesPerCell draws, scaled by cell_weight.
template <class Draw>
void accumulate_cell(Accum& acc, const Problem& pb, double cell_weight, Draw&& draw) {
  std::array<std::array<double, kSamplesPerCell>, kRegions> g{};
  for (int s = 0; s < kSamplesPerCell; ++s) {
    const auto [m, n, jac] = draw();
    const PointValue pv = evaluate(pb, m, n, jac);
    for (int k = 0; k < kRegions; ++k) {
      g[k][s] = pv.inside[k] ? pv.f : 0.0;
      acc.hits[k] += pv.inside[k] ? 1 : 0;
    }
    ++acc.evals;
  }
  constexpr double ns = kSamplesPerCell;
  std::array<double, kRegions> mean{};
  for (int k = 0; k < kRegions; ++k) {
    for (double v : g[k]) mean[k] += v;
    mean[k] /= ns;
    double ss = 0.0;
    for (double v : g[k]) ss += (v - mean[k]) * (v - mean[k]);
    acc.value[k] += cell_weight * mean[k];
    acc.var[k] += cell_weight * cell_weight * ss / (ns - 1.0) / ns;
  }
  double cs = 0.0;
  for (int s = 0; s < kSamplesPerCell; ++s) {
    cs += (g[kEntangled][s] - mean[kEntangled]) * (g[kSeparable][s] - mean[kSeparable]);
  }
  acc.cov_es += cell_weight * cell_weight * cs / (ns - 1.0) / ns;
}

Accum run_stratified_polar(const Problem& pb) {
  const auto kr = static_cast<std::size_t>(
      std::floor(std::sqrt(static_cast<double>(pb.opts->budget) / (2.0 * kSamplesPerCell))));
  const std::size_t kphi = 2 * kr;
  const double cell_weight = 1.0 / static_cast<double>(kr * kphi);
  std::vector<Accum> rows(kr);
  parallel_for(kr, pb.opts->threads, [&](std::size_t i) {
    std::mt19937_64 rng(splitmix64(pb.opts->seed ^ splitmix64(i)));
    Accum acc;
    for (std::size_t j = 0; j < kphi; ++j) {
      accumulate_cell(acc, pb, cell_weight, [&] {
        const double u = (static_cast<double>(i) + unit(rng)) / static_cast<double>(kr);
        const double v = (static_cast<double>(j) + unit(rng)) / static_cast<double>(kphi);
        const double r = u * kRimRadius;
        const double phi = 2.0 * std::numbers::pi * v;
        const double jac = r * kRimRadius * 2.0 * std::numbers::pi;
        return std::array{r * std::cos(phi), r * std::sin(phi), jac};
      });
    }
    rows[i] = acc;
  });
  return pairwise_sum(rows);
}

Accum run_cartesian(const Problem& pb) {
  const auto k = static_cast<std::size_t>(
      std::floor(std::sqrt(static_cast<double>(pb.opts->budget) / kSamplesPerCell)));
  const double cell_weight = 1.0 / static_cast<double>(k * k);
  std::vector<Accum> rows(k);
  parallel_for(k, pb.opts->threads, [&](std::size_t i) {
    std::mt19937_64 rng(splitmix64(pb.opts->seed ^ splitmix64(i)));
    Accum acc;
    for (std::size_t j = 0; j < k; ++j) {
      accumulate_cell(acc, pb, cell_weight, [&] {
        const double x = -1.0 + 2.0 * (static_cast<double>(i) + unit(rng)) / static_cast<double>(k);
        const double y = -1.0 + 2.0 * (static_cast<double>(j) + unit(rng)) / static_cast<double>(k);
        return std::array{x, y, 4.0};
      });
    }
    rows[i] = acc;
  });
  return pairwise_sum(rows);
}

struct Rule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

const Rule& gauss_rule() {
  static const Rule rule = [] {
    using gauss = boost::math::quadrature::gauss<double, kGaussPoints>;
    Rule r;
    const auto& x = gauss::abscissa();
    const auto& w = gauss::weights();
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k] == 0.0) {
        r.nodes.push_back(0.0);
        r.weights.push_back(w[k]);
        continue;
      }
      r.nodes.push_back(-x[k]);
      r.weights.push_back(w[k]);
      r.nodes.push_back(x[k]);
      r.weights.push_back(w[k]);
    }
    return r;
  }();
  return rule;
}

// Composite rule: `panels` equal panels on [lo, hi].
Rule composite(double lo, double hi, std::size_t panels) {
  const Rule& base = gauss_rule();
  Rule out;
  const double width = (hi - lo) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = lo + width * static_cast<double>(p);
    for (std::size_t k = 0; k < base.nodes.size(); ++k) {
      out.nodes.push_back(a + 0.5 * width * (base.nodes[k] + 1.0));
      out.weights.push_back(0.5 * width * base.weights[k]);
    }
  }
  return out;
}

std::size_t quadrature_evals(int level) {
  const std::size_t panels_r = std::size_t{1} << level;
  return panels_r * kGaussPoints * 2 * panels_r * kGaussPoints;
}

Accum run_gauss_level(const Problem& pb, int level) {
  const std::size_t panels_r = std::size_t{1} << level;
  const Rule rr = composite(0.0, kRimRadius, panels_r);
  const Rule rp = composite(0.0, 2.0 * std::numbers::pi, 2 * panels_r);
  std::vector<Accum> rows(rr.nodes.size());
  parallel_for(rr.nodes.size(), pb.opts->threads, [&](std::size_t i) {
    const double r = rr.nodes[i];
    Accum acc;
    for (std::size_t j = 0; j < rp.nodes.size(); ++j) {
      const double w = rr.weights[i] * rp.weights[j];
      const PointValue pv = evaluate(pb, r * std::cos(rp.nodes[j]), r * std::sin(rp.nodes[j]), r);
      for (int k = 0; k < kRegions; ++k) {
        if (!pv.inside[k]) continue;
        acc.value[k] += w * pv.f;
        ++acc.hits[k];
      }
      ++acc.evals;
    }
    rows[i] = acc;
  });
  return pairwise_sum(rows);
}

double safe_ratio(double num, double den) {
  if (den == 0.0) return num == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                    : std::numeric_limits<double>::infinity();
  return num / den;
}

RegionVolumes finish_monte_carlo(const Accum& acc, Method method) {
  RegionVolumes out;
  std::array<IntegralEstimate*, kRegions> est{&out.disk, &out.quantum, &out.separable,
                                              &out.entangled};
  for (int k = 0; k < kRegions; ++k) {
    *est[k] = {acc.value[k], std::sqrt(std::max(acc.var[k], 0.0)), acc.evals, method,
               acc.hits[k] == 0};
    if (acc.hits[k] == 0) est[k]->value = 0.0;
  }
  out.ratio = safe_ratio(out.entangled.value, out.separable.value);
  if (out.separable.value > 0.0) {
    const double rho = out.ratio;
    const double v = acc.var[kEntangled] - 2.0 * rho * acc.cov_es + rho * rho * acc.var[kSeparable];
    out.ratio_std_error = std::sqrt(std::max(v, 0.0)) / out.separable.value;
  }
  return out;
}

RegionVolumes run(const Problem& pb) {
  const VolumeOptions& opts = *pb.opts;
  switch (opts.method) {
    case Method::StratifiedPolar:
      return finish_monte_carlo(run_stratified_polar(pb), opts.method);
    case Method::CartesianRejection:
      return finish_monte_carlo(run_cartesian(pb), opts.method);
    case Method::GaussLegendrePolar: {
      int level = 1;
      while (quadrature_evals(level + 1) + quadrature_evals(level) <= opts.budget) ++level;
      const Accum coarse = run_gauss_level(pb, level - 1);
      const Accum fine = run_gauss_level(pb, level);
      RegionVolumes out;
      std::array<IntegralEstimate*, kRegions> est{&out.disk, &out.quantum, &out.separable,
                                                  &out.entangled};
      for (int k = 0; k < kRegions; ++k) {
        *est[k] = {fine.value[k], std::abs(fine.value[k] - coarse.value[k]),
                   fine.evals + coarse.evals, opts.method, fine.hits[k] == 0};
      }
      out.ratio = safe_ratio(fine.value[kEntangled], fine.value[kSeparable]);
      const double coarse_ratio = safe_ratio(coarse.value[kEntangled], coarse.value[kSeparable]);
      out.ratio_std_error = std::isfinite(out.ratio) && std::isfinite(coarse_ratio)
                                ? std::abs(out.ratio - coarse_ratio)
                                : 0.0;
      return out;
    }
  }
  throw DomainError("integrate_region: unknown method");
}

void validate(double kappa, const VolumeOptions& opts) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw DomainError("integrate_region: kappa must be positive");
  }
  if (opts.budget < kMinBudget) {
    throw DomainError("integrate_region: budget must be at least " + std::to_string(kMinBudget));
  }
}

}  // namespace

std::string_view to_string(Region r) noexcept {
  switch (r) {
    case Region::PositiveDisk: return "positive-disk";
    case Region::Quantum: return "quantum";
    case Region::Separable: return "separable";
    case Region::Entangled: return "entangled";
  }
  return "?";
}

std::string_view to_string(MetricBackend b) noexcept {
  return b == MetricBackend::ClosedForm ? "paper" : "numeric";
}

std::string_view to_string(Density d) noexcept { return d == Density::Det ? "det" : "sqrt-det"; }

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::StratifiedPolar: return "mc";
    case Method::CartesianRejection: return "mc-cartesian";
    case Method::GaussLegendrePolar: return "quadrature";
  }
  return "?";
}

std::string_view to_string(SweepParameter p) noexcept {
  switch (p) {
    case SweepParameter::Kappa: return "kappa";
    case SweepParameter::Theta: return "theta";
    case SweepParameter::Eta: return "eta";
  }
  return "?";
}

double volume_integrand(double m, double n, double kappa, MetricBackend backend, Density density) {
  if (!(std::hypot(m, n) <= kRimRadius)) return 0.0;
  double upsilon = 0.0;
  double det_g = 0.0;
  if (backend == MetricBackend::ClosedForm) {
    upsilon = toy_regularizer(m, n, kappa);
    if (upsilon == 0.0) return 0.0;
    det_g = toy_metric_det(m, n);
  } else {
    upsilon = regularizer(toy_covariance(m, n), kappa, 2);
    if (upsilon == 0.0) return 0.0;
    const std::array point{m, n};
    try {
      det_g = fisher_metric_numeric(toy_family(), point).determinant();
    } catch (const StepTooLargeError& e) {
      if (!(e.suggested_step() > 0.0)) throw;
      det_g = fisher_metric_numeric(toy_family(), point, {e.suggested_step(), false}).determinant();
    }
  }
  return upsilon * (density == Density::Det ? det_g : std::sqrt(std::max(det_g, 0.0)));
}

RegionVolumes integrate_regions(const NCParams& nc, double kappa, const VolumeOptions& opts) {
  validate(kappa, opts);
  if (!nc.admits_darboux_map()) {
    throw DomainError("integrate_region: theta * eta must be below 1");
  }
  return run(Problem{nc, kappa, &opts, true});
}

IntegralEstimate integrate_region(const RegionSpec& region, double kappa, const VolumeOptions& opts) {
  validate(kappa, opts);
  if (region.kind == Region::PositiveDisk) {
    return run(Problem{region.nc, kappa, &opts, false}).disk;
  }
  const RegionVolumes v = integrate_regions(region.nc, kappa, opts);
  switch (region.kind) {
    case Region::Quantum: return v.quantum;
    case Region::Separable: return v.separable;
    case Region::Entangled: return v.entangled;
    case Region::PositiveDisk: break;
  }
  return v.disk;
}

IntegralEstimate entangled_volume(const NCParams& nc, double kappa, const VolumeOptions& opts) {
  return integrate_regions(nc, kappa, opts).entangled;
}

SweepTable sweep(SweepParameter parameter, std::span<const double> grid, const NCParams& nc,
                 double kappa, const VolumeOptions& opts) {
  if (grid.empty()) throw DomainError("sweep: grid is empty");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) throw DomainError("sweep: grid must be strictly increasing");
  }
  SweepTable table{parameter, {}};
  table.rows.reserve(grid.size());
  for (double value : grid) {
    NCParams p = nc;
    double k = kappa;
    switch (parameter) {
      case SweepParameter::Kappa: k = value; break;
      case SweepParameter::Theta: p.theta = value; break;
      case SweepParameter::Eta: p.eta = value; break;
    }
    table.rows.push_back({value, integrate_regions(p, k, opts)});
  }
  return table;
}

std::vector<double> linear_grid(double from, double to, int steps) {
  if (steps < 1) throw DomainError("linear_grid: steps must be at least 1");
  if (steps == 1) return {from};
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    grid[static_cast<std::size_t>(k)] = from + (to - from) * k / (steps - 1);
  }
  return grid;
}

}  // namespace ncig
