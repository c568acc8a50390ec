#include <array>

#include <benchmark/benchmark.h>

#include "ncig/gaussian.hpp"
#include "ncig/infogeo.hpp"
#include "ncig/volume.hpp"

namespace {

void BM_SymplecticSpectrum(benchmark::State& state) {
  const ncig::CovarianceMatrix sigma = ncig::toy_covariance(0.3, 0.2);
  const ncig::SymplecticForm omega = ncig::nc_form({0.5, 0.2});
  for (auto _ : state) benchmark::DoNotOptimize(ncig::symplectic_spectrum(sigma, omega));
}
BENCHMARK(BM_SymplecticSpectrum);

void BM_SymplecticSpectrumGeneral(benchmark::State& state) {
  const ncig::CovarianceMatrix sigma = ncig::toy_covariance(0.3, 0.2);
  const ncig::SymplecticForm omega = ncig::nc_form({0.5, 0.2});
  for (auto _ : state) benchmark::DoNotOptimize(ncig::symplectic_spectrum_general(sigma, omega));
}
BENCHMARK(BM_SymplecticSpectrumGeneral);

void BM_Classify(benchmark::State& state) {
  const ncig::ToyPoint p{0.3, 0.2, {0.5, 0.2}};
  for (auto _ : state) benchmark::DoNotOptimize(ncig::classify(p));
}
BENCHMARK(BM_Classify);

void BM_FisherMetricNumeric(benchmark::State& state) {
  const ncig::CovarianceFamily family = ncig::toy_family();
  const std::array p{0.3, 0.2};
  for (auto _ : state) benchmark::DoNotOptimize(ncig::fisher_metric_numeric(family, p));
}
BENCHMARK(BM_FisherMetricNumeric);

void BM_IntegrateRegion(benchmark::State& state) {
  ncig::VolumeOptions opts;
  opts.backend = ncig::MetricBackend::ClosedForm;
  opts.budget = static_cast<std::size_t>(state.range(0));
  const ncig::RegionSpec region{ncig::Region::Quantum, {0.5, 0.0}};
  for (auto _ : state) benchmark::DoNotOptimize(ncig::integrate_region(region, 4.0, opts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IntegrateRegion)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
