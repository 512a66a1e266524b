#include <benchmark/benchmark.h>

#include <random>

#include "anisoq/experiment.hpp"
#include "anisoq/invariants.hpp"
#include "anisoq/linalg.hpp"
#include "anisoq/nonlocality.hpp"

using namespace anisoq;

namespace {

ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = g(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = Complex(g(rng), g(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

}  // namespace

static void HermitianEigensystem(benchmark::State& state) {
  const auto m = random_hermitian(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigensystem(m));
}
BENCHMARK(HermitianEigensystem)->Arg(2)->Arg(4)->Arg(8);

static void Symmetric3Eigenvalues(benchmark::State& state) {
  const auto t = correlation_matrix(haar_random_state(3), Pair::AB);
  Mat3 s{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) s[i][j] += t.entries[i][k] * t.entries[j][k];
  for (auto _ : state) benchmark::DoNotOptimize(real_symmetric3_eigenvalues(s));
}
BENCHMARK(Symmetric3Eigenvalues);

static void PairCorrelations(benchmark::State& state) {
  const PureState3 psi = haar_random_state(11);
  for (auto _ : state) benchmark::DoNotOptimize(correlation_matrix(psi, Pair::AC));
}
BENCHMARK(PairCorrelations);

static void Invariance(benchmark::State& state) {
  const PureState3 psi = haar_random_state(12);
  for (auto _ : state) benchmark::DoNotOptimize(invariance_report(psi));
}
BENCHMARK(Invariance);

static void Concurrence(benchmark::State& state) {
  const auto rho = reduce_pair(haar_random_state(13), Pair::BC);
  for (auto _ : state) benchmark::DoNotOptimize(concurrence(rho));
}
BENCHMARK(Concurrence);

static void ThreeTangle(benchmark::State& state) {
  const PureState3 psi = haar_random_state(14);
  for (auto _ : state) benchmark::DoNotOptimize(three_tangle(psi));
}
BENCHMARK(ThreeTangle);

static void OptimalChshSettings(benchmark::State& state) {
  const auto t = correlation_matrix(haar_random_state(15), Pair::AB);
  for (auto _ : state) benchmark::DoNotOptimize(optimal_chsh_settings(t));
}
BENCHMARK(OptimalChshSettings);

static void SimulateCounts(benchmark::State& state) {
  const PureState3 psi = w_class_state(30, 30);
  const auto shots = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_counts(psi, shots, ++seed));
}
BENCHMARK(SimulateCounts)->Arg(5000)->Arg(1'000'000);

static void EstimateCorrelations(benchmark::State& state) {
  const auto recs = simulate_counts(w_class_state(45, 15), 5000, 1);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_correlations(recs));
}
BENCHMARK(EstimateCorrelations);

static void Bootstrap(benchmark::State& state) {
  const auto recs = simulate_counts(w_class_state(45, 15), 5000, 1);
  std::vector<Statistic> stats;
  for (const char* n : {"iso_sum", "ds1_AB", "ds2_AC", "ds3_BC", "M_AC", "conc_AB", "tangle"})
    stats.push_back(Statistic::parse(n));
  const auto resamples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bootstrap_errors(recs, stats, resamples, 2));
}
BENCHMARK(Bootstrap)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();

static void Tomography(benchmark::State& state) {
  const auto recs = simulate_counts(ghz_class_state(30), 5000, 1);
  for (auto _ : state) benchmark::DoNotOptimize(tomography_reconstruct(recs));
}
BENCHMARK(Tomography)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
