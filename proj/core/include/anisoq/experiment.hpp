#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "anisoq/invariants.hpp"
#include "anisoq/nonlocality.hpp"
#include "anisoq/states.hpp"

namespace anisoq {

// Pauli axes (1..3) measured on A, B and C.
struct Setting {
  int j = 1, k = 1, l = 1;

  int index() const { return 9 * (j - 1) + 3 * (k - 1) + (l - 1); }
  static Setting from_index(int index);
  bool operator==(const Setting&) const = default;
};

std::vector<Setting> all_settings();

// Independent child seed for work item `stream` of a run seeded with `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

// Outcome bins are indexed like basis kets: bit 2 is A, bit 1 is B, bit 0 is C,
// and a set bit means the -1 outcome.
inline constexpr int outcome_index(int alpha, int beta, int gamma) {
  return (alpha < 0 ? 4 : 0) | (beta < 0 ? 2 : 0) | (gamma < 0 ? 1 : 0);
}
inline constexpr int outcome_sign(int outcome, Party party) {
  return (outcome >> (2 - static_cast<int>(party))) & 1 ? -1 : 1;
}

struct OutcomeDistribution {
  Setting setting;
  std::array<double, 8> probs{};
};

struct CountRecord {
  Setting setting;
  std::array<std::uint64_t, 8> counts{};

  std::uint64_t total() const;
};

OutcomeDistribution outcome_distribution(const PureState3& state, const Setting& setting);

// Every outcome bin is an independent Poisson draw with mean shots * p.
std::vector<CountRecord> simulate_counts(const PureState3& state, std::uint64_t shots_per_setting,
                                         std::uint64_t seed);

// Noise-free records: each bin holds round(shots * p).
std::vector<CountRecord> exact_records(const PureState3& state, std::uint64_t shots_per_setting);

// Bloch vectors and pairwise correlation matrices, indexed like kParties/kPairs.
struct CorrelationData {
  std::array<BlochVector, 3> bloch;
  std::array<CorrelationMatrix, 3> t;

  const BlochVector& of(Party p) const { return bloch[static_cast<std::size_t>(p)]; }
  const CorrelationMatrix& of(Pair p) const { return t[static_cast<std::size_t>(p)]; }
};

CorrelationData exact_correlations(const PureState3& state);

// Pooled: a two-party correlator averages over all three axes of the idle
// party, and a Bloch component averages over the nine idle settings.
// SingleSlice: the idle parties are read only at axis `slice`.
struct EstimationOptions {
  enum class Pooling { Pooled, SingleSlice } pooling = Pooling::Pooled;
  int slice = 3;
};

CorrelationData estimate_correlations(std::span<const CountRecord> records,
                                      const EstimationOptions& options = {});

// Named scalar derived from CorrelationData. Names:
//   iso_sum, iso_<P>, ds<j>_<P>, M_<P>, chsh2_<P>,
//   M_half_diff_<P>_<Q>, iso_diff_<P>_<Q>, conc2_diff_<P>_<Q>, conc_<P>,
//   bloch2_diff_<X>_<Y>  (|x|^2 - |y|^2), tangle
// with P, Q in {AB, AC, BC} and X, Y in {A, B, C}.
struct Statistic {
  enum class Kind {
    IsoSum,
    Iso,
    Delta,
    Horodecki,
    Chsh2,
    HorodeckiHalfDiff,
    IsoDiff,
    ConcSqDiff,
    Concurrence,
    BlochSqDiff,
    Tangle,
  };

  Kind kind = Kind::IsoSum;
  Pair pair = Pair::AB;
  Pair other = Pair::AC;
  Party party = Party::A;
  Party other_party = Party::B;
  int j = 1;
  // chsh2 only: fixed settings; when empty the bootstrap uses the optimal
  // settings of the original estimate.
  std::optional<MeasurementDirections> dirs;

  static Statistic parse(const std::string& name);
  std::string name() const;
  double evaluate(const CorrelationData& data) const;
};

struct BootstrapResult {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t resamples = 0;
};

// Poissonian bootstrap: every count c is redrawn as Poisson(c) and the
// statistic recomputed. Settings whose resampled total is zero keep their
// original counts.
BootstrapResult bootstrap_errors(std::span<const CountRecord> records, const Statistic& statistic,
                                 std::size_t resamples, std::uint64_t seed);
std::vector<BootstrapResult> bootstrap_errors(std::span<const CountRecord> records,
                                              std::span<const Statistic> statistics,
                                              std::size_t resamples, std::uint64_t seed);

struct ThreeQubitDensity {
  ComplexMatrix matrix;  // 8x8
};

// Frobenius-nearest density matrix: eigenvalues projected onto the simplex.
ComplexMatrix nearest_density_matrix(const ComplexMatrix& hermitian);

// Linear inversion over all 64 Pauli expectations, then PSD projection.
ThreeQubitDensity tomography_reconstruct(std::span<const CountRecord> records);

// <psi|rho|psi>, clamped to [0, 1].
double fidelity(const ThreeQubitDensity& rho, const PureState3& target);
// sqrt(<psi|rho|psi>), the other convention in use.
double root_fidelity(const ThreeQubitDensity& rho, const PureState3& target);

// Pair density built from estimated Pauli coefficients and projected to the
// nearest physical state.
TwoQubitDensity estimated_pair_density(const CorrelationData& data, Pair pair);

}  // namespace anisoq
