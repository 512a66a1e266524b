#pragma once

#include <array>
#include <cstdint>

#include <nlohmann/json.hpp>

#include "anisoq/experiment.hpp"
#include "anisoq/invariants.hpp"
#include "anisoq/nonlocality.hpp"

namespace anisoq {

struct PairAnalysis {
  CorrelationMatrix t;
  SpinSpectrum spectrum;
  double concurrence = 0.0;
  double horodecki = 0.0;
  OptimalSettings optimal;
};

// Pair-pairings reported by the ordering section: (AB,AC), (AB,BC), (AC,BC).
inline constexpr std::array<std::array<Pair, 2>, 3> kOrderings{
    {{Pair::AB, Pair::AC}, {Pair::AB, Pair::BC}, {Pair::AC, Pair::BC}}};

// Everything the analyze/estimate commands report for one three-qubit state.
struct Analysis {
  std::array<BlochVector, 3> bloch;
  std::array<PairAnalysis, 3> pairs;
  InvarianceReport invariance;
  double three_tangle = 0.0;
  MonogamyReport monogamy;
  std::array<OrderingQuadruple, 3> ordering;

  const PairAnalysis& of(Pair p) const { return pairs[static_cast<std::size_t>(p)]; }
};

// Exact analysis of a pure state.
Analysis analyze(const PureState3& state);

// Analysis of estimated (or exact) Pauli data; concurrences come from the
// nearest physical pair densities, and the tangle is the raw residual.
Analysis analyze(const CorrelationData& data);

nlohmann::json to_json(const Analysis& analysis);
nlohmann::json to_json(const MeasurementDirections& dirs);

}  // namespace anisoq
