#pragma once

#include <array>

#include "anisoq/states.hpp"

namespace anisoq {

// Eigenvalues s1 >= s2 >= s3 of S = T T^T, split into the isotropic strength
// (their mean) and the anisotropies s_j - s_iso.
struct SpinSpectrum {
  Vec3 s{};
  double s_iso = 0.0;
  Vec3 delta{};
};

SpinSpectrum spin_spectrum(const CorrelationMatrix& t);

// Pairwise isotropic strengths and anisotropies of a pure state. For every
// pure state the strengths sum to 1 and the anisotropies coincide.
struct InvarianceReport {
  double iso_sum = 0.0;
  std::array<double, 3> iso_terms{};     // indexed like kPairs
  std::array<Vec3, 3> aniso_by_pair{};   // indexed like kPairs
  double max_aniso_deviation = 0.0;
};

InvarianceReport invariance_report(const PureState3& state);
InvarianceReport invariance_report(const std::array<SpinSpectrum, 3>& spectra);

// Wootters concurrence.
double concurrence(const TwoQubitDensity& rho);

// Residual tangle C^2_{A(BC)} - C^2_{AB} - C^2_{AC}.
double three_tangle(const PureState3& state);
// `one_party_tangle` is C^2_{A(BC)} = 4 det(rho_A) = 1 - |a|^2.
double three_tangle(double one_party_tangle, double conc_ab, double conc_ac);

struct OrderingQuadruple {
  double conc_diff = 0.0;
  double horodecki_half_diff = 0.0;
  double iso_diff = 0.0;
  double bloch_diff = 0.0;

  double spread() const;
};

// The two pairs share one party X; with Y the other member of `first` and Z
// the other member of `second`, returns
//   (C_XY^2 - C_XZ^2, (M_XY - M_XZ)/2, s_iso^XY - s_iso^XZ, |z|^2 - |y|^2).
OrderingQuadruple ordering_quadruple(const PureState3& state, Pair first, Pair second);

Party shared_party(Pair first, Pair second);
Party other_party(Pair pair, Party member);

}  // namespace anisoq
