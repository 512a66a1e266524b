#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "anisoq/linalg.hpp"

namespace anisoq {

using Amplitudes = std::array<Complex, 8>;

// Pure state of qubits A, B, C. Amplitude of |abc> lives at index 4a + 2b + c,
// and |0> is the +1 eigenstate of sigma_3.
class PureState3 {
 public:
  // Requires unit norm within 1e-12.
  explicit PureState3(const Amplitudes& amplitudes);

  // Renormalizes input whose norm is within `tolerance` of 1; rejects the rest.
  static PureState3 from_amplitudes(const Amplitudes& amplitudes, double tolerance = 1e-6);
  static PureState3 basis(unsigned index);

  const Amplitudes& amplitudes() const { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }
  ComplexMatrix projector() const;

 private:
  Amplitudes amplitudes_;
};

enum class Party { A, B, C };
enum class Pair { AB, AC, BC };

inline constexpr std::array<Party, 3> kParties{Party::A, Party::B, Party::C};
inline constexpr std::array<Pair, 3> kPairs{Pair::AB, Pair::AC, Pair::BC};

std::string_view to_string(Party party);
std::string_view to_string(Pair pair);
Party parse_party(std::string_view text);
Pair parse_pair(std::string_view text);

Party first_party(Pair pair);
Party second_party(Pair pair);
Party complement(Pair pair);
int qubit_index(Party party);

enum class Family { W_CLASS, GHZ_CLASS, CUSTOM };

// State-preparation recipe. The GHZ family is keyed by phi' directly; the
// experimental half-wave-plate angle phi relates to it by phi' = 90 deg - phi.
struct FamilyParams {
  Family family = Family::W_CLASS;
  double phi_deg = 0.0;
  double theta_deg = 0.0;
  double phi_prime_deg = 0.0;
  std::optional<Amplitudes> amplitudes;

  static FamilyParams w(double phi_deg, double theta_deg);
  static FamilyParams ghz(double phi_prime_deg);
  static FamilyParams custom(const Amplitudes& amplitudes);
};

// cos(phi)|110> + sin(phi)cos(theta)|011> + sin(phi)sin(theta)|101>
PureState3 w_class_state(double phi_deg, double theta_deg);
// cos(phi')|110> + sin(phi')/sqrt2 |011> + sin(phi')/sqrt2 |001>
PureState3 ghz_class_state(double phi_prime_deg);
PureState3 prepare(const FamilyParams& params);

// Experimental: perturbs every preparation angle by an independent uniform
// offset in [-amplitude_deg, +amplitude_deg], modelling wave-plate alignment
// uncertainty. CUSTOM recipes are returned unchanged.
FamilyParams jitter_angles(const FamilyParams& params, std::uint64_t seed,
                           double amplitude_deg = 0.5);

// Independent standard complex Gaussians, normalized. Deterministic per seed.
PureState3 haar_random_state(std::uint64_t seed);

// QR of a complex Gaussian 2x2 matrix; each column is rephased so that its
// first nonzero entry is real and non-negative.
ComplexMatrix random_local_unitary(std::uint64_t seed);

PureState3 apply_local_unitaries(const PureState3& state, const ComplexMatrix& ua,
                                 const ComplexMatrix& ub, const ComplexMatrix& uc);

struct TwoQubitDensity {
  ComplexMatrix matrix;  // 4x4, first party is the high bit
};

struct BlochVector {
  Vec3 components{};
  double norm_squared() const { return dot(components, components); }
};

// T[j][k] = <sigma_{j+1} (x) sigma_{k+1}>, first index on the pair's first party.
struct CorrelationMatrix {
  Mat3 entries{};
  double operator()(int j, int k) const { return entries[j][k]; }
};

TwoQubitDensity reduce_pair(const PureState3& state, Pair pair);
ComplexMatrix reduce_party(const PureState3& state, Party party);
BlochVector bloch_vector(const PureState3& state, Party party);
CorrelationMatrix correlation_matrix(const PureState3& state, Pair pair);

// Two-qubit density built from Pauli coefficients:
// (1/4) sum_{u,v} c_uv sigma_u (x) sigma_v with c_00 = 1.
TwoQubitDensity density_from_pauli(const BlochVector& first, const BlochVector& second,
                                   const CorrelationMatrix& t);

}  // namespace anisoq
