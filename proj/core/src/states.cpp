#include "anisoq/states.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "anisoq/errors.hpp"

namespace anisoq {

namespace {

double radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

double norm_squared(const Amplitudes& a) {
  double n = 0.0;
  for (const auto& z : a) n += std::norm(z);
  return n;
}

// Bit position of a party inside the 3-bit basis index 4a + 2b + c.
int shift(Party p) { return 2 - qubit_index(p); }

}  // namespace

PureState3::PureState3(const Amplitudes& amplitudes) : amplitudes_(amplitudes) {
  const double n = norm_squared(amplitudes_);
  if (std::abs(n - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "PureState3: squared norm " << n << " is not 1 within 1e-12";
    throw ContractViolation(os.str());
  }
}

PureState3 PureState3::from_amplitudes(const Amplitudes& amplitudes, double tolerance) {
  const double n = std::sqrt(norm_squared(amplitudes));
  if (!(std::abs(n - 1.0) <= tolerance)) {
    std::ostringstream os;
    os << "amplitudes have norm " << n << ", more than " << tolerance << " away from 1";
    throw ContractViolation(os.str());
  }
  Amplitudes scaled = amplitudes;
  for (auto& z : scaled) z /= n;
  return PureState3(scaled);
}

PureState3 PureState3::basis(unsigned index) {
  if (index > 7) throw ContractViolation("PureState3::basis: index must be in 0..7");
  Amplitudes a{};
  a[index] = 1.0;
  return PureState3(a);
}

ComplexMatrix PureState3::projector() const { return ComplexMatrix::outer(amplitudes_); }

std::string_view to_string(Party party) {
  switch (party) {
    case Party::A: return "A";
    case Party::B: return "B";
    case Party::C: return "C";
  }
  return "?";
}

std::string_view to_string(Pair pair) {
  switch (pair) {
    case Pair::AB: return "AB";
    case Pair::AC: return "AC";
    case Pair::BC: return "BC";
  }
  return "?";
}

Party parse_party(std::string_view text) {
  for (Party p : kParties)
    if (to_string(p) == text) return p;
  throw UsageError("unknown party '" + std::string(text) + "'");
}

Pair parse_pair(std::string_view text) {
  for (Pair p : kPairs)
    if (to_string(p) == text) return p;
  throw UsageError("unknown pair '" + std::string(text) + "'");
}

Party first_party(Pair pair) { return pair == Pair::BC ? Party::B : Party::A; }
Party second_party(Pair pair) { return pair == Pair::AB ? Party::B : Party::C; }

Party complement(Pair pair) {
  switch (pair) {
    case Pair::AB: return Party::C;
    case Pair::AC: return Party::B;
    case Pair::BC: return Party::A;
  }
  return Party::A;
}

int qubit_index(Party party) { return static_cast<int>(party); }

FamilyParams FamilyParams::w(double phi_deg, double theta_deg) {
  FamilyParams p;
  p.family = Family::W_CLASS;
  p.phi_deg = phi_deg;
  p.theta_deg = theta_deg;
  return p;
}

FamilyParams FamilyParams::ghz(double phi_prime_deg) {
  FamilyParams p;
  p.family = Family::GHZ_CLASS;
  p.phi_prime_deg = phi_prime_deg;
  return p;
}

FamilyParams FamilyParams::custom(const Amplitudes& amplitudes) {
  FamilyParams p;
  p.family = Family::CUSTOM;
  p.amplitudes = amplitudes;
  return p;
}

PureState3 w_class_state(double phi_deg, double theta_deg) {
  const double phi = radians(std::fmod(phi_deg, 360.0));
  const double theta = radians(std::fmod(theta_deg, 360.0));
  Amplitudes a{};
  a[0b110] = std::cos(phi);
  a[0b011] = std::sin(phi) * std::cos(theta);
  a[0b101] = std::sin(phi) * std::sin(theta);
  return PureState3::from_amplitudes(a, 1e-12);
}

PureState3 ghz_class_state(double phi_prime_deg) {
  const double phi = radians(std::fmod(phi_prime_deg, 360.0));
  Amplitudes a{};
  a[0b110] = std::cos(phi);
  a[0b011] = std::sin(phi) / std::numbers::sqrt2;
  a[0b001] = std::sin(phi) / std::numbers::sqrt2;
  return PureState3::from_amplitudes(a, 1e-12);
}

PureState3 prepare(const FamilyParams& params) {
  switch (params.family) {
    case Family::W_CLASS: return w_class_state(params.phi_deg, params.theta_deg);
    case Family::GHZ_CLASS: return ghz_class_state(params.phi_prime_deg);
    case Family::CUSTOM:
      if (!params.amplitudes) throw UsageError("custom family requires amplitudes");
      return PureState3::from_amplitudes(*params.amplitudes);
  }
  throw UsageError("unknown state family");
}

FamilyParams jitter_angles(const FamilyParams& params, std::uint64_t seed, double amplitude_deg) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> offset(-amplitude_deg, amplitude_deg);
  FamilyParams out = params;
  switch (params.family) {
    case Family::W_CLASS:
      out.phi_deg += offset(rng);
      out.theta_deg += offset(rng);
      break;
    case Family::GHZ_CLASS:
      out.phi_prime_deg += offset(rng);
      break;
    case Family::CUSTOM:
      break;
  }
  return out;
}

PureState3 haar_random_state(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Amplitudes a{};
  for (auto& z : a) {
    const double re = gauss(rng);
    z = Complex(re, gauss(rng));
  }
  const double n = std::sqrt(norm_squared(a));
  for (auto& z : a) z /= n;
  return PureState3(a);
}

ComplexMatrix random_local_unitary(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::array<std::array<Complex, 2>, 2> cols{};
  for (auto& col : cols)
    for (auto& z : col) {
      const double re = gauss(rng);
      z = Complex(re, gauss(rng));
    }

  // Gram-Schmidt is the Q of QR for a 2x2 full-rank matrix.
  auto normalize = [](std::array<Complex, 2>& v) {
    const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
    v[0] /= n;
    v[1] /= n;
  };
  normalize(cols[0]);
  const Complex proj = std::conj(cols[0][0]) * cols[1][0] + std::conj(cols[0][1]) * cols[1][1];
  cols[1][0] -= proj * cols[0][0];
  cols[1][1] -= proj * cols[0][1];
  normalize(cols[1]);

  for (auto& col : cols) {
    const Complex lead = std::abs(col[0]) > 1e-300 ? col[0] : col[1];
    const Complex phase = std::conj(lead) / std::abs(lead);
    col[0] *= phase;
    col[1] *= phase;
  }
  return ComplexMatrix(2, 2, {cols[0][0], cols[1][0], cols[0][1], cols[1][1]});
}

PureState3 apply_local_unitaries(const PureState3& state, const ComplexMatrix& ua,
                                 const ComplexMatrix& ub, const ComplexMatrix& uc) {
  require_unitary(ua);
  require_unitary(ub);
  require_unitary(uc);
  const ComplexMatrix u = tensor_product(tensor_product(ua, ub), uc);
  const auto out = u * std::span<const Complex>(state.amplitudes());
  Amplitudes a{};
  std::copy(out.begin(), out.end(), a.begin());
  return PureState3::from_amplitudes(a, 1e-10);
}

TwoQubitDensity reduce_pair(const PureState3& state, Pair pair) {
  const int s1 = shift(first_party(pair));
  const int s2 = shift(second_party(pair));
  const int sc = shift(complement(pair));
  ComplexMatrix rho(4, 4);
  for (unsigned i = 0; i < 8; ++i)
    for (unsigned j = 0; j < 8; ++j) {
      if (((i >> sc) & 1U) != ((j >> sc) & 1U)) continue;
      const unsigned r = (((i >> s1) & 1U) << 1) | ((i >> s2) & 1U);
      const unsigned c = (((j >> s1) & 1U) << 1) | ((j >> s2) & 1U);
      rho(r, c) += state[i] * std::conj(state[j]);
    }
  return {rho};
}

ComplexMatrix reduce_party(const PureState3& state, Party party) {
  const int s = shift(party);
  const unsigned mask = 7U & ~(1U << s);
  ComplexMatrix rho(2, 2);
  for (unsigned i = 0; i < 8; ++i)
    for (unsigned j = 0; j < 8; ++j) {
      if ((i & mask) != (j & mask)) continue;
      rho((i >> s) & 1U, (j >> s) & 1U) += state[i] * std::conj(state[j]);
    }
  return rho;
}

BlochVector bloch_vector(const PureState3& state, Party party) {
  const ComplexMatrix rho = reduce_party(state, party);
  BlochVector b;
  for (int j = 0; j < 3; ++j) b.components[j] = (rho * pauli(j + 1)).trace().real();
  return b;
}

CorrelationMatrix correlation_matrix(const PureState3& state, Pair pair) {
  const ComplexMatrix rho = reduce_pair(state, pair).matrix;
  CorrelationMatrix t;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      const Complex value = (rho * tensor_product(pauli(j + 1), pauli(k + 1))).trace();
      if (std::abs(value.imag()) > 1e-9) {
        std::ostringstream os;
        os << "correlation_matrix: entry (" << j + 1 << "," << k + 1
           << ") has imaginary part " << value.imag();
        throw ConsistencyError(os.str());
      }
      t.entries[j][k] = value.real();
    }
  return t;
}

TwoQubitDensity density_from_pauli(const BlochVector& first, const BlochVector& second,
                                   const CorrelationMatrix& t) {
  ComplexMatrix rho = ComplexMatrix::identity(4);
  for (int j = 0; j < 3; ++j) {
    rho += first.components[j] * tensor_product(pauli(j + 1), pauli(0));
    rho += second.components[j] * tensor_product(pauli(0), pauli(j + 1));
    for (int k = 0; k < 3; ++k)
      rho += t.entries[j][k] * tensor_product(pauli(j + 1), pauli(k + 1));
  }
  rho *= 0.25;
  return {rho};
}

}  // namespace anisoq
