#include "anisoq/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "anisoq/errors.hpp"

namespace anisoq {

namespace {

constexpr double kClamp = 1e-9;
// Eigenvalues of a density matrix below this are rounding noise.
constexpr double kRankFloor = 1e-13;

std::size_t pair_slot(Pair p) { return static_cast<std::size_t>(p); }

bool contains(Pair pair, Party party) {
  return first_party(pair) == party || second_party(pair) == party;
}

}  // namespace

SpinSpectrum spin_spectrum(const CorrelationMatrix& t) {
  const Mat3 gram = t.entries * transpose(t.entries);
  const Vec3 eig = real_symmetric3_eigenvalues(gram);
  SpinSpectrum out;
  for (int j = 0; j < 3; ++j) {
    if (eig[j] < -kClamp) {
      std::ostringstream os;
      os << "spin_spectrum: T T^T has negative eigenvalue " << eig[j];
      throw ConsistencyError(os.str());
    }
    out.s[j] = std::max(eig[j], 0.0);
  }
  out.s_iso = (out.s[0] + out.s[1] + out.s[2]) / 3.0;
  for (int j = 0; j < 3; ++j) out.delta[j] = out.s[j] - out.s_iso;
  return out;
}

InvarianceReport invariance_report(const std::array<SpinSpectrum, 3>& spectra) {
  InvarianceReport r;
  for (std::size_t p = 0; p < 3; ++p) {
    r.iso_terms[p] = spectra[p].s_iso;
    r.aniso_by_pair[p] = spectra[p].delta;
    r.iso_sum += spectra[p].s_iso;
  }
  for (std::size_t p = 0; p < 3; ++p)
    for (std::size_t q = p + 1; q < 3; ++q)
      for (int j = 0; j < 3; ++j)
        r.max_aniso_deviation = std::max(
            r.max_aniso_deviation, std::abs(r.aniso_by_pair[p][j] - r.aniso_by_pair[q][j]));
  return r;
}

InvarianceReport invariance_report(const PureState3& state) {
  std::array<SpinSpectrum, 3> spectra;
  for (Pair p : kPairs) spectra[pair_slot(p)] = spin_spectrum(correlation_matrix(state, p));
  return invariance_report(spectra);
}

double concurrence(const TwoQubitDensity& rho) {
  // With rho = W W^dag, the square roots of the eigenvalues of rho rho~ are
  // the singular values of the symmetric tau = W^T (Y (x) Y) W.
  const EigenSystem es = hermitian_eigensystem(rho.matrix);
  std::vector<std::array<Complex, 4>> w;
  for (std::size_t i = 0; i < 4; ++i) {
    const double p = es.values[i];
    if (p < -kClamp) throw ConsistencyError("concurrence: density matrix is not positive");
    if (p < kRankFloor) continue;
    std::array<Complex, 4> col{};
    for (std::size_t k = 0; k < 4; ++k) col[k] = std::sqrt(p) * es.vectors(k, i);
    w.push_back(col);
  }

  const std::size_t r = w.size();
  ComplexMatrix tau(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      // Y (x) Y is real and anti-diagonal with signs (-1, 1, 1, -1).
      tau(i, j) = -w[i][0] * w[j][3] + w[i][1] * w[j][2] + w[i][2] * w[j][1] - w[i][3] * w[j][0];

  if (r <= 2) {
    // C^2 = (sigma1 - sigma2)^2 = |tau|_F^2 - 2 |det tau|, free of square-root noise.
    double frob = 0.0;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) frob += std::norm(tau(i, j));
    const double det = r == 2 ? std::abs(tau(0, 0) * tau(1, 1) - tau(0, 1) * tau(1, 0)) : 0.0;
    return std::clamp(std::sqrt(std::max(frob - 2.0 * det, 0.0)), 0.0, 1.0);
  }

  const auto sq = hermitian_eigensystem(tau.adjoint() * tau).values;
  double c = std::sqrt(std::max(sq[0], 0.0));
  for (std::size_t i = 1; i < sq.size(); ++i) c -= std::sqrt(std::max(sq[i], 0.0));
  return std::clamp(c, 0.0, 1.0);
}

double three_tangle(double one_party_tangle, double conc_ab, double conc_ac) {
  const double tau = one_party_tangle - conc_ab * conc_ab - conc_ac * conc_ac;
  if (tau < -1e-6) {
    std::ostringstream os;
    os << "three_tangle: residual tangle " << tau << " violates the CKW inequality";
    throw ConsistencyError(os.str());
  }
  return std::clamp(tau, 0.0, 1.0);
}

double three_tangle(const PureState3& state) {
  const ComplexMatrix rho_a = reduce_party(state, Party::A);
  const double det = (rho_a(0, 0) * rho_a(1, 1) - rho_a(0, 1) * rho_a(1, 0)).real();
  const double tau = three_tangle(4.0 * det, concurrence(reduce_pair(state, Pair::AB)),
                                  concurrence(reduce_pair(state, Pair::AC)));
  return tau < kClamp ? 0.0 : tau;
}

double OrderingQuadruple::spread() const {
  const auto [lo, hi] = std::minmax({conc_diff, horodecki_half_diff, iso_diff, bloch_diff});
  return hi - lo;
}

Party shared_party(Pair first, Pair second) {
  if (first == second) throw UsageError("ordering: the two pairs must differ");
  for (Party p : kParties)
    if (contains(first, p) && contains(second, p)) return p;
  throw UsageError("ordering: pairs share no party");
}

Party other_party(Pair pair, Party member) {
  if (first_party(pair) == member) return second_party(pair);
  if (second_party(pair) == member) return first_party(pair);
  throw UsageError("other_party: party is not a member of the pair");
}

OrderingQuadruple ordering_quadruple(const PureState3& state, Pair first, Pair second) {
  const Party x = shared_party(first, second);
  const Party y = other_party(first, x);
  const Party z = other_party(second, x);

  const double c1 = concurrence(reduce_pair(state, first));
  const double c2 = concurrence(reduce_pair(state, second));
  const SpinSpectrum s1 = spin_spectrum(correlation_matrix(state, first));
  const SpinSpectrum s2 = spin_spectrum(correlation_matrix(state, second));

  OrderingQuadruple q;
  q.conc_diff = c1 * c1 - c2 * c2;
  q.horodecki_half_diff = ((s1.s[0] + s1.s[1]) - (s2.s[0] + s2.s[1])) / 2.0;
  q.iso_diff = s1.s_iso - s2.s_iso;
  q.bloch_diff = bloch_vector(state, z).norm_squared() - bloch_vector(state, y).norm_squared();
  return q;
}

}  // namespace anisoq
