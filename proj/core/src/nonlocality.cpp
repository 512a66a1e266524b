#include "anisoq/nonlocality.hpp"

#include <cmath>
#include <sstream>

#include "anisoq/errors.hpp"

namespace anisoq {

namespace {

void require_unit(const Vec3& v, const char* name) {
  const double n = norm(v);
  if (std::abs(n - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "measurement direction " << name << " has norm " << n << ", expected 1";
    throw ContractViolation(os.str());
  }
}

// Any unit vector orthogonal to v (v assumed unit).
Vec3 orthogonal_unit(const Vec3& v) {
  const Vec3 axis = std::abs(v[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  const double d = dot(axis, v);
  return normalized({axis[0] - d * v[0], axis[1] - d * v[1], axis[2] - d * v[2]});
}

}  // namespace

void MeasurementDirections::validate() const {
  require_unit(a1, "a1");
  require_unit(a2, "a2");
  require_unit(b1, "b1");
  require_unit(b2, "b2");
}

double horodecki_parameter(const CorrelationMatrix& t) {
  const SpinSpectrum s = spin_spectrum(t);
  return s.s[0] + s.s[1];
}

double chsh_value(const CorrelationMatrix& t, const MeasurementDirections& dirs) {
  dirs.validate();
  const Mat3& m = t.entries;
  return dot(dirs.a1, m * dirs.b1) + dot(dirs.a1, m * dirs.b2) + dot(dirs.a2, m * dirs.b1) -
         dot(dirs.a2, m * dirs.b2);
}

double chsh_expectation(const PureState3& state, Pair pair, const MeasurementDirections& dirs) {
  return chsh_value(correlation_matrix(state, pair), dirs);
}

OptimalSettings optimal_chsh_settings(const CorrelationMatrix& t) {
  const Mat3& m = t.entries;
  const SymmetricEigenSystem3 es = symmetric3_eigensystem(transpose(m) * m);
  const double s1 = std::max(es.values[0], 0.0);
  const double s2 = std::max(es.values[1], 0.0);

  OptimalSettings out;
  if (s1 < 1e-12) {
    out.dirs = {{1, 0, 0}, {0, 1, 0}, {1, 0, 0}, {0, 1, 0}};
    out.value = 0.0;
    out.degenerate = true;
    return out;
  }

  const Vec3 v1{es.vectors[0][0], es.vectors[1][0], es.vectors[2][0]};
  const Vec3 v2{es.vectors[0][1], es.vectors[1][1], es.vectors[2][1]};
  const double chi = std::atan2(std::sqrt(s2), std::sqrt(s1));
  const double c = std::cos(chi), s = std::sin(chi);
  const Vec3 b1 = normalized({c * v1[0] + s * v2[0], c * v1[1] + s * v2[1], c * v1[2] + s * v2[2]});
  const Vec3 b2 = normalized({c * v1[0] - s * v2[0], c * v1[1] - s * v2[1], c * v1[2] - s * v2[2]});

  // a1 and a2 align with T(b1 + b2) = 2c T v1 and T(b1 - b2) = 2s T v2.
  const Vec3 a1 = normalized(m * v1);
  const Vec3 tv2 = m * v2;
  const Vec3 a2 = norm(tv2) > 1e-12 ? normalized(tv2) : orthogonal_unit(a1);

  out.dirs = {a1, a2, b1, b2};
  out.value = 2.0 * std::sqrt(s1 + s2);
  return out;
}

MonogamyReport monogamy_report(const CorrelationMatrix& t_ab, const CorrelationMatrix& t_ac,
                               const CorrelationMatrix& t_bc,
                               const MeasurementDirections& dirs_ab,
                               const MeasurementDirections& dirs_ac) {
  MonogamyReport r;
  r.m_ab = horodecki_parameter(t_ab);
  r.m_ac = horodecki_parameter(t_ac);
  r.bound = 2.0 * (1.0 - spin_spectrum(t_bc).s[2]);
  const double b_ab = chsh_value(t_ab, dirs_ab);
  const double b_ac = chsh_value(t_ac, dirs_ac);
  r.chsh_ab_sq = b_ab * b_ab;
  r.chsh_ac_sq = b_ac * b_ac;
  return r;
}

MonogamyReport monogamy_report(const PureState3& state, const MeasurementDirections& dirs_ab,
                               const MeasurementDirections& dirs_ac) {
  return monogamy_report(correlation_matrix(state, Pair::AB), correlation_matrix(state, Pair::AC),
                         correlation_matrix(state, Pair::BC), dirs_ab, dirs_ac);
}

}  // namespace anisoq
