#pragma once

#include "anisoq/invariants.hpp"
#include "anisoq/states.hpp"

namespace anisoq {

// CHSH settings: a1, a2 for the pair's first party, b1, b2 for the second.
// Every vector must be a unit vector (within 1e-10).
struct MeasurementDirections {
  Vec3 a1{}, a2{}, b1{}, b2{};

  void validate() const;
};

// M = s1 + s2. The pair can violate CHSH iff M > 1; the maximal value is 2 sqrt(M).
double horodecki_parameter(const CorrelationMatrix& t);

// <B> = a1.T b1 + a1.T b2 + a2.T b1 - a2.T b2 for a given correlation matrix.
double chsh_value(const CorrelationMatrix& t, const MeasurementDirections& dirs);
double chsh_expectation(const PureState3& state, Pair pair, const MeasurementDirections& dirs);

struct OptimalSettings {
  MeasurementDirections dirs;
  double value = 0.0;       // 2 sqrt(s1 + s2)
  bool degenerate = false;  // T is (numerically) zero; canonical axes returned
};

OptimalSettings optimal_chsh_settings(const CorrelationMatrix& t);

struct MonogamyReport {
  double m_ab = 0.0;
  double m_ac = 0.0;
  double bound = 0.0;  // 2 (1 - s3^BC)
  double chsh_ab_sq = 0.0;
  double chsh_ac_sq = 0.0;
};

MonogamyReport monogamy_report(const PureState3& state, const MeasurementDirections& dirs_ab,
                               const MeasurementDirections& dirs_ac);
MonogamyReport monogamy_report(const CorrelationMatrix& t_ab, const CorrelationMatrix& t_ac,
                               const CorrelationMatrix& t_bc,
                               const MeasurementDirections& dirs_ab,
                               const MeasurementDirections& dirs_ac);

}  // namespace anisoq
