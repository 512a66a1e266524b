#include "anisoq/analysis.hpp"

namespace anisoq {

using nlohmann::json;

namespace {

std::size_t slot(Pair p) { return static_cast<std::size_t>(p); }

PairAnalysis pair_analysis(const CorrelationMatrix& t, double conc) {
  PairAnalysis pa;
  pa.t = t;
  pa.spectrum = spin_spectrum(t);
  pa.concurrence = conc;
  pa.horodecki = pa.spectrum.s[0] + pa.spectrum.s[1];
  pa.optimal = optimal_chsh_settings(t);
  return pa;
}

OrderingQuadruple ordering_from(const Analysis& a, Pair first, Pair second) {
  const Party x = shared_party(first, second);
  const Party y = other_party(first, x);
  const Party z = other_party(second, x);
  const PairAnalysis& p1 = a.of(first);
  const PairAnalysis& p2 = a.of(second);
  OrderingQuadruple q;
  q.conc_diff = p1.concurrence * p1.concurrence - p2.concurrence * p2.concurrence;
  q.horodecki_half_diff = (p1.horodecki - p2.horodecki) / 2.0;
  q.iso_diff = p1.spectrum.s_iso - p2.spectrum.s_iso;
  q.bloch_diff = a.bloch[static_cast<std::size_t>(z)].norm_squared() -
                 a.bloch[static_cast<std::size_t>(y)].norm_squared();
  return q;
}

void finish(Analysis& a) {
  std::array<SpinSpectrum, 3> spectra;
  for (Pair p : kPairs) spectra[slot(p)] = a.of(p).spectrum;
  a.invariance = invariance_report(spectra);
  a.monogamy = monogamy_report(a.of(Pair::AB).t, a.of(Pair::AC).t, a.of(Pair::BC).t,
                               a.of(Pair::AB).optimal.dirs, a.of(Pair::AC).optimal.dirs);
  for (std::size_t i = 0; i < kOrderings.size(); ++i)
    a.ordering[i] = ordering_from(a, kOrderings[i][0], kOrderings[i][1]);
}

json vec_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

}  // namespace

Analysis analyze(const PureState3& state) {
  Analysis a;
  for (Party p : kParties) a.bloch[static_cast<std::size_t>(p)] = bloch_vector(state, p);
  for (Pair p : kPairs)
    a.pairs[slot(p)] =
        pair_analysis(correlation_matrix(state, p), concurrence(reduce_pair(state, p)));
  a.three_tangle = anisoq::three_tangle(state);
  finish(a);
  return a;
}

Analysis analyze(const CorrelationData& data) {
  Analysis a;
  a.bloch = data.bloch;
  for (Pair p : kPairs)
    a.pairs[slot(p)] = pair_analysis(data.of(p), concurrence(estimated_pair_density(data, p)));
  const double c_ab = a.of(Pair::AB).concurrence, c_ac = a.of(Pair::AC).concurrence;
  a.three_tangle = 1.0 - data.of(Party::A).norm_squared() - c_ab * c_ab - c_ac * c_ac;
  finish(a);
  return a;
}

json to_json(const MeasurementDirections& d) {
  return {{"a1", vec_json(d.a1)}, {"a2", vec_json(d.a2)}, {"b1", vec_json(d.b1)}, {"b2", vec_json(d.b2)}};
}

json to_json(const Analysis& a) {
  json out;
  json bloch = json::object();
  for (Party p : kParties) {
    const auto& b = a.bloch[static_cast<std::size_t>(p)];
    bloch[std::string(to_string(p))] = {{"vector", vec_json(b.components)},
                                        {"norm_squared", b.norm_squared()}};
  }
  out["bloch"] = bloch;

  json pairs = json::object();
  for (Pair p : kPairs) {
    const PairAnalysis& pa = a.of(p);
    json t = json::array();
    for (const auto& row : pa.t.entries) t.push_back(vec_json(row));
    pairs[std::string(to_string(p))] = {
        {"correlation_matrix", t},
        {"spectrum", vec_json(pa.spectrum.s)},
        {"s_iso", pa.spectrum.s_iso},
        {"anisotropies", vec_json(pa.spectrum.delta)},
        {"concurrence", pa.concurrence},
        {"horodecki", pa.horodecki},
        {"chsh_max", pa.optimal.value},
        {"optimal_settings", to_json(pa.optimal.dirs)},
        {"optimal_settings_degenerate", pa.optimal.degenerate},
    };
  }
  out["pairs"] = pairs;

  json iso_terms = json::object();
  for (Pair p : kPairs) iso_terms[std::string(to_string(p))] = a.invariance.iso_terms[slot(p)];
  out["invariance"] = {{"iso_sum", a.invariance.iso_sum},
                       {"iso_terms", iso_terms},
                       {"max_aniso_deviation", a.invariance.max_aniso_deviation}};
  out["three_tangle"] = a.three_tangle;
  out["monogamy"] = {{"m_ab", a.monogamy.m_ab},
                     {"m_ac", a.monogamy.m_ac},
                     {"bound", a.monogamy.bound},
                     {"chsh_ab_sq", a.monogamy.chsh_ab_sq},
                     {"chsh_ac_sq", a.monogamy.chsh_ac_sq}};

  json ordering = json::array();
  for (std::size_t i = 0; i < kOrderings.size(); ++i) {
    const auto& q = a.ordering[i];
    ordering.push_back({{"first", to_string(kOrderings[i][0])},
                        {"second", to_string(kOrderings[i][1])},
                        {"conc_diff", q.conc_diff},
                        {"horodecki_half_diff", q.horodecki_half_diff},
                        {"iso_diff", q.iso_diff},
                        {"bloch_diff", q.bloch_diff},
                        {"spread", q.spread()}});
  }
  out["ordering"] = ordering;
  return out;
}

}  // namespace anisoq
