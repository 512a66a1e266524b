#include "anisoq/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "anisoq/errors.hpp"
#include "anisoq/parallel.hpp"

namespace anisoq {

namespace {

using FrequencyTable = std::array<std::array<double, 8>, 27>;

// Rows are <e_+| and <e_-| for sigma_axis.
const ComplexMatrix& eigen_bra_rows(int axis) {
  using namespace std::complex_literals;
  const double r = 1.0 / std::numbers::sqrt2;
  static const std::array<ComplexMatrix, 3> rows = {
      ComplexMatrix(2, 2, {r, r, r, -r}),
      ComplexMatrix(2, 2, {r, -1i * r, r, 1i * r}),
      ComplexMatrix(2, 2, {1.0, 0.0, 0.0, 1.0}),
  };
  return rows[static_cast<std::size_t>(axis - 1)];
}

std::mt19937_64 seeded_engine(std::uint64_t master, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

std::uint64_t poisson(std::mt19937_64& rng, double mean) {
  if (mean <= 0.0) return 0;
  std::poisson_distribution<std::uint64_t> dist(mean);
  return dist(rng);
}

std::string describe(const Setting& s) {
  std::ostringstream os;
  os << "(" << s.j << "," << s.k << "," << s.l << ")";
  return os.str();
}

FrequencyTable frequency_table(std::span<const CountRecord> records) {
  std::array<bool, 27> seen{};
  std::array<bool, 27> empty{};
  FrequencyTable table{};
  for (const auto& rec : records) {
    const Setting& s = rec.setting;
    if (s.j < 1 || s.j > 3 || s.k < 1 || s.k > 3 || s.l < 1 || s.l > 3)
      throw ContractViolation("count record has invalid setting " + describe(s));
    const int idx = s.index();
    if (seen[idx]) throw ContractViolation("duplicate count record for setting " + describe(s));
    seen[idx] = true;
    const std::uint64_t total = rec.total();
    if (total == 0) {
      empty[idx] = true;
      continue;
    }
    for (int o = 0; o < 8; ++o)
      table[idx][o] = static_cast<double>(rec.counts[o]) / static_cast<double>(total);
  }
  std::string missing;
  for (int idx = 0; idx < 27; ++idx)
    if (!seen[idx] || empty[idx]) {
      if (!missing.empty()) missing += ", ";
      missing += describe(Setting::from_index(idx));
      if (empty[idx]) missing += " [zero total]";
    }
  if (!missing.empty()) throw IncompleteDataError("incomplete count data; missing settings: " + missing);
  return table;
}

// Expectation of the product of the Pauli observables named by `slots`
// (0 = identity on that party), averaging over the idle parties' axes.
double expectation(const FrequencyTable& f, const std::array<int, 3>& slots,
                   const EstimationOptions& opt) {
  std::array<std::vector<int>, 3> axes;
  for (int p = 0; p < 3; ++p) {
    if (slots[p] != 0)
      axes[p] = {slots[p]};
    else if (opt.pooling == EstimationOptions::Pooling::Pooled)
      axes[p] = {1, 2, 3};
    else
      axes[p] = {opt.slice};
  }
  double sum = 0.0;
  int n = 0;
  for (int j : axes[0])
    for (int k : axes[1])
      for (int l : axes[2]) {
        const auto& probs = f[Setting{j, k, l}.index()];
        double e = 0.0;
        for (int o = 0; o < 8; ++o) {
          int sign = 1;
          for (Party p : kParties)
            if (slots[static_cast<std::size_t>(p)] != 0) sign *= outcome_sign(o, p);
          e += sign * probs[o];
        }
        sum += e;
        ++n;
      }
  return std::clamp(sum / n, -1.0, 1.0);
}

CorrelationData correlations_from_table(const FrequencyTable& f, const EstimationOptions& opt) {
  CorrelationData d;
  for (Party p : kParties)
    for (int j = 1; j <= 3; ++j) {
      std::array<int, 3> slots{};
      slots[static_cast<std::size_t>(p)] = j;
      d.bloch[static_cast<std::size_t>(p)].components[j - 1] = expectation(f, slots, opt);
    }
  for (Pair pair : kPairs)
    for (int j = 1; j <= 3; ++j)
      for (int k = 1; k <= 3; ++k) {
        std::array<int, 3> slots{};
        slots[static_cast<std::size_t>(first_party(pair))] = j;
        slots[static_cast<std::size_t>(second_party(pair))] = k;
        d.t[static_cast<std::size_t>(pair)].entries[j - 1][k - 1] = expectation(f, slots, opt);
      }
  return d;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

Setting Setting::from_index(int index) {
  if (index < 0 || index >= 27) throw ContractViolation("setting index out of range");
  return {index / 9 + 1, (index / 3) % 3 + 1, index % 3 + 1};
}

std::vector<Setting> all_settings() {
  std::vector<Setting> out;
  out.reserve(27);
  for (int i = 0; i < 27; ++i) out.push_back(Setting::from_index(i));
  return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  // splitmix64 finalizer over the combined input
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t CountRecord::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

OutcomeDistribution outcome_distribution(const PureState3& state, const Setting& setting) {
  const ComplexMatrix rotation = tensor_product(
      tensor_product(eigen_bra_rows(setting.j), eigen_bra_rows(setting.k)),
      eigen_bra_rows(setting.l));
  const auto amps = rotation * std::span<const Complex>(state.amplitudes());
  OutcomeDistribution d{setting, {}};
  double total = 0.0;
  for (int o = 0; o < 8; ++o) total += d.probs[o] = std::norm(amps[o]);
  for (double& p : d.probs) p /= total;
  return d;
}

std::vector<CountRecord> simulate_counts(const PureState3& state, std::uint64_t shots_per_setting,
                                         std::uint64_t seed) {
  if (shots_per_setting < 1) throw ContractViolation("simulate_counts: shots must be >= 1");
  std::vector<CountRecord> records;
  records.reserve(27);
  for (const Setting& s : all_settings()) {
    const OutcomeDistribution d = outcome_distribution(state, s);
    auto rng = seeded_engine(seed, static_cast<std::uint64_t>(s.index()));
    CountRecord rec{s, {}};
    for (int o = 0; o < 8; ++o)
      rec.counts[o] = poisson(rng, static_cast<double>(shots_per_setting) * d.probs[o]);
    records.push_back(rec);
  }
  return records;
}

std::vector<CountRecord> exact_records(const PureState3& state, std::uint64_t shots_per_setting) {
  std::vector<CountRecord> records;
  records.reserve(27);
  for (const Setting& s : all_settings()) {
    const OutcomeDistribution d = outcome_distribution(state, s);
    CountRecord rec{s, {}};
    for (int o = 0; o < 8; ++o)
      rec.counts[o] = static_cast<std::uint64_t>(
          std::llround(static_cast<double>(shots_per_setting) * d.probs[o]));
    records.push_back(rec);
  }
  return records;
}

CorrelationData exact_correlations(const PureState3& state) {
  CorrelationData d;
  for (Party p : kParties) d.bloch[static_cast<std::size_t>(p)] = bloch_vector(state, p);
  for (Pair p : kPairs) d.t[static_cast<std::size_t>(p)] = correlation_matrix(state, p);
  return d;
}

CorrelationData estimate_correlations(std::span<const CountRecord> records,
                                      const EstimationOptions& options) {
  if (options.slice < 1 || options.slice > 3)
    throw UsageError("estimate_correlations: slice must be 1, 2 or 3");
  return correlations_from_table(frequency_table(records), options);
}

Statistic Statistic::parse(const std::string& name) {
  const auto parts = split(name, '_');
  auto fail = [&]() -> Statistic { throw UsageError("unknown statistic '" + name + "'"); };
  Statistic s;
  try {
    if (name == "iso_sum") {
      s.kind = Kind::IsoSum;
    } else if (name == "tangle") {
      s.kind = Kind::Tangle;
    } else if (parts.size() == 2 && parts[0] == "iso") {
      s.kind = Kind::Iso;
      s.pair = parse_pair(parts[1]);
    } else if (parts.size() == 2 && parts[0].size() == 3 && parts[0].starts_with("ds") &&
               parts[0][2] >= '1' && parts[0][2] <= '3') {
      s.kind = Kind::Delta;
      s.j = parts[0][2] - '0';
      s.pair = parse_pair(parts[1]);
    } else if (parts.size() == 2 && parts[0] == "M") {
      s.kind = Kind::Horodecki;
      s.pair = parse_pair(parts[1]);
    } else if (parts.size() == 2 && parts[0] == "chsh2") {
      s.kind = Kind::Chsh2;
      s.pair = parse_pair(parts[1]);
    } else if (parts.size() == 2 && parts[0] == "conc") {
      s.kind = Kind::Concurrence;
      s.pair = parse_pair(parts[1]);
    } else if (parts.size() == 5 && parts[0] == "M" && parts[1] == "half" && parts[2] == "diff") {
      s.kind = Kind::HorodeckiHalfDiff;
      s.pair = parse_pair(parts[3]);
      s.other = parse_pair(parts[4]);
    } else if (parts.size() == 4 && parts[1] == "diff" &&
               (parts[0] == "iso" || parts[0] == "conc2")) {
      s.kind = parts[0] == "iso" ? Kind::IsoDiff : Kind::ConcSqDiff;
      s.pair = parse_pair(parts[2]);
      s.other = parse_pair(parts[3]);
    } else if (parts.size() == 4 && parts[0] == "bloch2" && parts[1] == "diff") {
      s.kind = Kind::BlochSqDiff;
      s.party = parse_party(parts[2]);
      s.other_party = parse_party(parts[3]);
    } else {
      return fail();
    }
  } catch (const UsageError&) {
    return fail();
  }
  const bool pair_diff = s.kind == Kind::HorodeckiHalfDiff || s.kind == Kind::IsoDiff ||
                         s.kind == Kind::ConcSqDiff;
  if ((pair_diff && s.pair == s.other) ||
      (s.kind == Kind::BlochSqDiff && s.party == s.other_party))
    return fail();
  return s;
}

std::string Statistic::name() const {
  const std::string p(to_string(pair)), q(to_string(other));
  switch (kind) {
    case Kind::IsoSum: return "iso_sum";
    case Kind::Iso: return "iso_" + p;
    case Kind::Delta: return "ds" + std::to_string(j) + "_" + p;
    case Kind::Horodecki: return "M_" + p;
    case Kind::Chsh2: return "chsh2_" + p;
    case Kind::HorodeckiHalfDiff: return "M_half_diff_" + p + "_" + q;
    case Kind::IsoDiff: return "iso_diff_" + p + "_" + q;
    case Kind::ConcSqDiff: return "conc2_diff_" + p + "_" + q;
    case Kind::Concurrence: return "conc_" + p;
    case Kind::BlochSqDiff:
      return "bloch2_diff_" + std::string(to_string(party)) + "_" +
             std::string(to_string(other_party));
    case Kind::Tangle: return "tangle";
  }
  return "?";
}

double Statistic::evaluate(const CorrelationData& data) const {
  auto spectrum = [&](Pair p) { return spin_spectrum(data.of(p)); };
  auto conc = [&](Pair p) { return concurrence(estimated_pair_density(data, p)); };
  switch (kind) {
    case Kind::IsoSum: {
      double sum = 0.0;
      for (Pair p : kPairs) sum += spectrum(p).s_iso;
      return sum;
    }
    case Kind::Iso: return spectrum(pair).s_iso;
    case Kind::Delta: return spectrum(pair).delta[j - 1];
    case Kind::Horodecki: return horodecki_parameter(data.of(pair));
    case Kind::Chsh2: {
      const double b = dirs ? chsh_value(data.of(pair), *dirs)
                            : optimal_chsh_settings(data.of(pair)).value;
      return b * b / 4.0;
    }
    case Kind::HorodeckiHalfDiff:
      return (horodecki_parameter(data.of(pair)) - horodecki_parameter(data.of(other))) / 2.0;
    case Kind::IsoDiff: return spectrum(pair).s_iso - spectrum(other).s_iso;
    case Kind::ConcSqDiff: {
      const double c1 = conc(pair), c2 = conc(other);
      return c1 * c1 - c2 * c2;
    }
    case Kind::Concurrence: return conc(pair);
    case Kind::BlochSqDiff:
      return data.of(party).norm_squared() - data.of(other_party).norm_squared();
    case Kind::Tangle: {
      // Raw residual; sampling noise can push it slightly below zero.
      const double c_ab = conc(Pair::AB), c_ac = conc(Pair::AC);
      return 1.0 - data.of(Party::A).norm_squared() - c_ab * c_ab - c_ac * c_ac;
    }
  }
  throw UsageError("unhandled statistic");
}

std::vector<BootstrapResult> bootstrap_errors(std::span<const CountRecord> records,
                                              std::span<const Statistic> statistics,
                                              std::size_t resamples, std::uint64_t seed) {
  if (resamples < 100) throw UsageError("bootstrap_errors: resamples must be >= 100");
  const CorrelationData original = estimate_correlations(records);

  std::vector<Statistic> stats(statistics.begin(), statistics.end());
  for (auto& s : stats)
    if (s.kind == Statistic::Kind::Chsh2 && !s.dirs)
      s.dirs = optimal_chsh_settings(original.of(s.pair)).dirs;

  const std::size_t ns = stats.size();
  std::vector<double> values(resamples * ns);
  parallel_for(resamples, [&](std::size_t r) {
    auto rng = seeded_engine(seed, r);
    std::vector<CountRecord> drawn(records.begin(), records.end());
    for (std::size_t i = 0; i < drawn.size(); ++i) {
      CountRecord& rec = drawn[i];
      for (auto& c : rec.counts) c = poisson(rng, static_cast<double>(c));
      if (rec.total() == 0) rec = records[i];
    }
    const CorrelationData est = estimate_correlations(drawn);
    for (std::size_t s = 0; s < ns; ++s) values[r * ns + s] = stats[s].evaluate(est);
  });

  std::vector<BootstrapResult> out(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    double mean = 0.0;
    for (std::size_t r = 0; r < resamples; ++r) mean += values[r * ns + s];
    mean /= static_cast<double>(resamples);
    double var = 0.0;
    for (std::size_t r = 0; r < resamples; ++r) {
      const double d = values[r * ns + s] - mean;
      var += d * d;
    }
    var /= static_cast<double>(resamples - 1);
    out[s] = {stats[s].evaluate(original), std::sqrt(var), resamples};
  }
  return out;
}

BootstrapResult bootstrap_errors(std::span<const CountRecord> records, const Statistic& statistic,
                                 std::size_t resamples, std::uint64_t seed) {
  return bootstrap_errors(records, std::span<const Statistic>(&statistic, 1), resamples, seed)
      .front();
}

ComplexMatrix nearest_density_matrix(const ComplexMatrix& hermitian) {
  require_hermitian(hermitian, 1e-9);
  ComplexMatrix h = 0.5 * (hermitian + hermitian.adjoint());
  EigenSystem es = hermitian_eigensystem(h);

  // Euclidean projection of the (descending) spectrum onto the simplex.
  const std::vector<double>& u = es.values;
  double cumulative = 0.0, shift = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cumulative += u[i];
    const double candidate = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (u[i] - candidate > 0.0) shift = candidate;
  }
  for (double& v : es.values) v = std::max(v - shift, 0.0);
  return reconstruct(es);
}

ThreeQubitDensity tomography_reconstruct(std::span<const CountRecord> records) {
  const FrequencyTable f = frequency_table(records);
  const EstimationOptions pooled;
  ComplexMatrix rho(8, 8);
  for (int u = 0; u < 4; ++u)
    for (int v = 0; v < 4; ++v)
      for (int w = 0; w < 4; ++w) {
        const double e = (u == 0 && v == 0 && w == 0) ? 1.0 : expectation(f, {u, v, w}, pooled);
        if (e == 0.0) continue;
        rho += e * tensor_product(tensor_product(pauli(u), pauli(v)), pauli(w));
      }
  rho *= 1.0 / 8.0;
  return {nearest_density_matrix(rho)};
}

double fidelity(const ThreeQubitDensity& rho, const PureState3& target) {
  const auto& psi = target.amplitudes();
  const auto r_psi = rho.matrix * std::span<const Complex>(psi);
  Complex f = 0.0;
  for (std::size_t i = 0; i < 8; ++i) f += std::conj(psi[i]) * r_psi[i];
  return std::clamp(f.real(), 0.0, 1.0);
}

double root_fidelity(const ThreeQubitDensity& rho, const PureState3& target) {
  return std::sqrt(fidelity(rho, target));
}

TwoQubitDensity estimated_pair_density(const CorrelationData& data, Pair pair) {
  const TwoQubitDensity raw =
      density_from_pauli(data.of(first_party(pair)), data.of(second_party(pair)), data.of(pair));
  return {nearest_density_matrix(raw.matrix)};
}

}  // namespace anisoq
