#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "anisoq/errors.hpp"
#include "anisoq/experiment.hpp"
#include "anisoq/invariants.hpp"
#include "anisoq/nonlocality.hpp"
#include "anisoq_cli/cli.hpp"

namespace anisoq::cli {

namespace {

// One named quantity per check: its worst value is reported and the check
// fails when it exceeds `limit`.
struct Check {
  std::string name;
  double limit;
};

using TrialFn = std::function<std::vector<double>(const PureState3&, std::mt19937_64&)>;

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return normalized(Vec3{g(rng), g(rng), g(rng)});
}

MeasurementDirections random_dirs(std::mt19937_64& rng) {
  return {random_unit(rng), random_unit(rng), random_unit(rng), random_unit(rng)};
}

double max_diff(const CorrelationData& a, const CorrelationData& b) {
  double worst = 0.0;
  for (std::size_t p = 0; p < 3; ++p)
    for (int j = 0; j < 3; ++j) {
      worst = std::max(worst, std::abs(a.bloch[p].components[j] - b.bloch[p].components[j]));
      for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(a.t[p](j, k) - b.t[p](j, k)));
    }
  return worst;
}

std::vector<double> invariance_trial(const PureState3& s, std::mt19937_64&) {
  const InvarianceReport r = invariance_report(s);
  return {std::abs(r.iso_sum - 1.0), r.max_aniso_deviation};
}

std::vector<double> monogamy_trial(const PureState3& s, std::mt19937_64& rng) {
  const MonogamyReport r = monogamy_report(s, random_dirs(rng), random_dirs(rng));
  return {std::abs(r.m_ab + r.m_ac - r.bound), r.m_ab + r.m_ac - 2.0,
          r.chsh_ab_sq + r.chsh_ac_sq - 8.0};
}

std::vector<double> ordering_trial(const PureState3& s, std::mt19937_64&) {
  const std::array<std::pair<Pair, Pair>, 3> pairings{
      {{Pair::AB, Pair::AC}, {Pair::AB, Pair::BC}, {Pair::AC, Pair::BC}}};
  double spread = 0.0;
  for (const auto& [first, second] : pairings)
    spread = std::max(spread, ordering_quadruple(s, first, second).spread());
  return {spread};
}

std::vector<double> chsh_trial(const PureState3& s, std::mt19937_64& rng) {
  double gap = 0.0, excess = -4.0;
  for (Pair p : kPairs) {
    const CorrelationMatrix t = correlation_matrix(s, p);
    const OptimalSettings opt = optimal_chsh_settings(t);
    gap = std::max(gap, std::abs(chsh_expectation(s, p, opt.dirs) -
                                 2.0 * std::sqrt(horodecki_parameter(t))));
    for (int i = 0; i < 16; ++i)
      excess = std::max(excess, std::abs(chsh_value(t, random_dirs(rng))) - opt.value);
  }
  return {gap, excess};
}

std::vector<double> estimator_trial(const PureState3& s, std::mt19937_64&) {
  const auto records = exact_records(s, 1'000'000'000'000ULL);
  const CorrelationData exact = exact_correlations(s);
  double single = 0.0;
  for (int slice = 1; slice <= 3; ++slice)
    single = std::max(single, max_diff(estimate_correlations(
                                           records, {EstimationOptions::Pooling::SingleSlice, slice}),
                                       exact));
  return {max_diff(estimate_correlations(records), exact), single};
}

struct SuiteSpec {
  std::vector<Check> checks;
  TrialFn trial;
};

const std::map<std::string_view, SuiteSpec>& suites() {
  static const std::map<std::string_view, SuiteSpec> table = {
      {"invariance",
       {{{"iso_sum_error", 1e-10}, {"max_aniso_deviation", 1e-10}}, invariance_trial}},
      {"monogamy",
       {{{"pair_sum_vs_bound", 1e-10}, {"pair_sum_minus_2", 1e-12}, {"chsh_sq_sum_minus_8", 1e-9}},
        monogamy_trial}},
      {"ordering", {{{"quadruple_spread", 1e-9}}, ordering_trial}},
      {"chsh-optimality",
       {{{"optimal_gap", 1e-8}, {"random_minus_optimal", 1e-9}}, chsh_trial}},
      {"estimator-consistency",
       {{{"pooled_error", 1e-9}, {"single_slice_error", 1e-9}}, estimator_trial}},
  };
  return table;
}

}  // namespace

VerifyResult run_verify_suite(std::string_view suite, std::size_t trials, std::uint64_t seed) {
  const auto it = suites().find(suite);
  if (it == suites().end()) {
    std::string names;
    for (auto s : kSuites) names += (names.empty() ? "" : ", ") + std::string(s);
    throw UsageError("unknown suite '" + std::string(suite) + "' (expected one of " + names + ")");
  }
  if (trials == 0) throw UsageError("--trials must be >= 1");
  const SuiteSpec& spec = it->second;

  VerifyResult result;
  result.suite = std::string(suite);
  result.trials = trials;
  std::vector<double> worst(spec.checks.size(), -std::numeric_limits<double>::infinity());
  std::mt19937_64 rng(derive_seed(seed, ~0ULL));
  for (std::size_t i = 0; i < trials; ++i) {
    const PureState3 state = haar_random_state(derive_seed(seed, i));
    const std::vector<double> values = spec.trial(state, rng);
    for (std::size_t c = 0; c < values.size(); ++c) {
      worst[c] = std::max(worst[c], values[c]);
      if (result.passed && !(values[c] <= spec.checks[c].limit)) {
        std::ostringstream os;
        os << "trial " << i << ": " << spec.checks[c].name << " = " << values[c]
           << " exceeds " << spec.checks[c].limit;
        result.passed = false;
        result.failure = os.str();
        result.counterexample = state;
      }
    }
  }
  for (std::size_t c = 0; c < spec.checks.size(); ++c)
    result.metrics.emplace_back(spec.checks[c].name, worst[c]);
  return result;
}

}  // namespace anisoq::cli
