#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "anisoq/errors.hpp"
#include "anisoq/experiment.hpp"
#include "test_util.hpp"

using namespace anisoq;

namespace {

double max_data_diff(const CorrelationData& a, const CorrelationData& b) {
  double worst = 0.0;
  for (int p = 0; p < 3; ++p)
    for (int j = 0; j < 3; ++j) {
      worst = std::max(worst, std::abs(a.bloch[p].components[j] - b.bloch[p].components[j]));
      for (int k = 0; k < 3; ++k)
        worst = std::max(worst, std::abs(a.t[p](j, k) - b.t[p](j, k)));
    }
  return worst;
}

double sample_sd(const std::vector<double>& v) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  return std::sqrt(var / (v.size() - 1));
}

}  // namespace

TEST_SUITE("experiment") {
  TEST_CASE("setting enumeration") {
    const auto all = all_settings();
    REQUIRE(all.size() == 27);
    for (int i = 0; i < 27; ++i) {
      CHECK(all[i].index() == i);
      CHECK(Setting::from_index(i) == all[i]);
    }
    CHECK(all.front() == Setting{1, 1, 1});
    CHECK(all[1] == Setting{1, 1, 2});
    CHECK(all.back() == Setting{3, 3, 3});
    CHECK_THROWS_AS(Setting::from_index(27), ContractViolation);
  }

  TEST_CASE("seed derivation") {
    CHECK(derive_seed(1, 0) == derive_seed(1, 0));
    std::set<std::uint64_t> seen;
    for (std::uint64_t m = 0; m < 10; ++m)
      for (std::uint64_t s = 0; s < 100; ++s) seen.insert(derive_seed(m, s));
    CHECK(seen.size() == 1000);
  }

  TEST_CASE("outcome indexing") {
    CHECK(outcome_index(1, 1, 1) == 0);
    CHECK(outcome_index(-1, 1, 1) == 4);
    CHECK(outcome_index(1, -1, -1) == 3);
    CHECK(outcome_sign(4, Party::A) == -1);
    CHECK(outcome_sign(4, Party::B) == 1);
    CHECK(outcome_sign(1, Party::C) == -1);
  }

  TEST_CASE("outcome distribution of a basis state") {
    const auto d = outcome_distribution(PureState3::basis(0b110), {3, 3, 3});
    CHECK(d.probs[outcome_index(-1, -1, 1)] == doctest::Approx(1.0));
    // sigma_1 on every qubit gives uniform outcomes.
    const auto x = outcome_distribution(PureState3::basis(0b110), {1, 1, 1});
    for (double p : x.probs) CHECK(p == doctest::Approx(0.125));
  }

  TEST_CASE("outcome marginals reproduce the correlation matrices") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const PureState3 s = haar_random_state(seed);
      for (const Setting& st : all_settings()) {
        const auto d = outcome_distribution(s, st);
        CHECK(std::accumulate(d.probs.begin(), d.probs.end(), 0.0) ==
              doctest::Approx(1.0).epsilon(1e-13));
        double ab = 0.0, a = 0.0;
        for (int o = 0; o < 8; ++o) {
          ab += outcome_sign(o, Party::A) * outcome_sign(o, Party::B) * d.probs[o];
          a += outcome_sign(o, Party::A) * d.probs[o];
        }
        CHECK(std::abs(ab - correlation_matrix(s, Pair::AB)(st.j - 1, st.k - 1)) < 1e-12);
        CHECK(std::abs(a - bloch_vector(s, Party::A).components[st.j - 1]) < 1e-12);
      }
    }
  }

  TEST_CASE("simulated counts are deterministic per seed") {
    const PureState3 s = w_class_state(30, 30);
    const auto a = simulate_counts(s, 5000, 7);
    const auto b = simulate_counts(s, 5000, 7);
    const auto c = simulate_counts(s, 5000, 8);
    REQUIRE(a.size() == 27);
    bool same = true, differ = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      same = same && a[i].counts == b[i].counts;
      differ = differ || a[i].counts != c[i].counts;
      CHECK(a[i].setting == Setting::from_index(static_cast<int>(i)));
    }
    CHECK(same);
    CHECK(differ);
    CHECK_THROWS_AS(simulate_counts(s, 0, 1), ContractViolation);
  }

  TEST_CASE("zero-probability bins stay empty") {
    const auto recs = simulate_counts(PureState3::basis(0b110), 1000, 3);
    const auto& zzz = recs[Setting{3, 3, 3}.index()];
    for (int o = 0; o < 8; ++o)
      if (o != outcome_index(-1, -1, 1)) CHECK(zzz.counts[o] == 0);
    CHECK(zzz.counts[outcome_index(-1, -1, 1)] > 800);
  }

  TEST_CASE("noise-free records recover the exact correlations") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const PureState3 s = haar_random_state(seed);
      const auto recs = exact_records(s, 1'000'000'000'000ULL);
      CHECK(max_data_diff(estimate_correlations(recs), exact_correlations(s)) < 1e-9);
      EstimationOptions single{EstimationOptions::Pooling::SingleSlice, 1};
      CHECK(max_data_diff(estimate_correlations(recs, single), exact_correlations(s)) < 1e-9);
    }
  }

  TEST_CASE("pooled and single-slice estimators agree within sampling error") {
    const PureState3 s = w_class_state(45, 15);
    const auto recs = simulate_counts(s, 20000, 99);
    const auto pooled = estimate_correlations(recs);
    for (int slice = 1; slice <= 3; ++slice) {
      const auto single =
          estimate_correlations(recs, {EstimationOptions::Pooling::SingleSlice, slice});
      // One setting's correlator has sd <= 1/sqrt(20000) ~ 0.007.
      CHECK(max_data_diff(pooled, single) < 0.04);
    }
    CHECK_THROWS_AS(estimate_correlations(recs, {EstimationOptions::Pooling::SingleSlice, 4}),
                    UsageError);
  }

  TEST_CASE("incomplete and malformed count data") {
    auto recs = exact_records(w_class_state(30, 0), 100);
    auto missing = recs;
    missing.erase(missing.begin() + 5);
    CHECK_THROWS_AS(estimate_correlations(missing), IncompleteDataError);

    auto empty = recs;
    empty[3].counts.fill(0);
    try {
      estimate_correlations(empty);
      FAIL("expected IncompleteDataError");
    } catch (const IncompleteDataError& e) {
      CHECK(std::string(e.what()).find("(1,2,1) [zero total]") != std::string::npos);
    }

    auto dup = recs;
    dup.push_back(recs[0]);
    CHECK_THROWS_AS(estimate_correlations(dup), ContractViolation);

    auto bad = recs;
    bad[0].setting.j = 4;
    CHECK_THROWS_AS(estimate_correlations(bad), ContractViolation);
  }

  TEST_CASE("statistic names round trip") {
    for (const char* name :
         {"iso_sum", "iso_AB", "ds1_AB", "ds3_BC", "M_AC", "chsh2_AB", "M_half_diff_AB_AC",
          "iso_diff_AB_BC", "conc2_diff_AC_BC", "conc_BC", "bloch2_diff_C_B", "tangle"})
      CHECK(Statistic::parse(name).name() == name);
    for (const char* bad : {"", "iso", "ds4_AB", "M_AD", "bloch2_diff_C", "conc2_diff_AB_AB",
                            "tangles", "M_half_diff_AB"})
      CHECK_THROWS_AS(Statistic::parse(bad), UsageError);
  }

  TEST_CASE("statistics on exact data") {
    const auto d = exact_correlations(w_class_state(45, 15));
    CHECK(Statistic::parse("iso_sum").evaluate(d) == doctest::Approx(1.0));
    CHECK(Statistic::parse("M_AC").evaluate(d) == doctest::Approx(1.8660254037844388));
    CHECK(Statistic::parse("chsh2_AC").evaluate(d) == doctest::Approx(1.8660254037844388));
    CHECK(Statistic::parse("tangle").evaluate(d) == doctest::Approx(0.0).epsilon(1e-9));
    const auto g = exact_correlations(ghz_class_state(30));
    CHECK(Statistic::parse("tangle").evaluate(g) == doctest::Approx(0.375));
    const auto q = ordering_quadruple(w_class_state(45, 15), Pair::AB, Pair::AC);
    CHECK(Statistic::parse("conc2_diff_AB_AC").evaluate(d) == doctest::Approx(q.conc_diff));
    CHECK(Statistic::parse("bloch2_diff_C_B").evaluate(d) == doctest::Approx(q.bloch_diff));
  }

  TEST_CASE("estimated pair density matches the exact reduction") {
    const PureState3 s = haar_random_state(12);
    const auto d = exact_correlations(s);
    for (Pair p : kPairs)
      CHECK((estimated_pair_density(d, p).matrix - reduce_pair(s, p).matrix).max_abs() < 1e-9);
  }

  TEST_CASE("end-to-end estimate is within three bootstrap errors") {
    const PureState3 s = w_class_state(45, 15);
    const auto recs = simulate_counts(s, 5000, 7);
    const auto r = bootstrap_errors(recs, Statistic::parse("M_AC"), 200, 8);
    CHECK(r.resamples == 200);
    CHECK(r.std_error > 0.0);
    CHECK(std::abs(r.estimate - 1.8660254037844388) <= 3.0 * r.std_error);
  }

  TEST_CASE("bootstrap contract and determinism") {
    const auto recs = simulate_counts(w_class_state(30, 0), 5000, 1);
    const auto st = Statistic::parse("ds1_AB");
    CHECK_THROWS_AS(bootstrap_errors(recs, st, 99, 1), UsageError);
    const auto a = bootstrap_errors(recs, st, 200, 5);
    const auto b = bootstrap_errors(recs, st, 200, 5);
    CHECK(a.std_error == b.std_error);
    CHECK(a.std_error > 1e-4);
    CHECK(a.std_error < 1e-2);

    // Vector form agrees with the scalar form.
    const std::vector<Statistic> stats{st, Statistic::parse("M_AB")};
    const auto v = bootstrap_errors(recs, stats, 200, 5);
    CHECK(v[0].std_error == a.std_error);
  }

  TEST_CASE("bootstrap of noise-free records is tight") {
    const auto recs = exact_records(w_class_state(45, 15), 100'000'000);
    const auto r = bootstrap_errors(recs, Statistic::parse("M_AC"), 100, 2);
    CHECK(r.std_error < 1e-3);
  }

  TEST_CASE("bootstrap errors track the spread across seeds and scale as 1/sqrt(N)") {
    const PureState3 s = w_class_state(45, 15);
    const auto st = Statistic::parse("M_AC");
    auto run = [&](std::uint64_t shots) {
      std::vector<double> estimates;
      double mean_se = 0.0;
      for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto recs = simulate_counts(s, shots, derive_seed(shots, seed));
        const auto r = bootstrap_errors(recs, st, 100, seed);
        estimates.push_back(r.estimate);
        mean_se += r.std_error / 40.0;
      }
      return std::pair{sample_sd(estimates), mean_se};
    };
    const auto [sd_low, se_low] = run(1250);
    const auto [sd_high, se_high] = run(5000);
    CHECK(se_high / se_low > 0.4);
    CHECK(se_high / se_low < 0.6);
    // 40 seeds pin an sd to roughly +-25%.
    CHECK(se_high / sd_high > 0.6);
    CHECK(se_high / sd_high < 1.6);
    CHECK(se_low / sd_low > 0.6);
    CHECK(se_low / sd_low < 1.6);
  }

  TEST_CASE("nearest density matrix") {
    const std::array<double, 2> d{1.2, -0.2};
    const auto p = nearest_density_matrix(ComplexMatrix::diagonal(d));
    CHECK(p(0, 0).real() == doctest::Approx(1.0));
    CHECK(std::abs(p(1, 1)) < 1e-15);

    const ComplexMatrix rho = reduce_pair(haar_random_state(4), Pair::AB).matrix;
    CHECK((nearest_density_matrix(rho) - rho).max_abs() < 1e-12);

    ComplexMatrix skew = ComplexMatrix::identity(2);
    skew(0, 1) = 0.5;
    CHECK_THROWS_AS(nearest_density_matrix(skew), ContractViolation);
  }

  TEST_CASE("tomography recovers the prepared state") {
    const PureState3 s = w_class_state(30, 30);
    const auto exact = tomography_reconstruct(exact_records(s, 1'000'000'000'000ULL));
    CHECK(fidelity(exact, s) > 1.0 - 1e-9);

    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto rho = tomography_reconstruct(simulate_counts(s, 1'000'000, seed));
      CHECK(fidelity(rho, s) > 0.999);
      CHECK(std::abs(rho.matrix.trace() - Complex(1.0)) < 1e-12);
      CHECK_NOTHROW(require_hermitian(rho.matrix));
      CHECK(hermitian_eigensystem(rho.matrix).values.back() > -1e-12);
    }

    const auto noisy = tomography_reconstruct(simulate_counts(s, 500, 1));
    CHECK(root_fidelity(noisy, s) == doctest::Approx(std::sqrt(fidelity(noisy, s))));
    CHECK(root_fidelity(noisy, s) >= fidelity(noisy, s));
  }

  TEST_CASE("fidelity examples") {
    const ThreeQubitDensity rho{PureState3::basis(3).projector()};
    CHECK(fidelity(rho, PureState3::basis(3)) == doctest::Approx(1.0));
    CHECK(fidelity(rho, PureState3::basis(4)) == 0.0);
    const ThreeQubitDensity mixed{0.125 * ComplexMatrix::identity(8)};
    CHECK(fidelity(mixed, haar_random_state(1)) == doctest::Approx(0.125));
    CHECK(root_fidelity(mixed, haar_random_state(1)) == doctest::Approx(std::sqrt(0.125)));
  }
}
