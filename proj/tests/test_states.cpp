#include <doctest.h>

#include <cmath>
#include <numbers>

#include "anisoq/errors.hpp"
#include "anisoq/states.hpp"
#include "test_util.hpp"

using namespace anisoq;

namespace {

const double kW_phi = std::acos(1.0 / std::sqrt(3.0)) * 180.0 / std::numbers::pi;

double max_diff(const ComplexMatrix& a, const oracle::M4& b) {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(a(i, j) - b[i][j]));
  return worst;
}

double purity(const ComplexMatrix& rho) { return (rho * rho).trace().real(); }

}  // namespace

TEST_SUITE("states") {
  TEST_CASE("family endpoints are basis states") {
    const auto at = [](const PureState3& s, unsigned i) { return std::abs(s[i]); };
    CHECK(at(w_class_state(0, 0), 0b110) == doctest::Approx(1.0));
    CHECK(at(w_class_state(90, 0), 0b011) == doctest::Approx(1.0));
    CHECK(at(w_class_state(90, 90), 0b101) == doctest::Approx(1.0));
    CHECK(at(ghz_class_state(0), 0b110) == doctest::Approx(1.0));

    const PureState3 g90 = ghz_class_state(90);
    CHECK(at(g90, 0b011) == doctest::Approx(1.0 / std::numbers::sqrt2));
    CHECK(at(g90, 0b001) == doctest::Approx(1.0 / std::numbers::sqrt2));
  }

  TEST_CASE("W state has equal weights") {
    const PureState3 w = w_class_state(kW_phi, 45);
    for (unsigned i : {0b110u, 0b011u, 0b101u}) CHECK(std::norm(w[i]) == doctest::Approx(1.0 / 3));
  }

  TEST_CASE("prepare dispatches on family") {
    CHECK(prepare(FamilyParams::w(30, 20)).amplitudes() == w_class_state(30, 20).amplitudes());
    CHECK(prepare(FamilyParams::ghz(20)).amplitudes() == ghz_class_state(20).amplitudes());
    FamilyParams missing;
    missing.family = Family::CUSTOM;
    CHECK_THROWS_AS(prepare(missing), UsageError);
  }

  TEST_CASE("normalization contract") {
    Amplitudes a{};
    a[3] = 1.0 + 1e-7;
    CHECK_THROWS_AS(PureState3{a}, ContractViolation);
    const PureState3 s = PureState3::from_amplitudes(a);
    CHECK(std::abs(s[3]) == doctest::Approx(1.0).epsilon(1e-15));
    a[3] = 1.01;
    CHECK_THROWS_AS(PureState3::from_amplitudes(a), ContractViolation);
    CHECK_THROWS_AS(prepare(FamilyParams::custom(a)), ContractViolation);
    CHECK_THROWS_AS(PureState3::basis(8), ContractViolation);
  }

  TEST_CASE("Bloch vectors and correlations of a product basis state") {
    const PureState3 s = PureState3::basis(0b110);
    CHECK(bloch_vector(s, Party::A).components == Vec3{0, 0, -1});
    CHECK(bloch_vector(s, Party::B).components == Vec3{0, 0, -1});
    CHECK(bloch_vector(s, Party::C).components == Vec3{0, 0, 1});
    const CorrelationMatrix t = correlation_matrix(s, Pair::AB);
    CHECK(t.entries == Mat3{{{0, 0, 0}, {0, 0, 0}, {0, 0, 1}}});
    CHECK(correlation_matrix(s, Pair::BC)(2, 2) == -1.0);
  }

  TEST_CASE("W state correlation matrix") {
    const CorrelationMatrix t = correlation_matrix(w_class_state(kW_phi, 45), Pair::AB);
    CHECK(t(0, 0) == doctest::Approx(2.0 / 3));
    CHECK(t(1, 1) == doctest::Approx(2.0 / 3));
    CHECK(t(2, 2) == doctest::Approx(-1.0 / 3));
    CHECK(std::abs(t(0, 1)) < 1e-15);
  }

  TEST_CASE("party and pair helpers") {
    CHECK(complement(Pair::AB) == Party::C);
    CHECK(complement(Pair::AC) == Party::B);
    CHECK(complement(Pair::BC) == Party::A);
    CHECK(first_party(Pair::BC) == Party::B);
    CHECK(second_party(Pair::AC) == Party::C);
    for (Pair p : kPairs) CHECK(parse_pair(to_string(p)) == p);
    for (Party p : kParties) CHECK(parse_party(to_string(p)) == p);
    CHECK_THROWS_AS(parse_pair("AD"), UsageError);
    CHECK_THROWS_AS(parse_party("D"), UsageError);
  }

  TEST_CASE("reductions and correlations match the amplitude oracle") {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      const PureState3 s = haar_random_state(seed);
      const auto psi = testutil::amps(s);
      for (Pair pair : kPairs) {
        const int p = qubit_index(first_party(pair)), q = qubit_index(second_party(pair));
        CHECK(max_diff(reduce_pair(s, pair).matrix, oracle::reduced_pair(psi, p, q)) < 1e-13);
        const auto ref = oracle::correlation(psi, p, q);
        const auto t = correlation_matrix(s, pair);
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) CHECK(std::abs(t(j, k) - ref[j][k]) < 1e-13);
      }
      for (Party party : kParties) {
        std::array<int, 3> ops{0, 0, 0};
        const auto b = bloch_vector(s, party).components;
        for (int j = 0; j < 3; ++j) {
          ops[qubit_index(party)] = j + 1;
          CHECK(std::abs(b[j] - oracle::pauli_expectation(psi, ops[0], ops[1], ops[2])) < 1e-13);
        }
      }
    }
  }

  TEST_CASE("reduced densities are physical and purities are complementary") {
    for (std::uint64_t seed = 300; seed < 500; ++seed) {
      const PureState3 s = haar_random_state(seed);
      for (Pair pair : kPairs) {
        const ComplexMatrix rho = reduce_pair(s, pair).matrix;
        CHECK(std::abs(rho.trace() - Complex(1.0)) < 1e-13);
        CHECK_NOTHROW(require_hermitian(rho));
        CHECK(hermitian_eigensystem(rho).values.back() > -1e-12);
        const ComplexMatrix single = reduce_party(s, complement(pair));
        CHECK(std::abs(purity(rho) - purity(single)) < 1e-12);
      }
    }
  }

  TEST_CASE("Pauli coefficients reconstruct the pair density") {
    for (std::uint64_t seed = 600; seed < 700; ++seed) {
      const PureState3 s = haar_random_state(seed);
      for (Pair pair : kPairs) {
        const auto rebuilt = density_from_pauli(bloch_vector(s, first_party(pair)),
                                                bloch_vector(s, second_party(pair)),
                                                correlation_matrix(s, pair));
        CHECK((rebuilt.matrix - reduce_pair(s, pair).matrix).max_abs() < 1e-13);
      }
    }
  }

  TEST_CASE("random states are deterministic and roughly uniform") {
    CHECK(haar_random_state(42).amplitudes() == haar_random_state(42).amplitudes());
    CHECK(haar_random_state(42).amplitudes() != haar_random_state(43).amplitudes());
    std::array<double, 8> mean{};
    const int n = 100000;
    for (int seed = 0; seed < n; ++seed) {
      const PureState3 s = haar_random_state(seed);
      for (int i = 0; i < 8; ++i) mean[i] += std::norm(s[i]) / n;
    }
    for (double m : mean) CHECK(m == doctest::Approx(0.125).epsilon(0.04));
  }

  TEST_CASE("random local unitaries") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const ComplexMatrix u = random_local_unitary(seed);
      CHECK_NOTHROW(require_unitary(u));
      // Leading entry of each column is real and non-negative.
      for (int c = 0; c < 2; ++c) {
        CHECK(std::abs(u(0, c).imag()) < 1e-15);
        CHECK(u(0, c).real() >= 0.0);
      }
    }
    CHECK(random_local_unitary(9) == random_local_unitary(9));
  }

  TEST_CASE("local unitaries preserve the norm and reject non-unitary input") {
    const PureState3 s = haar_random_state(5);
    const PureState3 out = apply_local_unitaries(s, random_local_unitary(1),
                                                 random_local_unitary(2), random_local_unitary(3));
    double n = 0.0;
    for (const auto& z : out.amplitudes()) n += std::norm(z);
    CHECK(n == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(apply_local_unitaries(s, 2.0 * pauli(0), pauli(0), pauli(0)),
                    ContractViolation);

    // sigma_1 on A flips the high bit.
    const PureState3 flipped =
        apply_local_unitaries(PureState3::basis(0b011), pauli(1), pauli(0), pauli(0));
    CHECK(std::abs(flipped[0b111]) == doctest::Approx(1.0));
  }

  TEST_CASE("angle jitter stays within its amplitude") {
    const FamilyParams base = FamilyParams::w(30, 45);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const FamilyParams j = jitter_angles(base, seed);
      CHECK(std::abs(j.phi_deg - 30) <= 0.5);
      CHECK(std::abs(j.theta_deg - 45) <= 0.5);
    }
    CHECK(jitter_angles(base, 7).phi_deg == jitter_angles(base, 7).phi_deg);
    CHECK(std::abs(jitter_angles(FamilyParams::ghz(20), 3, 2.0).phi_prime_deg - 20) <= 2.0);

    Amplitudes a{};
    a[0] = 1.0;
    CHECK(jitter_angles(FamilyParams::custom(a), 1).amplitudes == a);
  }
}
