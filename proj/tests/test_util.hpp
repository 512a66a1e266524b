#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "anisoq/linalg.hpp"
#include "anisoq/states.hpp"
#include "oracles.hpp"

namespace testutil {

inline oracle::Amps amps(const anisoq::PureState3& s) {
  oracle::Amps a{};
  for (std::size_t i = 0; i < 8; ++i) a[i] = s[i];
  return a;
}

inline oracle::M3 m3(const anisoq::Mat3& m) {
  oracle::M3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = m[i][j];
  return out;
}

inline anisoq::ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  anisoq::ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = g(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double re = g(rng);
      m(i, j) = anisoq::Complex(re, g(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

inline anisoq::Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  anisoq::Vec3 v{};
  for (double& x : v) x = g(rng);
  return anisoq::normalized(v);
}

inline int pair_index(anisoq::Party p) { return static_cast<int>(p); }

}  // namespace testutil
