#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "anisoq/states.hpp"

namespace anisoq::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitParse = 3,
  kExitIncomplete = 4,
  kExitVerification = 5,
};

// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

inline constexpr std::array<std::string_view, 5> kSuites{
    "invariance", "monogamy", "ordering", "chsh-optimality", "estimator-consistency"};

struct VerifyResult {
  std::string suite;
  std::size_t trials = 0;
  bool passed = true;
  std::vector<std::pair<std::string, double>> metrics;  // worst case per checked quantity
  std::string failure;                                  // first failed check
  std::optional<PureState3> counterexample;
};

// Trial i uses haar_random_state(derive_seed(seed, i)).
VerifyResult run_verify_suite(std::string_view suite, std::size_t trials, std::uint64_t seed);

}  // namespace anisoq::cli
