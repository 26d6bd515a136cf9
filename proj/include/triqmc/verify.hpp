#pragma once

// Self-verification suites: the acceptance criteria run by the CLI
// `verify` subcommand and the acceptance test binary, plus the wider
// lemma/property checks.

#include <cstdint>
#include <string>
#include <vector>

namespace triqmc::verify {

constexpr std::uint64_t kDefaultSeed = 123456789;

struct Options {
  std::uint64_t seed = kDefaultSeed;
  int jobs = 1;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// The eleven acceptance checks, in order.
std::vector<CheckResult> run_acceptance(const Options& opts = {});

/// Additional per-lemma property checks (partition tiling, shift change
/// of variables, second differences, QMC error identity, dual subspace
/// growth, digital shift structure, net closure, point containment).
std::vector<CheckResult> run_lemma_checks(const Options& opts = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace triqmc::verify
