// Randomized theorem checks. Each registered theorem draws instances of its
// hypothesis class, evaluates the conclusion, and records per-trial results.
// Trial i draws from SplitMix64::derive(seed, i), so reports are identical
// for any thread count.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ams/model_io.hpp"

namespace ams {

enum class TrialStatus { pass, vacuous, fail, error };

struct TrialOutcome {
  std::size_t index = 0;
  TrialStatus status = TrialStatus::pass;
  std::string detail;
  /// The instance, as model documents keyed by role. Kept for failures only.
  io::json counterexample;

  bool ok() const { return status == TrialStatus::pass || status == TrialStatus::vacuous; }
};

struct TheoremCheckReport {
  std::string theorem;
  std::size_t trials = 0;
  std::size_t depth = 0;
  std::uint64_t seed = 0;
  std::vector<TrialOutcome> outcomes;

  std::size_t count(TrialStatus s) const;
  bool passed() const;
  /// Summary and outcomes; counterexamples are referenced by trial index.
  io::json to_json() const;
};

struct TheoremInfo {
  std::string id;
  std::string hypothesis;
  std::string conclusion;
};

const std::vector<TheoremInfo>& theorem_registry();
bool is_registered(const std::string& id);

/// Throws InvariantViolation for an unknown id.
TheoremCheckReport run_theorem_suite(const std::string& id, std::size_t trials,
                                     std::size_t depth, std::uint64_t seed);
/// Same report without threads.
TheoremCheckReport run_theorem_suite_serial(const std::string& id, std::size_t trials,
                                            std::size_t depth, std::uint64_t seed);

std::string status_name(TrialStatus s);

}  // namespace ams
