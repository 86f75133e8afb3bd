#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace restartar {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string summary;    // one line: measured value against its threshold
  nlohmann::json details;
};

constexpr int kCriterionCount = 14;

std::string criterion_name(int id);

/// Runs one acceptance criterion (1..14) with independent oracles.
CriterionResult run_criterion(int id, std::uint64_t seed, int threads = 1);

}  // namespace restartar
