#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qspec {

struct SuiteResult {
  std::string name;
  bool pass = false;
  /// One line per sub-check, already formatted.
  std::vector<std::string> details;
  double seconds = 0.0;
};

/// Suite names in acceptance order.
const std::vector<std::string>& suite_names();

/// Runs one named suite with a fixed seed. Throws Error(InvalidInput) for unknown names.
SuiteResult run_suite(const std::string& name, std::uint64_t seed = 20240611);

}  // namespace qspec
