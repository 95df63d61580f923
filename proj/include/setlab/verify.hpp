#pragma once

#include <string>
#include <vector>

namespace setlab {

struct PropertyResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// lemma31, lemma33, radstrom, onepoint, core.
const std::vector<std::string>& suite_names();

/// Runs one invariant suite with fixed seeds; throws std::invalid_argument
/// for an unknown suite name.
std::vector<PropertyResult> run_suite(const std::string& suite);

}  // namespace setlab
