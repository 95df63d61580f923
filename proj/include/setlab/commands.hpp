#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace setlab {

/// Exit codes: 0 success / all checks pass, 1 a property or floor check
/// failed (or a run aborted), 2 usage or configuration error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct CounterexampleOptions {
  int n = 1;
  std::string mode = "certificate";
  std::string omega = "all";  // "all" or "sample:K"
  std::uint64_t seed = 0;
  std::string out = ".";
};

/// Writes counterexample.csv and counterexample.json into the output directory.
int cmd_counterexample(const CounterexampleOptions& opt, std::ostream& out, std::ostream& err);

/// Runs a configured experiment and writes <id>.csv, <id>.json, <id>.svg (as
/// enabled) and the normalized <id>.config.json. `out_dir` and `threads`
/// override the config when given; the emitted config does not record them.
int cmd_slln(const std::string& config_path, const std::optional<std::string>& out_dir,
             std::optional<unsigned> threads, std::ostream& out, std::ostream& err);

int cmd_verify(const std::string& suite, std::ostream& out, std::ostream& err);

int cmd_plot(const std::string& csv_path, const std::string& svg_path, std::ostream& out,
             std::ostream& err);

}  // namespace setlab
