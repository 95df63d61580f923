#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "setlab/json_io.hpp"

namespace setlab {

/// Every problem found in a configuration, each prefixed with its JSON path.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(std::vector<std::string> messages);
  const std::vector<std::string>& messages() const noexcept { return messages_; }

 private:
  std::vector<std::string> messages_;
};

struct DirectionSpec {
  std::string kind;  // "grid" or "random"
  Eigen::Index count = 64;
  std::uint64_t seed = 0;
};

struct EmitFlags {
  bool csv = true;
  bool json = true;
  bool svg = false;
};

struct RunConfig {
  std::string experiment;  // fd_slln, reduced or intermediate_fd
  std::string id = "run";
  std::optional<ProcessSpec> process;
  std::int64_t horizon = 1;
  /// Explicit checkpoints; when empty the named grid is used.
  std::vector<std::int64_t> checkpoints;
  std::string checkpoint_grid = "geometric";
  DistanceMode mode = DistanceMode::Exact;
  std::optional<DirectionSpec> directions;
  std::uint64_t seed = 0;
  Eigen::Index prune_threshold = 5000;
  double generator_ceiling = 1e6;
  int trajectories = 20;
  unsigned threads = 1;
  double slope_lo = -0.65;
  double slope_hi = -0.35;
  std::string output_dir;
  EmitFlags emit;
};

/// Schema validation followed by semantic checks; throws ConfigError.
RunConfig parse_run_config(const Json& j);
RunConfig load_run_config(const std::string& path);

/// Emits every field explicitly; parse_run_config(to_json(c)) reproduces c.
Json to_json(const RunConfig& cfg);

DirectionSet materialize(const DirectionSpec& spec, const SpaceSpec& space);
ExperimentConfig experiment_config(const RunConfig& cfg);
ExperimentReport run_experiment(const RunConfig& cfg);

}  // namespace setlab
