#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "setlab/constructions.hpp"
#include "setlab/radstrom.hpp"
#include "setlab/random_sets.hpp"

namespace setlab {

/// exact: Hausdorff distance of the formed averages. certificate: support
/// differences over the canonical directions. sampled: over the canonical
/// directions plus a configured direction set.
enum class DistanceMode { Exact, Certificate, Sampled };

std::string to_string(DistanceMode mode);
DistanceMode distance_mode_from_string(const std::string& s);

struct TrajectoryConfig {
  /// One shared process, or one process per index 1..horizon.
  std::vector<ProcessSpec> processes;
  std::int64_t horizon = 1;
  /// Sorted, within 1..horizon. Empty means 1, 2, 4, ... plus the horizon.
  std::vector<std::int64_t> checkpoints;
  DistanceMode mode = DistanceMode::Exact;
  /// Extra directions for sampled mode; defaults to a 64-direction grid.
  std::optional<DirectionSet> directions;
  std::uint64_t seed = 0;
  Eigen::Index prune_threshold = 5000;
  /// Exact mode refuses checkpoints whose generator count (product of the
  /// participating body sizes) could exceed this.
  double generator_ceiling = 1e6;
  /// Also report the singleton-part norm and the set-part distance separately.
  bool decompose = false;
};

std::vector<std::int64_t> default_checkpoints(std::int64_t horizon);

/// Checkpoints 1, 2, 5, 10, 20, 50, ... up to the horizon, plus the horizon.
std::vector<std::int64_t> decade_checkpoints(std::int64_t horizon);

/// The checkpoints actually used by a config (explicit or default), validated.
std::vector<std::int64_t> resolve_checkpoints(const TrajectoryConfig& cfg);

void validate(const TrajectoryConfig& cfg);

struct CheckpointRecord {
  std::int64_t n = 0;
  double distance = 0;
  /// Generator counts of the two formed averages (exact mode only).
  Eigen::Index average_generators = 0;
  Eigen::Index expectation_generators = 0;
  /// Draw counts per atom of the shared process; empty for per-index processes.
  std::vector<std::int64_t> atom_counts;
  /// Norm of the averaged singleton parts minus their expectation.
  double shift_norm = std::numeric_limits<double>::quiet_NaN();
  /// Distance between the averaged set parts and their expectation average.
  double body_distance = std::numeric_limits<double>::quiet_NaN();
};

struct TrajectoryResult {
  std::uint64_t seed = 0;
  DistanceMode mode = DistanceMode::Exact;
  std::vector<CheckpointRecord> records;
  /// Not serialized, so outputs stay byte-identical across runs.
  double wall_seconds = 0;
};

TrajectoryResult run_trajectory(const TrajectoryConfig& cfg);

struct DecayFit {
  enum class Status { Ok, InsufficientData };
  Status status = Status::InsufficientData;
  double slope = std::numeric_limits<double>::quiet_NaN();
  double intercept = std::numeric_limits<double>::quiet_NaN();
  /// Root-mean-square residual in log space.
  double residual = std::numeric_limits<double>::quiet_NaN();
  int points = 0;
};

/// Least squares of log(distance) on log(n) over the positive distances;
/// refused with InsufficientData below three such points.
DecayFit decay_fit(std::span<const std::int64_t> ns, std::span<const double> distances);
DecayFit decay_fit(const TrajectoryResult& result);

struct CheckpointSummary {
  std::int64_t n;
  double median, q10, q90, mean;
};

/// A per-checkpoint statistic across trajectories and its decay fit, taken on
/// the mean curve.
struct Series {
  std::string id;
  std::vector<CheckpointSummary> summary;
  DecayFit fit;
};

struct Check {
  enum class Status { Pass, Fail, Undefined };
  std::string name;
  double value;
  double lo, hi;
  Status status;
};

std::string to_string(Check::Status status);

struct ExperimentReport {
  std::string experiment_id;
  std::string kind;
  DistanceMode mode = DistanceMode::Exact;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> checkpoints;
  std::vector<TrajectoryResult> trajectories;
  std::vector<Series> series;
  std::vector<Check> checks;

  /// No check failed (undefined checks do not count as failures).
  bool passed() const;
};

/// Quantile with linear interpolation between order statistics.
double quantile(std::vector<double> values, double q);

/// Summary of one record field across trajectories at every checkpoint.
Series summarize(const std::string& id, const std::vector<TrajectoryResult>& trajectories,
                 double CheckpointRecord::*field);

struct ExperimentConfig {
  std::string id = "experiment";
  /// Its seed is the master seed; trajectory t runs with stable_hash(seed, t).
  TrajectoryConfig trajectory;
  int trajectories = 20;
  unsigned threads = 1;
  double slope_lo = -0.65;
  double slope_hi = -0.35;
};

/// Runs the configured trajectories on up to `threads` workers; results are
/// stored by trajectory index, so the output does not depend on scheduling.
std::vector<TrajectoryResult> run_trajectories(const ExperimentConfig& cfg);

ExperimentReport experiment_fd_slln(const ExperimentConfig& cfg);

/// Every process must be a declared distribution passing the one-point test
/// with expectation {0}; otherwise HypothesisNotMet.
ExperimentReport experiment_reduced(const ExperimentConfig& cfg);

/// Every process must be an fd_expectation_demo; reports the total distance,
/// the singleton-part norm and the set-part distance.
ExperimentReport experiment_intermediate_fd(const ExperimentConfig& cfg);

struct PatternResult {
  /// psi_1..psi_N as a string of '0'/'1'.
  std::string psi;
  double certificate;
  std::optional<double> exact;
};

struct CounterexampleReport {
  int n_max = 1;
  int n = 4;
  Eigen::Index dim = 16;
  std::string enumeration;
  std::uint64_t seed = 0;
  DistanceMode mode = DistanceMode::Certificate;
  std::vector<PatternResult> patterns;
  double min_certificate = 0;
  std::optional<double> min_exact;
  double floor = 1.0 / 16.0;

  bool passed() const;
};

/// Distance between (1/N) sum psi_i V_i and (1/2N) sum V_i for each evaluated
/// pattern. `sample_count` = 0 enumerates all 2^N patterns; otherwise pattern k
/// is drawn from stable_hash(seed, k). Exact mode is available for n_max = 1.
CounterexampleReport experiment_counterexample(int n_max, int sample_count, std::uint64_t seed,
                                               DistanceMode mode);

std::string psi_string(std::span<const std::uint8_t> psi);

}  // namespace setlab
