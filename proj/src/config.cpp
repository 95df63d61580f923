#include "setlab/config.hpp"

#include <fstream>

#include "setlab/schema.hpp"

namespace setlab {

namespace {

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += (out.empty() ? "" : "\n") + l;
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> messages)
    : std::invalid_argument(join(messages)), messages_(std::move(messages)) {}

RunConfig parse_run_config(const Json& j) {
  const auto violations = validate_schema(run_config_schema(), j);
  if (!violations.empty()) {
    std::vector<std::string> messages;
    for (const auto& v : violations) messages.push_back(v.path + ": " + v.message);
    throw ConfigError(std::move(messages));
  }
  RunConfig c;
  try {
    c.experiment = j.at("experiment").get<std::string>();
    c.id = j.value("id", c.id);
    c.process = process_from_json(j.at("process"), "/process");
    c.horizon = j.at("horizon").get<std::int64_t>();
    if (j.contains("checkpoints")) c.checkpoints = j["checkpoints"].get<std::vector<std::int64_t>>();
    c.checkpoint_grid = j.value("checkpoint_grid", c.checkpoint_grid);
    if (j.contains("mode")) c.mode = distance_mode_from_string(j["mode"].get<std::string>());
    if (j.contains("directions")) {
      const Json& d = j["directions"];
      c.directions = DirectionSpec{d.at("kind").get<std::string>(), d.at("count").get<Eigen::Index>(),
                                   d.value("seed", std::uint64_t{0})};
    }
    c.seed = j.value("seed", c.seed);
    c.prune_threshold = j.value("prune_threshold", c.prune_threshold);
    c.generator_ceiling = j.value("generator_ceiling", c.generator_ceiling);
    c.trajectories = j.value("trajectories", c.trajectories);
    c.threads = j.value("threads", c.threads);
    if (j.contains("slope_band")) {
      c.slope_lo = j["slope_band"][0].get<double>();
      c.slope_hi = j["slope_band"][1].get<double>();
    }
    c.output_dir = j.value("output_dir", c.output_dir);
    if (j.contains("emit")) {
      const Json& e = j["emit"];
      c.emit.csv = e.value("csv", c.emit.csv);
      c.emit.json = e.value("json", c.emit.json);
      c.emit.svg = e.value("svg", c.emit.svg);
    }
  } catch (const JsonFormatError& e) {
    throw ConfigError({e.what()});
  }

  std::vector<std::string> problems;
  if (c.slope_lo > c.slope_hi) problems.push_back("/slope_band: lower bound exceeds upper bound");
  if (c.directions && c.mode != DistanceMode::Sampled)
    problems.push_back("/directions: only used in sampled mode");
  try {
    validate(experiment_config(c).trajectory);
  } catch (const std::invalid_argument& e) {
    problems.push_back(std::string("/: ") + e.what());
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({path + ": cannot open configuration file"});
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError({path + ": " + e.what()});
  }
  return parse_run_config(j);
}

Json to_json(const RunConfig& c) {
  Json j{{"experiment", c.experiment}, {"id", c.id}};
  if (c.process) j["process"] = to_json(*c.process);
  j["horizon"] = c.horizon;
  if (!c.checkpoints.empty()) j["checkpoints"] = c.checkpoints;
  j["checkpoint_grid"] = c.checkpoint_grid;
  j["mode"] = to_string(c.mode);
  if (c.directions)
    j["directions"] = Json{{"kind", c.directions->kind},
                           {"count", c.directions->count},
                           {"seed", c.directions->seed}};
  j["seed"] = c.seed;
  j["prune_threshold"] = c.prune_threshold;
  j["generator_ceiling"] = c.generator_ceiling;
  j["trajectories"] = c.trajectories;
  j["threads"] = c.threads;
  j["slope_band"] = Json::array({c.slope_lo, c.slope_hi});
  j["output_dir"] = c.output_dir;
  j["emit"] = Json{{"csv", c.emit.csv}, {"json", c.emit.json}, {"svg", c.emit.svg}};
  return j;
}

DirectionSet materialize(const DirectionSpec& spec, const SpaceSpec& space) {
  if (spec.kind == "grid") return grid_directions(space, spec.count);
  if (spec.kind == "random") return random_directions(space, spec.count, spec.seed);
  throw std::invalid_argument("unknown direction kind '" + spec.kind + "'");
}

ExperimentConfig experiment_config(const RunConfig& c) {
  if (!c.process) throw std::invalid_argument("run config has no process");
  ExperimentConfig e;
  e.id = c.id;
  e.trajectories = c.trajectories;
  e.threads = c.threads;
  e.slope_lo = c.slope_lo;
  e.slope_hi = c.slope_hi;
  TrajectoryConfig& t = e.trajectory;
  t.processes = {*c.process};
  t.horizon = c.horizon;
  t.checkpoints = c.checkpoints;
  if (t.checkpoints.empty() && c.checkpoint_grid == "decade") t.checkpoints = decade_checkpoints(c.horizon);
  t.mode = c.mode;
  if (c.directions) t.directions = materialize(*c.directions, space_of(*c.process));
  t.seed = c.seed;
  t.prune_threshold = c.prune_threshold;
  t.generator_ceiling = c.generator_ceiling;
  return e;
}

ExperimentReport run_experiment(const RunConfig& c) {
  const ExperimentConfig e = experiment_config(c);
  if (c.experiment == "fd_slln") return experiment_fd_slln(e);
  if (c.experiment == "reduced") return experiment_reduced(e);
  if (c.experiment == "intermediate_fd") return experiment_intermediate_fd(e);
  throw std::invalid_argument("unknown experiment '" + c.experiment + "'");
}

}  // namespace setlab
