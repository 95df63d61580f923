#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "setlab/slln_lab.hpp"

namespace setlab {

/// Insertion-ordered JSON, so emitted documents have a fixed key order.
using Json = nlohmann::ordered_json;

/// Malformed JSON content; `path` is a JSON pointer to the offending value.
class JsonFormatError : public std::invalid_argument {
 public:
  JsonFormatError(std::string path, const std::string& message)
      : std::invalid_argument(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Two-space indented dump terminated by a newline.
std::string dump(const Json& j);

Json to_json(const SpaceSpec& space);
SpaceSpec space_from_json(const Json& j, const std::string& path = "");

/// {"space": {...}, "generators": [[x_1, ..., x_dim], ...]}.
Json to_json(const Polytope<double>& p);
Polytope<double> polytope_from_json(const Json& j, const std::string& path = "");

Json to_json(const DirectionSet& d);
DirectionSet direction_set_from_json(const Json& j, const std::string& path = "");

/// Block layout plus each set's membership bitmask over its block coordinates.
Json to_json(const BlockFamily& family);

Json to_json(const ProcessSpec& spec);
ProcessSpec process_from_json(const Json& j, const std::string& path = "");

Json to_json(const DecayFit& fit);
Json to_json(const ExperimentReport& report);
Json to_json(const CounterexampleReport& report);

}  // namespace setlab
