#pragma once

#include <string>
#include <vector>

#include "setlab/json_io.hpp"

namespace setlab {

struct SchemaViolation {
  /// JSON pointer to the offending value ("" is the document root).
  std::string path;
  std::string message;
};

/// Validates `doc` against a JSON schema using the keywords type, enum,
/// required, properties, additionalProperties (boolean or schema), items,
/// minItems, maxItems, minimum, maximum and local "#/$defs/..." references.
/// Returns every violation found, in document order.
std::vector<SchemaViolation> validate_schema(const Json& schema, const Json& doc);

/// The schema for slln run configurations, compiled into the binary from
/// schema/run_config.schema.json.
const Json& run_config_schema();

}  // namespace setlab
