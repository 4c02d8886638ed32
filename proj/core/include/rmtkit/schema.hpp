#pragma once

#include <string>
#include <vector>

namespace rmtkit {

/// Structural validation of a JSON document against a JSON-Schema-style
/// description. Supports the keyword subset the shipped schemas use:
/// type, properties, required, additionalProperties (boolean), items,
/// enum, minimum, maximum, minItems.
/// Returns human-readable violations; an empty list means the instance
/// conforms. Throws DataError when either document is not valid JSON.
std::vector<std::string> validate_json_schema(const std::string& schema_json,
                                              const std::string& instance_json);

} // namespace rmtkit
