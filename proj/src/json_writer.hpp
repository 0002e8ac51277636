#pragma once

#include <string>

#include <json.hpp>

namespace netcontract {

// Deterministic JSON text: keys sorted, numbers as %.17g, integral values
// without a fraction, and infinities as the strings "inf" / "-inf".
// indent < 0 gives compact output.
std::string canonical_dump(const nlohmann::json& value, int indent = -1);

}  // namespace netcontract
