#pragma once

// JSON text with every floating-point number printed as %.17g, so output is
// byte-stable and parses back bit-exactly.

#include <string>

#include "json.hpp"

namespace wigrot::detail {

std::string dump_json(const nlohmann::json& j, int indent = 2);

}  // namespace wigrot::detail
