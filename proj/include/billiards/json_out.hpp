#pragma once

#include <json.hpp>

#include <ostream>

namespace billiards {

// Pretty-prints with every floating-point value at 17 significant digits, so
// output round-trips and is byte-stable. Non-finite values become null.
void write_json(std::ostream& out, const nlohmann::ordered_json& value, int indent = 2);

}  // namespace billiards
