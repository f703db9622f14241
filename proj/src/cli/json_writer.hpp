#pragma once

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>

namespace spinlab::cli {

using Json = nlohmann::ordered_json;

/// %.17g, enough digits for any double to round-trip.
std::string format_double(double v);

/// Pretty-printed JSON with doubles in format_double. Non-finite numbers
/// become the strings "inf", "-inf" and "nan".
void write_json(std::ostream& os, const Json& value);
std::string to_json_string(const Json& value);

/// A number, or the string "undefined".
Json optional_number(const std::optional<double>& v);

} // namespace spinlab::cli
