#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

namespace spinlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Entry point shared by the executable and in-process tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Replaces "{}" with the value and "{/d}" with value/d (which must come out
/// integral) in a scan template.
std::string substitute_template(std::string_view tmpl, double value);

} // namespace spinlab::cli
