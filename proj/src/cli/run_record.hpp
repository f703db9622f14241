#pragma once

#include "cli/json_writer.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace spinlab::cli {

const char* toolkit_version();

/// One command invocation: what was asked, what came out, and the seed for
/// stochastic commands.
struct RunRecord {
    std::string command;
    Json inputs = Json::object();
    Json outputs = Json::object();
    std::string version = toolkit_version();
    std::optional<std::uint64_t> seed;

    Json to_json() const;
    std::string serialize() const { return to_json_string(to_json()); }
};

RunRecord parse_run_record(const std::string& text);

} // namespace spinlab::cli
