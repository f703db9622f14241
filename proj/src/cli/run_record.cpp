#include "cli/run_record.hpp"

#include "cli/state_spec.hpp"

namespace spinlab::cli {

const char* toolkit_version() { return SPINLAB_VERSION; }

Json RunRecord::to_json() const {
    Json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["version"] = version;
    if (seed) j["seed"] = *seed;
    return j;
}

RunRecord parse_run_record(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("run record: ") + e.what(), 1, static_cast<int>(e.byte));
    }
    RunRecord r;
    r.command = j.at("command").get<std::string>();
    r.inputs = j.at("inputs");
    r.outputs = j.at("outputs");
    r.version = j.at("version").get<std::string>();
    if (j.contains("seed")) r.seed = j.at("seed").get<std::uint64_t>();
    return r;
}

} // namespace spinlab::cli
