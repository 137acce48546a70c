#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace favprop::cli {

// Sidecar record of one CLI run: everything needed to reproduce the data
// files byte for byte (command + full parameter set + seed), plus the
// volatile bits (duration) that are deliberately kept out of the data files.
struct RunManifest {
    std::string command;
    nlohmann::ordered_json parameters;  // includes the seed
    std::string tool_version;
    double duration_seconds = 0.0;
    std::vector<std::string> outputs;

    nlohmann::ordered_json to_json() const;
    static RunManifest from_json(const nlohmann::ordered_json& doc);
};

std::string manifest_path_for(const std::string& output_path);

void write_manifest(const RunManifest& manifest, const std::string& path);
RunManifest read_manifest(const std::string& path);

// File helpers shared by the commands.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace favprop::cli
