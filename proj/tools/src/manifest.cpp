#include "manifest.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "favprop/version.hpp"

namespace favprop::cli {

nlohmann::ordered_json RunManifest::to_json() const {
    nlohmann::ordered_json doc;
    doc["tool"] = "favprop";
    doc["version"] = tool_version.empty() ? std::string(kVersion) : tool_version;
    doc["command"] = command;
    doc["parameters"] = parameters;
    doc["duration_seconds"] = duration_seconds;
    doc["outputs"] = outputs;
    return doc;
}

RunManifest RunManifest::from_json(const nlohmann::ordered_json& doc) {
    if (doc.value("tool", "") != "favprop")
        throw std::runtime_error("not a favprop manifest");
    RunManifest manifest;
    manifest.command = doc.at("command").get<std::string>();
    manifest.parameters = doc.at("parameters");
    manifest.tool_version = doc.value("version", "");
    manifest.duration_seconds = doc.value("duration_seconds", 0.0);
    manifest.outputs = doc.value("outputs", std::vector<std::string>{});
    return manifest;
}

std::string manifest_path_for(const std::string& output_path) {
    return output_path + ".manifest.json";
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
    write_text_file(path, manifest.to_json().dump(2) + "\n");
}

RunManifest read_manifest(const std::string& path) {
    return RunManifest::from_json(nlohmann::ordered_json::parse(read_text_file(path)));
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace favprop::cli
