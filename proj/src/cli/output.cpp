// output.cpp — CSV writer and JSON manifest round-trip
#include "cli/output.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace nonrecip {

std::string format_cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) out << ',';
        out << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out << ',';
            out << format_cell(row[c]);
        }
        out << '\n';
    }
    out.flush();
    if (!out) throw io_error("write failed: " + path);
}

void write_manifest(const std::string& path, const RunConfig& cfg,
                    double wall_seconds) {
    nlohmann::ordered_json j;
    j["tool"] = "nonrecip";
    j["version"] = "1.0.0";
    j["experiment"] = experiment_name(cfg.experiment);
    j["preset"] = cfg.preset;
    j["wall_time_seconds"] = wall_seconds;
    nlohmann::ordered_json params;
    for (const auto& [key, value] : config_parameters(cfg)) params[key] = value;
    j["parameters"] = params;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
    out.flush();
    if (!out) throw io_error("write failed: " + path);
}

std::vector<std::string> manifest_to_args(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open manifest: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw io_error("malformed manifest " + path + ": " + e.what());
    }
    std::vector<std::string> args;
    args.push_back(j.at("experiment").get<std::string>());
    const std::string preset = j.value("preset", std::string{});
    if (!preset.empty()) {
        args.push_back("--preset");
        args.push_back(preset);
    }
    for (const auto& [key, value] : j.at("parameters").items()) {
        args.push_back("--" + (key == "n_sites" ? std::string("n") : key));
        args.push_back(value.get<std::string>());
    }
    return args;
}

} // namespace nonrecip
