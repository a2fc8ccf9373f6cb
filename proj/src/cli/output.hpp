// output.hpp — stable CSV emission and the JSON run manifest
#pragma once

#include <string>
#include <vector>

#include "cli/config.hpp"

namespace nonrecip {

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;  // row-major, one value per column
};

// %.12e cells, '\n' line ends, header row first; throws io_error on failure.
void write_csv(const std::string& path, const CsvTable& table);

std::string format_cell(double v);  // the %.12e cell format

// manifest.json: tool, version, experiment, preset, wall_time_seconds, and
// the complete key -> value parameter map from config_parameters().
void write_manifest(const std::string& path, const RunConfig& cfg,
                    double wall_seconds);

// Reads a manifest back into the argv vector that reproduces its run
// (subcommand, preset, then every parameter as a flag).
std::vector<std::string> manifest_to_args(const std::string& path);

} // namespace nonrecip
