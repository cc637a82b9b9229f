#pragma once

// File emission for trace sets: CSV, JSON (with resolved config for
// provenance) and a minimal log-x SVG line chart.

#include <filesystem>
#include <string>

#include "sqzsim/scenario.hpp"

namespace sqz {

enum class EmitFormat { kCsv, kJson, kSvg };

EmitFormat parse_format(const std::string& name); // "csv" | "json" | "svg"

// Writes one file and returns its path. The filename is derived from the
// preset (or "scenario") plus the format extension.
std::filesystem::path emit(const TraceSet& traces, EmitFormat format,
                           const std::filesystem::path& out_dir);

std::string to_csv(const TraceSet& traces);
nlohmann::json to_json(const TraceSet& traces);
std::string to_svg(const TraceSet& traces);

// Re-parse a CSV emission (used by round-trip checks).
std::vector<std::vector<double>> parse_csv_columns(const std::string& csv);

} // namespace sqz
