#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace folink {

/// Minimal CSV container: comma-delimited, mandatory header row, optional
/// '#'-prefixed metadata comment lines above the header.
struct CsvTable {
    std::vector<std::string> comments;  // without the leading '#'
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const;  // throws if absent
};

CsvTable read_csv(const std::filesystem::path& path);

/// Writes via a temp file and rename so readers never see partial output.
void write_csv_atomic(const std::filesystem::path& path, const CsvTable& table);

/// Shortest round-trip decimal representation (std::to_chars).
std::string format_double(double value);
double parse_double(const std::string& text);

/// FNV-1a hash of a canonical config string, for the metadata comment line.
std::string config_hash(const std::string& canonical);

}  // namespace folink
