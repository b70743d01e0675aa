#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace cli_output {

inline constexpr const char* kToolVersion = "0.1.0";

/// One numeric result table plus its column metadata.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::string> units;
    std::vector<std::vector<double>> rows;
    nlohmann::json meta = nlohmann::json::object();
};

/// 17-significant-digit decimal form, enough to round-trip binary64.
std::string format_value(double v);

/// Writes `table` to `<stem>.csv` or `<stem>.json` under `dir` depending on
/// `json_format`. CSV files start with a '#'-prefixed JSON header line
/// carrying columns, units and meta. Returns the file name written.
std::string write_table(const std::filesystem::path& dir, const std::string& stem,
                        const Table& table, bool json_format);

/// Key-sorted UTF-8 JSON document with trailing newline. Returns the file
/// name written.
std::string write_json(const std::filesystem::path& dir, const std::string& name,
                       const nlohmann::json& doc);

/// Run manifest serialized next to every command's outputs.
void write_manifest(const std::filesystem::path& dir, const std::string& subcommand,
                    const nlohmann::json& parameters, const nlohmann::json& seed,
                    double duration_seconds, const nlohmann::json& results,
                    const std::vector<std::string>& outputs);

}  // namespace cli_output
