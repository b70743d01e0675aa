#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cli_output {

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path.string());
    return out;
}

}  // namespace

std::string write_table(const std::filesystem::path& dir, const std::string& stem,
                        const Table& table, bool json_format) {
    std::filesystem::create_directories(dir);
    const std::string name = stem + (json_format ? ".json" : ".csv");

    nlohmann::json header;
    header["columns"] = table.columns;
    header["units"] = table.units;
    if (!table.meta.empty()) header["meta"] = table.meta;

    std::ofstream out = open_out(dir / name);
    if (json_format) {
        header["data"] = table.rows;
        out << header.dump(2) << '\n';
    } else {
        out << "# " << header.dump() << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out << ',';
                out << format_value(row[i]);
            }
            out << '\n';
        }
    }
    if (!out) throw std::runtime_error("failed writing " + name);
    return name;
}

std::string write_json(const std::filesystem::path& dir, const std::string& name,
                       const nlohmann::json& doc) {
    std::filesystem::create_directories(dir);
    std::ofstream out = open_out(dir / name);
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing " + name);
    return name;
}

void write_manifest(const std::filesystem::path& dir, const std::string& subcommand,
                    const nlohmann::json& parameters, const nlohmann::json& seed,
                    double duration_seconds, const nlohmann::json& results,
                    const std::vector<std::string>& outputs) {
    nlohmann::json doc;
    doc["subcommand"] = subcommand;
    doc["parameters"] = parameters;
    doc["seed"] = seed;
    doc["tool_version"] = kToolVersion;
    doc["duration_seconds"] = duration_seconds;
    if (!results.empty()) doc["results"] = results;
    doc["outputs"] = outputs;
    write_json(dir, "manifest.json", doc);
}

}  // namespace cli_output
