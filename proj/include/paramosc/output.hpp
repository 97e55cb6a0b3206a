#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace paramosc {

enum class Format { csv, json };

Format parse_format(const std::string& name);
std::string to_string(Format f);

/// Empty cells stand for quantities that do not exist at that point.
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

struct Header {
    std::string command;
    std::map<std::string, std::string> config;
};

/// %.17g; throws NumericalError for non-finite values.
std::string format_number(double x);

/// Writes <dir>/<stem>.csv or .json and returns the path. CSV files begin
/// with '#' comment lines holding the version and the resolved config.
std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& stem,
                                  const Table& table, const Header& header, Format format);

/// Writes <dir>/<stem>.json with {"header": ..., <body fields>}.
std::filesystem::path write_json(const std::filesystem::path& dir, const std::string& stem,
                                 const nlohmann::ordered_json& body, const Header& header);

void ensure_directory(const std::filesystem::path& dir);

} // namespace paramosc
