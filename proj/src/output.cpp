#include "paramosc/output.hpp"

#include "paramosc/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace paramosc {

namespace {

std::ofstream open_output(const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw InputError("cannot write " + path.string());
    }
    return out;
}

nlohmann::ordered_json header_json(const Header& header)
{
    nlohmann::ordered_json h;
    h["toolkit"] = "paramosc";
    h["version"] = PARAMOSC_VERSION;
    h["command"] = header.command;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : header.config) {
        cfg[k] = v;
    }
    h["config"] = cfg;
    return h;
}

nlohmann::ordered_json cell_json(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, double>) {
                format_number(v); // rejects non-finite values
                return v;
            } else {
                return v;
            }
        },
        c);
}

std::string cell_csv(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return {};
            } else if constexpr (std::is_same_v<T, double>) {
                return format_number(v);
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else {
                return v;
            }
        },
        c);
}

} // namespace

Format parse_format(const std::string& name)
{
    if (name == "csv") {
        return Format::csv;
    }
    if (name == "json") {
        return Format::json;
    }
    throw ConfigError("format must be csv or json, got '" + name + "'");
}

std::string to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

void Table::add(std::vector<Cell> row)
{
    if (row.size() != columns.size()) {
        throw Error("table row has " + std::to_string(row.size()) + " cells for " +
                    std::to_string(columns.size()) + " columns");
    }
    rows.push_back(std::move(row));
}

std::string format_number(double x)
{
    if (!std::isfinite(x)) {
        throw NumericalError("refusing to write a non-finite value");
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void ensure_directory(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw InputError("output directory " + dir.string() + " is not usable");
    }
}

std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& stem,
                                  const Table& table, const Header& header, Format format)
{
    ensure_directory(dir);
    if (format == Format::json) {
        nlohmann::ordered_json body;
        body["columns"] = table.columns;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& row : table.rows) {
            nlohmann::ordered_json r = nlohmann::ordered_json::array();
            for (const auto& c : row) {
                r.push_back(cell_json(c));
            }
            rows.push_back(std::move(r));
        }
        body["rows"] = std::move(rows);
        return write_json(dir, stem, body, header);
    }

    const auto path = dir / (stem + ".csv");
    std::string text = "# paramosc " PARAMOSC_VERSION "\n# command: " + header.command + "\n";
    for (const auto& [k, v] : header.config) {
        text += "# " + k + " = " + v + "\n";
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        text += (i ? "," : "") + table.columns[i];
    }
    text += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                text += ',';
            }
            text += cell_csv(row[i]);
        }
        text += "\n";
    }
    auto out = open_output(path);
    out << text;
    if (!out) {
        throw InputError("write failed for " + path.string());
    }
    return path;
}

std::filesystem::path write_json(const std::filesystem::path& dir, const std::string& stem,
                                 const nlohmann::ordered_json& body, const Header& header)
{
    ensure_directory(dir);
    nlohmann::ordered_json doc;
    doc["header"] = header_json(header);
    for (const auto& [k, v] : body.items()) {
        doc[k] = v;
    }
    const auto path = dir / (stem + ".json");
    auto out = open_output(path);
    out << doc.dump(2) << "\n";
    if (!out) {
        throw InputError("write failed for " + path.string());
    }
    return path;
}

} // namespace paramosc
