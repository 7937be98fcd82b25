#include "fibdir/cli/report.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <stdexcept>

namespace fibdir::cli {
namespace {

std::string csv_field(const std::string& raw)
{
    if (raw.find_first_of(",\"\r\n") == std::string::npos) {
        return raw;
    }
    std::string out = "\"";
    for (char c : raw) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string cell_text(const Cell& cell, int precision)
{
    return std::visit(
        [&](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) {
                return v;
            } else if constexpr (std::is_same_v<T, double>) {
                return format_real(v, precision);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, BigInt>) {
                return v.get_str();
            } else {
                return std::to_string(v);
            }
        },
        cell);
}

nlohmann::ordered_json cell_json(const Cell& cell, int precision)
{
    return std::visit(
        [&](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) {
                    return nullptr;
                }
                return std::stod(format_real(v, precision));
            } else if constexpr (std::is_same_v<T, BigInt>) {
                if (v.fits_slong_p()) {
                    return static_cast<std::int64_t>(v.get_si());
                }
                return v.get_str();
            } else {
                return v;
            }
        },
        cell);
}

}  // namespace

std::string format_real(double v, int precision) { return fmt::format("{:.{}g}", v, precision); }

std::string to_csv(const Table& table, int precision)
{
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out += (i ? "," : "") + csv_field(table.columns[i]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw std::logic_error("report row width does not match the header of " + table.name);
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += (i ? "," : "") + csv_field(cell_text(row[i], precision));
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& table, int precision)
{
    nlohmann::ordered_json doc;
    doc["report"] = table.name;
    doc["columns"] = table.columns;
    auto samples = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw std::logic_error("report row width does not match the header of " + table.name);
        }
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            obj[table.columns[i]] = cell_json(row[i], precision);
        }
        samples.push_back(std::move(obj));
    }
    doc["samples"] = std::move(samples);
    return doc.dump(2) + "\n";
}

std::string emit(const Table& table, OutputFormat format, int precision)
{
    return format == OutputFormat::Json ? to_json(table, precision) : to_csv(table, precision);
}

}  // namespace fibdir::cli
