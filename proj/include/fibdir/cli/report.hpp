#pragma once

#include "fibdir/bigint.hpp"
#include "fibdir/cli/config.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace fibdir::cli {

using Cell = std::variant<std::string, std::int64_t, std::uint64_t, double, bool, BigInt>;

/// A named, ordered table of report rows. Rows are emitted in the order
/// held; callers sort before emission when rows were produced in parallel.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Header row then one line per row; fields quoted when they contain a
/// comma, quote or line break; reals printed with `precision` significant digits.
std::string to_csv(const Table& table, int precision);

/// {"report": name, "columns": [...], "samples": [{column: value, ...}, ...]}.
/// Integers outside the signed 64-bit range are emitted as strings.
std::string to_json(const Table& table, int precision);

std::string emit(const Table& table, OutputFormat format, int precision);

std::string format_real(double v, int precision);

}  // namespace fibdir::cli
