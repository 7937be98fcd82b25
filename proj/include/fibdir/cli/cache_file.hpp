#pragma once

#include "fibdir/rank_cache.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fibdir::cli {

/// A malformed or inconsistent cache line; carries the 1-based line number.
class CacheFormatError : public std::runtime_error {
public:
    CacheFormatError(std::size_t line, const std::string& what)
        : std::runtime_error("cache line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// One record per line:
///   n=12 factors=2^4,3^2 rank=12 entry_exponent=1
/// An empty factor list (a_n = 1) is written as factors=1.
std::string format_record(const CacheRecord& record);
CacheRecord parse_record(std::string_view line, std::size_t line_number);

/// Checks the record against the Fibonacci numbers: the factors multiply to
/// a_n and are prime, n | a_rank with no proper rank/q working, and
/// n^e | a_rank but n^{e+1} does not. Returns an explanation on failure.
std::optional<std::string> validate_record(const CacheRecord& record);

/// Parses and validates every line; '#' comments and blank lines are skipped.
std::vector<CacheRecord> parse_cache(std::string_view text);
std::string format_cache(std::vector<CacheRecord> records);

std::vector<CacheRecord> read_cache(const std::filesystem::path& path);
void write_cache(const std::filesystem::path& path, const std::vector<CacheRecord>& records);

}  // namespace fibdir::cli
