#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

namespace fibdir::cli {

enum class OutputFormat { Csv, Json };

/// Name of the environment variable that supplies the cache path.
inline constexpr const char* kCacheEnvVar = "FIBDIR_CACHE";

struct Config {
    std::filesystem::path cache_path;  ///< empty: no persistent cache
    std::uint64_t factor_budget = 20'000'000;
    std::uint64_t default_n_max = 24;
    std::uint64_t ep_max = 60;         ///< largest x for factorization-based asymptotic rows
    OutputFormat output_format = OutputFormat::Csv;
    int precision = 12;
};

/// Values given explicitly on the command line.
struct ConfigOverrides {
    std::optional<std::filesystem::path> cache_path;
    std::optional<std::uint64_t> factor_budget;
    std::optional<OutputFormat> output_format;
    std::optional<int> precision;
};

using EnvLookup = std::function<std::optional<std::string>(const char*)>;

/// Precedence: command-line flag, then environment (cache path only), then
/// config file, then built-in defaults. Throws std::runtime_error on an
/// unreadable or malformed config file.
Config resolve_config(const ConfigOverrides& overrides, const EnvLookup& env,
                      const std::optional<std::filesystem::path>& config_file);

std::optional<OutputFormat> parse_format(std::string_view name);

}  // namespace fibdir::cli
