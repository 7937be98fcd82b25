#include "fibdir/cli/config.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace fibdir::cli {

std::optional<OutputFormat> parse_format(std::string_view name)
{
    if (name == "csv") {
        return OutputFormat::Csv;
    }
    if (name == "json") {
        return OutputFormat::Json;
    }
    return std::nullopt;
}

Config resolve_config(const ConfigOverrides& overrides, const EnvLookup& env,
                      const std::optional<std::filesystem::path>& config_file)
{
    Config cfg;
    if (config_file) {
        std::ifstream in(*config_file);
        if (!in) {
            throw std::runtime_error("cannot read config file " + config_file->string());
        }
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::runtime_error("malformed config file " + config_file->string() + ": " + e.what());
        }
        if (doc.contains("cache_path")) {
            cfg.cache_path = doc.at("cache_path").get<std::string>();
        }
        cfg.factor_budget = doc.value("factor_budget", cfg.factor_budget);
        cfg.default_n_max = doc.value("n_max", cfg.default_n_max);
        cfg.ep_max = doc.value("ep_max", cfg.ep_max);
        cfg.precision = doc.value("precision", cfg.precision);
        if (doc.contains("output_format")) {
            auto fmt = parse_format(doc.at("output_format").get<std::string>());
            if (!fmt) {
                throw std::runtime_error("config output_format must be csv or json");
            }
            cfg.output_format = *fmt;
        }
    }
    if (auto from_env = env ? env(kCacheEnvVar) : std::nullopt; from_env && !from_env->empty()) {
        cfg.cache_path = *from_env;
    }
    if (overrides.cache_path) {
        cfg.cache_path = *overrides.cache_path;
    }
    if (overrides.factor_budget) {
        cfg.factor_budget = *overrides.factor_budget;
    }
    if (overrides.output_format) {
        cfg.output_format = *overrides.output_format;
    }
    if (overrides.precision) {
        cfg.precision = *overrides.precision;
    }
    if (cfg.precision < 1 || cfg.precision > 40) {
        throw std::runtime_error("precision must be between 1 and 40 digits");
    }
    return cfg;
}

}  // namespace fibdir::cli
