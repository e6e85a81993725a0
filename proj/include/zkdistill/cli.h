#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zkd::cli {

enum class OutputFormat { json, csv, text };

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

struct CliConfig {
    OutputFormat format = OutputFormat::text;
    std::optional<std::string> mek_params_path;
    double bisection_tol = 1e-12;
    size_t exhaustive_limit = 25;
    size_t parallel_degree = 1;  // 0 means one worker per hardware thread
};

/// `key = value` lines; blank lines and lines starting with '#' are skipped.
std::map<std::string, std::string> parse_config_text(std::string_view text);

/// Applies recognized keys (format, mek_params, bisection_tol,
/// exhaustive_limit, parallel) on top of `config`. Throws
/// std::invalid_argument for unknown keys or bad values.
void apply_settings(CliConfig &config, const std::map<std::string, std::string> &settings);

using EnvLookup = std::function<std::optional<std::string>(const std::string &)>;

/// Defaults, then the config file, then ZKD_* environment variables. Flags
/// are applied afterwards by `dispatch`.
CliConfig resolve_config(const std::optional<std::string> &config_path, const EnvLookup &env);

OutputFormat parse_output_format(std::string_view text);

/// Runs one subcommand. Returns 0 on success, 1 on a domain error and 2 on
/// a usage error.
int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err,
             const EnvLookup &env = nullptr);
int dispatch(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace zkd::cli
