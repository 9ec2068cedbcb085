#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace beamaudit
{
inline constexpr char const version_string[] = "0.1.0";

enum class ExitCode : int
{
    ok = 0,
    usage = 1,
    invalid_config = 2,
    runtime = 3,
    missing_file = 4,
    parse_failure = 5,
};

struct CommandOptions
{
    std::string subcommand;  //!< analyze | simulate | sweep | focal-scan
    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    unsigned workers{1};
    std::optional<std::string> out_dir;

    // sweep: parameter in config units; focal-scan: z range in cm
    std::optional<std::string> param;
    std::optional<double> from;
    std::optional<double> to;
    std::optional<std::size_t> steps;
};

/*!
 * Load the configuration, run one subcommand, and write its artifacts.
 * Diagnostics go to err; a short summary goes to out.
 */
ExitCode run_command(CommandOptions const& options, std::ostream& out,
                     std::ostream& err);
}  // namespace beamaudit
