#ifndef QUARTIC_CLI_HPP
#define QUARTIC_CLI_HPP

#include "quartic/form.hpp"
#include "quartic/report.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace quartic {

/** Exit codes shared by all subcommands. */
namespace cli_exit {
constexpr int ok = 0;
constexpr int non_hyperbolic = 2; ///< valid input with no hyperbolic points
constexpr int numerical_failure = 3;
constexpr int usage_error = 64;
constexpr int parse_error = 65;
} // namespace cli_exit

/** The fully parsed command line.  Exactly one input source is set for the
 *  subcommands that take a quartic; tolerance overrides must be positive. */
struct CliConfig {
    enum class Source { None, LK, Coefficients, File };

    std::string subcommand;
    Source source = Source::None;
    double L = 0.0;
    double K = 0.0;
    std::array<double, 5> coefficients{};
    std::string input_path;
    std::optional<Point2> hint;
    std::optional<double> region_tolerance; ///< overrides QUARTIC_MODULI_TOL
    std::string out_path; ///< empty or "-" = stdout
    std::string csv_path; ///< analyze/flow CSV target
    int samples = 200;    ///< analyze CSV rows
    double t_end = 0.0;   ///< flow integration time
    std::optional<double> stop_at_l; ///< flow stopping event
    double reduce_k = 0.0;
    PortraitConfig portrait;
    bool timing = false;
};

/** Parse a decimal ("0.25") or an exact fraction ("1/4", "-25/72"), so
 *  boundary values can be hit to the last ulp.  Throws DomainError on
 *  malformed input; the CLI maps that to exit code 65. */
double parse_real_or_fraction(const std::string& text);

/** Run the CLI.  `args` excludes the program name.  Returns the exit code. */
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

} // namespace quartic

#endif // QUARTIC_CLI_HPP
