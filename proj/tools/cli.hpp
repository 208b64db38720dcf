#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "parasharp/initial_data.hpp"
#include "parasharp/nonlinearity.hpp"

namespace parasharp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitSolver = 3;

/// zero | const:c | linear:a | power:p | scaled-power:c:p
NonlinearitySpec parse_source(std::string_view text);

/// zero | sin:amplitude:wavenumber | w0:lambda | table:path
/// A table is a CSV file with header x,u,du and ascending x.
InitialDataSpec parse_data(std::string_view text);

/// start:step:stop, inclusive of stop up to rounding.
std::vector<double> parse_grid(std::string_view text);

/// Shortest form with 17 significant digits, locale independent.
std::string format_number(double v);

/// Runs one command line (without the program name). Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace parasharp::cli
