#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cheblab/poly.hpp"

namespace cheblab {

/// Exit statuses of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitNumerical = 1, kExitUsage = 2 };

/// Comma-separated ascending real coefficients ("1,0,-2"), or a JSON array
/// whose entries are numbers or [re, im] pairs ("[[1,0],[0,1]]").
Polynomial parse_poly_spec(std::string_view text);

/// "x,y" as the complex number x + iy; a single value means y = 0.
cplx parse_point(std::string_view text);

/// Parses args (without the program name), runs one command and writes the
/// document to out and diagnostics to err. Returns an ExitCode.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cheblab
