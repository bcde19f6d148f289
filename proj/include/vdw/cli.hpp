#pragma once

// Command-line front end: curve, powerlaw, table1 and verify subcommands.
//
// Exit codes: 0 success, 1 input error, 2 numerical warning (unconverged
// quadrature, sign change in a fit window, failed table rows). verify exits
// with the number of failed checks.

#include <iosfwd>
#include <string>
#include <string_view>

#include "vdw/potentials.hpp"

namespace vdw {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// CSV with header R,component,U,error,converged; numbers in scientific
/// notation with 17 significant digits, '\n' line endings.
std::string curve_csv(const PotentialCurve& curve);

/// Reads the R and U columns of a curve written by curve_csv. Throws
/// std::invalid_argument with the offending line number.
PotentialCurve parse_curve_csv(std::string_view text);

/// "%.16e" rendered independently of the C locale.
std::string format_sci17(double v);

}  // namespace vdw
