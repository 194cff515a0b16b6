#pragma once

#include <string>

#include "survest/population.hpp"

namespace survest {

/// Parses a summary-constants file: key=value lines, UTF-8, '#' comments and
/// blank lines ignored. Required keys: N, n, Ybar, Xbar, Sx2, Sy2, rho, R,
/// Rstar_bar. Unknown or duplicate keys are rejected (ParseError).
SummaryParams params_from_text(const std::string& text);
SummaryParams load_params_file(const std::string& path);

}  // namespace survest
