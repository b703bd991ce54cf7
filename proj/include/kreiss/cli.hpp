#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kreiss/resolvent.hpp"

namespace kreiss::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kFailingRows = 1,       // some inequality row has pass=false
  kBadInput = 2,          // unparsable file, flag or grid
  kNonConvergence = 3,    // eigenvalue iteration did not converge
  kHypothesis = 4,        // instance violates an inequality's hypothesis
  kInternal = 5,          // any other error
};

/// Runs the tool on `args` (without the program name). The report goes to `out`
/// unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "2..16" (inclusive range) or "2,4,8". Throws std::invalid_argument.
std::vector<int> parse_int_list(const std::string& text);
/// "0.5,0.9"; "inf" is accepted. Throws std::invalid_argument.
std::vector<double> parse_real_list(const std::string& text);

/// SVG heatmap with one <rect> per grid cell, colored by log10 of the value.
std::string heatmap_svg(const ResolventHeatmap& map, const std::string& title);

}  // namespace kreiss::cli
