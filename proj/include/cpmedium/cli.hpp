#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cpmedium::cli {

/// `args` excludes the program name. Exit codes: 0 converged, 2 some result did not converge (still written,
/// flagged), 1 usage, domain or integrity error (message on `err`).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Renders v with 9 significant digits, independent of the global locale.
std::string format_number(double v);

}  // namespace cpmedium::cli
