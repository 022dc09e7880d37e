#ifndef OPTVOL_CLI_HPP
#define OPTVOL_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace optvol {

/// Command-line front end. Exit codes: 0 success, 1 usage, 2 parse or
/// validation error, 3 numerical error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace optvol

#endif
