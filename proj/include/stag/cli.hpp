#ifndef STAG_CLI_HPP
#define STAG_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace stag {

/// Runs the command line `args` (program name excluded). Returns 0 on
/// success, 1 when no translation or parse was found, 2 on bad input or a
/// bad grammar.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stag

#endif
