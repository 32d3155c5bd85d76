#ifndef QQ_CLI_HPP
#define QQ_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace qq {

/// Command-line front end. `args` excludes the program name. Returns the
/// process exit code: 0 success, 1 verification or convergence failure,
/// 2 invalid input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qq

#endif
