// Command-line front end. Exit codes: 0 pass, 1 check or validation
// failure, 2 usage or parse error, 3 internal error.

#ifndef AMBIG_CLI_H_
#define AMBIG_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace ambig {

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ambig

#endif  // AMBIG_CLI_H_
