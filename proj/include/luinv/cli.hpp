// cli.hpp: the `luinv` command-line front end.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace luinv::cli {

enum ExitCode : int {
    kOk = 0,
    kInputError = 1,
    kNumericalError = 2,
};

/// Runs one subcommand. `args` excludes the program name. Data goes to `out`
/// (or to --out files), diagnostics to `err`; `in` backs the "-" file name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace luinv::cli
