#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tropmed {

// Entry point of the tropmedian tool. Returns 0 on success, 1 on domain
// errors (bad input data, infeasible instances), 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace tropmed
