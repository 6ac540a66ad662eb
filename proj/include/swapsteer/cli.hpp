#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace swapsteer {

/// Exit codes: 0 ok, 1 numerical failure, 2 parse or validation, 3 precondition,
/// 4 dimension mismatch, 5 resource guard.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace swapsteer
