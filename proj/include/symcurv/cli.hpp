#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symcurv {

/// Exit codes: 0 success, 1 a check failed, 2 unknown or unsupported input,
/// 3 parse error (bad arguments or descriptors).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symcurv
