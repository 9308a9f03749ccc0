#pragma once
#include <iosfwd>
#include <string>
#include <vector>

namespace idealfunc::cli {

// Exit codes: 0 success, 1 usage or input error, 2 verification failure.
// `args` excludes the program name. Worker count comes from IDEALFUNC_THREADS.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace idealfunc::cli
