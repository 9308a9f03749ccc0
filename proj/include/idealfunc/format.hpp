#pragma once
#include <string>

namespace idealfunc {

// Locale-independent, deterministic rendering: integral values below 1e15
// print without a fraction, everything else as the shortest round-trip form.
std::string format_number(double v);

} // namespace idealfunc
