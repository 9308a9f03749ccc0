#include "idealfunc/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "idealfunc/parallel.hpp"

namespace idealfunc {

std::string format_number(double v)
{
    if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15) {
        return std::to_string(static_cast<long long>(v));
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

unsigned threads_from_environment()
{
    const char* env = std::getenv("IDEALFUNC_THREADS");
    if (!env || !*env) return 1;
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1) return 1;
    return static_cast<unsigned>(n > 256 ? 256 : n);
}

} // namespace idealfunc
