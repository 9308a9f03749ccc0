#pragma once
#include <cstdint>
#include <stdexcept>

namespace idealfunc {

inline int64_t checked_mul(int64_t a, int64_t b)
{
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
    return r;
}

inline uint64_t checked_mul(uint64_t a, uint64_t b)
{
    uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
    return r;
}

inline int64_t checked_add(int64_t a, int64_t b)
{
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
    return r;
}

inline int64_t checked_sub(int64_t a, int64_t b)
{
    int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in subtraction");
    return r;
}

template <class T>
T checked_pow(T base, unsigned e)
{
    T r = 1;
    for (unsigned i = 0; i < e; ++i) r = checked_mul(r, base);
    return r;
}

} // namespace idealfunc
