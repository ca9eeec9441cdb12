#ifndef QPC_INTS_HPP
#define QPC_INTS_HPP

#include <cstdint>
#include <cmath>
#include <optional>

namespace qpc {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

// Overflow-checked i128 ops. Bareiss intermediates are minors of the input
// matrix; they can outgrow 128 bits for large entries, in which case the
// caller falls back to arbitrary precision.
inline bool mul_overflows(i128 a, i128 b, i128& out) {
    return __builtin_mul_overflow(a, b, &out);
}
inline bool sub_overflows(i128 a, i128 b, i128& out) {
    return __builtin_sub_overflow(a, b, &out);
}
inline bool add_overflows(i128 a, i128 b, i128& out) {
    return __builtin_add_overflow(a, b, &out);
}

// floor(sqrt(x)) for x >= 0, exact.
inline i64 isqrt(i128 x) {
    if (x < 0) return -1;
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(x)));
    while (r > 0 && static_cast<i128>(r) * r > x) --r;
    while (static_cast<i128>(r + 1) * (r + 1) <= x) ++r;
    return r;
}

// Returns sqrt(x) when x is a perfect square.
inline std::optional<i64> perfect_sqrt(i128 x) {
    if (x < 0) return std::nullopt;
    i64 r = isqrt(x);
    if (static_cast<i128>(r) * r == x) return r;
    return std::nullopt;
}

inline u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace qpc

#endif
