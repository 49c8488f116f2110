#pragma once

// Pieces shared by the serial and OpenMP drivers. Everything here works on a
// single candidate so the two drivers differ only in how they split the loop.

#include <cstdint>
#include <vector>

#include "k3lat/errors.hpp"
#include "k3lat/kernels.hpp"

namespace k3lat::kernels::detail {

using i128 = __int128;
using u128 = unsigned __int128;

inline i128 mul(i128 a, i128 b)
{
    i128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw Overflow("128-bit overflow in kernel arithmetic");
    return r;
}

inline i128 add(i128 a, i128 b)
{
    i128 r;
    if (__builtin_add_overflow(a, b, &r))
        throw Overflow("128-bit overflow in kernel arithmetic");
    return r;
}

inline i128 sub(i128 a, i128 b)
{
    i128 r;
    if (__builtin_sub_overflow(a, b, &r))
        throw Overflow("128-bit overflow in kernel arithmetic");
    return r;
}

inline i128 abs128(i128 a) { return a < 0 ? -a : a; }

inline i128 gcd128(i128 a, i128 b)
{
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline std::int64_t narrow(i128 v)
{
    if (v > INT64_MAX || v < INT64_MIN)
        throw Overflow("kernel value does not fit in 64 bits");
    return static_cast<std::int64_t>(v);
}

// floor(sqrt(v)) for v >= 0.
i128 isqrt(i128 v);

// --- box enumeration ---

struct Box {
    std::vector<std::int64_t> gram;
    std::size_t rank;
    std::int64_t norm;
    std::int64_t bound;
    std::uint64_t total; // (2*bound + 1)^rank
};

Box prepare_box(const BoxQuery& q);
// Appends matches with index in [begin, end) to out, in index order.
void scan_box(const Box& box, std::uint64_t begin, std::uint64_t end, std::vector<Coords>& out);

// --- prime search ---

std::uint64_t first_candidate(std::uint64_t min);
bool qualifies(std::uint64_t p, const std::vector<std::int64_t>& values);

// --- Lambda_2n scan ---

void validate(const LambdaScanQuery& q);
std::vector<std::array<std::int64_t, 3>> x_candidates(const LambdaScanQuery& q);
void scan_candidate(const LambdaScanQuery& q, const std::array<std::int64_t, 3>& x,
                    std::vector<LambdaScanHit>& out);

} // namespace k3lat::kernels::detail
