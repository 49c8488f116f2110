#pragma once

// Data-parallel inner loops on machine words. Every kernel has a serial
// reference and an OpenMP version with identical, order-preserving output;
// the tests compare the two and bench/ times them.

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace k3lat::kernels {

enum class Exec { Serial, Parallel };

// All integer vectors x in the box |x_i| <= bound with x^T G x = norm, in
// lexicographic order (first coordinate most significant).
struct BoxQuery {
    std::vector<std::int64_t> gram; // row-major, rank x rank
    std::size_t rank = 0;
    std::int64_t norm = 0;
    std::int64_t bound = 1;
};

using Coords = std::vector<std::int64_t>;

std::vector<Coords> enumerate_box_serial(const BoxQuery& q);
std::vector<Coords> enumerate_box_parallel(const BoxQuery& q);
std::vector<Coords> enumerate_box(const BoxQuery& q, Exec exec);

// Primes p >= min, p = 1 mod 8, with (x|p) = 1 for every x in values.
// Scanning stops at `ceiling`; `exhausted` reports that fewer than `count`
// primes were found below it.
struct PrimeQuery {
    std::vector<std::int64_t> values;
    std::uint64_t min = 3;
    std::size_t count = 1;
    std::uint64_t ceiling = 1ULL << 40;
};

struct PrimeResult {
    std::vector<std::uint64_t> primes;
    bool exhausted = false;
};

PrimeResult qr_primes_serial(const PrimeQuery& q);
PrimeResult qr_primes_parallel(const PrimeQuery& q);
PrimeResult qr_primes(const PrimeQuery& q, Exec exec);

// Deterministic for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);
// Jacobi symbol (a|n), n odd positive.
int jacobi_u64(std::int64_t a, std::uint64_t n);

// Pairs (x, y) in Lambda_2n = <2n> + U (basis e, f, g) with x^2 = q11,
// x.y = q12, y^2 = q22 and primitive span. The candidate order is
//   x: (0, 1, q11/2) first, then shells max(|x_e|, |x_f|) = 0..bound with
//      x_f != 0, lexicographic within a shell;
//   y: y_e = 0, 1, -1, 2, -2, ..., then the larger root y_f first.
// `t` is minus half the norm of the primitive generator of the orthogonal
// complement of span(x, y).
struct LambdaScanQuery {
    std::int64_t n = 1;
    std::int64_t q11 = 2, q12 = 0, q22 = 2;
    std::int64_t bound = 8;
    bool fixed_x_only = false;
};

struct LambdaScanHit {
    std::array<std::int64_t, 3> x{}, y{};
    std::int64_t t = 0;
};

std::vector<LambdaScanHit> lambda_scan_serial(const LambdaScanQuery& q);
std::vector<LambdaScanHit> lambda_scan_parallel(const LambdaScanQuery& q);
std::vector<LambdaScanHit> lambda_scan(const LambdaScanQuery& q, Exec exec);

int worker_count();

} // namespace k3lat::kernels
