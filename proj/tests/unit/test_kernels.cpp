#include <doctest.h>

#include "k3lat/kernels.hpp"
#include "oracles.hpp"

using namespace k3lat::kernels;

TEST_CASE("box enumeration: serial and parallel agree")
{
    oracle::Rng rng(101);
    for (int iter = 0; iter < 30; ++iter) {
        BoxQuery q;
        q.rank = rng.uniform(1, 4);
        for (std::size_t i = 0; i < q.rank; ++i)
            for (std::size_t j = 0; j < q.rank; ++j)
                q.gram.push_back(0);
        for (std::size_t i = 0; i < q.rank; ++i)
            for (std::size_t j = i; j < q.rank; ++j) {
                long long v = i == j ? 2 * rng.uniform(-3, 3) : rng.uniform(-3, 3);
                q.gram[i * q.rank + j] = v;
                q.gram[j * q.rank + i] = v;
            }
        q.norm = 2 * rng.uniform(-3, 3);
        q.bound = rng.uniform(1, 5);
        auto s = enumerate_box_serial(q);
        auto p = enumerate_box_parallel(q);
        CHECK(s == p);
        for (const auto& x : s) {
            long long n = 0;
            for (std::size_t i = 0; i < q.rank; ++i)
                for (std::size_t j = 0; j < q.rank; ++j)
                    n += q.gram[i * q.rank + j] * x[i] * x[j];
            CHECK(n == q.norm);
        }
    }
    BoxQuery huge;
    huge.rank = 1;
    huge.gram = {1LL << 50};
    CHECK_THROWS_AS(enumerate_box_serial(huge), k3lat::Overflow);
}

TEST_CASE("prime kernel: serial and parallel agree")
{
    PrimeQuery q;
    q.values = {2, -1, 3};
    q.count = 200;
    auto s = qr_primes_serial(q);
    auto p = qr_primes_parallel(q);
    CHECK(s.primes == p.primes);
    CHECK_FALSE(s.exhausted);
    q.ceiling = 1000;
    auto e = qr_primes_parallel(q);
    CHECK(e.exhausted);
    CHECK(e.primes == qr_primes_serial(q).primes);
}

TEST_CASE("Jacobi symbols and primality on machine words")
{
    CHECK(jacobi_u64(-1, 5) == 1);
    CHECK(jacobi_u64(-1, 3) == -1);
    CHECK(jacobi_u64(2, 15) == 1);
    // -2^63 modulo the largest 64-bit prime is a non-residue (Euler's criterion).
    CHECK(jacobi_u64(INT64_MIN, 18446744073709551557ULL) == -1);
    CHECK(is_prime_u64(18446744073709551557ULL));
    CHECK_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
    CHECK_THROWS_AS(jacobi_u64(1, 4), k3lat::InvalidInput);
}

TEST_CASE("Lambda_2n scan: serial and parallel agree")
{
    for (long long n : {1, 2, 3, 5, 17, 26}) {
        for (long long lsq : {2, 4, 6}) {
            LambdaScanQuery q;
            q.n = n;
            q.q11 = 2;
            q.q12 = 0;
            q.q22 = lsq;
            q.bound = 12;
            auto s = lambda_scan_serial(q);
            auto p = lambda_scan_parallel(q);
            CHECK(s.size() == p.size());
            for (std::size_t i = 0; i < s.size() && i < p.size(); ++i) {
                CHECK(s[i].x == p[i].x);
                CHECK(s[i].y == p[i].y);
                CHECK(s[i].t == p[i].t);
            }
            for (const auto& h : s) {
                auto pair = [&](const std::array<std::int64_t, 3>& a,
                                const std::array<std::int64_t, 3>& b) {
                    return 2 * n * a[0] * b[0] + a[1] * b[2] + a[2] * b[1];
                };
                CHECK(pair(h.x, h.x) == 2);
                CHECK(pair(h.x, h.y) == 0);
                CHECK(pair(h.y, h.y) == lsq);
                CHECK(h.t > 0);
            }
        }
    }
}

TEST_CASE("Lambda_10 scan finds the worked witness first")
{
    LambdaScanQuery q;
    q.n = 5;
    q.q11 = 2;
    q.q22 = 2;
    q.bound = 8;
    auto hits = lambda_scan_serial(q);
    REQUIRE_FALSE(hits.empty());
    CHECK(hits.front().x == std::array<std::int64_t, 3>{0, 1, 1});
    CHECK(hits.front().y == std::array<std::int64_t, 3>{1, 2, -2});
    CHECK(hits.front().t == 5);
}
