#include <doctest.h>

#include "k3lat/modarith.hpp"
#include "oracles.hpp"

using namespace k3lat;

namespace {

// Euler's criterion by repeated multiplication, no fast exponentiation.
int slow_legendre(long long a, long long p)
{
    long long r = ((a % p) + p) % p;
    if (r == 0)
        return 0;
    for (long long x = 1; x < p; ++x)
        if (x * x % p == r)
            return 1;
    return -1;
}

bool slow_prime(long long n)
{
    if (n < 2)
        return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

} // namespace

TEST_CASE("legendre symbols")
{
    CHECK(legendre(-1, 5) == 1);
    CHECK(legendre(-1, 3) == -1);
    CHECK(legendre(2, 17) == 1);
    CHECK_THROWS_AS(legendre(1, 9), NotPrime);
    CHECK_THROWS_AS(legendre(1, 2), NotPrime);
    for (long long p : {3, 5, 7, 11, 13, 101, 103})
        for (long long a = -30; a <= 30; ++a)
            CHECK(legendre(a, p) == slow_legendre(a, p));
}

TEST_CASE("square roots modulo primes")
{
    CHECK(sqrt_mod_prime(4, 7) == 2);
    CHECK(sqrt_mod_prime(-1, 5) == 2);
    CHECK(sqrt_mod_prime(2, 17) == 6);
    CHECK_THROWS_AS(sqrt_mod_prime(3, 7), Unrepresentable);
    for (long long p = 3; p < 10000; p += 2) {
        if (!slow_prime(p))
            continue;
        for (long long a : {1LL, 2LL, p - 1, 5LL, 12345LL % p, (p * p - 3) % p}) {
            if (slow_legendre(a, p) != 1)
                continue;
            Integer r = sqrt_mod_prime(a, p);
            CHECK(r * r % p == a % p);
            CHECK(2 * r <= p);
        }
    }
}

TEST_CASE("crt")
{
    CHECK(crt({{1, 4}, {2, 5}}) == 17);
    CHECK(crt({{0, 9}}) == 0);
    CHECK(crt({{1, 4}, {0, 5}, {2, 7}}) == 65);
    CHECK_THROWS_AS(crt({{1, 4}, {1, 6}}), InvalidInput);
    oracle::Rng rng(9);
    for (int i = 0; i < 200; ++i) {
        long long m1 = rng.uniform(1, 50), m2 = rng.uniform(1, 50);
        if (std::gcd(m1, m2) != 1)
            continue;
        long long r1 = rng.uniform(-100, 100), r2 = rng.uniform(-100, 100);
        Integer x = crt({{r1, m1}, {r2, m2}});
        CHECK(mod_floor(x - r1, m1) == 0);
        CHECK(mod_floor(x - r2, m2) == 0);
        CHECK(x >= 0);
        CHECK(x < m1 * m2);
    }
}

TEST_CASE("primality")
{
    for (long long n = 0; n < 3000; ++n)
        CHECK(is_prime(n) == slow_prime(n));
    CHECK(is_prime(Integer("18446744073709551557")));  // largest 64-bit prime
    CHECK_FALSE(is_prime(Integer("18446744073709551617")));  // 2^64 + 1
    CHECK(is_prime(Integer("170141183460469231731687303715884105727")));  // 2^127 - 1
    CHECK(primality_is_proven(Integer("18446744073709551557")));
    CHECK_FALSE(primality_is_proven(Integer("170141183460469231731687303715884105727")));
}

TEST_CASE("QR-constrained prime search")
{
    CHECK(prime_search({{2, -1}}, 3, 1) == std::vector<Integer>{17});
    CHECK(prime_search({{}}, 3, 1) == std::vector<Integer>{17});
    CHECK(prime_search({{-2}}, 3, 1) == std::vector<Integer>{17});
    auto ps = prime_search({{3, 5, -7}}, 3, 10);
    CHECK(ps.size() == 10);
    CHECK(std::is_sorted(ps.begin(), ps.end()));
    Integer prev = 0;
    for (const auto& p : ps) {
        CHECK(p % 8 == 1);
        CHECK(slow_prime(static_cast<long long>(p)));
        for (long long v : {3, 5, -7})
            CHECK(slow_legendre(v, static_cast<long long>(p)) == 1);
        // Nothing was skipped between consecutive hits.
        for (long long q = static_cast<long long>(prev) + 1; q < p; ++q)
            if (q % 8 == 1 && slow_prime(q) && q >= 3)
                CHECK_FALSE((slow_legendre(3, q) == 1 && slow_legendre(5, q) == 1 &&
                             slow_legendre(-7, q) == 1));
        prev = p;
    }
    PrimeSearchOptions tight;
    tight.ceiling = 100;
    CHECK_THROWS_AS(prime_search({{2}}, 3, 50, tight), ScanCeiling);
    CHECK_THROWS_AS(prime_search({{0}}, 3, 1), InvalidInput);
    // Multiprecision path above the machine-word range.
    PrimeSearchOptions big;
    big.ceiling = Integer(1) << 70;
    auto hi = prime_search({{-1}}, Integer(1) << 64, 1, big);
    CHECK(hi.front() % 8 == 1);
    CHECK(is_prime(hi.front()));
    CHECK(legendre(-1, hi.front()) == 1);
}

TEST_CASE("representing values modulo prime powers")
{
    IntMatrix g = IntMatrix::from_rows({{2, 0}, {0, -2}});
    CHECK(represent_value(g, 1, 7, 1) == IntVector{2, 0});
    CHECK(represent_value(IntMatrix::from_rows({{2}}), 2, 11, 3) == IntVector{1});
    IntVector x = represent_value(g, -2, 7, 3);
    CHECK(mod_floor(dot(x, g * x) + 2, 343) == 0);
    CHECK_THROWS_AS(represent_value(IntMatrix::from_rows({{2}}), 3, 7, 1), Unrepresentable);
    CHECK_THROWS_AS(represent_value(IntMatrix::from_rows({{7}}), 1, 7, 1), InvalidInput);
    CHECK_THROWS_AS(represent_value(g, 1, 9, 1), NotPrime);

    oracle::Rng rng(77);
    for (int iter = 0; iter < 60; ++iter) {
        const long long ell = iter % 2 ? 7 : 11;
        auto gm = rng.even_gram(rng.uniform(2, 4), 20);
        IntMatrix gg = IntMatrix::from_rows(gm);
        if (mod_floor(determinant(gg), ell) == 0)
            continue;
        long long c = iter % 3 == 0 ? 1 : -2 * rng.uniform(1, 5);
        Integer mod = 1;
        for (int k = 0; k < 10; ++k)
            mod *= ell;
        IntVector sol = represent_value(gg, c, ell, 10);
        CHECK(mod_floor(dot(sol, gg * sol) - c, mod) == 0);
        // One more digit of precision extends the same solution.
        IntVector next = represent_value(gg, c, ell, 11);
        for (std::size_t i = 0; i < sol.size(); ++i)
            CHECK(mod_floor(next[i] - sol[i], mod) == 0);
    }
}
