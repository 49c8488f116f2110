#pragma once

// Legendre symbols, square roots modulo primes, CRT, the QR-constrained
// prime search and representation of values by a form modulo ell^k.

#include <utility>
#include <vector>

#include "k3lat/integer.hpp"
#include "k3lat/kernels.hpp"

namespace k3lat {

// Miller-Rabin with the first 13 prime bases. The answer is proven for
// n < 3317044064679887385961981; above that it is probabilistic.
bool is_prime(const Integer& n);
bool primality_is_proven(const Integer& n);

Integer pow_mod(Integer base, Integer exp, const Integer& mod);
// Inverse of a modulo m; throws when gcd(a, m) != 1.
Integer inverse_mod(const Integer& a, const Integer& m);

// Throws NotPrime unless p is an odd prime.
int legendre(const Integer& a, const Integer& p);

// Tonelli-Shanks. Returns the smaller of the two roots in [0, p).
Integer sqrt_mod_prime(const Integer& a, const Integer& p);

// Unique solution in [0, prod m_i) for pairwise coprime moduli.
Integer crt(const std::vector<std::pair<Integer, Integer>>& residues);

struct QRConstraint {
    std::vector<Integer> values;
};

struct PrimeSearchOptions {
    Integer ceiling = Integer(1) << 40;
    kernels::Exec exec = kernels::Exec::Parallel;
    // Refuse candidates whose primality would only be probable.
    bool proven_only = false;
};

// First `count` primes ell >= min with ell = 1 mod 8 and (x|ell) = 1 for
// every constraint value, ascending. Throws ScanCeiling when the ceiling is
// reached first.
std::vector<Integer> prime_search(const QRConstraint& c, const Integer& min, std::size_t count,
                                  const PrimeSearchOptions& opts = {});

// x with x^T G x = c mod ell^k and x != 0 mod ell, coordinates in
// [0, ell^k). The solution mod ell is lifted along the first coordinate with
// nonzero gradient, so raising k only appends ell-adic digits.
IntVector represent_value(const IntMatrix& g, const Integer& c, const Integer& ell, unsigned k);

} // namespace k3lat
