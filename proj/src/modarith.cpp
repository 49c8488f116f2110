#include "k3lat/modarith.hpp"

#include <limits>

namespace k3lat {

namespace {

const Integer kProvenBound("3317044064679887385961981");
constexpr unsigned kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

bool fits_u64(const Integer& n)
{
    return n >= 0 && n <= std::numeric_limits<std::uint64_t>::max();
}

void require_odd_prime(const Integer& p)
{
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw NotPrime(to_string(p) + " is not an odd prime");
}

} // namespace

bool is_prime(const Integer& n)
{
    if (n < 2)
        return false;
    if (fits_u64(n))
        return kernels::is_prime_u64(static_cast<std::uint64_t>(n));
    for (unsigned b : kBases)
        if (n % b == 0)
            return false;
    Integer d = n - 1;
    unsigned s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    for (unsigned base : kBases) {
        Integer x = pow_mod(base, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = x * x % n;
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

bool primality_is_proven(const Integer& n)
{
    return n < kProvenBound;
}

Integer pow_mod(Integer base, Integer exp, const Integer& mod)
{
    if (exp < 0)
        throw InvalidInput("negative exponent");
    return boost::multiprecision::powm(mod_floor(base, mod), exp, mod);
}

Integer inverse_mod(const Integer& a, const Integer& m)
{
    ExtendedGcd e = extended_gcd(mod_floor(a, m), m);
    if (e.g != 1)
        throw InvalidInput(to_string(a) + " is not invertible modulo " + to_string(m));
    return mod_floor(e.s, m);
}

int legendre(const Integer& a, const Integer& p)
{
    require_odd_prime(p);
    Integer r = mod_floor(a, p);
    if (r == 0)
        return 0;
    Integer e = pow_mod(r, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

Integer sqrt_mod_prime(const Integer& a_in, const Integer& p)
{
    require_odd_prime(p);
    const Integer a = mod_floor(a_in, p);
    if (a == 0)
        return 0;
    if (legendre(a, p) != 1)
        throw Unrepresentable(to_string(a_in) + " is not a square modulo " + to_string(p));
    Integer q = p - 1;
    unsigned s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    Integer z = 2;
    while (legendre(z, p) != -1)
        ++z;
    Integer m = s;
    Integer c = pow_mod(z, q, p);
    Integer t = pow_mod(a, q, p);
    Integer r = pow_mod(a, (q + 1) / 2, p);
    while (t != 1) {
        Integer i = 0, t2 = t;
        while (t2 != 1) {
            t2 = t2 * t2 % p;
            ++i;
        }
        Integer b = c;
        for (Integer j = 0; j < m - i - 1; ++j)
            b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    Integer other = p - r;
    return r < other ? r : other;
}

Integer crt(const std::vector<std::pair<Integer, Integer>>& residues)
{
    Integer x = 0, mod = 1;
    for (const auto& [r, m] : residues) {
        if (m < 1)
            throw InvalidInput("CRT moduli must be positive");
        if (gcd(mod, m) != 1)
            throw InvalidInput("CRT moduli are not pairwise coprime");
        // x + mod * k = r (mod m)
        Integer k = mod_floor((r - x) * inverse_mod(mod, m), m);
        x += mod * k;
        mod *= m;
        x = mod_floor(x, mod);
    }
    return x;
}

std::vector<Integer> prime_search(const QRConstraint& c, const Integer& min, std::size_t count,
                                  const PrimeSearchOptions& opts)
{
    if (count < 1)
        throw InvalidInput("prime search needs count >= 1");
    for (const auto& v : c.values)
        if (v == 0)
            throw InvalidInput("QR constraint values must be nonzero");
    if (opts.proven_only && opts.ceiling >= kProvenBound)
        throw InvalidInput("scan ceiling exceeds the range where primality is proven");

    const Integer start = min < 3 ? Integer(3) : min;
    bool small = fits_u64(opts.ceiling) && opts.ceiling < (Integer(1) << 62);
    for (const auto& v : c.values)
        small = small && v >= std::numeric_limits<std::int64_t>::min() &&
                v <= std::numeric_limits<std::int64_t>::max();

    std::vector<Integer> out;
    if (small && start <= opts.ceiling) {
        kernels::PrimeQuery q;
        for (const auto& v : c.values)
            q.values.push_back(static_cast<std::int64_t>(v));
        q.min = static_cast<std::uint64_t>(start);
        q.count = count;
        q.ceiling = static_cast<std::uint64_t>(opts.ceiling);
        auto r = kernels::qr_primes(q, opts.exec);
        for (auto p : r.primes)
            out.emplace_back(p);
    } else if (!small) {
        Integer p = start + mod_floor(1 - start, 8);
        for (; p <= opts.ceiling && out.size() < count; p += 8) {
            if (!is_prime(p))
                continue;
            bool ok = true;
            for (const auto& v : c.values)
                ok = ok && legendre(v, p) == 1;
            if (ok)
                out.push_back(p);
        }
    }
    if (out.size() < count)
        throw ScanCeiling("found " + std::to_string(out.size()) + " of " + std::to_string(count) +
                          " primes below the scan ceiling " + to_string(opts.ceiling));
    return out;
}

// --- representation by a form -------------------------------------------------

namespace {

Integer form_value(const IntMatrix& g, const IntVector& x)
{
    return dot(x, g * x);
}

// P with P^T G P diagonal mod p (columns of P are the new basis).
IntMatrix diagonalize_mod(const IntMatrix& g, const Integer& p, std::vector<Integer>& diag)
{
    const std::size_t n = g.rows();
    IntMatrix basis = IntMatrix::identity(n);
    auto gram = [&](const IntVector& a, const IntVector& b) { return mod_floor(dot(a, g * b), p); };
    std::vector<IntVector> cols;
    for (std::size_t j = 0; j < n; ++j)
        cols.push_back(basis.col(j));
    for (std::size_t i = 0; i < n; ++i) {
        if (gram(cols[i], cols[i]) == 0) {
            std::size_t j = i + 1;
            while (j < n && gram(cols[j], cols[j]) == 0)
                ++j;
            if (j < n) {
                std::swap(cols[i], cols[j]);
            } else {
                for (j = i + 1; j < n; ++j)
                    if (gram(cols[i], cols[j]) != 0)
                        break;
                if (j == n)
                    throw InvalidInput("form is degenerate modulo the prime");
                for (std::size_t r = 0; r < n; ++r)
                    cols[i][r] = mod_floor(cols[i][r] + cols[j][r], p);
            }
        }
        const Integer aii = gram(cols[i], cols[i]);
        const Integer inv = inverse_mod(aii, p);
        for (std::size_t j = i + 1; j < n; ++j) {
            Integer f = mod_floor(gram(cols[i], cols[j]) * inv, p);
            for (std::size_t r = 0; r < n; ++r)
                cols[j][r] = mod_floor(cols[j][r] - f * cols[i][r], p);
        }
    }
    diag.clear();
    for (std::size_t i = 0; i < n; ++i)
        diag.push_back(gram(cols[i], cols[i]));
    return IntMatrix::from_columns(cols);
}

// a1 s^2 + a2 t^2 = c mod p with c != 0; always solvable.
std::pair<Integer, Integer> solve_binary(const Integer& a1, const Integer& a2, const Integer& c,
                                         const Integer& p)
{
    const Integer inv2 = inverse_mod(a2, p);
    for (Integer s = 0; s < p; ++s) {
        Integer rhs = mod_floor((c - a1 * s * s) * inv2, p);
        if (rhs == 0 || legendre(rhs, p) == 1)
            return {s, sqrt_mod_prime(rhs, p)};
    }
    throw InternalConsistency("binary form failed to represent a nonzero value");
}

IntVector solve_mod_prime(const IntMatrix& g, const Integer& c_in, const Integer& p)
{
    const std::size_t n = g.rows();
    const Integer c = mod_floor(c_in, p);
    // Single-coordinate solutions first.
    if (c != 0)
        for (std::size_t i = 0; i < n; ++i) {
            Integer gii = mod_floor(g(i, i), p);
            if (gii == 0)
                continue;
            Integer r = mod_floor(c * inverse_mod(gii, p), p);
            if (legendre(r, p) == 1) {
                IntVector x(n);
                x[i] = sqrt_mod_prime(r, p);
                return x;
            }
        }
    std::vector<Integer> a;
    IntMatrix basis = diagonalize_mod(g, p, a);
    IntVector y(n);
    if (n == 1) {
        if (c == 0 || legendre(c * inverse_mod(a[0], p), p) != 1)
            throw Unrepresentable("rank-1 form does not represent the value modulo the prime");
        y[0] = sqrt_mod_prime(c * inverse_mod(a[0], p), p);
    } else if (c != 0) {
        auto [s, t] = solve_binary(a[0], a[1], c, p);
        y[0] = s;
        y[1] = t;
    } else {
        Integer r = mod_floor(-a[0] * inverse_mod(a[1], p), p);
        if (legendre(r, p) == 1) {
            y[0] = 1;
            y[1] = sqrt_mod_prime(r, p);
        } else if (n >= 3) {
            auto [s, t] = solve_binary(a[0], a[1], mod_floor(-a[2], p), p);
            y[0] = s;
            y[1] = t;
            y[2] = 1;
        } else {
            throw Unrepresentable("anisotropic binary form has no primitive zero modulo the prime");
        }
    }
    IntVector x = basis * y;
    for (auto& v : x)
        v = mod_floor(v, p);
    return x;
}

} // namespace

IntVector represent_value(const IntMatrix& g, const Integer& c, const Integer& ell, unsigned k)
{
    require_odd_prime(ell);
    if (!g.is_symmetric() || g.rows() == 0)
        throw InvalidInput("representation needs a nonempty symmetric Gram matrix");
    if (k < 1)
        throw InvalidInput("precision must be at least 1");
    if (mod_floor(determinant(g), ell) == 0)
        throw InvalidInput("Gram matrix is degenerate modulo " + to_string(ell));

    IntVector x = solve_mod_prime(g, c, ell);
    IntVector grad = g * x;
    std::size_t idx = grad.size();
    for (std::size_t i = 0; i < grad.size(); ++i)
        if (mod_floor(grad[i], ell) != 0) {
            idx = i;
            break;
        }
    if (idx == grad.size())
        throw InternalConsistency("solution modulo the prime has zero gradient");

    Integer pj = ell;  // ell^j
    for (unsigned j = 1; j < k; ++j) {
        Integer err = form_value(g, x) - c;
        if (err % pj != 0)
            throw InternalConsistency("Hensel step lost the congruence");
        Integer e = mod_floor(err / pj, ell);
        Integer delta = mod_floor(-e * inverse_mod(2 * (g * x)[idx], ell), ell);
        x[idx] += delta * pj;
        pj *= ell;
    }
    for (auto& v : x)
        v = mod_floor(v, pj);
    if (mod_floor(form_value(g, x) - c, pj) != 0)
        throw InternalConsistency("lifted vector does not represent the value");
    return x;
}

} // namespace k3lat
