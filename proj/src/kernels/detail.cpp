#include "detail.hpp"

#include <cmath>

namespace k3lat::kernels::detail {

i128 isqrt(i128 v)
{
    if (v < 0)
        throw InternalConsistency("isqrt of a negative value");
    if (v < 2)
        return v;
    i128 x = static_cast<i128>(std::sqrt(static_cast<long double>(v)));
    while (x > 0 && x > v / x)
        --x;
    while ((x + 1) <= v / (x + 1))
        ++x;
    return x;
}

// --- box enumeration ---------------------------------------------------------

namespace {
constexpr std::int64_t kMaxGramEntry = std::int64_t{1} << 40;
constexpr std::int64_t kMaxBound = std::int64_t{1} << 20;
} // namespace

Box prepare_box(const BoxQuery& q)
{
    if (q.bound < 1)
        throw InvalidInput("coefficient bound must be >= 1");
    if (q.bound > kMaxBound)
        throw Overflow("coefficient bound too large for the enumeration kernel");
    if (q.gram.size() != q.rank * q.rank)
        throw InvalidInput("gram size does not match rank");
    for (auto g : q.gram)
        if (g > kMaxGramEntry || g < -kMaxGramEntry)
            throw Overflow("gram entry too large for the enumeration kernel");
    std::uint64_t side = 2 * static_cast<std::uint64_t>(q.bound) + 1;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < q.rank; ++i)
        if (__builtin_mul_overflow(total, side, &total))
            throw Overflow("enumeration box has more than 2^64 points");
    return {q.gram, q.rank, q.norm, q.bound, total};
}

void scan_box(const Box& box, std::uint64_t begin, std::uint64_t end, std::vector<Coords>& out)
{
    if (begin >= end)
        return;
    const std::size_t n = box.rank;
    const std::uint64_t side = 2 * static_cast<std::uint64_t>(box.bound) + 1;
    Coords x(n);
    {
        std::uint64_t idx = begin;
        for (std::size_t i = n; i-- > 0;) {
            x[i] = static_cast<std::int64_t>(idx % side) - box.bound;
            idx /= side;
        }
    }
    for (std::uint64_t idx = begin; idx < end; ++idx) {
        i128 s = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0)
                continue;
            i128 row = 0;
            for (std::size_t j = 0; j < n; ++j)
                row += static_cast<i128>(box.gram[i * n + j]) * x[j];
            s += row * x[i];
        }
        if (s == box.norm)
            out.push_back(x);
        for (std::size_t i = n; i-- > 0;) {
            if (x[i] < box.bound) {
                ++x[i];
                break;
            }
            x[i] = -box.bound;
        }
    }
}

// --- prime search --------------------------------------------------------------

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace

std::uint64_t first_candidate(std::uint64_t min)
{
    if (min <= 1)
        return 1 + 8;
    std::uint64_t r = min % 8;
    return r <= 1 ? min + (1 - r) : min + (9 - r);
}

bool qualifies(std::uint64_t p, const std::vector<std::int64_t>& values)
{
    if (!is_prime_u64(p))
        return false;
    for (auto v : values)
        if (jacobi_u64(v, p) != 1)
            return false;
    return true;
}

// --- Lambda_2n scan -------------------------------------------------------------

void validate(const LambdaScanQuery& q)
{
    constexpr std::int64_t lim = std::int64_t{1} << 30;
    if (q.n < 1)
        throw InvalidInput("Lambda_2n scan needs n >= 1");
    if (q.bound < 0)
        throw InvalidInput("search bound must be >= 0");
    if (q.q11 % 2 != 0 || q.q22 % 2 != 0)
        throw InvalidInput("Lambda_2n scan needs an even source lattice");
    if (q.n > lim || q.bound > 4096 || q.q11 > lim || q.q11 < -lim || q.q12 > lim || q.q12 < -lim ||
        q.q22 > lim || q.q22 < -lim)
        throw Overflow("Lambda_2n scan parameters exceed the kernel's word-size range");
}

std::vector<std::array<std::int64_t, 3>> x_candidates(const LambdaScanQuery& q)
{
    const std::int64_t half = q.q11 / 2;
    std::vector<std::array<std::int64_t, 3>> xs;
    const std::array<std::int64_t, 3> canonical{0, 1, half};
    xs.push_back(canonical);
    if (q.fixed_x_only)
        return xs;
    for (std::int64_t s = 0; s <= q.bound; ++s)
        for (std::int64_t xe = -s; xe <= s; ++xe)
            for (std::int64_t xf = -s; xf <= s; ++xf) {
                if (xf == 0 || std::max(xe < 0 ? -xe : xe, xf < 0 ? -xf : xf) != s)
                    continue;
                i128 rhs = static_cast<i128>(half) - static_cast<i128>(q.n) * xe * xe;
                if (rhs % xf != 0)
                    continue;
                std::array<std::int64_t, 3> x{xe, xf, narrow(rhs / xf)};
                if (x != canonical)
                    xs.push_back(x);
            }
    return xs;
}

namespace {

bool primitive_span(const std::array<std::int64_t, 3>& x, const std::array<std::int64_t, 3>& y)
{
    i128 m1 = mul(x[0], y[1]) - mul(x[1], y[0]);
    i128 m2 = mul(x[0], y[2]) - mul(x[2], y[0]);
    i128 m3 = mul(x[1], y[2]) - mul(x[2], y[1]);
    return gcd128(gcd128(m1, m2), m3) == 1;
}

std::int64_t complement_t(std::int64_t n, const std::array<std::int64_t, 3>& x,
                          const std::array<std::int64_t, 3>& y)
{
    // det[x, y, w] = c . w; the complement generator z solves G z = c.
    i128 ce = sub(mul(x[1], y[2]), mul(x[2], y[1]));
    i128 cf = sub(mul(x[2], y[0]), mul(x[0], y[2]));
    i128 cg = sub(mul(x[0], y[1]), mul(x[1], y[0]));
    i128 two_n = 2 * static_cast<i128>(n);
    i128 ze = ce, zf = mul(two_n, cg), zg = mul(two_n, cf);
    i128 g = gcd128(gcd128(ze, zf), zg);
    ze /= g;
    zf /= g;
    zg /= g;
    i128 norm = add(mul(two_n, mul(ze, ze)), mul(2, mul(zf, zg)));
    return narrow(-norm / 2);
}

} // namespace

void scan_candidate(const LambdaScanQuery& q, const std::array<std::int64_t, 3>& x,
                    std::vector<LambdaScanHit>& out)
{
    const i128 two_n = 2 * static_cast<i128>(q.n);
    const std::int64_t xe = x[0], xf = x[1], xg = x[2];
    for (std::int64_t k = 0; k <= 2 * q.bound; ++k) {
        const std::int64_t ye = (k == 0) ? 0 : ((k % 2) ? (k + 1) / 2 : -k / 2);
        const i128 p = sub(q.q12, mul(mul(two_n, xe), ye));
        const i128 r = sub(q.q22, mul(two_n, mul(ye, ye)));
        // -2 x_g y_f^2 + 2 p y_f - x_f r = 0
        const i128 a = mul(-2, xg), b = mul(2, p), c = mul(-static_cast<i128>(xf), r);
        i128 roots[2];
        int nroots = 0;
        if (a == 0) {
            if (b == 0)
                continue;
            if ((-c) % b == 0)
                roots[nroots++] = -c / b;
        } else {
            i128 disc = sub(mul(b, b), mul(4, mul(a, c)));
            if (disc < 0)
                continue;
            i128 s = isqrt(disc);
            if (s * s != disc)
                continue;
            i128 hi = -b + s, lo = -b - s, den = 2 * a;
            if (den < 0) {
                std::swap(hi, lo);
            }
            // hi/den >= lo/den
            if (hi % den == 0)
                roots[nroots++] = hi / den;
            if (s != 0 && lo % den == 0)
                roots[nroots++] = lo / den;
        }
        for (int i = 0; i < nroots; ++i) {
            const i128 yf = roots[i];
            const i128 num = sub(p, mul(xg, yf));
            if (num % xf != 0)
                continue;
            std::array<std::int64_t, 3> y{ye, narrow(yf), narrow(num / xf)};
            // Recheck both equations exactly.
            i128 xy = add(add(mul(mul(two_n, xe), y[0]), mul(xf, y[2])), mul(xg, y[1]));
            i128 yy = add(mul(two_n, mul(y[0], y[0])), mul(2, mul(y[1], y[2])));
            if (xy != q.q12 || yy != q.q22)
                continue;
            if (!primitive_span(x, y))
                continue;
            std::int64_t t = complement_t(q.n, x, y);
            if (t <= 0)
                continue;
            out.push_back({x, y, t});
        }
    }
}

} // namespace k3lat::kernels::detail

namespace k3lat::kernels {

bool is_prime_u64(std::uint64_t n)
{
    if (n < 2)
        return false;
    static constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto p : small) {
        if (n == p)
            return true;
        if (n % p == 0)
            return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (auto a : small) {
        std::uint64_t x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = detail::mulmod(x, x, n);
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

int jacobi_u64(std::int64_t a_signed, std::uint64_t n)
{
    if (n == 0 || n % 2 == 0)
        throw InvalidInput("Jacobi symbol needs an odd positive modulus");
    detail::i128 r = static_cast<detail::i128>(a_signed) % static_cast<detail::i128>(n);
    if (r < 0)
        r += n;
    std::uint64_t a = static_cast<std::uint64_t>(r);
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            std::uint64_t m8 = n % 8;
            if (m8 == 3 || m8 == 5)
                result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3)
            result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

} // namespace k3lat::kernels
