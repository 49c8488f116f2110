#include "k3lat/integer.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace k3lat {

std::ostream& operator<<(std::ostream& os, const IntMatrix& m)
{
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? ", " : "") << m(i, j);
        os << ']';
    }
    return os << ']';
}

Integer mod_floor(const Integer& a, const Integer& m)
{
    if (m == 0)
        throw InvalidInput("modulus must be nonzero");
    Integer mm = abs(m);
    Integer r = a % mm;
    if (r < 0)
        r += mm;
    return r;
}

Integer floor_div(const Integer& a, const Integer& b)
{
    if (b == 0)
        throw InvalidInput("division by zero");
    Integer q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0)))
        q -= 1;
    return q;
}

Integer gcd(const Integer& a, const Integer& b)
{
    return boost::multiprecision::gcd(abs(a), abs(b));
}

Integer lcm(const Integer& a, const Integer& b)
{
    if (a == 0 || b == 0)
        return 0;
    return abs(a / gcd(a, b) * b);
}

ExtendedGcd extended_gcd(const Integer& a, const Integer& b)
{
    Integer old_r = a, r = b;
    Integer old_s = 1, s = 0;
    Integer old_t = 0, t = 1;
    while (r != 0) {
        Integer q = old_r / r;
        Integer tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

Integer content(const IntVector& v)
{
    Integer g = 0;
    for (const auto& x : v)
        g = gcd(g, x);
    return g;
}

Integer dot(const IntVector& a, const IntVector& b)
{
    if (a.size() != b.size())
        throw InvalidInput("dot product dimension mismatch");
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

Integer numerator_of(const Rational& x)
{
    return boost::multiprecision::numerator(x);
}

Integer denominator_of(const Rational& x)
{
    return boost::multiprecision::denominator(x);
}

bool is_integral(const Rational& x)
{
    return denominator_of(x) == 1;
}

Rational mod2(const Rational& x)
{
    Integer n = numerator_of(x), d = denominator_of(x);
    Integer two_d = 2 * d;
    return Rational(n - two_d * floor_div(n, two_d), d);
}

Rational mod1(const Rational& x)
{
    Integer n = numerator_of(x), d = denominator_of(x);
    return Rational(n - d * floor_div(n, d), d);
}

std::string to_string(const Integer& x)
{
    return x.str();
}

std::string to_string(const Rational& x)
{
    if (denominator_of(x) == 1)
        return numerator_of(x).str();
    return numerator_of(x).str() + "/" + denominator_of(x).str();
}

Integer parse_integer(const std::string& s)
{
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+'))
        ++i;
    if (i == s.size())
        throw InvalidInput("not an integer: '" + s + "'");
    for (std::size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j])))
            throw InvalidInput("not an integer: '" + s + "'");
    Integer v(s[0] == '+' ? s.substr(1) : s);
    return v;
}

Rational parse_rational(const std::string& s)
{
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return Rational(parse_integer(s));
    Integer n = parse_integer(s.substr(0, slash));
    Integer d = parse_integer(s.substr(slash + 1));
    if (d == 0)
        throw InvalidInput("zero denominator: '" + s + "'");
    return Rational(n, d);
}

std::int64_t to_int64(const Integer& x)
{
    if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
        throw Overflow("value does not fit in 64 bits: " + x.str());
    return static_cast<std::int64_t>(x);
}

RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = Rational(m(i, j));
    return r;
}

RatVector to_rational(const IntVector& v)
{
    RatVector r;
    r.reserve(v.size());
    for (const auto& x : v)
        r.emplace_back(x);
    return r;
}

Integer determinant(const IntMatrix& m)
{
    if (!m.is_square())
        throw InvalidInput("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    IntMatrix a = m;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

std::vector<Integer> SmithForm::diagonal() const
{
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i)
        d.push_back(S(i, i));
    return d;
}

SmithForm smith_normal_form(const IntMatrix& m)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    SmithForm f{IntMatrix::identity(rows), m, IntMatrix::identity(cols)};
    IntMatrix& S = f.S;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        for (;;) {
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (S(i, j) != 0 && (pi == rows || abs(S(i, j)) < abs(S(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == rows)
                return f;
            S.swap_rows(t, pi);
            f.U.swap_rows(t, pi);
            S.swap_cols(t, pj);
            f.V.swap_cols(t, pj);

            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (S(i, t) == 0)
                    continue;
                Integer q = S(i, t) / S(t, t);
                S.add_row(i, t, -q);
                f.U.add_row(i, t, -q);
                dirty = dirty || S(i, t) != 0;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (S(t, j) == 0)
                    continue;
                Integer q = S(t, j) / S(t, t);
                S.add_col(j, t, -q);
                f.V.add_col(j, t, -q);
                dirty = dirty || S(t, j) != 0;
            }
            if (dirty)
                continue;

            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (S(i, j) % S(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == rows)
                break;
            S.add_row(t, bad, 1);
            f.U.add_row(t, bad, 1);
        }
        if (S(t, t) < 0) {
            S.negate_row(t);
            f.U.negate_row(t);
        }
    }
    return f;
}

namespace {

// Replace rows (r, i) by the unimodular combination that puts gcd(a, b) in row r.
void gcd_combine(IntMatrix& h, IntMatrix& t, std::size_t r, std::size_t i, std::size_t c)
{
    const Integer a = h(r, c), b = h(i, c);
    ExtendedGcd e = extended_gcd(a, b);
    const Integer ag = a / e.g, bg = b / e.g;
    auto apply = [&](IntMatrix& m) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Integer x = m(r, j), y = m(i, j);
            m(r, j) = e.s * x + e.t * y;
            m(i, j) = -bg * x + ag * y;
        }
    };
    apply(h);
    apply(t);
}

} // namespace

HermiteForm hermite_normal_form(const IntMatrix& m)
{
    HermiteForm f{m, IntMatrix::identity(m.rows()), 0};
    IntMatrix& H = f.H;
    std::size_t r = 0;
    for (std::size_t c = 0; c < H.cols() && r < H.rows(); ++c) {
        for (std::size_t i = r + 1; i < H.rows(); ++i)
            if (H(i, c) != 0)
                gcd_combine(H, f.T, r, i, c);
        if (H(r, c) == 0)
            continue;
        if (H(r, c) < 0) {
            H.negate_row(r);
            f.T.negate_row(r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = floor_div(H(i, c), H(r, c));
            H.add_row(i, r, -q);
            f.T.add_row(i, r, -q);
        }
        ++r;
    }
    f.rank = r;
    return f;
}

std::size_t matrix_rank(const IntMatrix& m)
{
    return hermite_normal_form(m).rank;
}

IntMatrix row_lattice_basis(const IntMatrix& m)
{
    HermiteForm h = hermite_normal_form(m);
    IntMatrix b(h.rank, m.cols());
    for (std::size_t i = 0; i < h.rank; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            b(i, j) = h.H(i, j);
    return b;
}

IntMatrix integer_kernel(const IntMatrix& a)
{
    const std::size_t n = a.cols();
    HermiteForm h = hermite_normal_form(a.transpose());
    IntMatrix k(n - h.rank, n);
    for (std::size_t i = h.rank; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            k(i - h.rank, j) = h.T(i, j);
    return row_lattice_basis(k).transpose();
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b)
{
    if (b.size() != a.rows())
        throw InvalidInput("solve_integer: right-hand side has wrong length");
    const std::size_t n = a.cols();
    HermiteForm h = hermite_normal_form(a.transpose());
    // A = H^T T^{-T}; solve sum_i z_i H.row(i) = b.
    IntVector z(n);
    IntVector acc(a.rows());
    for (std::size_t i = 0; i < h.rank; ++i) {
        std::size_t p = 0;
        while (h.H(i, p) == 0)
            ++p;
        Integer need = b[p] - acc[p];
        if (need % h.H(i, p) != 0)
            return std::nullopt;
        z[i] = need / h.H(i, p);
        for (std::size_t j = 0; j < a.rows(); ++j)
            acc[j] += z[i] * h.H(i, j);
    }
    if (acc != b)
        return std::nullopt;
    return h.T.transpose() * z;
}

IntMatrix congruence_kernel(const IntMatrix& c, const Integer& modulus)
{
    const std::size_t k = c.cols(), s = c.rows();
    if (s == 0)
        return IntMatrix::identity(k);
    IntMatrix aug(s, k + s);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            aug(i, j) = c(i, j);
        aug(i, k + i) = modulus;
    }
    IntMatrix ker = integer_kernel(aug);
    IntMatrix proj(ker.cols(), k);
    for (std::size_t v = 0; v < ker.cols(); ++v)
        for (std::size_t j = 0; j < k; ++j)
            proj(v, j) = ker(j, v);
    return row_lattice_basis(proj);
}

RatMatrix inverse(const RatMatrix& m)
{
    if (!m.is_square())
        throw InvalidInput("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix a = m, inv = RatMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0)
            ++p;
        if (p == n)
            throw InvalidInput("matrix is singular");
        a.swap_rows(c, p);
        inv.swap_rows(c, p);
        Rational piv = a(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0)
                continue;
            Rational f = a(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

IntMatrix unimodular_inverse(const IntMatrix& m)
{
    RatMatrix r = inverse(to_rational(m));
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!is_integral(r(i, j)))
                throw InvalidInput("matrix is not unimodular");
            out(i, j) = numerator_of(r(i, j));
        }
    return out;
}

} // namespace k3lat
