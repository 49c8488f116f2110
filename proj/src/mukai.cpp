#include "k3lat/mukai.hpp"

namespace k3lat {

NeronSeveriData::NeronSeveriData(IntMatrix g, std::optional<std::size_t> h) : gram(std::move(g)), h_index(h)
{
    IntegralLattice l(gram);  // symmetric check
    if (!l.is_even())
        throw InvalidInput("Neron-Severi Gram must be even");
    if (h_index) {
        if (*h_index >= rank())
            throw InvalidInput("polarization index out of range");
        if (gram(*h_index, *h_index) <= 0)
            throw InvalidInput("polarization must have positive degree");
    }
}

NeronSeveriData NeronSeveriData::rank_one(const Integer& degree)
{
    IntMatrix g(1, 1);
    g(0, 0) = degree;
    return NeronSeveriData(std::move(g), 0);
}

Integer NeronSeveriData::degree() const
{
    if (!h_index)
        throw InvalidInput("no polarization class given");
    return gram(*h_index, *h_index);
}

namespace {

void check_size(const MukaiVector& v, const NeronSeveriData& ns)
{
    if (v.D.size() != ns.rank())
        throw InvalidInput("Mukai vector does not match the Neron-Severi rank");
}

} // namespace

MukaiVector omega(std::size_t ns_rank)
{
    return {0, IntVector(ns_rank), 1};
}

MukaiVector scale(const Integer& k, const MukaiVector& v)
{
    MukaiVector r{k * v.a, v.D, k * v.c};
    for (auto& x : r.D)
        x *= k;
    return r;
}

MukaiVector add(const MukaiVector& x, const MukaiVector& y)
{
    if (x.D.size() != y.D.size())
        throw InvalidInput("Mukai vectors have different lengths");
    MukaiVector r{x.a + y.a, x.D, x.c + y.c};
    for (std::size_t i = 0; i < r.D.size(); ++i)
        r.D[i] += y.D[i];
    return r;
}

Integer mukai_pairing(const MukaiVector& v, const MukaiVector& w, const NeronSeveriData& ns)
{
    check_size(v, ns);
    check_size(w, ns);
    return dot(v.D, ns.gram * w.D) - v.a * w.c - w.a * v.c;
}

Integer mukai_square(const MukaiVector& v, const NeronSeveriData& ns)
{
    return mukai_pairing(v, v, ns);
}

MukaiVector mukai_vector_of_sheaf(const Integer& rk, const IntVector& c1, const Integer& chi)
{
    return {rk, c1, chi - rk};
}

Integer euler_characteristic(const MukaiVector& v, const MukaiVector& w, const NeronSeveriData& ns)
{
    return -mukai_pairing(v, w, ns);
}

ConditionC check_condition_C(const MukaiVector& v, const NeronSeveriData& ns)
{
    check_size(v, ns);
    ConditionC r;
    r.v_squared = mukai_square(v, ns);
    r.h_dot_c1 = ns.h_index ? (ns.gram * v.D)[*ns.h_index] : Integer(0);
    r.gcd_value = gcd(gcd(v.a, r.h_dot_c1), v.c);
    if (content(to_lattice_coords(v)) != 1)
        r.failures.push_back("v is not primitive");
    if (v.a <= 0)
        r.failures.push_back("rk(v) is not positive");
    if (r.v_squared <= 0)
        r.failures.push_back("v^2 is not positive");
    if (r.gcd_value != 1)
        r.failures.push_back("gcd(rk(v), H.c1(v), c) = " + to_string(r.gcd_value));
    r.passes = r.failures.empty();
    return r;
}

Integer moduli_dimension(const MukaiVector& v, const NeronSeveriData& ns)
{
    Integer s = mukai_square(v, ns);
    if (s % 2 != 0)
        throw InvalidInput("v^2 is odd");
    if (s < 0)
        throw InvalidInput("v^2 is negative");
    return s + 2;
}

Rational fujiki_degree(const Integer& q, unsigned n)
{
    Integer num = 1, den = 1;
    for (unsigned i = 1; i <= 2 * n; ++i)
        num *= i;
    for (unsigned i = 1; i <= n; ++i)
        den *= 2 * i;  // n! 2^n
    Integer qn = 1;
    for (unsigned i = 0; i < n; ++i)
        qn *= q;
    return Rational(num * qn, den);
}

IntegralLattice full_mukai_lattice(const NeronSeveriData& ns)
{
    return IntegralLattice::direct_sum(IntegralLattice(ns.gram),
                                       IntegralLattice(IntMatrix::from_rows({{0, -1}, {-1, 0}})));
}

IntVector to_lattice_coords(const MukaiVector& v)
{
    IntVector x = v.D;
    x.push_back(v.a);
    x.push_back(v.c);
    return x;
}

MukaiVector from_lattice_coords(const IntVector& x, std::size_t ns_rank)
{
    if (x.size() != ns_rank + 2)
        throw InvalidInput("coordinate vector does not match the Mukai lattice rank");
    return {x[ns_rank], IntVector(x.begin(), x.begin() + ns_rank), x[ns_rank + 1]};
}

DiscChainReport disc_comparison_chain(const NeronSeveriData& ns, const MukaiVector& v,
                                      std::optional<Integer> partner_disc)
{
    check_size(v, ns);
    const IntegralLattice n = full_mukai_lattice(ns);
    n.require_nondegenerate();
    const IntVector x = to_lattice_coords(v);
    if (content(x) != 1)
        throw InvalidInput("v is not primitive");
    DiscChainReport r;
    r.v_squared = mukai_square(v, ns);
    r.perp = orthogonal_complement(n, {x});
    r.ambient_disc = n.abs_determinant();
    if (r.v_squared == 0)
        throw InvalidInput("v is isotropic");
    if (r.v_squared < 0)
        throw InvalidInput("v^2 is negative");
    r.perp_disc = r.perp.source.abs_determinant();

    IntMatrix cols(n.rank(), n.rank());
    for (std::size_t i = 0; i < n.rank(); ++i) {
        cols(i, 0) = x[i];
        for (std::size_t j = 0; j < r.perp.matrix.cols(); ++j)
            cols(i, j + 1) = r.perp.matrix(i, j);
    }
    r.index = index_of_sublattice(n, SublatticeEmbedding::from_columns(n, cols));
    r.identity_holds = r.v_squared * r.perp_disc == r.index * r.index * r.ambient_disc;
    r.inequality_holds = r.ambient_disc <= r.v_squared * r.perp_disc;
    r.lambda = Rational(r.ambient_disc, r.perp_disc);
    if (partner_disc) {
        if (*partner_disc <= 0)
            throw InvalidInput("partner discriminant must be positive");
        r.partner_disc = partner_disc;
        r.residual = Rational(r.ambient_disc) / (r.lambda * Rational(*partner_disc));
    }
    return r;
}

} // namespace k3lat
