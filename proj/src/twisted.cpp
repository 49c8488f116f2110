#include "k3lat/twisted.hpp"

#include <exception>

#include "k3lat/modarith.hpp"

namespace k3lat {

TranscendentalModel::TranscendentalModel(IntMatrix g, std::size_t idx) : gram(std::move(g)), gamma_index(idx)
{
    IntegralLattice t(gram);
    if (!t.is_even())
        throw InvalidInput("transcendental model must be even");
    if (gamma_index >= rank())
        throw InvalidInput("gamma index out of range");
    if (gamma_square() >= 0)
        throw InvalidInput("gamma^2 must be negative");
}

NeronSeveriData TwistedMukaiLattice::ambient() const
{
    const std::size_t k = ns.rank(), t = trans.rank();
    IntMatrix g(k + t, k + t);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            g(i, j) = ns.gram(i, j);
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j)
            g(k + i, k + j) = trans.gram(i, j);
    return NeronSeveriData(std::move(g), ns.h_index);
}

MukaiVector TwistedMukaiLattice::to_ambient(const IntVector& x) const
{
    const std::size_t k = ns.rank();
    if (x.size() != k + 2)
        throw InvalidInput("twisted coordinates have the wrong length");
    MukaiVector v{x[0] * r, IntVector(k + trans.rank()), x[1]};
    for (std::size_t i = 0; i < k; ++i)
        v.D[i] = x[2 + i];
    v.D[k + trans.gamma_index] = x[0];
    return v;
}

std::optional<IntVector> TwistedMukaiLattice::coordinates(const MukaiVector& v) const
{
    const std::size_t k = ns.rank();
    if (v.D.size() != k + trans.rank())
        throw InvalidInput("ambient vector has the wrong length");
    if (v.a % r != 0)
        return std::nullopt;
    const Integer a = v.a / r;
    for (std::size_t i = 0; i < trans.rank(); ++i)
        if (v.D[k + i] != (i == trans.gamma_index ? a : Integer(0)))
            return std::nullopt;
    IntVector x{a, v.c};
    for (std::size_t i = 0; i < k; ++i)
        x.push_back(v.D[i]);
    return x;
}

std::vector<MukaiVector> TwistedMukaiLattice::basis() const
{
    std::vector<MukaiVector> out;
    for (std::size_t i = 0; i < ns.rank() + 2; ++i) {
        IntVector e(ns.rank() + 2);
        e[i] = 1;
        out.push_back(to_ambient(e));
    }
    return out;
}

TwistedMukaiLattice twisted_lattice(const NeronSeveriData& ns, const TranscendentalModel& trans,
                                    const Integer& r)
{
    if (r < 1)
        throw InvalidInput("r must be positive");
    const std::size_t k = ns.rank();
    IntMatrix g(k + 2, k + 2);
    g(0, 0) = trans.gamma_square();
    g(0, 1) = -r;
    g(1, 0) = -r;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            g(2 + i, 2 + j) = ns.gram(i, j);
    TwistedMukaiLattice l{ns, trans, r, IntegralLattice(std::move(g))};
    // The Gram must agree with the ambient pairing on the basis.
    const NeronSeveriData amb = l.ambient();
    const auto b = l.basis();
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (mukai_pairing(b[i], b[j], amb) != l.lattice.gram()(i, j))
                throw InternalConsistency("twisted Gram disagrees with the Mukai pairing");
    return l;
}

DiscIdentity twisted_disc_identity(const NeronSeveriData& ns, const TranscendentalModel& trans,
                                   const Integer& r)
{
    DiscIdentity d;
    d.lhs = twisted_lattice(ns, trans, r).lattice.abs_determinant();
    d.rhs = r * r * abs(determinant(ns.gram));
    d.equal = d.lhs == d.rhs;
    return d;
}

Integer divisibility_nv(const TwistedMukaiLattice& l, const MukaiVector& v)
{
    if (!l.coordinates(v))
        throw InvalidInput("vector is not in the twisted lattice");
    const NeronSeveriData amb = l.ambient();
    Integer g = 0;
    for (const auto& b : l.basis())
        g = gcd(g, mukai_pairing(v, b, amb));
    if (g == 0)
        throw InvalidInput("v pairs to zero with the whole lattice");
    return g;
}

unsigned valuation(const Integer& n_in, const Integer& p)
{
    if (p < 2)
        throw InvalidInput("valuation base must be at least 2");
    if (n_in == 0)
        throw InvalidInput("valuation of zero");
    Integer n = abs(n_in);
    unsigned k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return k;
}

PartnerDiscReport partner_disc(const TwistedMukaiLattice& l, const MukaiVector& v, std::optional<Integer> ell)
{
    auto x = l.coordinates(v);
    if (!x)
        throw InvalidInput("vector is not in the twisted lattice");
    if (l.lattice.norm(*x) != 0)
        throw InvalidInput("v is not isotropic");
    if (content(*x) != 1)
        throw InvalidInput("v is not primitive");
    PartnerDiscReport rep;
    rep.n_v = divisibility_nv(l, v);
    rep.quotient = quotient_by_isotropic(l.lattice, *x);
    rep.disc = rep.quotient.abs_determinant();
    rep.lhs = rep.n_v * rep.n_v * rep.disc;
    rep.rhs = l.r * l.r * abs(determinant(l.ns.gram));
    rep.identity_holds = rep.lhs == rep.rhs;
    if (ell) {
        rep.ell = ell;
        rep.ell_valuation = valuation(rep.disc, *ell);
    }
    return rep;
}

WitnessModel default_witness_model(const Integer& d, std::optional<Integer> e)
{
    if (d < 1)
        throw InvalidInput("d must be positive");
    if (e && *e < 1)
        throw InvalidInput("e must be positive");
    IntMatrix ns(e ? 2 : 1, e ? 2 : 1);
    ns(0, 0) = 2 * d;
    if (e)
        ns(1, 1) = 2 * *e;
    IntMatrix t(1, 1);
    t(0, 0) = -2 * d;
    WitnessModel m{NeronSeveriData(ns, 0), TranscendentalModel(t, 0), IntVector(e ? 2 : 1), std::nullopt};
    m.D[0] = 1;
    if (e)
        m.B = IntVector{0, 1};
    return m;
}

namespace {

MukaiVector embed_ns(const IntVector& x, std::size_t t_rank)
{
    MukaiVector v{0, x, 0};
    v.D.resize(x.size() + t_rank);
    return v;
}

WitnessRecord witness_record(const WitnessModel& m, const Integer& d, const Integer& ell, unsigned n,
                             bool include_h)
{
    const std::size_t k = m.ns.rank(), gi = k + m.trans.gamma_index;
    WitnessRecord w;
    w.n = n;
    w.r = 1;
    for (unsigned i = 0; i < n; ++i)
        w.r *= ell;
    const TwistedMukaiLattice l = twisted_lattice(m.ns, m.trans, w.r);
    const NeronSeveriData amb = l.ambient();

    w.v = embed_ns(m.D, m.trans.rank());
    w.v.a = w.r;
    w.v.D[gi] += 1;
    w.h = {w.r * w.r, IntVector(amb.rank()), -2 * d};
    w.h.D[gi] = w.r;
    if (m.B)
        w.b = embed_ns(*m.B, m.trans.rank());

    w.v_isotropic = mukai_square(w.v, amb) == 0;
    w.in_lattice = l.coordinates(w.v).has_value();
    if (include_h) {
        w.h_square = mukai_square(w.h, amb);
        w.h_orthogonal = mukai_pairing(w.h, w.v, amb) == 0;
        w.h_square_ok = w.h_square == 2 * d * w.r * w.r;
        w.in_lattice = w.in_lattice && l.coordinates(w.h).has_value();
    } else {
        w.h_orthogonal = w.h_square_ok = true;
    }
    if (w.b) {
        w.b_orthogonal = mukai_pairing(*w.b, w.v, amb) == 0;
        w.in_lattice = w.in_lattice && l.coordinates(*w.b).has_value();
    }
    PartnerDiscReport rep = partner_disc(l, w.v, ell);
    w.n_v = rep.n_v;
    w.n_v_bound = w.n_v * w.n_v <= 4 * d * d;
    w.partner_disc = rep.disc;
    w.partner_identity = rep.identity_holds;
    w.ell_valuation = *rep.ell_valuation;
    return w;
}

} // namespace

WitnessSequence witness_sequence(const WitnessModel& m, const Integer& ell, unsigned n_max,
                                 const WitnessOptions& opts)
{
    if (!is_prime(ell))
        throw NotPrime("ell = " + to_string(ell) + " is not prime");
    if (n_max < 1)
        throw InvalidInput("n_max must be positive");
    if (m.D.size() != m.ns.rank() || (m.B && m.B->size() != m.ns.rank()))
        throw InvalidInput("witness classes do not match the Neron-Severi rank");
    const Integer d2 = dot(m.D, m.ns.gram * m.D);
    if (d2 <= 0 || d2 % 2 != 0)
        throw InvalidInput("D^2 must be positive and even");
    if (m.trans.gamma_square() != -d2)
        throw InvalidInput("gamma^2 must equal -D^2");
    if (m.B && dot(*m.B, m.ns.gram * m.D) != 0)
        throw InvalidInput("B must be orthogonal to D");
    const Integer d = d2 / 2;

    WitnessSequence seq;
    seq.d = d;
    seq.ell = ell;
    seq.records.resize(n_max);
    const long count = static_cast<long>(n_max);
    if (opts.exec == kernels::Exec::Serial) {
        for (long i = 0; i < count; ++i)
            seq.records[i] = witness_record(m, d, ell, static_cast<unsigned>(i + 1), opts.include_h);
    } else {
        std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 1)
        for (long i = 0; i < count; ++i) {
            try {
                seq.records[i] = witness_record(m, d, ell, static_cast<unsigned>(i + 1), opts.include_h);
            } catch (...) {
#pragma omp critical(k3lat_witness_error)
                if (!err)
                    err = std::current_exception();
            }
        }
        if (err)
            std::rethrow_exception(err);
    }

    seq.ell_coprime = (2 * d * abs(determinant(m.ns.gram))) % ell != 0;
    seq.valuations_are_2n = seq.ell_coprime;
    seq.strictly_increasing = true;
    for (std::size_t i = 0; i < seq.records.size(); ++i) {
        if (seq.ell_coprime && seq.records[i].ell_valuation != 2 * seq.records[i].n)
            seq.valuations_are_2n = false;
        if (i > 0 && seq.records[i].ell_valuation <= seq.records[i - 1].ell_valuation)
            seq.strictly_increasing = false;
    }
    return seq;
}

WitnessSequence witness_sequence(const Integer& d, const Integer& ell, unsigned n_max, std::optional<Integer> e,
                                 const WitnessOptions& opts)
{
    return witness_sequence(default_witness_model(d, e), ell, n_max, opts);
}

} // namespace k3lat
