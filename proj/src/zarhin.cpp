#include "k3lat/zarhin.hpp"

namespace k3lat {

namespace {

// gcd of x.L over Lambda_2n.
Integer divisibility(const Integer& n, const IntVector& x)
{
    return gcd(gcd(2 * n * x[0], x[1]), x[2]);
}

IntVector scan_vector(const std::array<std::int64_t, 3>& a)
{
    return {a[0], a[1], a[2]};
}

} // namespace

Seed build_seed(const Integer& d, const Integer& lsq_in, const Integer& search_bound)
{
    if (d < 1)
        throw InvalidInput("d must be positive");
    const Integer lsq = lsq_in == 0 ? Integer(2 * d) : lsq_in;
    if (lsq < 0)
        throw InvalidInput("l^2 must be positive");
    if (lsq % 2 != 0)
        throw InvalidInput("l^2 must be even");
    const IntegralLattice target = IntegralLattice::lambda(d);
    const IntegralLattice source = IntegralLattice::diagonal({2, lsq});

    IntVector x, y;
    if (lsq == 2 * d) {
        x = {0, 1, 1};
        y = {1, 0, 0};
    } else {
        kernels::LambdaScanQuery q;
        q.n = to_int64(d);
        q.q11 = 2;
        q.q12 = 0;
        q.q22 = to_int64(lsq);
        q.bound = to_int64(search_bound);
        auto hits = kernels::lambda_scan(q, kernels::Exec::Serial);
        for (const auto& hit : hits) {
            IntVector hx = scan_vector(hit.x);
            if (divisibility(d, hx) == 1) {
                x = hx;
                y = scan_vector(hit.y);
                break;
            }
        }
        if (x.empty() && !hits.empty()) {
            x = scan_vector(hits.front().x);
            y = scan_vector(hits.front().y);
        }
        if (x.empty())
            throw InvalidInput("no primitive diag(2, " + to_string(lsq) + ") in Lambda_" +
                               to_string(Integer(2 * d)) + " within the search bound");
    }

    std::optional<IntVector> w;
    if (abs(x[1]) == 1) {
        w = IntVector{0, 0, x[1]};
    } else if (divisibility(d, x) == 1) {
        IntMatrix row(1, 3);
        IntVector gx = target.gram() * x;
        for (std::size_t j = 0; j < 3; ++j)
            row(0, j) = gx[j];
        auto sol = solve_integer(row, {1});
        if (!sol)
            throw InternalConsistency("seed vector v has no dual partner w");
        w = sol;
    }

    IntMatrix cols(3, 2);
    for (std::size_t i = 0; i < 3; ++i) {
        cols(i, 0) = x[i];
        cols(i, 1) = y[i];
    }
    SublatticeEmbedding e = SublatticeEmbedding::from_columns(target, cols);
    if (!(e.source == source) || !is_primitive_sublattice(e) || (w && target.pairing(x, *w) != 1))
        throw InternalConsistency("seed embedding fails its defining identities");
    GluingData glue = embedding_to_glue(e);
    return {d, lsq, source, e, x, y, w, std::move(glue)};
}

ZarhinConstants zarhin_constants(const Integer& d, const Integer& lsq)
{
    Seed s = build_seed(d, lsq);
    return {3 * s.lsq * s.lsq, extension_constants(s.glue, d)};
}

MukaiVector RankNormalization::apply(const MukaiVector& v) const
{
    MukaiVector r = v;
    if (swap)
        std::swap(r.a, r.c);
    return negate ? scale(-1, r) : r;
}

RankNormalization rank_normalization(const MukaiVector& v)
{
    if (v.a == 0 && v.c == 0)
        throw InvalidInput("rank and omega coefficient are both zero");
    RankNormalization n;
    n.swap = v.a == 0;
    const Integer& a = n.swap ? v.c : v.a;
    n.negate = a < 0;
    return n;
}

MukaiVector ensure_positive_rank(const MukaiVector& v)
{
    return rank_normalization(v).apply(v);
}

MukaiVector brauer_multiplier(const MukaiVector& l, long multiplier)
{
    return scale(multiplier, l);
}

MukaiVector lambda_to_mukai(const IntVector& x)
{
    if (x.size() != 3)
        throw InvalidInput("Lambda_2n vectors have three coordinates");
    return {x[1], {x[0]}, -x[2]};
}

ZarhinCertificate zarhin_construct(const Integer& d, const Integer& m, const Integer& lsq,
                                   const Integer& search_bound, kernels::Exec exec)
{
    ZarhinCertificate c;
    c.seed = build_seed(d, lsq);
    c.d = d;
    c.m = m;
    c.lsq = c.seed.lsq;
    c.constants = {3 * c.lsq * c.lsq, extension_constants(c.seed.glue, d)};
    c.extension = extend_glue(c.seed.lattice, c.seed.glue, d, m);
    const Integer md = m * d;
    c.ns = NeronSeveriData::rank_one(2 * md);
    c.r = c.constants.r;
    c.q_L = c.lsq;

    if (m == 1) {
        c.embedding = c.seed.embedding;
    } else {
        auto cond_c = [&](const SublatticeEmbedding& e) { return divisibility(md, e.columns()[0]) == 1; };
        RealizeResult rr = realize_embedding(c.seed.lattice, md, c.extension.glue, search_bound, exec, cond_c);
        c.embedding = rr.embedding;
    }
    if (c.embedding) {
        c.status = RealizeStatus::Witness;
        auto cols = c.embedding->columns();
        MukaiVector v = lambda_to_mukai(cols[0]);
        MukaiVector l = lambda_to_mukai(cols[1]);
        c.normalization = rank_normalization(v);
        c.v = c.normalization.apply(v);
        c.l = c.normalization.apply(l);
    }
    c.checks = verify_certificate(c);
    return c;
}

std::vector<NamedCheck> verify_certificate(const ZarhinCertificate& c)
{
    std::vector<NamedCheck> out;
    auto add = [&](std::string name, bool pass) { out.push_back({std::move(name), pass}); };
    const GlueValidity gv = check_glue(c.seed.lattice, c.extension.glue);
    add("extended glue valid", gv.valid);
    add("quotient order = 2tm", gv.quotient_order == 2 * c.seed.glue.t * c.m);
    add("r = 3 q^2", c.r == 3 * c.q_L * c.q_L && Rational(c.r) == fujiki_degree(c.q_L, 2));
    if (!c.embedding || !c.v || !c.l)
        return out;

    const SublatticeEmbedding& e = *c.embedding;
    add("embedding isometric", e.target == IntegralLattice::lambda(c.m * c.d) && e.is_isometric());
    add("embedding primitive", is_primitive_sublattice(e));
    add("embedding realizes extended glue", embedding_to_glue(e) == c.extension.glue);
    auto cols = e.columns();
    add("v.l = 0 in Lambda_2md", e.target.pairing(cols[0], cols[1]) == 0);

    const MukaiVector& v = *c.v;
    const MukaiVector& l = *c.l;
    const ConditionC cc = check_condition_C(v, c.ns);
    add("condition (C)", cc.passes);
    add("rk(v) > 0", v.a > 0);
    add("v^2 = 2", mukai_square(v, c.ns) == 2);
    add("moduli dimension 4", moduli_dimension(v, c.ns) == 4);
    add("<v, l> = 0", mukai_pairing(v, l, c.ns) == 0);
    const Integer q = mukai_square(l, c.ns);
    add("q_L = l^2", q == c.q_L);
    add("q_L > 0", q > 0);
    const MukaiVector raw_v = lambda_to_mukai(cols[0]), raw_l = lambda_to_mukai(cols[1]);
    add("normalization is an isometry",
        mukai_pairing(raw_v, raw_l, c.ns) == mukai_pairing(v, l, c.ns) &&
            mukai_square(raw_v, c.ns) == mukai_square(v, c.ns) &&
            mukai_square(raw_l, c.ns) == mukai_square(l, c.ns));
    return out;
}

bool all_pass(const std::vector<NamedCheck>& checks)
{
    for (const auto& c : checks)
        if (!c.pass)
            return false;
    return true;
}

} // namespace k3lat
