#include "k3lat/nikulin.hpp"

#include "k3lat/modarith.hpp"

namespace k3lat {

namespace {

Integer lambda_n_of(const IntegralLattice& l)
{
    if (l.rank() != 3 || l.gram()(0, 0) <= 0 || l.gram()(0, 0) % 2 != 0)
        throw InvalidInput("target is not Lambda_2n in the (e, f, g) basis");
    Integer n = l.gram()(0, 0) / 2;
    if (!(l == IntegralLattice::lambda(n)))
        throw InvalidInput("target is not Lambda_2n in the (e, f, g) basis");
    return n;
}

void require_rank2_positive(const IntegralLattice& s)
{
    if (s.rank() != 2)
        throw InvalidInput("source lattice must have rank 2");
    s.require_even();
    if (s.gram()(0, 0) <= 0 || s.determinant() <= 0)
        throw InvalidInput("source lattice must be positive definite");
}

Element concat(const Element& a, const Element& b)
{
    Element c = a;
    c.insert(c.end(), b.begin(), b.end());
    return c;
}

} // namespace

GlueValidity check_glue(const IntegralLattice& source, const GluingData& glue, SignConvention sign)
{
    GlueValidity r;
    const DiscriminantForm a_src = discriminant_form(source);
    const DiscriminantForm a_amb = lambda_discriminant(glue.n).form();
    auto fail = [&](std::string why) { r.failures.push_back(std::move(why)); };
    if (!(glue.V.ambient() == a_src))
        fail("V is not a subgroup of the source discriminant form");
    if (!(glue.W.ambient() == a_amb))
        fail("W is not a subgroup of A_2n");
    if (!(glue.gamma.source == glue.V) || !(glue.gamma.target == glue.W))
        fail("gamma does not map V to W");
    if (!glue.gamma.respects_forms())
        fail("gamma does not respect the quadratic forms");
    if (!glue.gamma.is_bijective())
        fail("gamma is not an isomorphism");
    if (glue.t < 1)
        fail("t must be positive");
    if (!r.failures.empty())
        return r;

    GluePerpQuotient gq = glue_perp_quotient(a_src, a_amb, glue.gamma);
    const DiscriminantForm& q = gq.quotient.form();
    r.quotient_order = q.order();
    if (q.generator_count() != 1)
        fail("Gamma^perp / Gamma is not cyclic");
    if (q.order() != 2 * glue.t)
        fail("Gamma^perp / Gamma has order " + to_string(q.order()) + ", expected 2t = " +
             to_string(Integer(2 * glue.t)));
    if (r.failures.empty()) {
        r.generator = cyclic_generator_with_value(q, Rational(1, 2 * glue.t), sign);
        if (!r.generator)
            fail("no generator of Gamma^perp / Gamma has q = 1/2t");
    }
    r.valid = r.failures.empty();
    return r;
}

GluingData embedding_to_glue(const SublatticeEmbedding& e)
{
    const Integer n = lambda_n_of(e.target);
    require_rank2_positive(e.source);
    if (!e.is_isometric())
        throw InvalidInput("embedding is not isometric");
    if (!is_primitive_sublattice(e))
        throw DegenerateEmbedding("embedding is not primitive");

    LatticeDiscriminant ds(e.source);
    LatticeDiscriminant dl = lambda_discriminant(n);

    // S_Q cap L*: c in (1/D) Z^2 with G_L M c integral.
    const Integer det = e.source.abs_determinant();
    IntMatrix a = e.target.gram() * e.matrix;
    IntMatrix rows = congruence_kernel(a, det);
    RatMatrix m = to_rational(e.matrix);
    std::vector<Element> vg, wg;
    for (std::size_t i = 0; i < rows.rows(); ++i) {
        RatVector c;
        for (std::size_t j = 0; j < rows.cols(); ++j)
            c.push_back(Rational(rows(i, j), det));
        vg.push_back(ds.element_of(c));
        wg.push_back(dl.element_of(m * c));
    }
    FiniteSubgroup v(ds.form(), vg), w(dl.form(), wg);
    std::vector<Element> images;
    for (const auto& g : v.generators())
        images.push_back(dl.element_of(m * ds.lift(g)));

    SublatticeEmbedding k = orthogonal_complement(e.target, e.columns());
    if (k.matrix.cols() != 1)
        throw InternalConsistency("complement of a rank-2 sublattice of Lambda_2n is not rank 1");
    const Integer kk = k.source.gram()(0, 0);
    if (kk >= 0)
        throw InvalidInput("orthogonal complement is not negative definite");
    return {n, v, w, SubgroupIsometry{v, w, images}, -kk / 2};
}

ExtensionConstants extension_constants(const GluingData& glue, const Integer& d)
{
    if (d != glue.n)
        throw InvalidInput("glue does not belong to Lambda_2d");
    const Integer order_a = glue.V.ambient().order();
    return {lcm(4 * d * glue.t, order_a), -d, glue.t};
}

PerpGenerator find_perp_generator(const IntegralLattice& source, const GluingData& glue)
{
    GlueValidity v = check_glue(source, glue);
    if (!v.valid)
        throw InvalidInput("glue is not valid: " + v.failures.front());
    const DiscriminantForm a_src = discriminant_form(source);
    const DiscriminantForm a_amb = lambda_discriminant(glue.n).form();
    GluePerpQuotient gq = glue_perp_quotient(a_src, a_amb, glue.gamma);
    const Integer order = gq.quotient.form().order();
    const Rational want = mod2(Rational(1, 2 * glue.t));
    const Integer two_d = 2 * glue.n;
    for (const auto& x0 : a_src.elements())
        for (Integer y0 = 1; y0 <= two_d; ++y0) {
            Element el = concat(x0, Element{mod_floor(y0, two_d)});
            if (!gq.gamma_perp.contains(el))
                continue;
            if (gq.sum.q(el) != want)
                continue;
            Element cls = gq.quotient.class_of(el);
            if (gq.quotient.form().element_order(cls) != order)
                continue;
            return {x0, y0};
        }
    throw InternalConsistency("no generator (x0, y0) of Gamma^perp / Gamma has q = 1/2t");
}

Admissibility check_admissible(const IntegralLattice& source, const GluingData& glue,
                               const Integer& d, const Integer& m)
{
    Admissibility r;
    if (m == 1) {
        r.admissible = true;
        return r;
    }
    auto fail = [&](std::string why) { r.failures.push_back(std::move(why)); };
    if (m < 2 || !is_prime(m) || m == 2) {
        fail("m = " + to_string(m) + " is not an odd prime");
        return r;
    }
    ExtensionConstants c = extension_constants(glue, d);
    if (mod_floor(m, c.N) != 1)
        fail("m is not 1 mod N = " + to_string(c.N));
    if (gcd(m, 24) != 1)
        fail("m is not prime to 24");
    if (legendre(c.a, m) != 1)
        fail(to_string(c.a) + " is not a quadratic residue mod m");
    if (legendre(c.b, m) != 1)
        fail(to_string(c.b) + " is not a quadratic residue mod m");
    PerpGenerator pg = find_perp_generator(source, glue);
    if (gcd(m, pg.y0) != 1)
        fail("m divides y0 = " + to_string(pg.y0));
    r.admissible = r.failures.empty();
    return r;
}

Extension extend_glue(const IntegralLattice& source, const GluingData& glue, const Integer& d,
                      const Integer& m)
{
    Admissibility adm = check_admissible(source, glue, d, m);
    if (!adm.admissible)
        throw InadmissibleModulus("m = " + to_string(m) + " is inadmissible: " + adm.failures.front());
    PerpGenerator pg = find_perp_generator(source, glue);
    if (m == 1) {
        ExtensionCertificate cert{pg.x0, pg.y0, 1, 1, glue.t, {}, mod2(Rational(1, 2 * glue.t))};
        const DiscriminantForm a_amb = lambda_discriminant(glue.n).form();
        GluePerpQuotient gq = glue_perp_quotient(discriminant_form(source), a_amb, glue.gamma);
        cert.new_generator = gq.quotient.class_of(concat(pg.x0, Element{mod_floor(pg.y0, 2 * d)}));
        return {glue, cert};
    }

    // lambda^2 t y0^2 + d = 0 (mod m), smaller root, then lambda = 1 mod 4dt.
    const Integer ty2 = mod_floor(glue.t * pg.y0 * pg.y0, m);
    const Integer rhs = mod_floor(-d * inverse_mod(ty2, m), m);
    if (legendre(rhs, m) != 1)
        throw InadmissibleModulus("lambda congruence has no solution modulo m");
    const Integer root = sqrt_mod_prime(rhs, m);
    const Integer lambda = crt({{root, m}, {1, 4 * d * glue.t}});

    const Integer md = m * d;
    const DiscriminantForm a_new = lambda_discriminant(md).form();
    std::vector<Element> wgens, images;
    for (const auto& w : glue.W.generators())
        wgens.push_back(a_new.normalize({m * w[0]}));
    for (const auto& y : glue.gamma.images)
        images.push_back(a_new.normalize({m * y[0]}));
    FiniteSubgroup w_new(a_new, wgens);
    GluingData out{md, glue.V, w_new, SubgroupIsometry{glue.V, w_new, images}, glue.t * m};

    GlueValidity v = check_glue(source, out);
    if (!v.valid)
        throw InternalConsistency("extended glue fails validity: " + v.failures.front());

    const DiscriminantForm a_src = discriminant_form(source);
    GluePerpQuotient gq = glue_perp_quotient(a_src, a_new, out.gamma);
    Element gen = concat(a_src.scale(lambda, pg.x0), Element{mod_floor(lambda * pg.y0, 2 * md)});
    if (!gq.gamma_perp.contains(gen))
        throw InternalConsistency("lambda (x0, y0) is not in the new Gamma^perp");
    const Rational qv = gq.sum.q(gen);
    if (qv != mod2(Rational(1, 2 * out.t)))
        throw InternalConsistency("lambda (x0, y0) does not have q = 1/2mt");
    Element cls = gq.quotient.class_of(gen);
    if (gq.quotient.form().element_order(cls) != 2 * out.t)
        throw InternalConsistency("lambda (x0, y0) does not generate the new quotient");

    ExtensionCertificate cert{pg.x0, pg.y0, lambda, m, out.t, cls, qv};
    return {std::move(out), std::move(cert)};
}

RealizeResult realize_embedding(const IntegralLattice& source, const Integer& n,
                                const GluingData& glue, const Integer& search_bound,
                                kernels::Exec exec, const EmbeddingFilter& accept)
{
    require_rank2_positive(source);
    if (glue.n != n)
        throw InvalidInput("glue belongs to a different Lambda_2n");
    GlueValidity v = check_glue(source, glue);
    if (!v.valid)
        throw InvalidInput("glue is not valid: " + v.failures.front());
    if (search_bound < 0)
        throw InvalidInput("search bound must be nonnegative");

    RealizeResult r;
    kernels::LambdaScanQuery q;
    q.n = to_int64(n);
    q.q11 = to_int64(source.gram()(0, 0));
    q.q12 = to_int64(source.gram()(0, 1));
    q.q22 = to_int64(source.gram()(1, 1));
    q.bound = to_int64(search_bound);
    const IntegralLattice target = IntegralLattice::lambda(n);
    for (const auto& hit : kernels::lambda_scan(q, exec)) {
        ++r.candidates_examined;
        if (hit.t != glue.t)
            continue;
        IntMatrix m(3, 2);
        for (std::size_t i = 0; i < 3; ++i) {
            m(i, 0) = hit.x[i];
            m(i, 1) = hit.y[i];
        }
        auto e = SublatticeEmbedding::from_columns(target, m);
        if (!(e.source == source) || !is_primitive_sublattice(e))
            throw InternalConsistency("scan kernel returned a non-isometric or imprimitive pair");
        if (!(embedding_to_glue(e) == glue))
            continue;
        if (accept && !accept(e))
            continue;
        r.status = RealizeStatus::Witness;
        r.embedding = std::move(e);
        return r;
    }
    return r;
}

std::vector<GluingData> enumerate_valid_glues(const IntegralLattice& source, const Integer& n,
                                              SignConvention sign)
{
    require_rank2_positive(source);
    const DiscriminantForm a_src = discriminant_form(source);
    const DiscriminantForm a_amb = lambda_discriminant(n).form();
    std::vector<GluingData> out;
    for (const auto& v : enumerate_subgroups(a_src))
        for (const auto& w : enumerate_subgroups(a_amb)) {
            if (v.order() != w.order())
                continue;
            for (const auto& g : subgroup_isometries(v, w)) {
                GluePerpQuotient gq = glue_perp_quotient(a_src, a_amb, g);
                const Integer ord = gq.quotient.form().order();
                if (ord % 2 != 0)
                    continue;
                GluingData glue{n, v, w, g, ord / 2};
                if (check_glue(source, glue, sign).valid)
                    out.push_back(std::move(glue));
            }
        }
    return out;
}

} // namespace k3lat
