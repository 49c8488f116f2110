#include "k3lat/discform.hpp"

#include <algorithm>
#include <set>

namespace k3lat {

namespace {

Integer product(const std::vector<Integer>& v)
{
    Integer p = 1;
    for (const auto& x : v)
        p *= x;
    return p;
}

void require_enumerable(const Integer& order)
{
    if (order > kMaxEnumeratedOrder)
        throw SizeLimit("finite group of order " + to_string(order) +
                        " exceeds the exhaustive-search limit of " +
                        std::to_string(kMaxEnumeratedOrder));
}

IntMatrix diagonal_matrix(const std::vector<Integer>& d)
{
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        m(i, i) = d[i];
    return m;
}

// Smith presentation of outer/inner for full-rank row bases in Z^k.
struct SmithPresentation {
    RatMatrix outer_inverse;
    IntMatrix v;
    std::vector<Integer> s;
    std::vector<std::size_t> active;
    std::vector<IntVector> generator_rows;  // rows of V^{-1} * outer, active only
};

SmithPresentation present(const IntMatrix& outer, const IntMatrix& inner)
{
    SmithPresentation p;
    p.outer_inverse = inverse(to_rational(outer));
    RatMatrix x = to_rational(inner) * p.outer_inverse;
    IntMatrix xi(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) {
            if (!is_integral(x(i, j)))
                throw InvalidInput("inner subgroup is not contained in the outer one");
            xi(i, j) = numerator_of(x(i, j));
        }
    SmithForm f = smith_normal_form(xi);
    p.v = f.V;
    p.s = f.diagonal();
    IntMatrix rows = unimodular_inverse(f.V) * outer;
    for (std::size_t i = 0; i < p.s.size(); ++i)
        if (p.s[i] != 1) {
            p.active.push_back(i);
            p.generator_rows.push_back(rows.row(i));
        }
    return p;
}

IntVector presentation_coords(const SmithPresentation& p, const IntVector& x)
{
    RatVector c(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        for (std::size_t i = 0; i < x.size(); ++i)
            c[j] += Rational(x[i]) * p.outer_inverse(i, j);
    IntVector out;
    for (auto i : p.active) {
        Rational ci = 0;
        for (std::size_t j = 0; j < c.size(); ++j)
            ci += c[j] * Rational(p.v(j, i));
        if (!is_integral(ci))
            throw InvalidInput("element is not in the subgroup");
        out.push_back(mod_floor(numerator_of(ci), p.s[i]));
    }
    return out;
}

} // namespace

// --- DiscriminantForm --------------------------------------------------------

DiscriminantForm::DiscriminantForm(std::vector<Integer> orders, std::vector<Rational> q, RatMatrix b)
    : orders_(std::move(orders)), q_(std::move(q)), b_(std::move(b))
{
    const std::size_t k = orders_.size();
    if (q_.size() != k || b_.rows() != k || b_.cols() != k)
        throw InvalidInput("discriminant form data has inconsistent sizes");
    for (std::size_t i = 0; i < k; ++i) {
        if (orders_[i] < 2)
            throw InvalidInput("generator orders must be at least 2");
        q_[i] = mod2(q_[i]);
        for (std::size_t j = 0; j < k; ++j)
            b_(i, j) = mod1(b_(i, j));
    }
    for (std::size_t i = 0; i < k; ++i) {
        const Rational di(orders_[i]);
        if (!is_integral(2 * di * q_[i]) || !is_integral(di * di * q_[i] / 2))
            throw InvalidInput("q value on a generator is incompatible with its order");
        if (mod1(q_[i]) != b_(i, i))
            throw InvalidInput("q and b disagree on the diagonal");
        for (std::size_t j = 0; j < k; ++j) {
            if (b_(i, j) != b_(j, i))
                throw InvalidInput("b is not symmetric");
            if (!is_integral(di * b_(i, j)))
                throw InvalidInput("b value is incompatible with the generator orders");
        }
    }
}

DiscriminantForm DiscriminantForm::direct_sum(const DiscriminantForm& a, const DiscriminantForm& b)
{
    const std::size_t n = a.generator_count(), m = b.generator_count();
    std::vector<Integer> orders = a.orders_;
    orders.insert(orders.end(), b.orders_.begin(), b.orders_.end());
    std::vector<Rational> q = a.q_;
    q.insert(q.end(), b.q_.begin(), b.q_.end());
    RatMatrix bm(n + m, n + m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            bm(i, j) = a.b_(i, j);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            bm(n + i, n + j) = b.b_(i, j);
    return DiscriminantForm(std::move(orders), std::move(q), std::move(bm));
}

Integer DiscriminantForm::order() const
{
    return product(orders_);
}

DiscriminantForm DiscriminantForm::negated() const
{
    std::vector<Rational> q;
    for (const auto& x : q_)
        q.push_back(-x);
    RatMatrix b = b_;
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            b(i, j) = -b(i, j);
    return DiscriminantForm(orders_, std::move(q), std::move(b));
}

void DiscriminantForm::check_element(const Element& x) const
{
    if (x.size() != orders_.size())
        throw InvalidInput("element has the wrong number of coordinates");
}

Element DiscriminantForm::generator(std::size_t i) const
{
    Element g = zero();
    g.at(i) = 1;
    return g;
}

Element DiscriminantForm::normalize(Element x) const
{
    check_element(x);
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = mod_floor(x[i], orders_[i]);
    return x;
}

Element DiscriminantForm::add(const Element& x, const Element& y) const
{
    check_element(x);
    check_element(y);
    Element z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        z[i] = x[i] + y[i];
    return normalize(std::move(z));
}

Element DiscriminantForm::sub(const Element& x, const Element& y) const
{
    return add(x, scale(-1, y));
}

Element DiscriminantForm::scale(const Integer& k, const Element& x) const
{
    check_element(x);
    Element z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        z[i] = k * x[i];
    return normalize(std::move(z));
}

bool DiscriminantForm::is_zero(const Element& x) const
{
    return normalize(x) == zero();
}

Integer DiscriminantForm::element_order(const Element& x) const
{
    Element n = normalize(x);
    Integer o = 1;
    for (std::size_t i = 0; i < n.size(); ++i)
        o = lcm(o, orders_[i] / gcd(orders_[i], n[i]));
    return o;
}

Rational DiscriminantForm::q(const Element& x) const
{
    check_element(x);
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0)
            continue;
        s += Rational(x[i] * x[i]) * q_[i];
        for (std::size_t j = i + 1; j < x.size(); ++j)
            s += 2 * Rational(x[i] * x[j]) * b_(i, j);
    }
    return mod2(s);
}

Rational DiscriminantForm::b(const Element& x, const Element& y) const
{
    check_element(x);
    check_element(y);
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
            s += Rational(x[i] * y[j]) * b_(i, j);
    return mod1(s);
}

std::vector<Element> DiscriminantForm::elements() const
{
    require_enumerable(order());
    std::vector<Element> out;
    Element x = zero();
    for (;;) {
        out.push_back(x);
        std::size_t i = x.size();
        while (i > 0) {
            --i;
            if (++x[i] < orders_[i])
                break;
            x[i] = 0;
            if (i == 0)
                return out;
        }
        if (x.empty())
            return out;
    }
}

Rational q_value(const DiscriminantForm& a, const Element& x)
{
    return a.q(x);
}

// --- LatticeDiscriminant -----------------------------------------------------

LatticeDiscriminant::LatticeDiscriminant(const IntegralLattice& l) : lattice_(l)
{
    l.require_even();
    l.require_nondegenerate();
    SmithForm f = smith_normal_form(l.gram());
    v_ = f.V;
    s_ = f.diagonal();
    build();
}

LatticeDiscriminant::LatticeDiscriminant(const IntegralLattice& l, IntMatrix v, std::vector<Integer> s)
    : lattice_(l), v_(std::move(v)), s_(std::move(s))
{
    build();
}

void LatticeDiscriminant::build()
{
    v_inv_ = unimodular_inverse(v_);
    active_.clear();
    for (std::size_t i = 0; i < s_.size(); ++i)
        if (s_[i] != 1)
            active_.push_back(i);
    const IntMatrix img = v_.transpose() * lattice_.gram() * v_;
    const std::size_t k = active_.size();
    std::vector<Integer> orders;
    std::vector<Rational> q;
    RatMatrix b(k, k);
    for (std::size_t a = 0; a < k; ++a) {
        const std::size_t i = active_[a];
        orders.push_back(s_[i]);
        q.push_back(Rational(img(i, i), s_[i] * s_[i]));
        for (std::size_t c = 0; c < k; ++c) {
            const std::size_t j = active_[c];
            b(a, c) = Rational(img(i, j), s_[i] * s_[j]);
        }
    }
    form_ = DiscriminantForm(std::move(orders), std::move(q), std::move(b));
}

Element LatticeDiscriminant::element_of(const RatVector& dual) const
{
    const std::size_t n = lattice_.rank();
    if (dual.size() != n)
        throw InvalidInput("dual vector has the wrong length");
    RatVector gy = to_rational(lattice_.gram()) * dual;
    for (const auto& c : gy)
        if (!is_integral(c))
            throw InvalidInput("vector is not in the dual lattice");
    RatVector w = to_rational(v_inv_) * dual;
    Element x;
    for (auto i : active_) {
        Rational z = Rational(s_[i]) * w[i];
        if (!is_integral(z))
            throw InternalConsistency("dual coordinates are not compatible with the Smith form");
        x.push_back(mod_floor(numerator_of(z), s_[i]));
    }
    return x;
}

RatVector LatticeDiscriminant::lift(const Element& x) const
{
    if (x.size() != active_.size())
        throw InvalidInput("element has the wrong number of coordinates");
    RatVector y(lattice_.rank());
    for (std::size_t a = 0; a < active_.size(); ++a) {
        const std::size_t i = active_[a];
        for (std::size_t r = 0; r < y.size(); ++r)
            y[r] += Rational(x[a] * v_(r, i), s_[i]);
    }
    return y;
}

DiscriminantForm discriminant_form(const IntegralLattice& l)
{
    return LatticeDiscriminant(l).form();
}

LatticeDiscriminant lambda_discriminant(const Integer& n)
{
    // V = (f, g, e): the only nontrivial generator is e / 2n.
    IntMatrix v = IntMatrix::from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
    return LatticeDiscriminant(IntegralLattice::lambda(n), std::move(v), {1, 1, 2 * n});
}

// --- FiniteSubgroup ----------------------------------------------------------

FiniteSubgroup::FiniteSubgroup(const DiscriminantForm& ambient, const std::vector<Element>& generators)
    : ambient_(ambient)
{
    const std::size_t k = ambient.generator_count();
    IntMatrix m(generators.size() + k, k);
    for (std::size_t i = 0; i < generators.size(); ++i) {
        Element g = ambient.normalize(generators[i]);
        for (std::size_t j = 0; j < k; ++j)
            m(i, j) = g[j];
    }
    for (std::size_t j = 0; j < k; ++j)
        m(generators.size() + j, j) = ambient.orders()[j];
    basis_ = row_lattice_basis(m);
    build();
}

FiniteSubgroup FiniteSubgroup::trivial(const DiscriminantForm& ambient)
{
    return FiniteSubgroup(ambient, {});
}

FiniteSubgroup FiniteSubgroup::whole(const DiscriminantForm& ambient)
{
    std::vector<Element> gens;
    for (std::size_t i = 0; i < ambient.generator_count(); ++i)
        gens.push_back(ambient.generator(i));
    return FiniteSubgroup(ambient, gens);
}

void FiniteSubgroup::build()
{
    SmithPresentation p = present(basis_, diagonal_matrix(ambient_.orders()));
    basis_inverse_ = p.outer_inverse;
    basis_inv_smith_ = p.v;
    active_ = p.active;
    gens_.clear();
    gen_orders_.clear();
    for (std::size_t a = 0; a < p.active.size(); ++a) {
        gens_.push_back(ambient_.normalize(p.generator_rows[a]));
        gen_orders_.push_back(p.s[p.active[a]]);
    }
}

Integer FiniteSubgroup::order() const
{
    return product(gen_orders_);
}

bool FiniteSubgroup::contains(const Element& x) const
{
    Element n = ambient_.normalize(x);
    RatMatrix row(1, n.size());
    for (std::size_t j = 0; j < n.size(); ++j)
        row(0, j) = Rational(n[j]);
    RatMatrix c = row * basis_inverse_;
    for (std::size_t j = 0; j < c.cols(); ++j)
        if (!is_integral(c(0, j)))
            return false;
    return true;
}

IntVector FiniteSubgroup::coordinates(const Element& x) const
{
    SmithPresentation p{basis_inverse_, basis_inv_smith_, {}, active_, {}};
    p.s.assign(ambient_.generator_count(), Integer(1));
    for (std::size_t a = 0; a < active_.size(); ++a)
        p.s[active_[a]] = gen_orders_[a];
    return presentation_coords(p, ambient_.normalize(x));
}

std::vector<Element> FiniteSubgroup::elements() const
{
    require_enumerable(order());
    std::vector<Element> out;
    IntVector c(gens_.size());
    for (;;) {
        Element x = ambient_.zero();
        for (std::size_t i = 0; i < gens_.size(); ++i)
            x = ambient_.add(x, ambient_.scale(c[i], gens_[i]));
        out.push_back(x);
        std::size_t i = c.size();
        bool done = true;
        while (i > 0) {
            --i;
            if (++c[i] < gen_orders_[i]) {
                done = false;
                break;
            }
            c[i] = 0;
        }
        if (done)
            break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

DiscriminantForm FiniteSubgroup::restricted_form() const
{
    const std::size_t k = gens_.size();
    std::vector<Rational> q;
    RatMatrix b(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        q.push_back(ambient_.q(gens_[i]));
        for (std::size_t j = 0; j < k; ++j)
            b(i, j) = ambient_.b(gens_[i], gens_[j]);
    }
    return DiscriminantForm(gen_orders_, std::move(q), std::move(b));
}

std::vector<FiniteSubgroup> enumerate_subgroups(const DiscriminantForm& a)
{
    const auto elems = a.elements();
    std::vector<FiniteSubgroup> found{FiniteSubgroup::trivial(a)};
    std::set<std::vector<std::vector<Integer>>> seen{found.front().basis().to_rows()};
    for (std::size_t idx = 0; idx < found.size(); ++idx) {
        const FiniteSubgroup h = found[idx];
        for (const auto& x : elems) {
            if (h.contains(x))
                continue;
            std::vector<Element> gens = h.generators();
            gens.push_back(x);
            FiniteSubgroup g(a, gens);
            if (seen.insert(g.basis().to_rows()).second)
                found.push_back(std::move(g));
        }
    }
    std::sort(found.begin(), found.end(), [](const FiniteSubgroup& x, const FiniteSubgroup& y) {
        if (x.order() != y.order())
            return x.order() < y.order();
        return x.basis().to_rows() < y.basis().to_rows();
    });
    return found;
}

FiniteSubgroup orthogonal_subgroup(const FiniteSubgroup& h)
{
    const DiscriminantForm& a = h.ambient();
    const std::size_t k = a.generator_count();
    std::vector<RatVector> rows;
    Integer den = 1;
    for (const auto& g : h.generators()) {
        RatVector r(k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                r[i] += a.b_matrix()(i, j) * Rational(g[j]);
        for (const auto& x : r)
            den = lcm(den, denominator_of(x));
        rows.push_back(std::move(r));
    }
    IntMatrix c(rows.size(), k);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < k; ++j)
            c(i, j) = numerator_of(rows[i][j] * Rational(den));
    IntMatrix basis = congruence_kernel(c, den);
    std::vector<Element> gens;
    for (std::size_t i = 0; i < basis.rows(); ++i)
        gens.push_back(basis.row(i));
    return FiniteSubgroup(a, gens);
}

// --- isometries ----------------------------------------------------------------

Element SubgroupIsometry::apply(const Element& x) const
{
    IntVector c = source.coordinates(x);
    const DiscriminantForm& t = target.ambient();
    Element y = t.zero();
    for (std::size_t i = 0; i < c.size(); ++i)
        y = t.add(y, t.scale(c[i], images[i]));
    return y;
}

bool SubgroupIsometry::respects_forms() const
{
    const auto& gs = source.generators();
    if (images.size() != gs.size())
        return false;
    const DiscriminantForm& sa = source.ambient();
    const DiscriminantForm& ta = target.ambient();
    for (std::size_t i = 0; i < gs.size(); ++i) {
        if (!target.contains(images[i]))
            return false;
        if (!ta.is_zero(ta.scale(source.generator_orders()[i], images[i])))
            return false;
        if (ta.q(images[i]) != sa.q(gs[i]))
            return false;
        for (std::size_t j = i + 1; j < gs.size(); ++j)
            if (ta.b(images[i], images[j]) != sa.b(gs[i], gs[j]))
                return false;
    }
    return true;
}

bool SubgroupIsometry::is_bijective() const
{
    if (source.order() != target.order())
        return false;
    return FiniteSubgroup(target.ambient(), images) == target;
}

std::vector<SubgroupIsometry> subgroup_isometries(const FiniteSubgroup& v, const FiniteSubgroup& w)
{
    std::vector<SubgroupIsometry> out;
    if (v.order() != w.order())
        return out;
    require_enumerable(w.order());
    const auto& gs = v.generators();
    const DiscriminantForm& va = v.ambient();
    const DiscriminantForm& wa = w.ambient();
    const auto welems = w.elements();

    std::vector<std::vector<Element>> candidates(gs.size());
    for (std::size_t i = 0; i < gs.size(); ++i)
        for (const auto& y : welems)
            if (wa.is_zero(wa.scale(v.generator_orders()[i], y)) && wa.q(y) == va.q(gs[i]))
                candidates[i].push_back(y);

    std::vector<Element> images(gs.size());
    auto recurse = [&](auto&& self, std::size_t i) -> void {
        if (i == gs.size()) {
            SubgroupIsometry g{v, w, images};
            if (g.is_bijective())
                out.push_back(std::move(g));
            return;
        }
        for (const auto& y : candidates[i]) {
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j)
                ok = wa.b(images[j], y) == va.b(gs[j], gs[i]);
            if (!ok)
                continue;
            images[i] = y;
            self(self, i + 1);
        }
    };
    recurse(recurse, 0);
    return out;
}

// --- subquotients ----------------------------------------------------------------

Subquotient::Subquotient(const FiniteSubgroup& outer, const FiniteSubgroup& inner)
{
    if (!(outer.ambient() == inner.ambient()))
        throw InvalidInput("subgroups live in different forms");
    const DiscriminantForm& a = outer.ambient();
    SmithPresentation p = present(outer.basis(), inner.basis());
    outer_inverse_ = p.outer_inverse;
    smith_v_ = p.v;
    s_ = p.s;
    active_ = p.active;
    for (const auto& r : p.generator_rows)
        lifts_.push_back(a.normalize(r));
    for (const auto& x : inner.generators())
        for (const auto& y : outer.generators())
            if (a.b(x, y) != 0)
                throw InvalidInput("inner subgroup is not orthogonal to the outer one");
    for (const auto& x : inner.generators())
        if (a.q(x) != 0)
            throw InvalidInput("inner subgroup is not isotropic");

    const std::size_t k = lifts_.size();
    std::vector<Integer> orders;
    std::vector<Rational> q;
    RatMatrix b(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        orders.push_back(s_[active_[i]]);
        q.push_back(a.q(lifts_[i]));
        for (std::size_t j = 0; j < k; ++j)
            b(i, j) = a.b(lifts_[i], lifts_[j]);
    }
    form_ = DiscriminantForm(std::move(orders), std::move(q), std::move(b));
}

Element Subquotient::class_of(const Element& x) const
{
    SmithPresentation p{outer_inverse_, smith_v_, s_, active_, {}};
    return presentation_coords(p, x);
}

GluePerpQuotient glue_perp_quotient(const DiscriminantForm& a_src, const DiscriminantForm& a_amb,
                                    const SubgroupIsometry& gamma)
{
    if (!(gamma.source.ambient() == a_src) || !(gamma.target.ambient() == a_amb))
        throw InvalidInput("isometry does not act between the given forms");
    if (!gamma.respects_forms() || !gamma.is_bijective())
        throw InvalidInput("glue map is not a form-respecting isomorphism");
    DiscriminantForm sum = DiscriminantForm::direct_sum(a_src, a_amb.negated());
    std::vector<Element> gens;
    const auto& vs = gamma.source.generators();
    for (std::size_t i = 0; i < vs.size(); ++i) {
        Element g = vs[i];
        g.insert(g.end(), gamma.images[i].begin(), gamma.images[i].end());
        gens.push_back(std::move(g));
    }
    FiniteSubgroup graph(sum, gens);
    FiniteSubgroup perp = orthogonal_subgroup(graph);
    Subquotient quotient(perp, graph);
    return {std::move(sum), std::move(graph), std::move(perp), std::move(quotient)};
}

std::optional<Element> cyclic_generator_with_value(const DiscriminantForm& q, const Rational& target,
                                                   SignConvention sign)
{
    if (q.generator_count() != 1)
        return std::nullopt;
    const Integer n = q.orders()[0];
    const Rational want = mod2(target), alt = mod2(-target);
    for (Integer k = 1; k < n; ++k) {
        if (gcd(k, n) != 1)
            continue;
        Element g{k};
        Rational v = q.q(g);
        if (v == want || (sign == SignConvention::UpToGlobalSign && v == alt))
            return g;
    }
    return std::nullopt;
}

} // namespace k3lat
