#pragma once

// Finite quadratic forms A = L*/L, their subgroups, isometries between
// subgroups and the quotient Gamma^perp / Gamma used by Nikulin's criterion.
//
// An element of a form with invariant factors (d_1, ..., d_k) is a
// coordinate vector x with 0 <= x_i < d_i.

#include <optional>
#include <vector>

#include "k3lat/integer.hpp"
#include "k3lat/intlat.hpp"

namespace k3lat {

using Element = IntVector;

// Exhaustive searches refuse groups larger than this.
inline constexpr long long kMaxEnumeratedOrder = 10000;

class DiscriminantForm {
public:
    DiscriminantForm() = default;
    // Validates the compatibility conditions and reduces q mod 2, b mod 1.
    DiscriminantForm(std::vector<Integer> orders, std::vector<Rational> q, RatMatrix b);

    static DiscriminantForm direct_sum(const DiscriminantForm& a, const DiscriminantForm& b);

    const std::vector<Integer>& orders() const { return orders_; }
    const std::vector<Rational>& q_values() const { return q_; }
    const RatMatrix& b_matrix() const { return b_; }
    std::size_t generator_count() const { return orders_.size(); }
    Integer order() const;
    bool is_trivial() const { return orders_.empty(); }

    DiscriminantForm negated() const;

    Element zero() const { return Element(orders_.size()); }
    Element generator(std::size_t i) const;
    Element normalize(Element x) const;
    Element add(const Element& x, const Element& y) const;
    Element sub(const Element& x, const Element& y) const;
    Element scale(const Integer& k, const Element& x) const;
    bool is_zero(const Element& x) const;
    Integer element_order(const Element& x) const;

    // Value in [0, 2).
    Rational q(const Element& x) const;
    // Value in [0, 1).
    Rational b(const Element& x, const Element& y) const;

    // All elements in lexicographic order. Throws SizeLimit above
    // kMaxEnumeratedOrder.
    std::vector<Element> elements() const;

    friend bool operator==(const DiscriminantForm& a, const DiscriminantForm& b)
    {
        return a.orders_ == b.orders_ && a.q_ == b.q_ && a.b_ == b.b_;
    }

private:
    void check_element(const Element& x) const;

    std::vector<Integer> orders_;
    std::vector<Rational> q_;
    RatMatrix b_;
};

// A discriminant form together with the map from dual vectors to elements.
// Dual vectors are rational coordinate vectors y in the lattice basis with
// G y integral.
class LatticeDiscriminant {
public:
    explicit LatticeDiscriminant(const IntegralLattice& l);

    const IntegralLattice& lattice() const { return lattice_; }
    const DiscriminantForm& form() const { return form_; }

    Element element_of(const RatVector& dual) const;
    // A dual vector representing the element.
    RatVector lift(const Element& x) const;

private:
    friend LatticeDiscriminant lambda_discriminant(const Integer& n);
    LatticeDiscriminant(const IntegralLattice& l, IntMatrix v, std::vector<Integer> s);
    void build();

    IntegralLattice lattice_;
    IntMatrix v_, v_inv_;
    std::vector<Integer> s_;           // all Smith invariants of the Gram
    std::vector<std::size_t> active_;  // indices with s_i > 1
    DiscriminantForm form_;
};

// SNF-based form of an even nondegenerate lattice.
DiscriminantForm discriminant_form(const IntegralLattice& l);

// A_{2n} of Lambda_2n with generator e/2n, so q(1) = 1/2n.
LatticeDiscriminant lambda_discriminant(const Integer& n);

Rational q_value(const DiscriminantForm& a, const Element& x);

// A subgroup H of A, stored as the lattice H~ in Z^k with H = H~/R where R
// is spanned by d_i e_i. The basis of H~ is in row Hermite form, so equal
// subgroups compare equal.
class FiniteSubgroup {
public:
    FiniteSubgroup() = default;
    FiniteSubgroup(const DiscriminantForm& ambient, const std::vector<Element>& generators);

    static FiniteSubgroup trivial(const DiscriminantForm& ambient);
    static FiniteSubgroup whole(const DiscriminantForm& ambient);

    const DiscriminantForm& ambient() const { return ambient_; }
    const IntMatrix& basis() const { return basis_; }
    Integer order() const;
    bool contains(const Element& x) const;

    // Invariant-factor generators of H, orders > 1 only.
    const std::vector<Element>& generators() const { return gens_; }
    const std::vector<Integer>& generator_orders() const { return gen_orders_; }
    // Coordinates of x in terms of generators(); requires contains(x).
    IntVector coordinates(const Element& x) const;

    std::vector<Element> elements() const;
    // The restricted form, as an abstract discriminant form on generators().
    DiscriminantForm restricted_form() const;

    friend bool operator==(const FiniteSubgroup& a, const FiniteSubgroup& b)
    {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    void build();

    DiscriminantForm ambient_;
    IntMatrix basis_;
    IntMatrix basis_inv_smith_;  // V of the Smith form of R * basis^{-1}
    RatMatrix basis_inverse_;
    std::vector<Element> gens_;
    std::vector<Integer> gen_orders_;
    std::vector<std::size_t> active_;
};

std::vector<FiniteSubgroup> enumerate_subgroups(const DiscriminantForm& a);

// A homomorphism V -> W given by the images of V.generators().
struct SubgroupIsometry {
    FiniteSubgroup source;
    FiniteSubgroup target;
    std::vector<Element> images;

    Element apply(const Element& x) const;
    bool respects_forms() const;
    bool is_bijective() const;

    friend bool operator==(const SubgroupIsometry& a, const SubgroupIsometry& b)
    {
        return a.source == b.source && a.target == b.target && a.images == b.images;
    }
};

// Every bijection gamma with q_W(gamma x) = q_V(x), in a fixed order.
std::vector<SubgroupIsometry> subgroup_isometries(const FiniteSubgroup& v, const FiniteSubgroup& w);

// P~/G~ for subgroups G <= P of a common ambient form, presented with
// Smith generators. Used for Gamma^perp / Gamma.
class Subquotient {
public:
    Subquotient(const FiniteSubgroup& outer, const FiniteSubgroup& inner);

    const DiscriminantForm& form() const { return form_; }
    // Ambient representatives of the quotient generators.
    const std::vector<Element>& lifts() const { return lifts_; }
    // Class of an element of the outer group.
    Element class_of(const Element& x) const;

private:
    DiscriminantForm form_;
    std::vector<Element> lifts_;
    RatMatrix outer_inverse_;
    IntMatrix smith_v_;
    std::vector<Integer> s_;
    std::vector<std::size_t> active_;
};

// Gamma is isotropic for q_src + (-q_amb) and never trivial to compute with
// enumeration, so Gamma^perp is obtained by solving linear congruences.
struct GluePerpQuotient {
    DiscriminantForm sum;        // A_src + (-A_amb)
    FiniteSubgroup gamma;        // graph of the isometry
    FiniteSubgroup gamma_perp;
    Subquotient quotient;
};

GluePerpQuotient glue_perp_quotient(const DiscriminantForm& a_src, const DiscriminantForm& a_amb,
                                    const SubgroupIsometry& gamma);

// Orthogonal complement of a subgroup of A under b.
FiniteSubgroup orthogonal_subgroup(const FiniteSubgroup& h);

// How to compare a cyclic quotient against "1 maps to 1/2t".
enum class SignConvention { AsStated, UpToGlobalSign };

// A generator g of the cyclic form with q(g) = target (or -target when the
// convention allows it); the first one in increasing multiple order.
std::optional<Element> cyclic_generator_with_value(const DiscriminantForm& q, const Rational& target,
                                                   SignConvention sign);

} // namespace k3lat
