#pragma once

// The Mukai lattice N(X) = Z + NS(X) + Z omega with the pairing
// <(a, D, c), (a', D', c')> = D.D' - a c' - a' c.

#include <optional>
#include <string>
#include <vector>

#include "k3lat/integer.hpp"
#include "k3lat/intlat.hpp"

namespace k3lat {

struct NeronSeveriData {
    IntMatrix gram;
    std::optional<std::size_t> h_index;  // column of the polarization H

    NeronSeveriData() = default;
    NeronSeveriData(IntMatrix gram, std::optional<std::size_t> h_index);

    // NS = <degree> with H the generator.
    static NeronSeveriData rank_one(const Integer& degree);

    std::size_t rank() const { return gram.rows(); }
    Integer degree() const;
};

struct MukaiVector {
    Integer a;     // rank component
    IntVector D;   // first Chern class in the NS basis
    Integer c;     // omega coefficient

    friend bool operator==(const MukaiVector& x, const MukaiVector& y)
    {
        return x.a == y.a && x.D == y.D && x.c == y.c;
    }
};

MukaiVector omega(std::size_t ns_rank);
MukaiVector scale(const Integer& k, const MukaiVector& v);
MukaiVector add(const MukaiVector& x, const MukaiVector& y);

Integer mukai_pairing(const MukaiVector& v, const MukaiVector& w, const NeronSeveriData& ns);
Integer mukai_square(const MukaiVector& v, const NeronSeveriData& ns);

// (rk, c1, chi - rk).
MukaiVector mukai_vector_of_sheaf(const Integer& rk, const IntVector& c1, const Integer& chi);

// chi(F, G) = -<v(F), v(G)>.
Integer euler_characteristic(const MukaiVector& v, const MukaiVector& w, const NeronSeveriData& ns);

struct ConditionC {
    bool passes = false;
    std::vector<std::string> failures;
    Integer v_squared;
    Integer h_dot_c1;
    Integer gcd_value;  // gcd(rk, H.c1, c)
};

ConditionC check_condition_C(const MukaiVector& v, const NeronSeveriData& ns);

// v^2 + 2; v^2 must be even and nonnegative.
Integer moduli_dimension(const MukaiVector& v, const NeronSeveriData& ns);

// alpha^{2n} = (2n)! q^n / (n! 2^n).
Rational fujiki_degree(const Integer& q, unsigned n);

// Basis (NS basis, (1,0,0), omega): Gram NS + [[0,-1],[-1,0]].
IntegralLattice full_mukai_lattice(const NeronSeveriData& ns);
IntVector to_lattice_coords(const MukaiVector& v);
MukaiVector from_lattice_coords(const IntVector& x, std::size_t ns_rank);

struct DiscChainReport {
    Integer v_squared;
    SublatticeEmbedding perp;       // v^perp in N(X), saturated
    Integer perp_disc;              // |disc(v^perp)|
    Integer ambient_disc;           // |disc N(X)|
    Integer index;                  // [N(X) : Zv + v^perp]
    bool identity_holds = false;    // v^2 |disc v^perp| = i^2 |disc N(X)|
    bool inequality_holds = false;  // |disc N(X)| <= v^2 |disc v^perp|
    Rational lambda;                // |disc N(X)| / |disc v^perp| = v^2 / i^2
    std::optional<Integer> partner_disc;
    // |disc N(X)| / (lambda * partner_disc), when a partner disc is given.
    std::optional<Rational> residual;
};

DiscChainReport disc_comparison_chain(const NeronSeveriData& ns, const MukaiVector& v,
                                      std::optional<Integer> partner_disc = std::nullopt);

} // namespace k3lat
