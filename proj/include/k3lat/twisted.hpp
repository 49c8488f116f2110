#pragma once

// Twisted Mukai lattices N^{alpha/r} = {(a r, D + a alpha, c omega)} inside
// Z + (NS + T) + Z omega, their discriminants, the divisibility n_v of a
// vector, and the isotropic witness sequences v_n = (l^n, gamma + D, 0).

#include <optional>
#include <vector>

#include "k3lat/intlat.hpp"
#include "k3lat/kernels.hpp"
#include "k3lat/mukai.hpp"

namespace k3lat {

// Integral stand-in for the transcendental lattice; orthogonal to NS.
struct TranscendentalModel {
    IntMatrix gram;
    std::size_t gamma_index = 0;

    TranscendentalModel() = default;
    TranscendentalModel(IntMatrix gram, std::size_t gamma_index);

    std::size_t rank() const { return gram.rows(); }
    Integer gamma_square() const { return gram(gamma_index, gamma_index); }
};

// Coordinates are (a, c, D_1..D_k) in the basis (r, alpha, 0), omega, (0, D_i, 0).
struct TwistedMukaiLattice {
    NeronSeveriData ns;
    TranscendentalModel trans;
    Integer r;
    IntegralLattice lattice;

    // NS + T, over which ambient Mukai vectors are written.
    NeronSeveriData ambient() const;
    MukaiVector to_ambient(const IntVector& coords) const;
    // Coordinates of an ambient vector, or nothing if it is not in the lattice.
    std::optional<IntVector> coordinates(const MukaiVector& v) const;
    std::vector<MukaiVector> basis() const;
};

TwistedMukaiLattice twisted_lattice(const NeronSeveriData& ns, const TranscendentalModel& trans,
                                    const Integer& r);

struct DiscIdentity {
    Integer lhs;  // |det N^{alpha/r}|
    Integer rhs;  // r^2 |det NS|
    bool equal = false;
};

DiscIdentity twisted_disc_identity(const NeronSeveriData& ns, const TranscendentalModel& trans,
                                   const Integer& r);

// gcd of <v, b_i> over the basis; v is an ambient vector lying in L.
Integer divisibility_nv(const TwistedMukaiLattice& l, const MukaiVector& v);

// Exponent of p in n.
unsigned valuation(const Integer& n, const Integer& p);

struct PartnerDiscReport {
    Integer n_v;
    IntegralLattice quotient;  // v^perp / Zv
    Integer disc;              // |disc(v^perp / Zv)|
    Integer lhs;               // n_v^2 |disc|
    Integer rhs;               // r^2 |disc NS|
    bool identity_holds = false;
    std::optional<Integer> ell;
    std::optional<unsigned> ell_valuation;
    int p_t_exponent = 0;  // no p-torsion in the lattice model
};

PartnerDiscReport partner_disc(const TwistedMukaiLattice& l, const MukaiVector& v,
                               std::optional<Integer> ell = std::nullopt);

// NS containing D (and optionally B with B.D = 0), T containing gamma with
// gamma^2 = -D^2.
struct WitnessModel {
    NeronSeveriData ns;
    TranscendentalModel trans;
    IntVector D;
    std::optional<IntVector> B;
};

// NS = <2d> or <2d> + <2e>, T = <-2d>.
WitnessModel default_witness_model(const Integer& d, std::optional<Integer> e = std::nullopt);

struct WitnessRecord {
    unsigned n = 0;
    Integer r;  // ell^n
    MukaiVector v, h;
    std::optional<MukaiVector> b;
    bool v_isotropic = false;
    bool h_orthogonal = false;
    bool h_square_ok = false;  // h^2 = 2d ell^{2n}
    bool b_orthogonal = true;
    bool in_lattice = false;   // v, h, b all lie in N^{alpha/r}
    Integer h_square;
    Integer n_v;
    bool n_v_bound = false;    // n_v^2 <= 4 d^2
    Integer partner_disc;
    bool partner_identity = false;
    unsigned ell_valuation = 0;

    bool identities_hold() const
    {
        return v_isotropic && h_orthogonal && h_square_ok && b_orthogonal && in_lattice && n_v_bound &&
               partner_identity;
    }
};

struct WitnessSequence {
    Integer d, ell;
    std::vector<WitnessRecord> records;
    bool ell_coprime = false;          // ell does not divide 2d |disc NS|
    bool valuations_are_2n = false;    // checked only when ell_coprime
    bool strictly_increasing = false;
};

struct WitnessOptions {
    bool include_h = true;
    kernels::Exec exec = kernels::Exec::Parallel;
};

WitnessSequence witness_sequence(const WitnessModel& model, const Integer& ell, unsigned n_max,
                                 const WitnessOptions& opts = {});
WitnessSequence witness_sequence(const Integer& d, const Integer& ell, unsigned n_max,
                                 std::optional<Integer> e = std::nullopt, const WitnessOptions& opts = {});

} // namespace k3lat
