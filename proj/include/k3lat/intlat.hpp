#pragma once

// Even integral lattices given by a Gram matrix, their sublattices and the
// operations the embedding and discriminant code is built on.

#include <vector>

#include "k3lat/integer.hpp"
#include "k3lat/kernels.hpp"

namespace k3lat {

class IntegralLattice {
public:
    IntegralLattice() = default;
    explicit IntegralLattice(IntMatrix gram);

    // U, with Gram [[0,1],[1,0]].
    static IntegralLattice hyperbolic_plane();
    // Lambda_2n = <2n> + U in the basis (e, f, g).
    static IntegralLattice lambda(const Integer& n);
    static IntegralLattice diagonal(const std::vector<Integer>& entries);
    static IntegralLattice direct_sum(const IntegralLattice& a, const IntegralLattice& b);

    std::size_t rank() const { return gram_.rows(); }
    const IntMatrix& gram() const { return gram_; }

    bool is_even() const;
    Integer determinant() const;
    Integer abs_determinant() const;
    bool is_nondegenerate() const { return determinant() != 0; }

    Integer pairing(const IntVector& x, const IntVector& y) const;
    Integer norm(const IntVector& x) const { return pairing(x, x); }

    void require_even() const;
    void require_nondegenerate() const;

    friend bool operator==(const IntegralLattice& a, const IntegralLattice& b)
    {
        return a.gram_ == b.gram_;
    }

private:
    IntMatrix gram_;
};

// Columns of `matrix` are the images of the source basis in target
// coordinates; source.gram() = matrix^T * target.gram() * matrix.
struct SublatticeEmbedding {
    IntegralLattice source;
    IntegralLattice target;
    IntMatrix matrix;

    // Builds the embedding with the induced source form. Throws
    // DegenerateEmbedding when the columns are linearly dependent.
    static SublatticeEmbedding from_columns(const IntegralLattice& target, const IntMatrix& matrix);

    std::vector<IntVector> columns() const;
    bool is_isometric() const;
};

std::vector<Integer> smith_invariants(const IntMatrix& m);

bool is_primitive_sublattice(const SublatticeEmbedding& e);

// Saturated {x : <x, s> = 0 for all s}. Already primitive, so no saturation
// step is needed afterwards.
SublatticeEmbedding orthogonal_complement(const IntegralLattice& l, const std::vector<IntVector>& s);

// (image tensor Q) intersected with the target. Primitive input is returned
// unchanged; otherwise the basis is the Hermite-reduced one.
SublatticeEmbedding saturation(const SublatticeEmbedding& e);

// [L : image] for a full-rank embedding.
Integer index_of_sublattice(const IntegralLattice& l, const SublatticeEmbedding& e);

struct IsotropicQuotient {
    IntegralLattice lattice;
    // Columns: v followed by the lifts e_1..e_t of the quotient basis.
    IntMatrix perp_basis;
};

// v^perp / Zv for primitive isotropic v. The lifts come from a Hermite
// completion of v inside the saturated v^perp.
IsotropicQuotient isotropic_quotient(const IntegralLattice& l, const IntVector& v);
IntegralLattice quotient_by_isotropic(const IntegralLattice& l, const IntVector& v);

// Every x with |x_i| <= bound and <x, x> = norm, lexicographic order.
std::vector<IntVector> enumerate_vectors(const IntegralLattice& l, const Integer& norm,
                                         const Integer& bound,
                                         kernels::Exec exec = kernels::Exec::Parallel);

} // namespace k3lat
