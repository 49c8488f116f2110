#include "k3lat/intlat.hpp"

namespace k3lat {

IntegralLattice::IntegralLattice(IntMatrix gram) : gram_(std::move(gram))
{
    if (!gram_.is_symmetric())
        throw InvalidInput("Gram matrix must be square and symmetric");
}

IntegralLattice IntegralLattice::hyperbolic_plane()
{
    return IntegralLattice(IntMatrix::from_rows({{0, 1}, {1, 0}}));
}

IntegralLattice IntegralLattice::lambda(const Integer& n)
{
    if (n < 1)
        throw InvalidInput("Lambda_2n needs n >= 1");
    return direct_sum(diagonal({2 * n}), hyperbolic_plane());
}

IntegralLattice IntegralLattice::diagonal(const std::vector<Integer>& entries)
{
    IntMatrix g(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i)
        g(i, i) = entries[i];
    return IntegralLattice(std::move(g));
}

IntegralLattice IntegralLattice::direct_sum(const IntegralLattice& a, const IntegralLattice& b)
{
    const std::size_t n = a.rank(), m = b.rank();
    IntMatrix g(n + m, n + m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            g(i, j) = a.gram()(i, j);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            g(n + i, n + j) = b.gram()(i, j);
    return IntegralLattice(std::move(g));
}

bool IntegralLattice::is_even() const
{
    for (std::size_t i = 0; i < rank(); ++i)
        if (gram_(i, i) % 2 != 0)
            return false;
    return true;
}

Integer IntegralLattice::determinant() const
{
    return k3lat::determinant(gram_);
}

Integer IntegralLattice::abs_determinant() const
{
    return abs(determinant());
}

Integer IntegralLattice::pairing(const IntVector& x, const IntVector& y) const
{
    if (x.size() != rank() || y.size() != rank())
        throw InvalidInput("vector length does not match lattice rank");
    return dot(x, gram_ * y);
}

void IntegralLattice::require_even() const
{
    if (!is_even())
        throw InvalidInput("lattice is not even");
}

void IntegralLattice::require_nondegenerate() const
{
    if (!is_nondegenerate())
        throw InvalidInput("lattice is degenerate");
}

SublatticeEmbedding SublatticeEmbedding::from_columns(const IntegralLattice& target,
                                                      const IntMatrix& matrix)
{
    if (matrix.rows() != target.rank())
        throw InvalidInput("embedding matrix rows must match the target rank");
    if (matrix_rank(matrix) != matrix.cols())
        throw DegenerateEmbedding("embedding columns are linearly dependent");
    IntegralLattice source(matrix.transpose() * target.gram() * matrix);
    return {std::move(source), target, matrix};
}

std::vector<IntVector> SublatticeEmbedding::columns() const
{
    std::vector<IntVector> out;
    for (std::size_t j = 0; j < matrix.cols(); ++j)
        out.push_back(matrix.col(j));
    return out;
}

bool SublatticeEmbedding::is_isometric() const
{
    return matrix.rows() == target.rank() && matrix.cols() == source.rank() &&
           matrix.transpose() * target.gram() * matrix == source.gram();
}

std::vector<Integer> smith_invariants(const IntMatrix& m)
{
    return smith_normal_form(m).diagonal();
}

bool is_primitive_sublattice(const SublatticeEmbedding& e)
{
    if (matrix_rank(e.matrix) != e.matrix.cols())
        throw DegenerateEmbedding("embedding matrix is rank deficient");
    for (const auto& d : smith_invariants(e.matrix))
        if (d != 1)
            return false;
    return true;
}

SublatticeEmbedding orthogonal_complement(const IntegralLattice& l, const std::vector<IntVector>& s)
{
    IntMatrix c(s.size(), l.rank());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i].size() != l.rank())
            throw InvalidInput("vector length does not match lattice rank");
        IntVector row = l.gram() * s[i];
        for (std::size_t j = 0; j < l.rank(); ++j)
            c(i, j) = row[j];
    }
    return SublatticeEmbedding::from_columns(l, integer_kernel(c));
}

SublatticeEmbedding saturation(const SublatticeEmbedding& e)
{
    if (is_primitive_sublattice(e))
        return e;
    // The saturation is the annihilator of the annihilator of the image.
    IntMatrix ann = integer_kernel(e.matrix.transpose());
    return SublatticeEmbedding::from_columns(e.target, integer_kernel(ann.transpose()));
}

Integer index_of_sublattice(const IntegralLattice& l, const SublatticeEmbedding& e)
{
    if (e.matrix.rows() != l.rank() || e.matrix.cols() != l.rank())
        throw InvalidInput("index needs a full-rank sublattice");
    Integer d = abs(determinant(e.matrix));
    if (d == 0)
        throw DegenerateEmbedding("sublattice does not have full rank");
    return d;
}

IsotropicQuotient isotropic_quotient(const IntegralLattice& l, const IntVector& v)
{
    if (v.size() != l.rank())
        throw InvalidInput("vector length does not match lattice rank");
    if (l.norm(v) != 0)
        throw InvalidInput("vector is not isotropic");
    if (content(v) != 1)
        throw InvalidInput("vector is not primitive");

    SublatticeEmbedding perp = orthogonal_complement(l, {v});
    const std::size_t k = perp.matrix.cols();
    auto c = solve_integer(perp.matrix, v);
    if (!c)
        throw InternalConsistency("isotropic vector does not lie in its own complement");

    // T * c = e_1 for primitive c, so the first column of T^{-1} is c.
    IntMatrix column(k, 1);
    for (std::size_t i = 0; i < k; ++i)
        column(i, 0) = (*c)[i];
    HermiteForm h = hermite_normal_form(column);
    if (h.H(0, 0) != 1)
        throw InternalConsistency("isotropic vector is not primitive in its complement");
    IntMatrix basis = perp.matrix * unimodular_inverse(h.T);

    IntMatrix lifts(l.rank(), k - 1);
    for (std::size_t i = 0; i < l.rank(); ++i)
        for (std::size_t j = 1; j < k; ++j)
            lifts(i, j - 1) = basis(i, j);
    IntegralLattice q(lifts.transpose() * l.gram() * lifts);
    return {std::move(q), std::move(basis)};
}

IntegralLattice quotient_by_isotropic(const IntegralLattice& l, const IntVector& v)
{
    return isotropic_quotient(l, v).lattice;
}

std::vector<IntVector> enumerate_vectors(const IntegralLattice& l, const Integer& norm,
                                         const Integer& bound, kernels::Exec exec)
{
    if (bound < 1)
        throw InvalidInput("coefficient bound must be >= 1");
    kernels::BoxQuery q;
    q.rank = l.rank();
    q.norm = to_int64(norm);
    q.bound = to_int64(bound);
    for (std::size_t i = 0; i < l.rank(); ++i)
        for (std::size_t j = 0; j < l.rank(); ++j)
            q.gram.push_back(to_int64(l.gram()(i, j)));
    std::vector<IntVector> out;
    for (const auto& x : kernels::enumerate_box(q, exec)) {
        IntVector v;
        for (auto c : x)
            v.emplace_back(c);
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace k3lat
