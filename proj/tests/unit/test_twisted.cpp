#include <doctest.h>

#include "k3lat/twisted.hpp"
#include "oracles.hpp"

using namespace k3lat;

namespace {

IntMatrix to_matrix(const oracle::Mat& m)
{
    IntMatrix out(m.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            out(i, j) = m[i][j];
    return out;
}

TranscendentalModel tmodel(long long g2)
{
    IntMatrix t(1, 1);
    t(0, 0) = g2;
    return TranscendentalModel(t, 0);
}

// Gram of the twisted basis written out by hand: [[g2, -r], [-r, 0]] + NS.
oracle::Mat twisted_gram_oracle(const oracle::Mat& ns, const Integer& g2, const Integer& r)
{
    const std::size_t k = ns.size();
    oracle::Mat g(k + 2, std::vector<Integer>(k + 2));
    g[0][0] = g2;
    g[0][1] = g[1][0] = -r;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            g[2 + i][2 + j] = ns[i][j];
    return g;
}

} // namespace

TEST_CASE("twisted lattice examples")
{
    auto ns = NeronSeveriData::rank_one(2);
    auto l = twisted_lattice(ns, tmodel(-2), 5);
    CHECK(l.lattice.gram() == IntMatrix::from_rows({{-2, -5, 0}, {-5, 0, 0}, {0, 0, 2}}));
    CHECK(l.lattice.abs_determinant() == 50);

    auto id = twisted_disc_identity(ns, tmodel(-2), 5);
    CHECK(id.lhs == 50);
    CHECK(id.rhs == 50);
    CHECK(id.equal);
    CHECK(twisted_disc_identity(ns, tmodel(-2), 1).lhs == 2);

    NeronSeveriData empty(IntMatrix(0, 0), std::nullopt);
    auto l0 = twisted_lattice(empty, tmodel(-4), 7);
    CHECK(l0.lattice.rank() == 2);
    CHECK(l0.lattice.determinant() == -49);

    NeronSeveriData a2(IntMatrix::from_rows({{2, 1}, {1, 2}}), 0);
    for (int r : {1, 2, 5, 49})
        CHECK(twisted_disc_identity(a2, tmodel(-6), r).equal);

    CHECK_THROWS_AS(twisted_lattice(ns, tmodel(-2), 0), InvalidInput);
    CHECK_THROWS_AS(tmodel(2), InvalidInput);
    CHECK_THROWS_AS(tmodel(-3), InvalidInput);
}

TEST_CASE("membership and divisibility")
{
    auto ns = NeronSeveriData::rank_one(2);
    auto l = twisted_lattice(ns, tmodel(-2), 5);
    MukaiVector v1{5, {1, 1}, 0};
    REQUIRE(l.coordinates(v1));
    CHECK(*l.coordinates(v1) == IntVector{1, 0, 1});
    CHECK(l.to_ambient(*l.coordinates(v1)) == v1);
    CHECK(divisibility_nv(l, v1) == 1);
    CHECK(divisibility_nv(l, MukaiVector{0, {0, 0}, 1}) == 5);
    CHECK_FALSE(l.coordinates(MukaiVector{5, {0, 0}, 0}));
    CHECK_FALSE(l.coordinates(MukaiVector{1, {0, 1}, 0}));
    CHECK_THROWS_AS(divisibility_nv(l, MukaiVector{0, {0, 0}, 0}), InvalidInput);

    // Pairings of v1 with the basis, by substitution: (-2, -5, 2).
    auto amb = l.ambient();
    auto b = l.basis();
    CHECK(mukai_pairing(v1, b[0], amb) == -2);
    CHECK(mukai_pairing(v1, b[1], amb) == -5);
    CHECK(mukai_pairing(v1, b[2], amb) == 2);
}

TEST_CASE("partner discriminant")
{
    auto ns = NeronSeveriData::rank_one(2);
    auto l = twisted_lattice(ns, tmodel(-2), 5);
    auto rep = partner_disc(l, MukaiVector{5, {1, 1}, 0}, Integer(5));
    CHECK(rep.disc == 50);
    CHECK(rep.identity_holds);
    CHECK(*rep.ell_valuation == 2);
    CHECK(rep.p_t_exponent == 0);

    auto l25 = twisted_lattice(ns, tmodel(-2), 25);
    CHECK(*partner_disc(l25, MukaiVector{25, {1, 1}, 0}, Integer(5)).ell_valuation == 4);

    auto l1 = twisted_lattice(ns, tmodel(-2), 1);
    auto r1 = partner_disc(l1, MukaiVector{0, {0, 0}, 1});
    CHECK(r1.disc == 2);
    CHECK(r1.n_v == 1);
    CHECK(r1.identity_holds);

    CHECK_THROWS_AS(partner_disc(l, MukaiVector{5, {0, 1}, 0}), InvalidInput);
}

TEST_CASE("witness sequence d=1, ell=5")
{
    auto seq = witness_sequence(1, 5, 3, std::nullopt, {true, kernels::Exec::Serial});
    REQUIRE(seq.records.size() == 3);
    std::vector<Integer> h2, vals;
    for (const auto& w : seq.records) {
        CHECK(w.identities_hold());
        h2.push_back(w.h_square);
        vals.push_back(w.ell_valuation);
        CHECK(2 % w.n_v == 0);
    }
    CHECK(h2 == std::vector<Integer>{50, 1250, 31250});
    CHECK(vals == std::vector<Integer>{2, 4, 6});
    CHECK(seq.ell_coprime);
    CHECK(seq.valuations_are_2n);
    CHECK(seq.strictly_increasing);

    auto with_b = witness_sequence(1, 5, 3, Integer(3));
    for (const auto& w : with_b.records) {
        REQUIRE(w.b);
        CHECK(w.b_orthogonal);
        CHECK(w.identities_hold());
    }

    CHECK_THROWS_AS(witness_sequence(1, 4, 3), NotPrime);
}

TEST_CASE("serial and parallel witness sequences agree")
{
    for (int d = 1; d <= 4; ++d)
        for (int ell : {3, 5, 7, 17}) {
            auto s = witness_sequence(d, ell, 5, std::nullopt, {true, kernels::Exec::Serial});
            auto p = witness_sequence(d, ell, 5, std::nullopt, {true, kernels::Exec::Parallel});
            REQUIRE(s.records.size() == p.records.size());
            for (std::size_t i = 0; i < s.records.size(); ++i) {
                CHECK(s.records[i].partner_disc == p.records[i].partner_disc);
                CHECK(s.records[i].n_v == p.records[i].n_v);
            }
            CHECK(s.strictly_increasing);
            CHECK(s.ell_coprime == ((4 * d * d) % ell != 0));
            if (s.ell_coprime)
                CHECK(s.valuations_are_2n);
        }
}

TEST_CASE("witness model validation")
{
    WitnessModel m = default_witness_model(2);
    m.trans = tmodel(-2);
    CHECK_THROWS_AS(witness_sequence(m, 5, 2), InvalidInput);
}

TEST_CASE("disc identities on random Neron-Severi lattices")
{
    oracle::Rng rng(77);
    int partner_checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t rank = rng.uniform(1, 4);
        auto g = rng.even_gram(rank, 20);
        NeronSeveriData ns(to_matrix(g), std::nullopt);
        for (int ell : {5, 7})
            for (int n = 1; n <= 3; ++n) {
                Integer r = 1;
                for (int i = 0; i < n; ++i)
                    r *= ell;
                auto id = twisted_disc_identity(ns, tmodel(-2), r);
                CHECK(id.equal);
                CHECK(id.lhs == abs(oracle::cofactor_det(twisted_gram_oracle(g, -2, r))));
                CHECK(id.rhs == r * r * abs(oracle::cofactor_det(g)));
            }
        // First basis vector of positive norm serves as D.
        for (std::size_t i = 0; i < rank; ++i) {
            if (g[i][i] <= 0)
                continue;
            IntVector dvec(rank);
            dvec[i] = 1;
            for (Integer r : {5, 49, 343}) {
                auto l = twisted_lattice(ns, tmodel(static_cast<long long>(-g[i][i])), r);
                MukaiVector v{r, dvec, 0};
                v.D.push_back(1);
                auto rep = partner_disc(l, v);
                CHECK(rep.identity_holds);
                ++partner_checked;
            }
            break;
        }
    }
    CHECK(partner_checked > 30);
}
