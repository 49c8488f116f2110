// One PASS/FAIL line per acceptance criterion. Every comparison is exact;
// the only tolerances are the wall-clock budgets pinned below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "k3lat/cli.hpp"
#include "k3lat/modarith.hpp"
#include "k3lat/twisted.hpp"
#include "k3lat/zarhin.hpp"
#include "oracles.hpp"

using namespace k3lat;

namespace {

constexpr double kCriterion2BudgetSeconds = 60.0;
constexpr double kTotalBudgetSeconds = 300.0;
constexpr long kRoundTripBound = 12;
constexpr long kExtensionSearchBound = 8;
constexpr unsigned kHenselPrecision = 10;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

IntMatrix to_matrix(const oracle::Mat& m)
{
    IntMatrix out(m.size(), m.empty() ? 0 : m[0].size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
            out(i, j) = m[i][j];
    return out;
}

oracle::Mat to_mat(const IntMatrix& m)
{
    oracle::Mat out(m.rows(), std::vector<Integer>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[i][j] = m(i, j);
    return out;
}

// E^T G E by explicit sums.
oracle::Mat pulled_back_gram(const IntMatrix& g, const IntMatrix& e)
{
    oracle::Mat out(e.cols(), std::vector<Integer>(e.cols()));
    for (std::size_t a = 0; a < e.cols(); ++a)
        for (std::size_t b = 0; b < e.cols(); ++b)
            for (std::size_t i = 0; i < g.rows(); ++i)
                for (std::size_t j = 0; j < g.cols(); ++j)
                    out[a][b] += e(i, a) * g(i, j) * e(j, b);
    return out;
}

bool oracle_primitive(const IntMatrix& e)
{
    for (const auto& d : oracle::determinantal_invariants(to_mat(e)))
        if (d != 1)
            return false;
    return true;
}

Integer ipow(const Integer& b, unsigned e)
{
    Integer r = 1;
    for (unsigned i = 0; i < e; ++i)
        r *= b;
    return r;
}

// Random even Gram with a positive first diagonal entry, so D = e_1 has D^2 > 0.
oracle::Mat ns_gram(oracle::Rng& rng, std::size_t rank)
{
    for (;;) {
        oracle::Mat g = rng.even_gram(rank, 20);
        if (g[0][0] > 0)
            return g;
    }
}

Outcome criterion1()
{
    Outcome o;
    for (long q = 1; q <= 100; ++q)
        o.require(fujiki_degree(q, 2) == Rational(3 * q * q), "fujiki_degree(" + std::to_string(q) + ", 2)");
    o.require(zarhin_constants(1, 2).r == 12, "zarhin_constants(1, 2).r != 12");
    if (o.pass)
        o.detail = "q = 1..100 and r(1, 2) = 12";
    return o;
}

Outcome criterion2()
{
    Outcome o;
    std::ostringstream note;
    for (int d = 1; d <= 3; ++d) {
        Seed seed = build_seed(d);
        std::vector<Integer> found;
        for (Integer p = 3; found.size() < 3 && p < 100000; p += 2)
            if (is_prime(p) && check_admissible(seed.lattice, seed.glue, d, p).admissible)
                found.push_back(p);
        o.require(found.size() == 3, "fewer than 3 admissible primes for d = " + std::to_string(d));
        note << " d=" << d << ":";
        for (const auto& m : found) {
            note << " " << m;
            Extension ext = extend_glue(seed.lattice, seed.glue, d, m);
            RealizeResult rr = realize_embedding(seed.lattice, m * d, ext.glue, kExtensionSearchBound);
            const std::string tag = "d=" + std::to_string(d) + " m=" + to_string(m);
            o.require(rr.embedding.has_value(), tag + ": no witness within bound");
            if (!rr.embedding)
                continue;
            const IntMatrix lam = IntegralLattice::lambda(m * d).gram();
            o.require(to_matrix(pulled_back_gram(lam, rr.embedding->matrix)) == seed.lattice.gram(),
                      tag + ": E^T G E != G_Lambda");
            o.require(oracle_primitive(rr.embedding->matrix), tag + ": Smith invariants not all 1");
            o.require(is_primitive_sublattice(*rr.embedding), tag + ": library primitivity check failed");
            if (d == 1 && m == 5) {
                auto cols = rr.embedding->columns();
                o.require(cols[0] == IntVector{0, 1, 1} && cols[1] == IntVector{1, 2, -2},
                          "d=1 m=5 witness is not (0,1,1),(1,2,-2)");
            }
        }
    }
    if (o.pass)
        o.detail = "admissible m:" + note.str();
    return o;
}

Outcome criterion3()
{
    Outcome o;
    std::size_t embeddings = 0, glues = 0;
    for (const auto& s : {IntegralLattice::diagonal({2, 2}), IntegralLattice::diagonal({2, 4})}) {
        for (int n = 1; n <= 10; ++n) {
            const IntegralLattice l = IntegralLattice::lambda(n);
            auto xs = enumerate_vectors(l, s.gram()(0, 0), kRoundTripBound);
            auto ys = enumerate_vectors(l, s.gram()(1, 1), kRoundTripBound);
            std::vector<GluingData> seen;
            for (const auto& x : xs)
                for (const auto& y : ys) {
                    if (l.pairing(x, y) != s.gram()(0, 1))
                        continue;
                    IntMatrix e(3, 2);
                    for (std::size_t i = 0; i < 3; ++i) {
                        e(i, 0) = x[i];
                        e(i, 1) = y[i];
                    }
                    if (!oracle_primitive(e))
                        continue;
                    ++embeddings;
                    GluingData g = embedding_to_glue(SublatticeEmbedding::from_columns(l, e));
                    o.require(check_glue(s, g).valid, "brute-force embedding gives an invalid glue");
                    if (std::find(seen.begin(), seen.end(), g) == seen.end())
                        seen.push_back(g);
                }
            for (const auto& g : enumerate_valid_glues(s, n)) {
                ++glues;
                o.require(std::find(seen.begin(), seen.end(), g) != seen.end(),
                          "valid glue without a brute-force witness at n = " + std::to_string(n));
            }
        }
    }
    if (o.pass)
        o.detail = std::to_string(embeddings) + " embeddings, " + std::to_string(glues) + " valid glues";
    return o;
}

struct FuzzInstance {
    oracle::Mat gram;
    Integer r;
};

std::vector<FuzzInstance> fuzz_set()
{
    oracle::Rng rng(20260101);
    std::vector<FuzzInstance> out;
    const int ells[] = {5, 7};
    for (int i = 0; i < 100; ++i) {
        std::size_t rank = rng.uniform(1, 4);
        unsigned n = rng.uniform(1, 3);
        out.push_back({ns_gram(rng, rank), ipow(ells[i % 2], n)});
    }
    return out;
}

TranscendentalModel gamma_model(const Integer& g2)
{
    IntMatrix t(1, 1);
    t(0, 0) = g2;
    return TranscendentalModel(t, 0);
}

Outcome criterion4()
{
    Outcome o;
    int count = 0;
    for (const auto& f : fuzz_set()) {
        NeronSeveriData ns(to_matrix(f.gram), std::nullopt);
        DiscIdentity id = twisted_disc_identity(ns, gamma_model(-f.gram[0][0]), f.r);
        const Integer oracle_rhs = f.r * f.r * abs(oracle::cofactor_det(f.gram));
        o.require(id.equal && id.rhs == oracle_rhs, "disc identity fails");
        ++count;
    }
    if (o.pass)
        o.detail = std::to_string(count) + " instances";
    return o;
}

Outcome criterion5()
{
    Outcome o;
    int count = 0;
    for (const auto& f : fuzz_set()) {
        NeronSeveriData ns(to_matrix(f.gram), std::nullopt);
        TwistedMukaiLattice l = twisted_lattice(ns, gamma_model(-f.gram[0][0]), f.r);
        MukaiVector v{f.r, IntVector(f.gram.size()), 0};
        v.D[0] = 1;
        v.D.push_back(1);  // gamma
        PartnerDiscReport rep = partner_disc(l, v);
        const Integer rhs = f.r * f.r * abs(oracle::cofactor_det(f.gram));
        o.require(rep.n_v * rep.n_v * rep.disc == rhs, "n_v^2 |disc(v^perp/Zv)| != r^2 |disc NS|");
        ++count;
    }
    if (o.pass)
        o.detail = std::to_string(count) + " instances";
    return o;
}

Outcome criterion6()
{
    Outcome o;
    const Integer first = prime_search(QRConstraint{{2, -1, -2}}, 3, 1).front();
    o.require(first == 17, "first prime_search hit is " + to_string(first));
    const Integer d = 1;
    std::ostringstream note;
    for (const Integer& ell : {first, Integer(5)}) {
        WitnessSequence seq = witness_sequence(d, ell, 5);
        note << " ell=" << ell << ":";
        unsigned prev = 0;
        for (const auto& w : seq.records) {
            const std::string tag = "ell=" + to_string(ell) + " n=" + std::to_string(w.n);
            const Integer l2n = ipow(ell, 2 * w.n);
            o.require(w.v_isotropic, tag + ": v_n^2 != 0");
            o.require(w.h_square == 2 * d * l2n, tag + ": h_n^2 != 2d ell^2n");
            o.require(w.n_v * w.n_v <= 4 * d * d, tag + ": n_v^2 > 4d^2");
            o.require(w.identities_hold(), tag + ": witness identities fail");
            if ((2 * d * 2 * d) % ell != 0)
                o.require(w.ell_valuation == 2 * w.n, tag + ": valuation != 2n");
            o.require(w.ell_valuation > prev, tag + ": valuation not strictly increasing");
            prev = w.ell_valuation;
            note << " " << w.ell_valuation;
        }
    }
    if (o.pass)
        o.detail = "valuations" + note.str();
    return o;
}

Outcome criterion7()
{
    Outcome o;
    oracle::Rng rng(7070);
    int count = 0;
    while (count < 50) {
        std::size_t rank = rng.uniform(1, 3);
        oracle::Mat g = rng.even_gram(rank, 10);
        NeronSeveriData ns(to_matrix(g), std::nullopt);
        const long s = 2 * rng.uniform(1, 3);
        MukaiVector v{rng.uniform(-3, 3), IntVector(rank), 0};
        for (auto& x : v.D)
            x = rng.uniform(-3, 3);
        const Integer d2 = dot(v.D, ns.gram * v.D);
        if (v.a == 0 || (d2 - s) % (2 * v.a) != 0)
            continue;
        v.c = (d2 - s) / (2 * v.a);
        if (content(to_lattice_coords(v)) != 1)
            continue;
        DiscChainReport rep = disc_comparison_chain(ns, v);
        // Index recomputed as |det[v | perp basis]| with cofactor expansion.
        oracle::Mat cols(rank + 2, std::vector<Integer>(rank + 2));
        IntVector x = to_lattice_coords(v);
        for (std::size_t i = 0; i < rank + 2; ++i) {
            cols[i][0] = x[i];
            for (std::size_t j = 0; j < rank + 1; ++j)
                cols[i][j + 1] = rep.perp.matrix(i, j);
        }
        const Integer i_oracle = abs(oracle::cofactor_det(cols));
        const Integer perp_oracle = abs(oracle::cofactor_det(to_mat(rep.perp.source.gram())));
        const Integer amb_oracle = abs(oracle::cofactor_det(g));
        o.require(rep.v_squared == s, "v^2 mismatch");
        o.require(i_oracle == rep.index, "index mismatch");
        o.require(s * perp_oracle == i_oracle * i_oracle * amb_oracle, "v^2 |disc v^perp| != i^2 |disc N|");
        o.require(amb_oracle <= s * perp_oracle, "|disc N| > v^2 |disc v^perp|");
        ++count;
    }
    if (o.pass)
        o.detail = std::to_string(count) + " instances";
    return o;
}

Outcome criterion8()
{
    Outcome o;
    oracle::Rng rng(8088);
    int grams = 0, solved = 0;
    while (grams < 50) {
        const Integer ell = grams % 2 ? 11 : 7;
        std::size_t rank = rng.uniform(2, 4);
        oracle::Mat g(rank, std::vector<Integer>(rank));
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = i; j < rank; ++j)
                g[i][j] = g[j][i] = rng.uniform(-30, 30);
        if (mod_floor(oracle::cofactor_det(g), ell) == 0)
            continue;
        ++grams;
        const Integer mod = ipow(ell, kHenselPrecision);
        std::vector<Integer> targets{1};
        for (int d = 1; d <= 5; ++d)
            targets.push_back(-2 * d);
        for (const auto& c : targets) {
            IntVector x = represent_value(to_matrix(g), c, ell, kHenselPrecision);
            Integer val = 0;
            bool unit = false;
            for (std::size_t i = 0; i < rank; ++i) {
                unit = unit || mod_floor(x[i], ell) != 0;
                for (std::size_t j = 0; j < rank; ++j)
                    val += x[i] * g[i][j] * x[j];
            }
            o.require(mod_floor(val - c, mod) == 0, "x^T G x != c mod ell^10");
            o.require(unit, "solution is divisible by ell");
            ++solved;
        }
    }
    if (o.pass)
        o.detail = std::to_string(grams) + " Grams, " + std::to_string(solved) + " targets";
    return o;
}

Outcome criterion9()
{
    Outcome o;
    const std::vector<std::pair<std::string, cli::json>> runs{
        {"disc-form", {{"gram", {{2, 1}, {1, 4}}}}},
        {"embed", {{"d", 1}, {"m", 5}, {"lsq", 2}, {"search_bound", 8}, {"seedless", false}}},
        {"embed", {{"d", 3}, {"m", 37}, {"lsq", 6}, {"search_bound", 8}, {"seedless", false}}},
        {"zarhin", {{"d", 2}, {"m", 17}, {"lsq", 4}, {"search_bound", 8}, {"seedless", false}}},
        {"twisted-run", {{"d", 1}, {"ell", 17}, {"n_max", 5}, {"e", nullptr}, {"seedless", false}}},
        {"disc-chain", {{"ns", {{"gram", {{2}}}, {"h_index", 0}}}, {"v", {{"a", 1}, {"D", {0}}, {"c", -2}}},
                        {"partner_disc", nullptr}}},
        {"mukai", {{"ns", {{"gram", {{2}}}, {"h_index", 0}}}, {"v", {{"a", 1}, {"D", {0}}, {"c", -1}}},
                   {"w", nullptr}}},
        {"prime-search", {{"values", {2, -1, -2}}, {"min", 3}, {"count", 5}, {"ceiling", 1000000}, {"seedless", false}}},
        {"rep", {{"gram", {{2, 1}, {1, 2}}}, {"c", -2}, {"ell", 7}, {"k", 10}, {"seedless", false}}}};
    for (const auto& [command, inputs] : runs) {
        const std::string a = cli::render_json(cli::make_manifest(command, inputs, cli::execute(command, inputs)));
        // Replay from the serialized manifest, as a consumer would.
        const cli::json stored = cli::json::parse(a);
        const std::string b = cli::render_json(cli::make_manifest(
            stored.at("command").get<std::string>(), stored.at("inputs"),
            cli::execute(stored.at("command").get<std::string>(), stored.at("inputs"))));
        o.require(a == b, command + ": replay bytes differ");
    }
    if (o.pass)
        o.detail = std::to_string(runs.size()) + " manifests replayed byte-identically";
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 Fujiki/Zarhin degree", criterion1},
        {"2 embedding extension end-to-end", criterion2},
        {"3 Nikulin round trip", criterion3},
        {"4 twisted discriminant identity", criterion4},
        {"5 partner discriminant identity", criterion5},
        {"6 witness sequence growth", criterion6},
        {"7 discriminant comparison identity", criterion7},
        {"8 Hensel representation", criterion8},
        {"9 determinism", criterion9}};
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        const auto t0 = clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(clock::now() - t0).count();
        if (name[0] == '2' && secs >= kCriterion2BudgetSeconds) {
            o.pass = false;
            o.detail = "exceeded the 60 s budget";
        }
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << name << "] " << o.detail << " (" << timing << ")\n";
        failures += o.pass ? 0 : 1;
    }
    const double total = std::chrono::duration<double>(clock::now() - start).count();
    const bool in_budget = total < kTotalBudgetSeconds;
    std::cout << (in_budget ? "PASS" : "FAIL") << " [total runtime under 300 s] " << static_cast<long>(total)
              << " s\n";
    return failures == 0 && in_budget ? 0 : 1;
}
