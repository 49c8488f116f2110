#include <functional>
#include <map>

#include "k3lat/cli.hpp"
#include "k3lat/modarith.hpp"
#include "k3lat/twisted.hpp"

namespace k3lat::cli {

namespace {

using io::integer_from;
using io::to_json;

Integer get_int(const json& in, const char* key)
{
    if (!in.contains(key))
        throw InvalidInput(std::string("missing input \"") + key + "\"");
    return integer_from(in.at(key), key);
}

bool get_bool(const json& in, const char* key)
{
    return in.contains(key) && in.at(key).is_boolean() && in.at(key).get<bool>();
}

MukaiVector mukai_from(const json& j, const std::string& what)
{
    if (!j.is_object() || !j.contains("a") || !j.contains("D") || !j.contains("c"))
        throw InvalidInput(what + ": expected {\"a\", \"D\", \"c\"}");
    return {integer_from(j.at("a"), what), io::vector_from(j.at("D"), what), integer_from(j.at("c"), what)};
}

json checks_json(const std::vector<NamedCheck>& checks)
{
    json a = json::array();
    for (const auto& c : checks)
        a.push_back({{"name", c.name}, {"pass", c.pass}});
    return a;
}

void require_proven(const Integer& p, const json& in, const char* what)
{
    if (get_bool(in, "seedless") && !primality_is_proven(p))
        throw InvalidInput(std::string(what) + " = " + to_string(p) +
                           " is beyond the deterministic primality range (seedless mode)");
}

std::string join(const std::vector<std::string>& v)
{
    std::string s;
    for (const auto& x : v)
        s += (s.empty() ? "" : "; ") + x;
    return s;
}

std::string yes_no(bool b)
{
    return b ? "true" : "false";
}

CommandResult cmd_disc_form(const json& in)
{
    IntegralLattice l(io::gram_from(in));
    DiscriminantForm a = discriminant_form(l);
    CommandResult r;
    r.outputs = to_json(a);
    r.outputs["determinant"] = to_json(l.determinant());
    r.checks.push_back({"|A| = |det|", a.order() == l.abs_determinant()});
    return r;
}

json seed_json(const Seed& s)
{
    return {{"lattice", to_json(s.lattice.gram())},
            {"columns", io::columns_json(s.embedding)},
            {"w", s.w ? to_json(*s.w) : json(nullptr)},
            {"glue", to_json(s.glue)}};
}

void check_modulus(const Seed& seed, const Integer& d, const Integer& m, const json& in)
{
    if (m < 1)
        throw InvalidInput("m must be positive");
    if (m > 1)
        require_proven(m, in, "m");
    Admissibility adm = check_admissible(seed.lattice, seed.glue, d, m);
    if (!adm.admissible)
        throw InadmissibleModulus("m = " + to_string(m) + " is inadmissible: " + join(adm.failures));
}

CommandResult cmd_embed(const json& in)
{
    const Integer d = get_int(in, "d"), m = get_int(in, "m"), lsq = get_int(in, "lsq");
    const Integer bound = get_int(in, "search_bound");
    Seed seed = build_seed(d, lsq);
    check_modulus(seed, d, m, in);
    Extension ext = extend_glue(seed.lattice, seed.glue, d, m);
    RealizeResult rr;
    if (m == 1) {
        rr.status = RealizeStatus::Witness;
        rr.embedding = seed.embedding;
    } else {
        rr = realize_embedding(seed.lattice, m * d, ext.glue, bound);
    }
    const ExtensionConstants c = extension_constants(seed.glue, d);

    CommandResult r;
    r.outputs = {{"seed", seed_json(seed)},
                 {"constants", {{"N", to_json(c.N)}, {"a", to_json(c.a)}, {"b", to_json(c.b)}}},
                 {"certificate", to_json(ext.certificate)},
                 {"glue", to_json(ext.glue)},
                 {"target", {{"n", to_json(Integer(m * d))}, {"gram", to_json(IntegralLattice::lambda(m * d).gram())}}}};
    GlueValidity gv = check_glue(seed.lattice, ext.glue);
    r.checks.push_back({"extended glue valid", gv.valid});
    r.checks.push_back({"quotient cyclic of order 2tm", gv.quotient_order == 2 * ext.glue.t});
    r.checks.push_back({"generator q = 1/2mt", ext.certificate.new_generator_q == mod2(Rational(1, 2 * ext.glue.t))});
    if (rr.embedding) {
        r.outputs["status"] = "witness";
        r.outputs["embedding"] = io::columns_json(*rr.embedding);
        r.checks.push_back({"E^T G E = G_Lambda", rr.embedding->is_isometric()});
        r.checks.push_back({"primitive", is_primitive_sublattice(*rr.embedding)});
        r.checks.push_back({"realizes the extended glue", embedding_to_glue(*rr.embedding) == ext.glue});
    } else {
        r.outputs["status"] = "certificate-only";
        r.outputs["embedding"] = nullptr;
        r.outputs["note"] = "existence guaranteed, witness not found within bound";
        r.exit_code = kCertificateOnly;
    }
    r.outputs["candidates_examined"] = rr.candidates_examined;
    return r;
}

CommandResult cmd_zarhin(const json& in)
{
    const Integer d = get_int(in, "d"), m = get_int(in, "m"), lsq = get_int(in, "lsq");
    Seed seed = build_seed(d, lsq);
    check_modulus(seed, d, m, in);
    ZarhinCertificate c = zarhin_construct(d, m, lsq, get_int(in, "search_bound"));
    CommandResult r;
    r.outputs = {{"r", to_json(c.r)},
                 {"q_L", to_json(c.q_L)},
                 {"ns_degree", to_json(Integer(2 * m * d))},
                 {"constants",
                  {{"N", to_json(c.constants.extension.N)},
                   {"a", to_json(c.constants.extension.a)},
                   {"b", to_json(c.constants.extension.b)}}},
                 {"seed", seed_json(c.seed)},
                 {"certificate", to_json(c.extension.certificate)},
                 {"brauer_multiplier", kBrauerMultiplier}};
    if (c.status == RealizeStatus::Witness) {
        r.outputs["status"] = "witness";
        r.outputs["v"] = to_json(*c.v);
        r.outputs["l"] = to_json(*c.l);
        r.outputs["l_descended"] = to_json(brauer_multiplier(*c.l));
        r.outputs["embedding"] = io::columns_json(*c.embedding);
        r.outputs["normalization"] = {{"swap", c.normalization.swap}, {"negate", c.normalization.negate}};
        r.outputs["moduli_dimension"] = to_json(moduli_dimension(*c.v, c.ns));
    } else {
        r.outputs["status"] = "certificate-only";
        r.outputs["note"] = "witness not realized within bound";
        r.exit_code = kCertificateOnly;
    }
    r.checks = c.checks;
    return r;
}

CommandResult cmd_twisted_run(const json& in)
{
    const Integer d = get_int(in, "d"), ell = get_int(in, "ell"), n_max = get_int(in, "n_max");
    std::optional<Integer> e;
    if (in.contains("e") && !in.at("e").is_null())
        e = get_int(in, "e");
    if (n_max < 1 || n_max > 1000)
        throw InvalidInput("n_max must lie in [1, 1000]");
    require_proven(ell, in, "ell");
    WitnessSequence seq = witness_sequence(d, ell, static_cast<unsigned>(to_int64(n_max)), e);

    CommandResult r;
    json rows = json::array();
    Table t{{"n", "r", "h_square", "n_v", "partner_disc", "ell_valuation", "v_isotropic", "h_orthogonal",
             "h_square_ok", "b_orthogonal", "n_v_bound", "partner_identity"},
            {}};
    bool all_ok = true;
    for (const auto& w : seq.records) {
        json row = {{"n", w.n},
                    {"r", to_json(w.r)},
                    {"v", to_json(w.v)},
                    {"h", to_json(w.h)},
                    {"b", w.b ? to_json(*w.b) : json(nullptr)},
                    {"h_square", to_json(w.h_square)},
                    {"n_v", to_json(w.n_v)},
                    {"partner_disc", to_json(w.partner_disc)},
                    {"ell_valuation", w.ell_valuation},
                    {"identities",
                     {{"v_isotropic", w.v_isotropic},
                      {"h_orthogonal", w.h_orthogonal},
                      {"h_square", w.h_square_ok},
                      {"b_orthogonal", w.b_orthogonal},
                      {"in_lattice", w.in_lattice},
                      {"n_v_bound", w.n_v_bound},
                      {"partner_identity", w.partner_identity}}}};
        rows.push_back(row);
        t.rows.push_back({std::to_string(w.n), to_string(w.r), to_string(w.h_square), to_string(w.n_v),
                          to_string(w.partner_disc), std::to_string(w.ell_valuation), yes_no(w.v_isotropic),
                          yes_no(w.h_orthogonal), yes_no(w.h_square_ok), yes_no(w.b_orthogonal),
                          yes_no(w.n_v_bound), yes_no(w.partner_identity)});
        all_ok = all_ok && w.identities_hold();
    }
    r.outputs = {{"records", rows},
                 {"ell_coprime", seq.ell_coprime},
                 {"valuations_are_2n", seq.valuations_are_2n},
                 {"strictly_increasing", seq.strictly_increasing},
                 {"p_t_exponent", 0}};
    r.checks.push_back({"witness identities", all_ok});
    r.checks.push_back({"valuations strictly increasing", seq.strictly_increasing});
    if (seq.ell_coprime)
        r.checks.push_back({"valuation = 2n", seq.valuations_are_2n});
    r.table = std::move(t);
    return r;
}

CommandResult cmd_disc_chain(const json& in)
{
    NeronSeveriData ns = io::ns_from(in.at("ns"));
    MukaiVector v = mukai_from(in.at("v"), "v");
    std::optional<Integer> partner;
    if (in.contains("partner_disc") && !in.at("partner_disc").is_null())
        partner = get_int(in, "partner_disc");
    DiscChainReport rep = disc_comparison_chain(ns, v, partner);
    CommandResult r;
    r.outputs = {{"v_squared", to_json(rep.v_squared)},
                 {"perp_gram", to_json(rep.perp.source.gram())},
                 {"perp_basis", io::columns_json(rep.perp)},
                 {"perp_disc", to_json(rep.perp_disc)},
                 {"ambient_disc", to_json(rep.ambient_disc)},
                 {"index", to_json(rep.index)},
                 {"lambda", to_json(rep.lambda)},
                 {"partner_disc", partner ? to_json(*partner) : json(nullptr)},
                 {"residual", rep.residual ? to_json(*rep.residual) : json(nullptr)}};
    r.checks.push_back({"v^2 |disc v^perp| = i^2 |disc N|", rep.identity_holds});
    r.checks.push_back({"|disc N| <= v^2 |disc v^perp|", rep.inequality_holds});
    return r;
}

CommandResult cmd_mukai(const json& in)
{
    NeronSeveriData ns = io::ns_from(in.at("ns"));
    MukaiVector v = mukai_from(in.at("v"), "v");
    CommandResult r;
    const Integer sq = mukai_square(v, ns);
    ConditionC cc = check_condition_C(v, ns);
    json fails = json::array();
    for (const auto& f : cc.failures)
        fails.push_back(f);
    r.outputs = {{"v_squared", to_json(sq)},
                 {"condition_C", {{"passes", cc.passes}, {"failures", fails}, {"gcd", to_json(cc.gcd_value)}}}};
    if (sq >= 0 && sq % 2 == 0) {
        const Integer dim = moduli_dimension(v, ns);
        r.outputs["moduli_dimension"] = to_json(dim);
        r.outputs["fujiki_degree_q2"] = to_json(fujiki_degree(2, static_cast<unsigned>(to_int64(dim / 2))));
    } else {
        r.outputs["moduli_dimension"] = nullptr;
    }
    if (in.contains("w") && !in.at("w").is_null()) {
        MukaiVector w = mukai_from(in.at("w"), "w");
        r.outputs["pairing"] = to_json(mukai_pairing(v, w, ns));
        r.outputs["euler_characteristic"] = to_json(euler_characteristic(v, w, ns));
    }
    r.checks.push_back({"chi(v, v) = -v^2", euler_characteristic(v, v, ns) == -sq});
    return r;
}

CommandResult cmd_prime_search(const json& in)
{
    QRConstraint c{io::vector_from(in.at("values"), "values")};
    PrimeSearchOptions opts;
    opts.ceiling = get_int(in, "ceiling");
    opts.proven_only = get_bool(in, "seedless");
    const Integer count = get_int(in, "count");
    if (count < 1 || count > 100000)
        throw InvalidInput("count must lie in [1, 100000]");
    auto primes = prime_search(c, get_int(in, "min"), static_cast<std::size_t>(to_int64(count)), opts);
    CommandResult r;
    r.outputs = {{"primes", to_json(IntVector(primes.begin(), primes.end()))}};
    Table t{{"prime"}, {}};
    bool ok = true;
    for (const auto& p : primes) {
        t.rows.push_back({to_string(p)});
        ok = ok && mod_floor(p, 8) == 1;
        for (const auto& x : c.values)
            ok = ok && legendre(x, p) == 1;
    }
    r.checks.push_back({"p = 1 mod 8 and every value is a QR", ok});
    r.table = std::move(t);
    return r;
}

CommandResult cmd_rep(const json& in)
{
    IntMatrix g = io::gram_from(in.at("gram"));
    const Integer c = get_int(in, "c"), ell = get_int(in, "ell"), k = get_int(in, "k");
    if (k < 1 || k > 4096)
        throw InvalidInput("k must lie in [1, 4096]");
    require_proven(ell, in, "ell");
    IntVector x = represent_value(g, c, ell, static_cast<unsigned>(to_int64(k)));
    Integer mod = 1;
    for (Integer i = 0; i < k; ++i)
        mod *= ell;
    const Integer val = mod_floor(dot(x, g * x), mod);
    CommandResult r;
    r.outputs = {{"x", to_json(x)}, {"modulus", to_json(mod)}, {"value", to_json(val)}};
    r.checks.push_back({"x^T G x = c mod ell^k", val == mod_floor(c, mod)});
    return r;
}

} // namespace

CommandResult execute(const std::string& command, const json& inputs)
{
    static const std::map<std::string, std::function<CommandResult(const json&)>> table{
        {"disc-form", cmd_disc_form}, {"embed", cmd_embed},       {"zarhin", cmd_zarhin},
        {"twisted-run", cmd_twisted_run}, {"disc-chain", cmd_disc_chain}, {"mukai", cmd_mukai},
        {"prime-search", cmd_prime_search}, {"rep", cmd_rep}};
    auto it = table.find(command);
    if (it == table.end())
        throw InvalidInput("unknown command \"" + command + "\"");
    if (!inputs.is_object())
        throw InvalidInput("inputs must be a JSON object");
    try {
        return it->second(inputs);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed inputs: ") + e.what());
    }
}

json make_manifest(const std::string& command, const json& inputs, const CommandResult& r)
{
    return {{"command", command},
            {"inputs", inputs},
            {"tool_version", kToolVersion},
            {"outputs", r.outputs},
            {"checks", checks_json(r.checks)}};
}

std::string render_json(const json& j)
{
    return j.dump(2) + "\n";
}

std::string render_csv(const Table& t)
{
    auto line = [](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                s += ',';
            const bool quote = cells[i].find_first_of(",\"\n") != std::string::npos;
            if (!quote) {
                s += cells[i];
                continue;
            }
            s += '"';
            for (char ch : cells[i])
                s += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            s += '"';
        }
        return s + "\n";
    };
    std::string out = line(t.header);
    for (const auto& r : t.rows)
        out += line(r);
    return out;
}

} // namespace k3lat::cli
