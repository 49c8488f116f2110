#include <CLI11.hpp>
#include <ostream>

#include "k3lat/cli.hpp"

namespace k3lat::cli {

namespace {

struct Globals {
    std::string format = "json";
    bool seedless = false;
    std::string scan_ceiling;
    std::string manifest_path;
};

std::string default_ceiling(const std::optional<std::string>& env)
{
    if (env && !env->empty()) {
        Integer c;
        try {
            c = parse_integer(*env);
        } catch (const Error&) {
            throw InvalidInput(std::string(kScanCeilingEnv) + " is not an integer: " + *env);
        }
        if (c < 1)
            throw InvalidInput(std::string(kScanCeilingEnv) + " must be positive");
        return to_string(c);
    }
    return to_string(Integer(1) << 40);
}

json int_or_string(const std::string& s, const char* what)
{
    try {
        return io::to_json(parse_integer(s));
    } catch (const Error&) {
        throw InvalidInput(std::string(what) + ": not an integer: " + s);
    }
}

MukaiVector mukai_arg(const std::string& s, std::size_t ns_rank, const char* what)
{
    IntVector x = io::parse_int_list(s);
    if (x.size() != ns_rank + 2)
        throw InvalidInput(std::string(what) + " needs " + std::to_string(ns_rank + 2) +
                           " integers (a, D..., c)");
    return {x.front(), IntVector(x.begin() + 1, x.end() - 1), x.back()};
}

json ns_arg(const std::string& ns_file, const std::string& degree)
{
    if (!ns_file.empty()) {
        json j = io::load_json_arg(ns_file);
        NeronSeveriData ns = io::ns_from(j);
        json h = ns.h_index ? json(*ns.h_index) : json(nullptr);
        return {{"gram", io::to_json(ns.gram)}, {"h_index", h}};
    }
    if (degree.empty())
        throw InvalidInput("give --ns FILE or --degree K");
    NeronSeveriData ns = NeronSeveriData::rank_one(parse_integer(degree));
    return {{"gram", io::to_json(ns.gram)}, {"h_index", 0}};
}

int emit(const std::string& command, const json& inputs, const Globals& g, std::ostream& out,
         std::ostream& err)
{
    CommandResult r = execute(command, inputs);
    const json manifest = make_manifest(command, inputs, r);
    if (!g.manifest_path.empty()) {
        std::ofstream f(g.manifest_path);
        if (!f)
            throw InvalidInput("cannot write " + g.manifest_path);
        f << render_json(manifest);
    }
    if (g.format == "csv") {
        if (!r.table)
            throw InvalidInput(command + " has no CSV rendering");
        out << render_csv(*r.table);
    } else {
        out << render_json(manifest);
    }
    if (!all_pass(r.checks)) {
        for (const auto& c : r.checks)
            if (!c.pass)
                err << "k3lat: check failed: " << c.name << "\n";
        return kInternal;
    }
    return r.exit_code;
}

int replay(const std::string& path, const Globals& g, std::ostream& out, std::ostream& err)
{
    const json stored = io::load_json_arg(path);
    if (!stored.is_object() || !stored.contains("command") || !stored.contains("inputs"))
        throw InvalidInput(path + " is not a run manifest");
    if (stored.value("tool_version", "") != kToolVersion)
        err << "k3lat: warning: manifest was written by tool version " << stored.value("tool_version", "?")
            << "\n";
    const std::string command = stored.at("command").get<std::string>();
    CommandResult r = execute(command, stored.at("inputs"));
    const std::string fresh = render_json(make_manifest(command, stored.at("inputs"), r));
    out << fresh;
    if (fresh != render_json(stored)) {
        err << "k3lat: replay mismatch for " << path << "\n";
        return kInternal;
    }
    (void)g;
    return r.exit_code;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::optional<std::string> env_ceiling)
{
    CLI::App app{"Lattice computations for K3 surfaces and their moduli of sheaves", "k3lat"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(kToolVersion));
    Globals g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--seedless", g.seedless, "Reject primes whose primality is only probable");
    app.add_option("--scan-ceiling", g.scan_ceiling, "Upper end of prime scans");
    app.add_option("--manifest", g.manifest_path, "Also write the run manifest to this file");

    std::string lattice_arg;
    auto* disc = app.add_subcommand("disc-form", "Discriminant form of a lattice");
    disc->add_option("lattice", lattice_arg, "Gram matrix file, '-' or inline JSON")->required();

    std::string d, m, lsq, bound = "8";
    auto* embed = app.add_subcommand("embed", "Extend the seed embedding to Lambda_2md");
    auto* zarhin = app.add_subcommand("zarhin", "Mukai vector and line bundle certificate");
    for (auto* sc : {embed, zarhin}) {
        sc->add_option("--d", d)->required();
        sc->add_option("--m", m)->required();
        sc->add_option("--lsq", lsq, "l^2 of the seed (default 2d)");
        sc->add_option("--search-bound", bound, "Witness search bound");
    }

    std::string ell, n_max, e;
    auto* tw = app.add_subcommand("twisted-run", "Isotropic witness sequence in twisted Mukai lattices");
    tw->add_option("--d", d)->required();
    tw->add_option("--ell", ell)->required();
    tw->add_option("--n-max", n_max)->required();
    tw->add_option("--e", e, "Adds b_n = (0, B, 0) with B^2 = 2e");

    std::string ns_file, degree, v_arg, w_arg, partner;
    auto* chain = app.add_subcommand("disc-chain", "Discriminant comparison for v^perp in N(X)");
    auto* mk = app.add_subcommand("mukai", "Mukai pairing, condition (C) and moduli dimension");
    for (auto* sc : {chain, mk}) {
        sc->add_option("--ns", ns_file, "Neron-Severi JSON {gram, h_index}");
        sc->add_option("--degree", degree, "Rank-one Neron-Severi lattice <degree>");
        sc->add_option("--v", v_arg, "a,D_1,...,D_k,c")->required();
    }
    chain->add_option("--partner", partner, "|disc| of the partner lattice");
    mk->add_option("--w", w_arg, "Second vector for pairings");

    std::string values, min = "3", count = "1";
    auto* ps = app.add_subcommand("prime-search", "Primes p = 1 mod 8 with prescribed residues");
    ps->add_option("--values", values, "Comma-separated integers that must be squares mod p")->required();
    ps->add_option("--min", min);
    ps->add_option("--count", count);

    std::string gram_arg, c_arg, k_arg = "10";
    auto* rep = app.add_subcommand("rep", "Solve x^T G x = c mod ell^k");
    rep->add_option("--gram", gram_arg, "Gram matrix file or inline JSON")->required();
    rep->add_option("--c", c_arg)->required();
    rep->add_option("--ell", ell)->required();
    rep->add_option("--k", k_arg);

    std::string manifest_in;
    auto* rp = app.add_subcommand("replay", "Re-run a manifest and compare the output bytes");
    rp->add_option("manifest", manifest_in)->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& ex) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion& ex) {
        out << kToolVersion << "\n";
        return kOk;
    } catch (const CLI::ParseError& ex) {
        err << "k3lat: " << ex.what() << "\n";
        return kInvalid;
    }

    try {
        const std::string ceiling = g.scan_ceiling.empty() ? default_ceiling(env_ceiling) : g.scan_ceiling;
        json inputs;
        std::string command;
        if (*disc) {
            command = "disc-form";
            inputs = {{"gram", io::to_json(io::gram_from(io::load_json_arg(lattice_arg)))}};
        } else if (*embed || *zarhin) {
            command = *embed ? "embed" : "zarhin";
            json dj = int_or_string(d, "--d");
            Integer lsq_v = lsq.empty() ? 2 * parse_integer(d) : parse_integer(lsq);
            inputs = {{"d", dj},
                      {"m", int_or_string(m, "--m")},
                      {"lsq", io::to_json(lsq_v)},
                      {"search_bound", int_or_string(bound, "--search-bound")},
                      {"seedless", g.seedless}};
        } else if (*tw) {
            command = "twisted-run";
            inputs = {{"d", int_or_string(d, "--d")},
                      {"ell", int_or_string(ell, "--ell")},
                      {"n_max", int_or_string(n_max, "--n-max")},
                      {"e", e.empty() ? json(nullptr) : int_or_string(e, "--e")},
                      {"seedless", g.seedless}};
        } else if (*chain || *mk) {
            command = *chain ? "disc-chain" : "mukai";
            json ns = ns_arg(ns_file, degree);
            const std::size_t rank = ns.at("gram").size();
            inputs = {{"ns", ns}, {"v", io::to_json(mukai_arg(v_arg, rank, "--v"))}};
            if (*chain)
                inputs["partner_disc"] = partner.empty() ? json(nullptr) : int_or_string(partner, "--partner");
            else
                inputs["w"] = w_arg.empty() ? json(nullptr) : io::to_json(mukai_arg(w_arg, rank, "--w"));
        } else if (*ps) {
            command = "prime-search";
            inputs = {{"values", io::to_json(io::parse_int_list(values))},
                      {"min", int_or_string(min, "--min")},
                      {"count", int_or_string(count, "--count")},
                      {"ceiling", int_or_string(ceiling, "--scan-ceiling")},
                      {"seedless", g.seedless}};
        } else if (*rep) {
            command = "rep";
            inputs = {{"gram", io::to_json(io::gram_from(io::load_json_arg(gram_arg)))},
                      {"c", int_or_string(c_arg, "--c")},
                      {"ell", int_or_string(ell, "--ell")},
                      {"k", int_or_string(k_arg, "--k")},
                      {"seedless", g.seedless}};
        } else if (*rp) {
            return replay(manifest_in, g, out, err);
        }
        return emit(command, inputs, g, out, err);
    } catch (const InternalConsistency& ex) {
        err << "k3lat: internal error: " << ex.what() << "\n";
        return kInternal;
    } catch (const InvalidInput& ex) {
        err << "k3lat: error: " << ex.what() << "\n";
        return kInvalid;
    } catch (const Overflow& ex) {
        err << "k3lat: error: input outside the supported range: " << ex.what() << "\n";
        return kInvalid;
    } catch (const SizeLimit& ex) {
        err << "k3lat: error: " << ex.what() << "\n";
        return kInvalid;
    } catch (const ScanCeiling& ex) {
        err << "k3lat: error: " << ex.what() << "\n";
        return kInvalid;
    } catch (const std::exception& ex) {
        err << "k3lat: internal error: " << ex.what() << "\n";
        return kInternal + 1;
    }
}

} // namespace k3lat::cli
