#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "k3lat/cli.hpp"

using namespace k3lat;
using k3lat::cli::json;

namespace {

struct Run {
    int code;
    std::string out, err;
    json manifest() const { return json::parse(out); }
};

Run run(std::vector<std::string> args, std::optional<std::string> env = std::nullopt)
{
    std::ostringstream out, err;
    int code = cli::run(args, out, err, env);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name)
{
    return "k3lat_test_" + name;
}

void write(const std::string& path, const std::string& text)
{
    std::ofstream(path) << text;
}

} // namespace

TEST_CASE("disc-form")
{
    Run r = run({"disc-form", "[[10]]"});
    REQUIRE(r.code == 0);
    json m = r.manifest();
    CHECK(m["command"] == "disc-form");
    CHECK(m["tool_version"] == "0.1.0");
    CHECK(m["outputs"]["orders"] == json::array({10}));
    CHECK(m["outputs"]["q"] == json::array({"1/10"}));

    Run u = run({"disc-form", "{\"gram\": [[0, 1], [1, 0]]}"});
    REQUIRE(u.code == 0);
    CHECK(u.manifest()["outputs"]["orders"] == json::array());

    const std::string bad = temp_path("bad.json");
    write(bad, "{\"gram\": [[1, 2],\n  [2, x]]}");
    Run b = run({"disc-form", bad});
    CHECK(b.code == 1);
    CHECK(b.out.empty());
    CHECK(b.err.find(bad + ":2:") != std::string::npos);
    std::remove(bad.c_str());

    CHECK(run({"disc-form", "[[3]]"}).code == 1);
    CHECK(run({"disc-form", "no_such_file.json"}).code == 1);

    // Integers beyond 64 bits travel as strings.
    Run big = run({"disc-form", "[[\"20000000000000000000000000\"]]"});
    REQUIRE(big.code == 0);
    CHECK(big.manifest()["outputs"]["orders"][0] == "20000000000000000000000000");
}

TEST_CASE("embed exit codes")
{
    Run ok = run({"embed", "--d", "1", "--m", "5"});
    REQUIRE(ok.code == 0);
    json m = ok.manifest();
    CHECK(m["outputs"]["status"] == "witness");
    CHECK(m["outputs"]["embedding"] == json::parse("[[0,1,1],[1,2,-2]]"));
    CHECK(m["outputs"]["certificate"]["new_t"] == 5);
    CHECK(m["inputs"]["lsq"] == 2);
    for (const auto& c : m["checks"])
        CHECK(c["pass"] == true);

    Run bad = run({"embed", "--d", "1", "--m", "3"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("inadmissible") != std::string::npos);

    Run partial = run({"embed", "--d", "1", "--m", "5", "--search-bound", "0"});
    CHECK(partial.code == 2);
    CHECK(partial.manifest()["outputs"]["status"] == "certificate-only");

    CHECK(run({"embed", "--d", "1"}).code == 1);
    CHECK(run({"embed", "--d", "x", "--m", "5"}).code == 1);
}

TEST_CASE("zarhin")
{
    Run r = run({"zarhin", "--d", "1", "--m", "5"});
    REQUIRE(r.code == 0);
    json o = r.manifest()["outputs"];
    CHECK(o["r"] == 12);
    CHECK(o["q_L"] == 2);
    CHECK(o["v"] == json::parse("{\"a\":1,\"D\":[0],\"c\":-1}"));
    CHECK(o["moduli_dimension"] == 4);
    CHECK(run({"zarhin", "--d", "1", "--m", "3"}).code == 1);
    CHECK(run({"zarhin", "--d", "1", "--m", "1"}).code == 0);
    CHECK(run({"zarhin", "--d", "1", "--m", "5", "--lsq", "3"}).code == 1);
}

TEST_CASE("twisted-run")
{
    Run r = run({"twisted-run", "--d", "1", "--ell", "5", "--n-max", "3"});
    REQUIRE(r.code == 0);
    json rows = r.manifest()["outputs"]["records"];
    REQUIRE(rows.size() == 3);
    CHECK(rows[0]["h_square"] == 50);
    CHECK(rows[1]["h_square"] == 1250);
    CHECK(rows[2]["h_square"] == 31250);

    Run csv = run({"twisted-run", "--d", "1", "--ell", "5", "--n-max", "3", "--format", "csv"});
    REQUIRE(csv.code == 0);
    std::istringstream lines(csv.out);
    std::string header, first;
    std::getline(lines, header);
    std::getline(lines, first);
    CHECK(header.rfind("n,r,h_square,", 0) == 0);
    CHECK(first.rfind("1,5,50,", 0) == 0);

    Run four = run({"twisted-run", "--d", "1", "--ell", "4", "--n-max", "3"});
    CHECK(four.code == 1);
    CHECK(four.err.find("not prime") != std::string::npos);
    CHECK(run({"disc-form", "[[10]]", "--format", "csv"}).code == 1);
}

TEST_CASE("prime-search and scan ceiling")
{
    Run r = run({"prime-search", "--values", "2,-1,-2", "--count", "3"});
    REQUIRE(r.code == 0);
    CHECK(r.manifest()["outputs"]["primes"] == json::array({17, 41, 73}));

    CHECK(run({"prime-search", "--values", "2,-1,-2"}, std::string("10")).code == 1);
    Run flag = run({"prime-search", "--values", "2,-1,-2", "--scan-ceiling", "100"}, std::string("10"));
    CHECK(flag.code == 0);
    CHECK(flag.manifest()["inputs"]["ceiling"] == 100);
    CHECK(run({"prime-search", "--values", "2"}, std::string("abc")).code == 1);

    Run seedless = run({"--seedless", "prime-search", "--values", "2", "--min", "3317044064679887385961981"});
    CHECK(seedless.code == 1);
}

TEST_CASE("mukai, disc-chain and rep")
{
    Run m = run({"mukai", "--degree", "2", "--v", "1,0,-1"});
    REQUIRE(m.code == 0);
    CHECK(m.manifest()["outputs"]["moduli_dimension"] == 4);
    CHECK(m.manifest()["outputs"]["condition_C"]["passes"] == true);

    Run c = run({"disc-chain", "--degree", "2", "--v", "1,0,-1"});
    REQUIRE(c.code == 0);
    CHECK(c.manifest()["outputs"]["index"] == 2);
    CHECK(c.manifest()["outputs"]["perp_disc"] == 4);
    CHECK(run({"disc-chain", "--degree", "2", "--v", "2,0,-2"}).code == 1);
    CHECK(run({"disc-chain", "--degree", "2", "--v", "1,-1"}).code == 1);

    Run rep = run({"rep", "--gram", "[[2,1],[1,2]]", "--c", "1", "--ell", "7", "--k", "10"});
    REQUIRE(rep.code == 0);
    CHECK(rep.manifest()["checks"][0]["pass"] == true);
}

TEST_CASE("replay reproduces bytes")
{
    const std::vector<std::vector<std::string>> runs{
        {"disc-form", "[[2,1],[1,4]]"},
        {"embed", "--d", "2", "--m", "17"},
        {"embed", "--d", "1", "--m", "5", "--search-bound", "0"},
        {"zarhin", "--d", "3", "--m", "13"},
        {"twisted-run", "--d", "1", "--ell", "17", "--n-max", "4", "--e", "2"},
        {"disc-chain", "--ns", "{\"gram\": [[2,1],[1,-4]], \"h_index\": 0}", "--v", "1,0,0,-1"},
        {"mukai", "--degree", "4", "--v", "2,1,0", "--w", "0,0,1"},
        {"prime-search", "--values", "3,-1", "--count", "4"},
        {"rep", "--gram", "[[2,0],[0,-6]]", "--c", "-6", "--ell", "11", "--k", "6"}};
    for (const auto& args : runs) {
        Run first = run(args);
        CAPTURE(args[0]);
        REQUIRE(first.code <= 2);
        const std::string path = temp_path("manifest.json");
        write(path, first.out);
        Run again = run({"replay", path});
        CHECK(again.code == first.code);
        CHECK(again.out == first.out);
        std::remove(path.c_str());
    }

    json m = run({"disc-form", "[[10]]"}).manifest();
    m["outputs"]["orders"][0] = 11;
    const std::string path = temp_path("tampered.json");
    write(path, m.dump());
    CHECK(run({"replay", path}).code == 3);
    std::remove(path.c_str());
}

TEST_CASE("manifest file")
{
    const std::string path = temp_path("side.json");
    Run r = run({"--manifest", path, "twisted-run", "--d", "1", "--ell", "5", "--n-max", "2", "--format", "csv"});
    REQUIRE(r.code == 0);
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    json m = json::parse(buf.str());
    CHECK(m["command"] == "twisted-run");
    CHECK(m["outputs"]["records"].size() == 2);
    CHECK(run({"replay", path}).code == 0);
    std::remove(path.c_str());
}
