#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "doctest.h"
#include "semilin/json_io.hpp"
#include "semilin/scalar_io.hpp"

using namespace semilin;
using io::json;
namespace fs = std::filesystem;

namespace {

const std::string kCorpus = SEMILIN_TEST_CORPUS;

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string corpus(const std::string& name) { return kCorpus + "/" + name; }

fs::path scratch() {
    fs::path p = fs::temp_directory_path() / "semilin_cli_test";
    fs::create_directories(p);
    return p;
}

std::string write_tmp(const std::string& name, const std::string& text) {
    fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return p.string();
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("scalar and set serialization round-trips exactly") {
    for (const char* s : {"0", "-7/3", "sqrt(2)", "1/sqrt(5)+2*i/sqrt(5)", "root(-2,0,0,1;0)", "(1+2*i)/2",
                          "sqrt(2)+sqrt(3)"}) {
        ComplexAlgebraic v = parse_scalar(s);
        json j = io::to_json(v);
        CHECK(io::scalar_from(j) == v);
        CHECK(io::to_json(io::scalar_from(j)) == j);
    }
    Matrix m{{parse_scalar("1/2"), parse_scalar("-sqrt(3)")}, {parse_scalar("i"), 4}};
    CHECK(io::matrix_from(io::to_json(m)) == m);

    SemilinearSet s = SemilinearSet::points(2, {RVec{parse_real("1/3"), parse_real("sqrt(2)")}});
    Polyhedron q = Polyhedron::full(2);
    q.add({RVec{parse_real("2"), parse_real("-1")}, parse_real("1/7"), true});
    s.add(q);
    json js = io::to_json(s);
    SemilinearSet back = io::set_from(js);
    CHECK(io::to_json(back).dump() == js.dump());
    CHECK(set_equal(back, s));
    CHECK(back.polyhedra[1].constraints[0].strict);
}

TEST_CASE("malformed input is rejected") {
    CHECK_THROWS_AS(io::scalar_from(json(3)), io::FormatError);
    CHECK_THROWS_AS(io::scalar_from(json("1/")), io::FormatError);
    CHECK_THROWS_AS(io::matrix_from(json::parse(R"([["1","2"]])")), io::FormatError);
    CHECK_THROWS_AS(io::set_from(json::parse(R"({"ambient":2,"polyhedra":[[{"normal":["1"],"offset":"0"}]]})")),
                    io::FormatError);
    CHECK_THROWS_AS(io::instance_from(json::parse(R"({"matrices":[[["1"]]],"x":["1","2"],"y":["0"]})")),
                    io::FormatError);
    std::string bad = write_tmp("bad.json", R"({"matrices":[[["1"]]],"x":[1],"y":["0"]})");
    Run r = run({"decide", bad});
    CHECK(r.code == cli::kBadInput);
    CHECK(contains(r.err, "scalar"));
    CHECK(run({"decide", write_tmp("broken.json", "{")}).code == cli::kBadInput);
    CHECK(run({"check"}).code == cli::kBadInput);
    CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("decide on the bundled examples") {
    std::string cert = (scratch() / "ex1.cert.json").string();
    Run r1 = run({"decide", corpus("example1.json"), "--out", cert});
    CHECK(r1.code == cli::kOk);
    CHECK(contains(r1.out, "INVARIANT_EXISTS"));
    REQUIRE(fs::exists(cert));
    Run again = run({"check", corpus("example1.json"), cert});
    CHECK(again.code == cli::kOk);
    CHECK(contains(again.out, "PASS"));

    Run r2 = run({"decide", corpus("example2.json"), "--json"});
    CHECK(r2.code == cli::kOk);
    json j2 = json::parse(r2.out);
    CHECK(j2["verdict"] == "NO_INVARIANT");
    CHECK(j2.contains("minimal_invariant"));

    Run r5 = run({"decide", corpus("example5.json"), "--no-certificate"});
    CHECK(r5.code == cli::kOk);
    CHECK(contains(r5.out, "INVARIANT_EXISTS"));

    Run multi = run({"decide", corpus("pcp_9x3.json")});
    CHECK(multi.code == cli::kBadInput);
    CHECK(contains(multi.err, "check"));
}

TEST_CASE("synthesize requires a certificate") {
    std::string cert = (scratch() / "lt1.cert.json").string();
    CHECK(run({"synthesize", corpus("lt1_real.json"), "-o", cert}).code == cli::kOk);
    CHECK(fs::exists(cert));
    CHECK(run({"synthesize", corpus("example2.json"), "-o", cert}).code == cli::kFail);
}

TEST_CASE("unknown verdicts exit with 3") {
    std::string f = write_tmp("conj.json", R"j({"matrices":[[["(1+2*i)/sqrt(5)","0"],["0","(1-2*i)/sqrt(5)"]]],
        "x":["1","1"],"y":["3","3"]})j");
    Run r = run({"decide", f, "--no-certificate"});
    CHECK(r.code == cli::kUnknown);
    CHECK(contains(r.out, "UNKNOWN"));
}

TEST_CASE("check command") {
    std::string full = write_tmp("full.json", R"({"ambient":4,"polyhedra":[[]]})");
    Run f = run({"check", corpus("example1.json"), full});
    CHECK(f.code == cli::kFail);
    CHECK(contains(f.out, "y outside I: no"));
    CHECK(run({"check", corpus("example1.json"), corpus("example1.invariant.json")}).code == cli::kOk);
    CHECK(run({"check", corpus("example1.json"), corpus("example1.hull8-invariant.json")}).code == cli::kFail);
    Run p = run({"check", corpus("pcp_9x3.json"), corpus("pcp_9x3.invariant.json"), "--json"});
    CHECK(p.code == cli::kOk);
    CHECK(json::parse(p.out)["stable"].size() == 9);
    std::string wrong = write_tmp("wrong_dim.json", R"({"ambient":2,"polyhedra":[[]]})");
    CHECK(run({"check", corpus("example1.json"), wrong}).code == cli::kBadInput);
}

TEST_CASE("normalize reports the unroll step") {
    Run r = run({"normalize", corpus("example4.json"), "--json"});
    REQUIRE(r.code == cli::kOk);
    json j = json::parse(r.out);
    CHECK(j["result"] == "NORMALIZED");
    bool found = false;
    for (const auto& s : j["trace"]["steps"])
        if (s["kind"] == "UnrollRootOfUnityDiag") {
            found = true;
            CHECK(s["n"] == 2);
        }
    CHECK(found);
    CHECK(contains(run({"normalize", corpus("edge_rou_diag.json")}).out, "IMMEDIATE_YES"));
}

TEST_CASE("orbit trace") {
    Run r = run({"orbit-trace", corpus("example1.json"), "--n", "8", "--json"});
    REQUIRE(r.code == cli::kOk);
    json pts = json::parse(r.out)["points"];
    REQUIRE(pts.size() == 9);
    // (1/2)[[1,-2],[2,1]] applied by hand
    Rat a = 1, b = 0;
    for (const auto& p : pts) {
        CHECK(io::scalar_from(p[0]) == ComplexAlgebraic(a));
        CHECK(io::scalar_from(p[1]) == ComplexAlgebraic(b));
        Rat na = (a - 2 * b) / 2, nb = (2 * a + b) / 2;
        a = na;
        b = nb;
    }
    Run w = run({"orbit-trace", corpus("pcp_9x3_solution.json"), "--word", "1,1,1"});
    CHECK(contains(w.out, "3: (0, 1/64, 1/64)"));
    CHECK(run({"orbit-trace", corpus("pcp_9x3.json")}).code == cli::kBadInput);
}

TEST_CASE("pcp-encode feeds check") {
    std::string pairs = write_tmp("pairs.json", R"([["0","22"],["2","0"]])");
    std::string fam = (scratch() / "fam.json").string(), inv = (scratch() / "inv.json").string();
    CHECK(run({"pcp-encode", "--family", "9x3", pairs, "-o", fam, "--invariant-out", inv}).code == cli::kOk);
    CHECK(run({"check", fam, inv}).code == cli::kOk);
    Run big = run({"pcp-encode", "--family", "2x27", pairs});
    CHECK(big.code == cli::kOk);
    CHECK(json::parse(big.out)["matrices"].size() == 2);
    CHECK(run({"pcp-encode", "--family", "robust21", pairs}).code == cli::kOk);
    CHECK(run({"pcp-encode", "--family", "5x5", pairs}).code == cli::kBadInput);
    std::string sol = write_tmp("sol.json", R"({"pairs":[["2","2"]]})");
    CHECK(run({"pcp-encode", "--family", "9x3", sol, "--invariant-out", inv, "--depth-cap", "6"}).code == cli::kFail);
}

TEST_CASE("examples listing and directory mode") {
    Run r = run({"examples", "--json"});
    REQUIRE(r.code == cli::kOk);
    json list = json::parse(r.out);
    CHECK(list.size() >= 20);
    Run d = run({"decide", kCorpus, "--jobs", "2"});
    CHECK(d.code == cli::kOk);
    CHECK(contains(d.out, "example3.json: NO_INVARIANT"));
    CHECK(contains(d.out, "pcp_2x27.json: skipped"));
}
