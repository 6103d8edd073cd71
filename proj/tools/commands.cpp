#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <thread>

#include "CLI11.hpp"
#include "semilin/json_io.hpp"
#include "semilin/scalar_io.hpp"

#ifndef SEMILIN_CORPUS_DIR
#define SEMILIN_CORPUS_DIR "corpus"
#endif

namespace semilin::cli {

namespace fs = std::filesystem;
using io::json;

std::string corpus_dir() {
    if (const char* env = std::getenv("SEMILIN_CORPUS"); env && *env) return env;
    return SEMILIN_CORPUS_DIR;
}

namespace {

std::string point_text(const Vector& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
    return s + ")";
}

std::string point_text(const RVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
    return s + ")";
}

std::string yes(bool b) { return b ? "yes" : "no"; }

std::string default_cert_path(const std::string& instance) {
    return fs::path(instance).stem().string() + ".certificate.json";
}

void print_trace(const NormalizationTrace& t, std::ostream& out) {
    if (t.steps.empty()) return;
    out << "normalization:\n";
    for (const auto& s : t.steps) out << "  " << describe(s) << '\n';
}

void print_report(const CheckReport& r, const std::vector<std::string>& names, std::ostream& out) {
    out << "x in I: " << yes(r.x_in) << '\n';
    for (size_t i = 0; i < r.stable.size(); ++i) {
        std::string name = i < names.size() ? names[i] : "M" + std::to_string(i + 1);
        out << "stable under " << name << ": " << yes(r.stable[i].stable);
        if (r.stable[i].counterexample) out << " (counterexample " << point_text(*r.stable[i].counterexample) << ")";
        out << '\n';
    }
    out << "y outside I: " << yes(r.y_out) << '\n';
    out << "closed: " << yes(r.closed) << '\n';
    out << (r.pass() ? "PASS" : "FAIL") << " (" << r.elapsed.count() / 1000.0 << " ms)\n";
}

void print_verdict(const Verdict& v, std::ostream& out) {
    out << to_string(v.kind) << '\n';
    if (v.kind == Verdict::Kind::Reach) out << "reached at n = " << v.reach_n << '\n';
    if (!v.reason.empty()) out << "reason: " << v.reason << '\n';
    print_trace(v.trace, out);
    if (v.certificate) {
        const Certificate& c = *v.certificate;
        out << "provenance: " << to_string(c.provenance) << '\n';
        for (const auto& [k, val] : c.parameters) out << "  " << k << " = " << val << '\n';
        out << "invariant: " << c.invariant.polyhedra.size() << " polyhedra in R^" << c.invariant.ambient << '\n';
        if (c.report) out << "check: " << (c.report->pass() ? "pass" : "FAIL") << '\n';
    }
    if (v.minimal && v.kind != Verdict::Kind::InvariantExists)
        out << "minimal invariant: " << v.minimal->polyhedra.size() << " polyhedra, real dimension "
            << dimension(*v.minimal) << " in R^" << v.minimal->ambient << '\n';
}

int verdict_code(const Verdict& v) { return v.kind == Verdict::Kind::Unknown ? kUnknown : kOk; }

struct DecideOpts {
    std::string instance, out_path;
    unsigned long horizon = default_horizon();
    bool as_json = false, no_write = false;
    int jobs = 1;
};

int decide_directory(const DecideOpts& o, std::ostream& out, std::ostream& err) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(o.instance))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<std::string> lines(files.size());
    std::vector<int> codes(files.size(), kOk);
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i; (i = next++) < files.size();) {
            std::string name = files[i].filename().string();
            try {
                json j = io::read_file(files[i].string());
                if (!j.is_object() || !j.contains("matrices")) {
                    lines[i] = name + ": skipped (not an instance)";
                    continue;
                }
                io::InstanceFile f = io::instance_from(j);
                if (f.matrices.size() != 1) {
                    lines[i] = name + ": skipped (" + std::to_string(f.matrices.size()) + " matrices)";
                    continue;
                }
                Verdict v = decide(f.single(), o.horizon);
                lines[i] = name + ": " + to_string(v.kind);
                codes[i] = verdict_code(v);
            } catch (const std::exception& e) {
                lines[i] = name + ": error: " + e.what();
                codes[i] = kBadInput;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < std::max(1, o.jobs); ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (const auto& l : lines) out << l << '\n';
    (void)err;
    return *std::max_element(codes.begin(), codes.end(), [](int a, int b) {
        auto rank = [](int c) { return c == kBadInput ? 2 : c == kUnknown ? 1 : 0; };
        return rank(a) < rank(b);
    });
}

int cmd_decide(const DecideOpts& o, bool synthesize, std::ostream& out, std::ostream& err) {
    if (!synthesize && fs::is_directory(o.instance)) return decide_directory(o, out, err);
    io::InstanceFile f = io::instance_from(io::read_file(o.instance));
    Verdict v = decide(f.single(), o.horizon);
    std::string path = o.out_path.empty() ? default_cert_path(o.instance) : o.out_path;
    bool wrote = false;
    if (v.certificate && v.kind == Verdict::Kind::InvariantExists && !o.no_write) {
        io::write_file(path, io::to_json(*v.certificate));
        wrote = true;
    } else if (!o.out_path.empty() && v.minimal && v.kind == Verdict::Kind::NoInvariant) {
        io::write_file(o.out_path, {{"minimal_invariant", io::to_json(*v.minimal)}});
    }
    if (o.as_json) {
        json j = io::to_json(v);
        if (wrote) j["certificate_file"] = path;
        out << j.dump(2) << '\n';
    } else {
        print_verdict(v, out);
        if (wrote) out << "certificate written to " << path << '\n';
    }
    if (synthesize && v.kind != Verdict::Kind::InvariantExists) {
        if (v.kind == Verdict::Kind::Unknown) return kUnknown;
        err << "no separating invariant: " << to_string(v.kind) << '\n';
        return kFail;
    }
    return verdict_code(v);
}

int cmd_check(const std::string& instance, const std::string& invariant, bool as_json, std::ostream& out) {
    io::InstanceFile f = io::instance_from(io::read_file(instance));
    SemilinearSet I = io::invariant_from(io::read_file(invariant));
    CheckReport r;
    try {
        r = check_certificate(f.matrices, f.x, f.y, I);
    } catch (const std::invalid_argument& e) {
        throw io::FormatError(e.what());
    }
    if (as_json)
        out << io::to_json(r).dump(2) << '\n';
    else
        print_report(r, f.names, out);
    return r.pass() ? kOk : kFail;
}

int cmd_normalize(const std::string& instance, unsigned long horizon, bool as_json, std::ostream& out) {
    io::InstanceFile f = io::instance_from(io::read_file(instance));
    NormalizeResult r = normalize(f.single(), horizon);
    static const char* kinds[] = {"NORMALIZED", "IMMEDIATE_YES", "IMMEDIATE_NO", "REACH"};
    std::string kind = kinds[static_cast<int>(r.kind)];
    if (as_json) {
        json j = {{"result", kind}, {"trace", io::to_json(r.trace)}};
        if (!r.reason.empty()) j["reason"] = r.reason;
        if (r.kind == NormalizeResult::Kind::Reach) j["n"] = r.reach_n;
        if (r.kind == NormalizeResult::Kind::Normalized) {
            json blocks = json::array();
            for (const auto& b : r.normalized.blocks)
                blocks.push_back({{"eigenvalue", io::to_json(b.eigenvalue)}, {"size", b.size}, {"offset", b.offset}});
            j["normalized"] = {{"A", io::to_json(r.normalized.inst.A)},
                               {"x", io::to_json(r.normalized.inst.x)},
                               {"y", io::to_json(r.normalized.inst.y)},
                               {"blocks", blocks}};
        } else if (r.kind != NormalizeResult::Kind::Reach) {
            j["invariant"] = io::to_json(r.invariant);
        }
        out << j.dump(2) << '\n';
        return kOk;
    }
    out << kind << '\n';
    if (!r.reason.empty()) out << "reason: " << r.reason << '\n';
    if (r.kind == NormalizeResult::Kind::Reach) out << "reached at n = " << r.reach_n << '\n';
    print_trace(r.trace, out);
    if (r.kind == NormalizeResult::Kind::Normalized) {
        const auto& n = r.normalized;
        out << "dimension: " << n.inst.dim() << '\n';
        for (const auto& b : n.blocks)
            out << "  block Jord(" << b.size << ", " << to_string(b.eigenvalue) << ") at " << b.offset << '\n';
        out << "x = " << point_text(n.inst.x) << "\ny = " << point_text(n.inst.y) << '\n';
    }
    return kOk;
}

int cmd_pcp(const std::string& family, const std::string& pairs, const std::string& out_path,
            const std::string& inv_path, unsigned long cap, std::ostream& out, std::ostream& err) {
    PcpInstance p = io::pcp_from(io::read_file(pairs));
    ReductionFamily f;
    try {
        f = make_family(family, p);
    } catch (const std::invalid_argument& e) {
        throw io::FormatError(e.what());
    }
    io::InstanceFile file = io::to_instance_file(f);
    json pj = json::array();
    for (const auto& [u, v] : p.pairs) pj.push_back({u, v});
    file.metadata["pairs"] = pj;
    file.metadata["description"] = "PCP reduction family " + family + " (" + std::to_string(f.matrices.size()) +
                                   " matrices of dimension " + std::to_string(f.dimension) + ")";
    if (!inv_path.empty()) {
        if (family != "9x3") throw io::FormatError("--invariant-out is only available for the 9x3 family");
        auto n0 = pcp_depth_bound(p, cap);
        if (!n0) {
            err << "no depth bound up to " << cap << "; the instance may have a solution\n";
            return kFail;
        }
        file.metadata["n0"] = *n0;
        io::write_file(inv_path, {{"n0", *n0}, {"invariant", io::to_json(proof_invariant_9x3(p, *n0))}});
    }
    if (out_path.empty())
        out << io::to_json(file).dump(2) << '\n';
    else
        io::write_file(out_path, io::to_json(file));
    return kOk;
}

std::vector<int> parse_word(const std::string& w) {
    std::vector<int> r;
    std::stringstream ss(w);
    for (std::string tok; std::getline(ss, tok, ',');) {
        try {
            r.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw io::FormatError("bad word letter '" + tok + "'");
        }
    }
    return r;
}

int cmd_orbit(const std::string& instance, unsigned long n, const std::string& word, bool as_json, std::ostream& out) {
    io::InstanceFile f = io::instance_from(io::read_file(instance));
    std::vector<Vector> pts;
    if (!word.empty()) {
        std::vector<int> w = parse_word(word);
        pts.push_back(f.x);
        for (int c : w) {
            if (c < 1 || c > static_cast<int>(f.matrices.size())) throw io::FormatError("word letter out of range");
            pts.push_back(f.matrices[c - 1] * pts.back());
        }
    } else {
        if (f.matrices.size() != 1) throw io::FormatError("multi-matrix instance: pass --word");
        pts = orbit_trace(f.matrices[0], f.x, n);
    }
    if (as_json) {
        json a = json::array();
        for (const auto& p : pts) a.push_back(io::to_json(p));
        out << json{{"points", a}}.dump(2) << '\n';
    } else {
        for (size_t i = 0; i < pts.size(); ++i) out << i << ": " << point_text(pts[i]) << '\n';
    }
    return kOk;
}

int cmd_examples(bool as_json, std::ostream& out) {
    std::vector<fs::path> files;
    fs::path dir = corpus_dir();
    if (!fs::is_directory(dir)) throw io::FormatError("corpus directory '" + dir.string() + "' not found");
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    json list = json::array();
    for (const auto& p : files) {
        json j = io::read_file(p.string());
        if (!j.is_object() || !j.contains("matrices")) continue;
        const json meta = j.value("metadata", json::object());
        json e = {{"file", p.string()},
                  {"matrices", j["matrices"].size()},
                  {"dimension", j["x"].size()},
                  {"description", meta.value("description", "")}};
        if (meta.contains("expected")) e["expected"] = meta["expected"];
        list.push_back(std::move(e));
    }
    if (as_json) {
        out << list.dump(2) << '\n';
        return kOk;
    }
    for (const auto& e : list) {
        out << fs::path(e["file"].get<std::string>()).filename().string() << "  d=" << e["dimension"].get<int>()
            << " matrices=" << e["matrices"].get<int>();
        if (e.contains("expected")) out << " expected=" << e["expected"].get<std::string>();
        out << "\n    " << e["description"].get<std::string>() << '\n';
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"semilin: closed semilinear separating invariants for linear loops"};
    app.require_subcommand(1);

    DecideOpts d;
    auto* dec = app.add_subcommand("decide", "decide whether a single-matrix instance has a separating invariant");
    auto* syn = app.add_subcommand("synthesize", "like decide, but a certificate is required (exit 1 without one)");
    for (auto* c : {dec, syn}) {
        c->add_option("instance", d.instance, "instance file (decide also accepts a directory)")->required();
        c->add_option("--horizon", d.horizon, "bounded reachability horizon");
        c->add_option("-o,--out", d.out_path, "certificate file (default: <instance>.certificate.json)");
        c->add_flag("--json", d.as_json, "machine-readable output");
    }
    dec->add_flag("--no-certificate", d.no_write, "do not write the certificate file");
    dec->add_option("-j,--jobs", d.jobs, "parallel instances when deciding a directory")->check(CLI::PositiveNumber);

    std::string inst, inv, word, family, pairs, inv_out, out_path;
    bool as_json = false;
    unsigned long n = 8, cap = kPcpDepthCap;
    unsigned long horizon = default_horizon();

    auto* chk = app.add_subcommand("check", "verify a candidate invariant against an instance");
    chk->add_option("instance", inst, "instance file")->required();
    chk->add_option("invariant", inv, "invariant or certificate file")->required();
    chk->add_flag("--json", as_json, "machine-readable output");

    auto* nor = app.add_subcommand("normalize", "show the normalized instance and the reduction trace");
    nor->add_option("instance", inst, "instance file")->required();
    nor->add_option("--horizon", horizon, "bounded reachability horizon");
    nor->add_flag("--json", as_json, "machine-readable output");

    auto* pcp = app.add_subcommand("pcp-encode", "build a reduction family from word pairs");
    pcp->add_option("--family", family, "9x3, 2x27 or robust21")->required();
    pcp->add_option("pairs", pairs, "JSON list of [u, v] word pairs")->required();
    pcp->add_option("-o,--out", out_path, "output file (default: stdout)");
    pcp->add_option("--invariant-out", inv_out, "also write the proof invariant (9x3 only)");
    pcp->add_option("--depth-cap", cap, "depth cap of the n0 search");

    auto* orb = app.add_subcommand("orbit-trace", "print exact orbit points");
    orb->add_option("instance", inst, "instance file")->required();
    orb->add_option("-n,--n", n, "points x, ..., A^n x");
    orb->add_option("--word", word, "comma-separated 1-based matrix indices, applied left to right");
    orb->add_flag("--json", as_json, "machine-readable output");

    auto* ex = app.add_subcommand("examples", "list the bundled corpus");
    ex->add_flag("--json", as_json, "machine-readable output");

    std::vector<std::string> storage{"semilin"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kBadInput;
    }

    try {
        if (dec->parsed()) return cmd_decide(d, false, out, err);
        if (syn->parsed()) return cmd_decide(d, true, out, err);
        if (chk->parsed()) return cmd_check(inst, inv, as_json, out);
        if (nor->parsed()) return cmd_normalize(inst, horizon, as_json, out);
        if (pcp->parsed()) return cmd_pcp(family, pairs, out_path, inv_out, cap, out, err);
        if (orb->parsed()) return cmd_orbit(inst, n, word, as_json, out);
        if (ex->parsed()) return cmd_examples(as_json, out);
    } catch (const io::FormatError& e) {
        err << "error: " << e.what() << '\n';
        return kBadInput;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kBadInput;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kBadInput;
    }
    return kBadInput;
}

}  // namespace semilin::cli
