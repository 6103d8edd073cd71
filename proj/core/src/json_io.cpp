#include "semilin/json_io.hpp"

#include <fstream>
#include <sstream>

#include "semilin/scalar_io.hpp"

namespace semilin::io {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
    return j.at(key);
}

const json& array(const json& j, const char* what) {
    if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
    return j;
}

std::string scalar_text(const json& j) {
    if (!j.is_string()) throw FormatError("scalars must be strings in the scalar grammar, got " + j.dump());
    return j.get<std::string>();
}

json rvec_json(const RVec& v) {
    json a = json::array();
    for (const auto& c : v) a.push_back(to_json(c));
    return a;
}

}  // namespace

json to_json(const ComplexAlgebraic& v) { return to_string(v); }
json to_json(const RealAlgebraic& v) { return to_string(v); }

json to_json(const Vector& v) {
    json a = json::array();
    for (const auto& c : v) a.push_back(to_json(c));
    return a;
}

json to_json(const RVec& v) { return rvec_json(v); }

json to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const HalfSpace& h) { return {{"normal", rvec_json(h.normal)}, {"offset", to_json(h.offset)}, {"strict", h.strict}}; }

json to_json(const Polyhedron& p) {
    json a = json::array();
    for (const auto& h : p.constraints) a.push_back(to_json(h));
    return a;
}

json to_json(const SemilinearSet& s) {
    json polys = json::array();
    for (const auto& p : s.polyhedra) polys.push_back(to_json(p));
    return {{"ambient", s.ambient}, {"polyhedra", polys}};
}

ComplexAlgebraic scalar_from(const json& j) {
    std::string s = scalar_text(j);
    try {
        return parse_scalar(s);
    } catch (const ParseError& e) {
        throw FormatError(e.what());
    }
}

RealAlgebraic real_from(const json& j) {
    std::string s = scalar_text(j);
    try {
        return parse_real(s);
    } catch (const ParseError& e) {
        throw FormatError(e.what());
    }
}

Vector vector_from(const json& j) {
    Vector v;
    for (const auto& c : array(j, "vector")) v.push_back(scalar_from(c));
    return v;
}

RVec rvec_from(const json& j) {
    RVec v;
    for (const auto& c : array(j, "vector")) v.push_back(real_from(c));
    return v;
}

Matrix matrix_from(const json& j) {
    array(j, "matrix");
    int n = static_cast<int>(j.size());
    if (n == 0) throw FormatError("empty matrix");
    Matrix m(n, n);
    for (int r = 0; r < n; ++r) {
        const json& row = array(j[r], "matrix row");
        if (static_cast<int>(row.size()) != n) throw FormatError("matrix must be square");
        for (int c = 0; c < n; ++c) m(r, c) = scalar_from(row[c]);
    }
    return m;
}

HalfSpace halfspace_from(const json& j, int ambient) {
    HalfSpace h{rvec_from(field(j, "normal")), real_from(field(j, "offset")), false};
    if (j.contains("strict")) {
        if (!j.at("strict").is_boolean()) throw FormatError("'strict' must be a boolean");
        h.strict = j.at("strict").get<bool>();
    }
    if (static_cast<int>(h.normal.size()) != ambient) throw FormatError("constraint normal has the wrong length");
    return h;
}

Polyhedron polyhedron_from(const json& j, int ambient) {
    Polyhedron p = Polyhedron::full(ambient);
    for (const auto& h : array(j, "polyhedron")) p.add(halfspace_from(h, ambient));
    return p;
}

SemilinearSet set_from(const json& j) {
    const json& a = field(j, "ambient");
    if (!a.is_number_integer() || a.get<int>() < 0) throw FormatError("'ambient' must be a non-negative integer");
    SemilinearSet s = SemilinearSet::empty(a.get<int>());
    for (const auto& p : array(field(j, "polyhedra"), "polyhedra")) s.add(polyhedron_from(p, s.ambient));
    return s;
}

OrbitInstance InstanceFile::single() const {
    if (matrices.size() != 1)
        throw FormatError("instance has " + std::to_string(matrices.size()) +
                          " matrices; decide handles one (use 'check' for families)");
    return OrbitInstance{matrices[0], x, y};
}

json to_json(const InstanceFile& f) {
    json ms = json::array();
    for (const auto& m : f.matrices) ms.push_back(to_json(m));
    json j = {{"matrices", ms}};
    if (!f.names.empty()) j["names"] = f.names;
    j["x"] = to_json(f.x);
    j["y"] = to_json(f.y);
    j["metadata"] = f.metadata;
    return j;
}

InstanceFile instance_from(const json& j) {
    InstanceFile f;
    for (const auto& m : array(field(j, "matrices"), "matrices")) f.matrices.push_back(matrix_from(m));
    if (f.matrices.empty()) throw FormatError("instance needs at least one matrix");
    f.x = vector_from(field(j, "x"));
    f.y = vector_from(field(j, "y"));
    if (j.contains("names")) {
        for (const auto& n : array(j.at("names"), "names")) {
            if (!n.is_string()) throw FormatError("matrix names must be strings");
            f.names.push_back(n.get<std::string>());
        }
        if (f.names.size() != f.matrices.size()) throw FormatError("one name per matrix expected");
    }
    if (j.contains("metadata")) f.metadata = j.at("metadata");
    int d = f.matrices[0].rows();
    for (const auto& m : f.matrices)
        if (m.rows() != d) throw FormatError("matrices of different dimensions");
    if (static_cast<int>(f.x.size()) != d || static_cast<int>(f.y.size()) != d)
        throw FormatError("x and y must have the matrix dimension");
    return f;
}

InstanceFile to_instance_file(const ReductionFamily& f) {
    InstanceFile r;
    r.matrices = f.matrices;
    r.names = f.names;
    r.x = f.x;
    r.y = f.y;
    r.metadata = {{"family", f.kind}, {"dimension", f.dimension}};
    return r;
}

json to_json(const Certificate& c) {
    json j = {{"provenance", to_string(c.provenance)}, {"parameters", c.parameters}};
    if (c.report) j["check"] = to_json(*c.report);
    j["invariant"] = to_json(c.invariant);
    return j;
}

json to_json(const CheckReport& r) {
    json stable = json::array();
    for (const auto& m : r.stable) {
        json s = {{"stable", m.stable}};
        if (m.counterexample) s["counterexample"] = rvec_json(*m.counterexample);
        stable.push_back(std::move(s));
    }
    return {{"pass", r.pass()},       {"x_in", r.x_in},     {"stable", stable},
            {"y_out", r.y_out},       {"closed", r.closed}, {"elapsed_us", r.elapsed.count()}};
}

json to_json(const NormalizationTrace& t) {
    json steps = json::array();
    for (const auto& s : t.steps) {
        json j = {{"kind", to_string(s.kind)},
                  {"dim_before", s.dim_before},
                  {"dim_after", s.dim_after},
                  {"description", describe(s)}};
        if (s.kind == TraceStep::Kind::UnrollRootOfUnityDiag) {
            j["n"] = s.n;
            j["k"] = s.k;
        }
        if (s.kind == TraceStep::Kind::DropSmallBlockWithZeroTarget) {
            j["n0"] = s.n0;
            j["exact"] = s.exact;
        }
        steps.push_back(std::move(j));
    }
    return {{"original_dim", t.original_dim}, {"exact", t.exact()}, {"steps", steps}};
}

json to_json(const Verdict& v) {
    json j = {{"verdict", to_string(v.kind)}};
    if (v.kind == Verdict::Kind::Reach) j["n"] = v.reach_n;
    if (!v.reason.empty()) j["reason"] = v.reason;
    j["trace"] = to_json(v.trace);
    if (v.certificate) j["certificate"] = to_json(*v.certificate);
    if (v.minimal) j["minimal_invariant"] = to_json(*v.minimal);
    return j;
}

SemilinearSet invariant_from(const json& j) {
    if (j.is_object() && j.contains("invariant")) return set_from(j.at("invariant"));
    if (j.is_object() && j.contains("certificate")) return invariant_from(j.at("certificate"));
    return set_from(j);
}

PcpInstance pcp_from(const json& j) {
    const json& a = j.is_object() ? field(j, "pairs") : j;
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& p : array(a, "pairs")) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
            throw FormatError("each pair must be [\"u\", \"v\"]");
        pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
    try {
        return PcpInstance::from(std::move(pairs));
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void write_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

}  // namespace semilin::io
