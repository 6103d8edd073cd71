#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "semilin/checker.hpp"
#include "semilin/pcpgen.hpp"
#include "semilin/synth.hpp"

namespace semilin::io {

using json = nlohmann::ordered_json;

// malformed or inconsistent input
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// scalars are strings in the scalar grammar; JSON numbers are rejected
json to_json(const ComplexAlgebraic& v);
json to_json(const RealAlgebraic& v);
json to_json(const Vector& v);
json to_json(const RVec& v);
json to_json(const Matrix& m);
json to_json(const HalfSpace& h);
json to_json(const Polyhedron& p);
json to_json(const SemilinearSet& s);

ComplexAlgebraic scalar_from(const json& j);
RealAlgebraic real_from(const json& j);
Vector vector_from(const json& j);
RVec rvec_from(const json& j);
Matrix matrix_from(const json& j);
HalfSpace halfspace_from(const json& j, int ambient);
Polyhedron polyhedron_from(const json& j, int ambient);
SemilinearSet set_from(const json& j);

struct InstanceFile {
    std::vector<Matrix> matrices;
    std::vector<std::string> names;  // optional, one per matrix
    Vector x, y;
    json metadata = json::object();

    // throws FormatError unless exactly one matrix
    OrbitInstance single() const;
};

json to_json(const InstanceFile& f);
InstanceFile instance_from(const json& j);
InstanceFile to_instance_file(const ReductionFamily& f);

json to_json(const Certificate& c);
json to_json(const CheckReport& r);
json to_json(const NormalizationTrace& t);
json to_json(const Verdict& v);

// a bare set, or an object carrying it under "invariant"
SemilinearSet invariant_from(const json& j);

// [["u","v"], ...] or {"pairs": [...]}
PcpInstance pcp_from(const json& j);

json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);

}  // namespace semilin::io
