#pragma once

#include <map>
#include <optional>
#include <string>

#include "semilin/checker.hpp"
#include "semilin/normalize.hpp"

namespace semilin {

enum class Provenance { ModGt1Real, ModGt1Complex, ModLt1, RootOfUnityNonDiag, Minimal, Normalization };
std::string to_string(Provenance p);

struct Certificate {
    SemilinearSet invariant;
    Provenance provenance = Provenance::Normalization;
    std::map<std::string, std::string> parameters;
    std::optional<CheckReport> report;
};

struct Verdict {
    enum class Kind { Reach, InvariantExists, NoInvariant, Unknown };
    Kind kind = Kind::Unknown;
    unsigned long reach_n = 0;
    std::optional<Certificate> certificate;
    std::optional<SemilinearSet> minimal;  // I0 whenever it was computed
    std::string reason;
    NormalizationTrace trace;
};

// REACH, INVARIANT_EXISTS, NO_INVARIANT, UNKNOWN
std::string to_string(Verdict::Kind k);

// The synth_* constructions work on normalized instances and return sets in
// their coordinates; throw std::invalid_argument on precondition violations.
Certificate synth_mod_gt1(const NormalizedInstance& n, size_t block);

struct SmallStableSet {
    SemilinearSet set;       // over C^dJ, a single polyhedron
    RealAlgebraic inner;     // every square |Re z_i|, |Im z_i| <= inner lies in the set
    std::vector<RVec> hull;  // vertices of the projection on the first coordinate
};
SmallStableSet small_stable_set(int dJ, const ComplexAlgebraic& lambda, const RealAlgebraic& eps);

Certificate synth_mod_lt1(const NormalizedInstance& n, size_t block);
Certificate synth_rou_nondiag(const NormalizedInstance& n, size_t block);

// all eigenvalues of modulus 1 and none a root of unity
SemilinearSet minimal_invariant_mod1(const NormalizedInstance& n);
// minimal invariant containing x when the eigenvalues of A are pairwise equal or non-equivalent
SemilinearSet minimal_invariant_nonequiv(const Matrix& a, const Vector& x);

Verdict decide(const OrbitInstance& l, unsigned long horizon = default_horizon());

}  // namespace semilin
