#pragma once

#include <string>
#include <vector>

#include "semilin/exactlin.hpp"
#include "semilin/semilinear.hpp"

namespace semilin {

inline constexpr unsigned long kDefaultHorizon = 10000;
// SEMILIN_HORIZON when set, else kDefaultHorizon
unsigned long default_horizon();

// coordinate helpers shared by normalize and synth
std::vector<int> real_coords(const std::vector<int>& complex_coords);
std::vector<int> block_coords(const JordanBlock& b);
std::vector<int> coords_except(int d, const std::vector<int>& drop);
Vector sub_vector(const Vector& v, const std::vector<int>& keep);
Matrix sub_matrix(const Matrix& a, const std::vector<int>& keep);
OrbitInstance restrict_instance(const OrbitInstance& l, const std::vector<int>& keep);
// adds z_c = v as two real equalities
void pin(Polyhedron& p, int c, const ComplexAlgebraic& v);
// one step of a Jordan normal form matrix given by its blocks
Vector jordan_apply(const std::vector<JordanBlock>& blocks, const Vector& z);
// blocks of a matrix in Jordan normal form; empty for an empty matrix
std::vector<JordanBlock> jnf_blocks(const Matrix& a);

struct HitAnalysis {
    std::vector<unsigned long> hits;  // times n with A^n x = y that were found, increasing
    bool exact = false;               // hits is complete (or infinite is established)
    bool infinite = false;
};

// A must be in Jordan normal form with the given blocks
HitAnalysis orbit_hits(const OrbitInstance& l, const std::vector<JordanBlock>& blocks, unsigned long horizon,
                       bool first_only);

struct ReachResult {
    enum class Kind { Reach, NonReach, Unknown };
    Kind kind = Kind::Unknown;
    unsigned long n = 0;
};

ReachResult reach_bounded(const OrbitInstance& l, unsigned long horizon);

struct TraceStep {
    enum class Kind { BasisChange, DropZeroEigBlock, DropLastCoord, UnrollRootOfUnityDiag, DropSmallBlockWithZeroTarget };
    Kind kind = Kind::BasisChange;
    int dim_before = 0, dim_after = 0;
    Matrix Q, Qinv;              // child coordinates are Q z
    std::vector<int> block;      // coordinates of J in the parent
    std::vector<int> kept;       // parent coordinates of the child, in order
    std::vector<Vector> prefix;  // parent orbit points added as they are
    ComplexAlgebraic lambda, xJ;
    unsigned long k = 0, n = 0;  // y_J = lambda^k x_J and lambda^n = 1
    Matrix A_kept;
    unsigned long n0 = 0;
    bool exact = true;  // n0 is established, not only bounded-searched
};

std::string to_string(TraceStep::Kind k);
std::string describe(const TraceStep& s);

struct NormalizationTrace {
    int original_dim = 0;
    std::vector<TraceStep> steps;
    bool exact() const;
};

struct NormalizedInstance {
    OrbitInstance inst;
    std::vector<JordanBlock> blocks;
};

bool is_normalized(const NormalizedInstance& n);

struct NormalizeResult {
    enum class Kind { Normalized, ImmediateYes, ImmediateNo, Reach };
    Kind kind = Kind::Normalized;
    NormalizedInstance normalized;
    NormalizationTrace trace;
    SemilinearSet invariant;  // immediate verdicts, on the original instance
    unsigned long reach_n = 0;
    std::string reason;
};

NormalizeResult normalize(const OrbitInstance& l, unsigned long horizon = default_horizon());

// throws std::invalid_argument if I does not live on the trace's final dimension
SemilinearSet pull_back(const SemilinearSet& I, const NormalizationTrace& trace);
// through steps [0, upto) only
SemilinearSet pull_back(const SemilinearSet& I, const NormalizationTrace& trace, size_t upto);

}  // namespace semilin
