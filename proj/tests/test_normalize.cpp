#include "doctest.h"
#include "semilin/checker.hpp"
#include "semilin/normalize.hpp"
#include "semilin/scalar_io.hpp"

using namespace semilin;

namespace {

ComplexAlgebraic P(const char* s) { return parse_scalar(s); }

Matrix rotation() { return Matrix{{P("1/sqrt(5)"), P("-2/sqrt(5)")}, {P("2/sqrt(5)"), P("1/sqrt(5)")}}; }

bool certified(const OrbitInstance& l, const SemilinearSet& I) { return check_certificate({l.A}, l.x, l.y, I).pass(); }

bool has_step(const NormalizationTrace& t, TraceStep::Kind k) {
    for (const auto& s : t.steps)
        if (s.kind == k) return true;
    return false;
}

}  // namespace

TEST_CASE("bounded reachability") {
    auto r = reach_bounded({Matrix{{2}}, {1}, {4}}, 100);
    CHECK(r.kind == ReachResult::Kind::Reach);
    CHECK(r.n == 2);
    CHECK(reach_bounded({Matrix{{2}}, {1}, {3}}, 100).kind == ReachResult::Kind::NonReach);
    CHECK(reach_bounded({Matrix{{1}}, {1}, {2}}, 100).kind == ReachResult::Kind::NonReach);
    CHECK(reach_bounded({Matrix{{P("1/2")}}, {1}, {P("1/1024")}}, 100).n == 10);
    // the rotation never returns but nothing caps the search
    CHECK(reach_bounded({rotation(), {1, 0}, {0, 1}}, 50).kind == ReachResult::Kind::Unknown);
}

TEST_CASE("orbit hits on a Jordan instance") {
    OrbitInstance l{Matrix{{-1}}, {1}, {1}};
    auto h = orbit_hits(l, jnf_blocks(l.A), 100, false);
    CHECK(h.exact);
    CHECK(h.infinite);
    OrbitInstance g{jordan_block(2, 1), {0, 1}, {5, 1}};
    auto hg = orbit_hits(g, jnf_blocks(g.A), 100, false);
    CHECK(hg.exact);
    CHECK_FALSE(hg.infinite);
    REQUIRE(hg.hits.size() == 1);
    CHECK(hg.hits[0] == 5);
}

TEST_CASE("identity: diagonal root-of-unity block with y off the orbit") {
    OrbitInstance l{Matrix{{1}}, {1}, {2}};
    auto r = normalize(l);
    REQUIRE(r.kind == NormalizeResult::Kind::ImmediateYes);
    CHECK(membership(r.invariant, Vector{1}));
    CHECK_FALSE(membership(r.invariant, Vector{2}));
    CHECK_FALSE(membership(r.invariant, Vector{P("1+i")}));
    CHECK(certified(l, r.invariant));
}

TEST_CASE("nilpotent block with nonzero target") {
    OrbitInstance l{Matrix{{0, 1}, {0, 0}}, {1, 1}, {0, 5}};
    auto r = normalize(l);
    REQUIRE(r.kind == NormalizeResult::Kind::ImmediateYes);
    CHECK(membership(r.invariant, Vector{1, 1}));
    CHECK(membership(r.invariant, Vector{1, 0}));
    CHECK(membership(r.invariant, Vector{0, 0}));
    CHECK(certified(l, r.invariant));
}

TEST_CASE("minus one block unrolls with n = 2") {
    Matrix a(3, 3);
    Matrix rot = rotation();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) a(i, j) = rot(i, j);
    a(2, 2) = -1;
    OrbitInstance l{a, {1, 0, 1}, {0, 0, 1}};
    auto r = normalize(l);
    REQUIRE(r.kind == NormalizeResult::Kind::Normalized);
    CHECK(is_normalized(r.normalized));
    const TraceStep* unroll = nullptr;
    for (const auto& s : r.trace.steps)
        if (s.kind == TraceStep::Kind::UnrollRootOfUnityDiag) unroll = &s;
    REQUIRE(unroll != nullptr);
    CHECK(unroll->n == 2);
    CHECK(unroll->k == 0);
    CHECK(unroll->A_kept.rows() == 2);
    CHECK(char_poly(unroll->A_kept) == char_poly(rot));
    CHECK(r.normalized.inst.dim() == 2);
    // the reduced matrix is conjugate to rot^2
    for (const auto& b : r.normalized.blocks) CHECK(b.eigenvalue.norm2() == RealAlgebraic(1));
    CHECK(r.trace.exact());

    // pulling the full space back gives the two planes u3 = 1 and u3 = -1
    SemilinearSet I = pull_back(SemilinearSet::full(4), r.trace);
    CHECK(membership(I, Vector{5, 7, 1}));
    CHECK(membership(I, Vector{5, 7, -1}));
    CHECK_FALSE(membership(I, Vector{5, 7, 0}));
    CHECK_FALSE(membership(I, Vector{0, 0, 2}));
    CHECK(check_certificate({a}, l.x, l.y, I).all_stable());
}

TEST_CASE("small block with zero target is dropped") {
    OrbitInstance l{Matrix{{P("1/2"), 0}, {0, 2}}, {1, 1}, {0, 4}};
    auto r = normalize(l);
    REQUIRE(r.kind == NormalizeResult::Kind::Normalized);
    REQUIRE(has_step(r.trace, TraceStep::Kind::DropSmallBlockWithZeroTarget));
    for (const auto& s : r.trace.steps)
        if (s.kind == TraceStep::Kind::DropSmallBlockWithZeroTarget) {
            CHECK(s.n0 == 3);
            CHECK(s.exact);
        }
    CHECK(r.normalized.inst.dim() == 1);
}

TEST_CASE("small block whose complement recurs forever") {
    OrbitInstance l{Matrix{{P("1/2"), 0}, {0, -1}}, {1, 1}, {0, 1}};
    auto r = normalize(l);
    CHECK(r.kind == NormalizeResult::Kind::ImmediateNo);
    CHECK(membership(r.invariant, l.y));
    CHECK(membership(r.invariant, l.x));
}

TEST_CASE("zero last coordinate is dropped and pinned") {
    OrbitInstance l{jordan_block(2, P("(1+2*i)/sqrt(5)")), {1, 0}, {0, 0}};
    auto r = normalize(l);
    REQUIRE(has_step(r.trace, TraceStep::Kind::DropLastCoord));
    SemilinearSet I = pull_back(SemilinearSet::full(2), r.trace);
    CHECK(membership(I, Vector{P("3+i"), 0}));
    CHECK_FALSE(membership(I, Vector{0, 1}));
}

TEST_CASE("pull back through the empty trace and a basis change") {
    NormalizationTrace empty;
    empty.original_dim = 1;
    SemilinearSet s = SemilinearSet::points(2, {realify(Vector{P("2+i")})});
    CHECK(set_equal(pull_back(s, empty), s));
    CHECK_THROWS_AS(pull_back(SemilinearSet::full(4), empty), std::invalid_argument);

    Matrix a{{P("1/2"), -1}, {1, P("1/2")}};
    OrbitInstance l{a, {1, 0}, {3, 3}};
    auto r = normalize(l);
    REQUIRE(r.kind == NormalizeResult::Kind::Normalized);
    REQUIRE(r.trace.steps.size() == 1);
    const TraceStep& b = r.trace.steps[0];
    CHECK(b.kind == TraceStep::Kind::BasisChange);
    // a point of the normalized space pulls back to Qinv of it
    Vector z{P("1+i"), P("2")};
    SemilinearSet back = pull_back(SemilinearSet::points(4, {realify(z)}), r.trace);
    CHECK(membership(back, b.Qinv * z));
    CHECK(r.normalized.inst.x == b.Q * l.x);
}
