#include "doctest.h"
#include "semilin/scalar_io.hpp"
#include "semilin/synth.hpp"

using namespace semilin;

namespace {

ComplexAlgebraic P(const char* s) { return parse_scalar(s); }

Matrix rotation() { return Matrix{{P("1/sqrt(5)"), P("-2/sqrt(5)")}, {P("2/sqrt(5)"), P("1/sqrt(5)")}}; }

Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows() + b.rows(), a.rows() + b.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.rows(); ++j) m(i, j) = a(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.rows(); ++j) m(a.rows() + i, a.rows() + j) = b(i, j);
    return m;
}

Matrix example3() {
    Matrix m = block_diag(rotation(), rotation());
    m(0, 2) = 1;
    m(1, 3) = 1;
    return m;
}

Matrix example5() { return block_diag(example3(), example3() * ComplexAlgebraic(-1)); }

NormalizedInstance jordan(const OrbitInstance& l) { return {l, jnf_blocks(l.A)}; }

bool certified(const OrbitInstance& l, const Certificate& c) {
    return check_certificate({l.A}, l.x, l.y, c.invariant).pass();
}

Polyhedron box(int dj, const RealAlgebraic& r) {
    Polyhedron p = Polyhedron::full(2 * dj);
    for (int i = 0; i < 2 * dj; ++i) {
        RVec e(2 * dj);
        e[i] = RealAlgebraic(-1);
        p.add({e, -r, false});
        e[i] = RealAlgebraic(1);
        p.add({e, -r, false});
    }
    return p;
}

// S stable, contained in the eps box and containing the inner square
void check_small_set(int dj, const char* lam, const char* eps) {
    ComplexAlgebraic l = P(lam);
    RealAlgebraic e = parse_real(eps);
    SmallStableSet s = small_stable_set(dj, l, e);
    REQUIRE(s.set.polyhedra.size() == 1);
    CHECK(is_stable(s.set, jordan_block(dj, l)).stable);
    CHECK(subset(s.set, SemilinearSet::of(box(dj, e))).holds);
    CHECK(s.inner.sign() > 0);
    CHECK(subset(box(dj, s.inner), s.set).holds);
    CHECK(closure(s.set).polyhedra.size() == 1);
}

}  // namespace

TEST_CASE("modulus above one, real eigenvalue") {
    OrbitInstance l{Matrix{{2}}, {1}, {3}};
    Certificate c = synth_mod_gt1(jordan(l), 0);
    CHECK(c.provenance == Provenance::ModGt1Real);
    CHECK(c.parameters.at("n0") == "3");
    CHECK(certified(l, c));

    OrbitInstance neg{Matrix{{-2}}, {1}, {0}};
    Certificate cn = synth_mod_gt1(jordan(neg), 0);
    CHECK(certified(neg, cn));
    CHECK_FALSE(membership(cn.invariant, Vector{0}));

    OrbitInstance bad{Matrix{{P("1/2")}}, {1}, {3}};
    CHECK_THROWS_AS(synth_mod_gt1(jordan(bad), 0), std::invalid_argument);
}

TEST_CASE("modulus above one, non-real eigenvalue") {
    Matrix a{{P("1/2"), -1}, {1, P("1/2")}};
    OrbitInstance l{a, {1, 0}, {3, 3}};
    auto nr = normalize(l);
    REQUIRE(nr.kind == NormalizeResult::Kind::Normalized);
    Certificate c = synth_mod_gt1(nr.normalized, 0);
    CHECK(c.provenance == Provenance::ModGt1Complex);
    CHECK(certified(nr.normalized.inst, c));
    CHECK(check_certificate({a}, l.x, l.y, pull_back(c.invariant, nr.trace)).pass());

    OrbitInstance j{jordan_block(2, P("1+i")), {1, 1}, {0, 1}};
    CHECK(certified(j, synth_mod_gt1(jordan(j), 0)));
}

TEST_CASE("small stable sets") {
    check_small_set(1, "1/2", "1");
    check_small_set(1, "-1/3", "1/2");
    check_small_set(1, "i/2", "1");
    check_small_set(1, "(1+i)/2", "1");
    check_small_set(2, "1/2", "1");
    check_small_set(2, "i/2", "1");
    CHECK_THROWS_AS(small_stable_set(1, P("2"), RealAlgebraic(1)), std::invalid_argument);
    CHECK_THROWS_AS(small_stable_set(1, P("1/2"), RealAlgebraic(0)), std::invalid_argument);
}

TEST_CASE("real box formula") {
    SmallStableSet s = small_stable_set(1, P("1/2"), RealAlgebraic(1));
    CHECK(membership(s.set, RVec{parse_real("1/2"), RealAlgebraic(0)}));
    CHECK(membership(s.set, RVec{parse_real("1/4"), parse_real("-1/4")}));
    CHECK_FALSE(membership(s.set, RVec{parse_real("1/4"), parse_real("3/8")}));
}

TEST_CASE("modulus below one") {
    OrbitInstance l{Matrix{{P("1/2")}}, {1}, {P("1/3")}};
    Certificate c = synth_mod_lt1(jordan(l), 0);
    CHECK(c.provenance == Provenance::ModLt1);
    CHECK(certified(l, c));

    OrbitInstance j{jordan_block(2, P("1/2")), {1, 1}, {0, P("1/5")}};
    CHECK(certified(j, synth_mod_lt1(jordan(j), 0)));

    OrbitInstance r{jordan_block(1, P("i/2")), {1}, {P("1/7")}};
    CHECK(certified(r, synth_mod_lt1(jordan(r), 0)));

    // shrinking targets never need fewer steps
    unsigned long last = 0;
    for (const char* y : {"1/3", "1/30", "1/300"}) {
        OrbitInstance t{Matrix{{P("1/2")}}, {1}, {P(y)}};
        unsigned long n0 = std::stoul(synth_mod_lt1(jordan(t), 0).parameters.at("n0"));
        CHECK(n0 >= last);
        last = n0;
    }
}

TEST_CASE("non-diagonal root-of-unity block") {
    // (100, 1) lies on the orbit (n, 1)
    Verdict reach = decide({jordan_block(2, 1), {0, 1}, {100, 1}});
    CHECK(reach.kind == Verdict::Kind::Reach);
    CHECK(reach.reach_n == 100);
    OrbitInstance l{jordan_block(2, 1), {0, 1}, {P("201/2"), 1}};
    Certificate c = synth_rou_nondiag(jordan(l), 0);
    CHECK(c.provenance == Provenance::RootOfUnityNonDiag);
    CHECK(c.parameters.at("n0") == "101");
    CHECK(certified(l, c));

    OrbitInstance m{jordan_block(2, -1), {0, 1}, {0, 0}};
    Certificate cm = synth_rou_nondiag(jordan(m), 0);
    CHECK(cm.parameters.at("m") == "2");
    CHECK(certified(m, cm));
    // each ray steps into the next one
    const auto& rays = cm.invariant.polyhedra;
    auto a = m.A;
    size_t first_ray = rays.size() - 2;
    CHECK(subset(image_linear(SemilinearSet::of(rays[first_ray]), a), SemilinearSet::of(rays[first_ray + 1])).holds);
    CHECK(subset(image_linear(SemilinearSet::of(rays[first_ray + 1]), a), SemilinearSet::of(rays[first_ray])).holds);
}

TEST_CASE("example 1: expanding rotation") {
    Verdict v = decide({Matrix{{P("1/2"), -1}, {1, P("1/2")}}, {1, 0}, {3, 3}});
    REQUIRE(v.kind == Verdict::Kind::InvariantExists);
    CHECK(v.certificate->provenance == Provenance::ModGt1Complex);
    CHECK(v.certificate->report->pass());
}

TEST_CASE("example 2: irrational rotation") {
    OrbitInstance l{rotation(), {1, 0}, {3, 3}};
    Verdict v = decide(l);
    REQUIRE(v.kind == Verdict::Kind::NoInvariant);
    REQUIRE(v.minimal);
    // the whole real plane
    CHECK(dimension(*v.minimal) == 2);
    CHECK(membership(*v.minimal, Vector{P("-5"), P("1/9")}));
    CHECK(check_certificate({l.A}, l.x, l.y, *v.minimal).all_stable());
}

TEST_CASE("example 3: rotation with a coupled block") {
    OrbitInstance l{example3(), {0, 0, 1, 0}, {1, 1, 1, 1}};
    Verdict v = decide(l);
    REQUIRE(v.kind == Verdict::Kind::NoInvariant);
    CHECK(dimension(*v.minimal) == 4);
}

TEST_CASE("example 4: two parallel circles") {
    Matrix a = block_diag(rotation(), Matrix{{-1}});
    OrbitInstance l{a, {1, 0, 1}, {0, 0, 1}};
    Verdict v = decide(l);
    REQUIRE(v.kind == Verdict::Kind::NoInvariant);
    const SemilinearSet& I = *v.minimal;
    CHECK(membership(I, Vector{5, 7, 1}));
    CHECK(membership(I, Vector{5, 7, -1}));
    CHECK_FALSE(membership(I, Vector{5, 7, 0}));
    CHECK(dimension(I) == 2);

    Verdict off = decide({a, {1, 0, 1}, {0, 0, 2}});
    REQUIRE(off.kind == Verdict::Kind::InvariantExists);
    CHECK(off.certificate->report->pass());
}

TEST_CASE("example 5: two synchronised blocks") {
    Vector x{0, 0, 1, 0, 0, 0, -7, 0};
    Verdict v = decide({example5(), x, {1, 1, 1, 1, 1, 1, 1, 1}});
    REQUIRE(v.kind == Verdict::Kind::InvariantExists);
    CHECK(v.certificate->provenance == Provenance::Minimal);
    const SemilinearSet& I = v.certificate->invariant;
    CHECK(dimension(I) == 4);
    // (u5..u8) = +-7 (u1..u4)
    CHECK(membership(I, Vector{1, 2, 3, 4, 7, 14, 21, 28}));
    CHECK(membership(I, Vector{1, 2, 3, 4, -7, -14, -21, -28}));
    CHECK_FALSE(membership(I, Vector{1, 2, 3, 4, 7, 14, 21, 29}));

    Verdict no = decide({example5(), x, {1, 0, 0, 0, -7, 0, 0, 0}});
    CHECK(no.kind == Verdict::Kind::NoInvariant);
}

TEST_CASE("example 5 with a perturbed start") {
    Vector x{0, 0, 1, 0, 1, 0, -7, 0};
    Verdict v = decide({example5(), x, {1, 1, 1, 1, 1, 1, 1, 1}});
    REQUIRE(v.kind == Verdict::Kind::InvariantExists);
    const SemilinearSet& I = v.certificate->invariant;
    // even times: (u7,u8) = -7(u3,u4) and (u5,u6) = (u3,u4) - 7(u1,u2); odd times flip both signs
    auto even = [](int a, int b, int c, int d) { return Vector{a, b, c, d, c - 7 * a, d - 7 * b, -7 * c, -7 * d}; };
    auto odd = [](int a, int b, int c, int d) { return Vector{a, b, c, d, 7 * a - c, 7 * b - d, 7 * c, 7 * d}; };
    CHECK(membership(I, even(2, -1, 3, 5)));
    CHECK(membership(I, odd(2, -1, 3, 5)));
    CHECK_FALSE(membership(I, Vector{2, -1, 3, 5, 0, 0, -21, -35}));
    CHECK(dimension(I) == 4);
}

TEST_CASE("reach, zero blocks and unknowns") {
    Verdict r = decide({Matrix{{2}}, {1}, {8}});
    CHECK(r.kind == Verdict::Kind::Reach);
    CHECK(r.reach_n == 3);

    Verdict n = decide({Matrix{{0, 1}, {0, 0}}, {1, 1}, {0, 5}});
    REQUIRE(n.kind == Verdict::Kind::InvariantExists);
    CHECK(n.certificate->provenance == Provenance::Normalization);

    Verdict s = decide({Matrix{{P("1/2"), 0}, {0, -1}}, {1, 1}, {0, 1}});
    CHECK(s.kind == Verdict::Kind::NoInvariant);

    // a non-real diagonal instance with conjugate eigenvalues
    ComplexAlgebraic lam = P("(1+2*i)/sqrt(5)");
    Verdict u = decide({Matrix::diagonal({lam, lam.conj()}), {1, 1}, {3, 3}});
    CHECK(u.kind == Verdict::Kind::Unknown);

    CHECK(to_string(Verdict::Kind::InvariantExists) == "INVARIANT_EXISTS");
    CHECK(to_string(Provenance::ModLt1) == "ModLt1");
}
