#include "doctest.h"
#include "semilin/checker.hpp"
#include "semilin/scalar_io.hpp"

using namespace semilin;

namespace {

ComplexAlgebraic P(const char* s) { return parse_scalar(s); }

Matrix example1() { return Matrix{{P("1/2"), P("-1")}, {P("1"), P("1/2")}}; }

// the first `keep` orbit points together with the closed complement of conv{A^k x : k <= n}, in the real plane
SemilinearSet example1_invariant(unsigned long n, size_t keep) {
    Matrix a = example1();
    auto orbit = orbit_trace(a, {1, 0}, n);
    std::vector<RVec> pts;
    for (const auto& v : orbit) pts.push_back({v[0].re, v[1].re});
    Polyhedron hull = convex_hull(pts);
    SemilinearSet outer = SemilinearSet::points(2, std::vector<RVec>(pts.begin(), pts.begin() + keep));
    for (const auto& h : hull.constraints) {
        RVec n{-h.normal[0], -h.normal[1]};
        outer.add(Polyhedron{2, {HalfSpace{n, -h.offset, false}}});
    }
    return from_real(outer);
}

}  // namespace

TEST_CASE("full space never separates") {
    Matrix a = example1();
    auto r = check_certificate({a}, {1, 0}, {3, 3}, SemilinearSet::full(4));
    CHECK(r.x_in);
    CHECK(r.all_stable());
    CHECK(r.closed);
    CHECK_FALSE(r.y_out);
    CHECK_FALSE(r.pass());
}

TEST_CASE("origin is invariant for any matrix") {
    Matrix a{{P("3"), P("i")}, {P("-1/2"), P("sqrt(2)")}};
    auto r = check_certificate({a}, {0, 0}, {1, 0}, SemilinearSet::points(4, {RVec(4)}));
    CHECK(r.pass());
}

TEST_CASE("example 1 hull-complement invariant") {
    Matrix a = example1();
    // {x, Ax} with n <= 8: A^2 x lies strictly inside the hull, and the hull radius stays
    // below |(3,3)| since |A^8 x| = (5/4)^4
    SemilinearSet hull8 = example1_invariant(8, 2);
    auto p = check_certificate({a}, {1, 0}, {3, 3}, hull8);
    CHECK(p.x_in);
    CHECK(p.closed);
    CHECK_FALSE(p.all_stable());
    CHECK_FALSE(p.y_out);
    CHECK(check_certificate({a}, {1, 0}, {3, 3}, example1_invariant(8, 9)).all_stable());
    // keeping every hull point and enlarging the segment separates
    unsigned long n = 9;
    while (n < 40 && !check_certificate({a}, {1, 0}, {3, 3}, example1_invariant(n, n + 1)).y_out) ++n;
    SemilinearSet I = example1_invariant(n, n + 1);
    auto r = check_certificate({a}, {1, 0}, {3, 3}, I);
    MESSAGE("first separating hull size n = " << n);
    CHECK(r.x_in);
    CHECK(r.y_out);
    CHECK(r.closed);
    CHECK(r.pass());
    // dropping Ax breaks stability
    SemilinearSet broken = I;
    broken.polyhedra.erase(broken.polyhedra.begin() + 2);
    auto b = check_certificate({a}, {1, 0}, {3, 3}, broken);
    CHECK(b.x_in);
    REQUIRE_FALSE(b.all_stable());
    REQUIRE(b.stable[0].counterexample);
    RVec v = *b.stable[0].counterexample;
    CHECK(membership(broken, v));
    CHECK_FALSE(membership(broken, mat_vec(realify(a), v)));
}

TEST_CASE("counterexamples and multiple matrices") {
    Matrix two{{P("2")}};
    Matrix half{{P("1/2")}};
    Polyhedron ray = Polyhedron::full(2);
    ray.add_equality({0, 1}, 0);
    ray.add({{1, 0}, 1, false});  // real z >= 1
    SemilinearSet I = SemilinearSet::of(ray);
    auto r = check_certificate({two, half}, {1}, {0}, I);
    CHECK(r.x_in);
    CHECK(r.y_out);
    REQUIRE(r.stable.size() == 2);
    CHECK(r.stable[0].stable);
    CHECK_FALSE(r.stable[1].stable);
    REQUIRE(r.stable[1].counterexample);
    RVec v = *r.stable[1].counterexample;
    CHECK(ray.contains(v));
    CHECK_FALSE(ray.contains(mat_vec(realify(half), v)));
    CHECK_FALSE(r.pass());

    SemilinearSet strict = SemilinearSet::of(Polyhedron{2, {HalfSpace{{1, 0}, 0, true}}});
    auto s = check_certificate({two}, {1}, {0}, strict);
    CHECK(s.x_in);
    CHECK(s.all_stable());
    CHECK(s.y_out);
    CHECK_FALSE(s.closed);
    CHECK_FALSE(s.pass());
    CHECK_THROWS_AS(check_certificate({two}, {1, 0}, {0}, I), std::invalid_argument);
}

TEST_CASE("orbit_trace") {
    Matrix two{{P("2")}};
    auto t0 = orbit_trace(two, {1}, 0);
    REQUIRE(t0.size() == 1);
    CHECK(t0[0][0] == ComplexAlgebraic(1));
    auto t = orbit_trace(two, {1}, 3);
    REQUIRE(t.size() == 4);
    CHECK(t[1][0] == ComplexAlgebraic(2));
    CHECK(t[2][0] == ComplexAlgebraic(4));
    CHECK(t[3][0] == ComplexAlgebraic(8));
    auto e = orbit_trace(example1(), {1, 0}, 2);
    CHECK(e[1] == Vector{P("1/2"), P("1")});
    CHECK(e[2] == Vector{P("-3/4"), P("1")});
}
