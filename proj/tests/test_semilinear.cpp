#include <random>

#include "doctest.h"
#include "semilin/scalar_io.hpp"
#include "semilin/semilinear.hpp"

using namespace semilin;

namespace {

using R = RealAlgebraic;

RVec rv(std::initializer_list<long> xs) {
    RVec v;
    for (long x : xs) v.push_back(R(x));
    return v;
}

Polyhedron interval(R lo, R hi) {
    Polyhedron p{1, {}};
    p.add({RVec{R(1)}, lo, false});
    p.add({RVec{R(-1)}, -hi, false});
    return p;
}

Polyhedron unit_square() {
    Polyhedron p{2, {}};
    p.add({rv({1, 0}), R(0), false});
    p.add({rv({0, 1}), R(0), false});
    p.add({rv({-1, 0}), R(-1), false});
    p.add({rv({0, -1}), R(-1), false});
    return p;
}

}  // namespace

TEST_CASE("lp basics") {
    // maximize x + y s.t. x <= 2, y <= 3, x + 2y <= 7
    std::vector<LinCon> cons{{rv({-1, 0}), R(-2)}, {rv({0, -1}), R(-3)}, {rv({-1, -2}), R(-7)}};
    LpResult r = lp_maximize(2, cons, rv({1, 1}));
    REQUIRE(r.status == LpResult::Status::Optimal);
    CHECK(r.value == R(Rat(9, 2)));
    CHECK(lp_maximize(2, {{rv({1, 0}), R(0)}}, rv({1, 0})).status == LpResult::Status::Unbounded);
    CHECK(!lp_feasible(1, {{rv({1}), R(1)}, {rv({-1}), R(0)}}));
    CHECK(!lp_feasible(1, {{rv({1}), R(0), Rel::GT}, {rv({-1}), R(0)}}));
    auto w = lp_feasible(1, {{rv({1}), R(0), Rel::GT}, {rv({-1}), R(-1), Rel::GT}});
    REQUIRE(w);
    CHECK((*w)[0] > R(0));
    CHECK((*w)[0] < R(1));
    auto e = lp_feasible(2, {{rv({1, 1}), R(3), Rel::EQ}, {rv({1, -1}), R(1), Rel::EQ}});
    REQUIRE(e);
    CHECK(*e == rv({2, 1}));
    // algebraic data
    R s2 = parse_real("sqrt(2)");
    auto a = lp_maximize(1, {{RVec{R(-1)}, -s2}}, RVec{R(1)});
    CHECK(a.value == s2);
}

TEST_CASE("membership") {
    CHECK(membership(SemilinearSet::full(3), rv({5, -1, 2})));
    Polyhedron p{2, {}};
    p.add({rv({1, 0}), R(1), false});
    CHECK(!membership(SemilinearSet::of(p), rv({0, 0})));
    // (u5..u8) = +-7 (u1..u4) on R^8
    SemilinearSet i0 = SemilinearSet::empty(8);
    for (int sgn : {1, -1}) {
        Polyhedron q{8, {}};
        for (int k = 0; k < 4; ++k) {
            RVec n(8);
            n[4 + k] = R(1);
            n[k] = R(-7 * sgn);
            q.add_equality(n, R(0));
        }
        i0.add(q);
    }
    CHECK(membership(i0, rv({0, 0, 1, 0, 0, 0, -7, 0})));
    CHECK(membership(i0, rv({0, 0, 1, 0, 0, 0, 7, 0})));
    CHECK(!membership(i0, rv({1, 1, 1, 1, 1, 1, 1, 1})));
    CHECK(dimension(i0) == 4);
}

TEST_CASE("image_linear and preimage") {
    SemilinearSet sq = SemilinearSet::of(unit_square());
    RMatrix id{rv({1, 0}), rv({0, 1})};
    CHECK(set_equal(image_linear(sq, id), sq));
    SemilinearSet ray = SemilinearSet::of(Polyhedron{1, {{RVec{R(1)}, R(0), false}}});
    CHECK(set_equal(image_linear(ray, RMatrix{RVec{R(2)}}), ray));
    RMatrix rot{rv({0, -1}), rv({1, 0})};
    SemilinearSet img = image_linear(sq, rot);
    for (const auto& v : {rv({0, 0}), rv({0, 1}), rv({-1, 1}), rv({-1, 0})}) CHECK(membership(img, v));
    CHECK(!membership(img, rv({1, 1})));
    // singular map onto the first axis
    RMatrix proj{rv({1, 1}), rv({0, 0})};
    SemilinearSet line = image_linear(sq, proj);
    CHECK(membership(line, rv({2, 0})));
    CHECK(!membership(line, rv({2, 1})));
    CHECK(!membership(line, rv({3, 0})));
    // round trip
    CHECK(set_equal(image_linear(img, RMatrix{rv({0, 1}), rv({-1, 0})}), sq));
}

TEST_CASE("subset") {
    SemilinearSet half1 = SemilinearSet::of(interval(R(-100), R(Rat(1, 2))));
    Polyhedron unit = interval(R(0), R(1));
    Polyhedron le{1, {{RVec{R(-1)}, R(Rat(-1, 2)), false}}};
    Polyhedron ge{1, {{RVec{R(1)}, R(Rat(1, 2)), false}}};
    Polyhedron ge34{1, {{RVec{R(1)}, R(Rat(3, 4)), false}}};
    CHECK(subset(unit, SemilinearSet::full(1)).holds);
    SemilinearSet cover = SemilinearSet::of(le);
    cover.add(ge);
    CHECK(subset(unit, cover).holds);
    SemilinearSet gap = SemilinearSet::of(le);
    gap.add(ge34);
    SubsetResult r = subset(unit, gap);
    REQUIRE(!r.holds);
    REQUIRE(r.witness);
    CHECK((*r.witness)[0] > R(Rat(1, 2)));
    CHECK((*r.witness)[0] < R(Rat(3, 4)));
    CHECK(!subset(unit, half1).holds);
}

TEST_CASE("is_stable") {
    SemilinearSet zero = SemilinearSet::points(2, {rv({0, 0})});
    RMatrix a{rv({3, 1}), rv({-2, 5})};
    CHECK(is_stable(zero, a).stable);
    CHECK(is_stable(SemilinearSet::full(2), a).stable);
    SemilinearSet sq = SemilinearSet::of(unit_square());
    RMatrix dbl{rv({2, 0}), rv({0, 2})};
    StabilityResult st = is_stable(sq, dbl);
    REQUIRE(!st.stable);
    REQUIRE(st.counterexample);
    CHECK(membership(sq, *st.counterexample));
    CHECK(!membership(sq, mat_vec(dbl, *st.counterexample)));
}

TEST_CASE("project and section") {
    CHECK(set_equal(project(SemilinearSet::full(3), {0, 2}), SemilinearSet::full(2)));
    Polyhedron diag{2, {}};
    diag.add_equality(rv({1, -1}), R(0));
    CHECK(set_equal(project(SemilinearSet::of(diag), {0}), SemilinearSet::full(1)));
    CHECK(set_equal(project(SemilinearSet::of(unit_square()), {0}), SemilinearSet::of(interval(R(0), R(1)))));
    // triangle x,y >= 0, x + y <= 1 projected on y
    Polyhedron tri{2, {{rv({1, 0}), R(0), false}, {rv({0, 1}), R(0), false}, {rv({-1, -1}), R(-1), false}}};
    CHECK(set_equal(project(SemilinearSet::of(tri), {1}), SemilinearSet::of(interval(R(0), R(1)))));

    SemilinearSet h = SemilinearSet::of(Polyhedron{2, {{rv({1, 1}), R(1), false}}});
    CHECK(set_equal(section(h, {{1, R(1)}}), SemilinearSet::of(Polyhedron{1, {{RVec{R(1)}, R(0), false}}})));
    CHECK(set_equal(section(h, {{1, R(0)}}), SemilinearSet::of(Polyhedron{1, {{RVec{R(1)}, R(1), false}}})));
    CHECK(set_equal(section(SemilinearSet::full(2), {{0, R(3)}}), SemilinearSet::full(1)));

    // v in project(S, K) iff section(S, v on K) nonempty
    std::mt19937 rng(3);
    for (int it = 0; it < 20; ++it) {
        R v(Rat(long(rng() % 13) - 4, 4));
        bool in_proj = membership(project(SemilinearSet::of(tri), {0}), RVec{v});
        bool sec = !is_empty(section(SemilinearSet::of(tri), {{0, v}}));
        CHECK(in_proj == sec);
    }
}

TEST_CASE("bounded_witness") {
    CHECK(!bounded_witness(SemilinearSet::empty(2)));
    auto w = bounded_witness(SemilinearSet::of(Polyhedron{1, {{RVec{R(1)}, R(5), false}}}));
    REQUIRE(w);
    CHECK((*w)[0] == R(5));
    Polyhedron p{2, {{rv({1, 0}), R(0), false}, {rv({0, 1}), R(0), false}, {rv({1, 1}), R(2), false}}};
    auto q = bounded_witness(SemilinearSet::of(p));
    REQUIRE(q);
    CHECK(p.contains(*q));
    CHECK(sup_norm(*q) <= R(2));
    auto s = bounded_witness(SemilinearSet::of(Polyhedron{1, {{RVec{R(1)}, R(5), true}}}));
    REQUIRE(s);
    CHECK((*s)[0] > R(5));
}

TEST_CASE("convex_hull and interior") {
    Polyhedron one = convex_hull({rv({1, 2})});
    CHECK(one.contains(rv({1, 2})));
    CHECK(!one.contains(rv({1, 3})));
    Polyhedron tri = convex_hull({rv({0, 0}), rv({1, 0}), rv({0, 1})});
    CHECK(tri.contains(RVec{R(Rat(1, 4)), R(Rat(1, 4))}));
    CHECK(!tri.contains(rv({1, 1})));
    Polyhedron seg = convex_hull({rv({0, 0}), rv({2, 2}), rv({1, 1})});
    CHECK(seg.contains(rv({1, 1})));
    CHECK(!seg.contains(rv({3, 3})));
    CHECK(!seg.contains(rv({1, 0})));
    CHECK(dimension(seg) == 1);

    // powers of (1+2i)/2
    ComplexAlgebraic lam = parse_scalar("(1+2*i)/2"), z(1);
    std::vector<RVec> pts;
    for (int i = 1; i <= 8; ++i) {
        z *= lam;
        pts.push_back({z.re, z.im});
    }
    Polyhedron h = convex_hull(pts);
    z *= lam;
    CHECK(!h.contains(RVec{z.re, z.im}));
    CHECK(interior_membership(h, rv({1, 0})));

    Polyhedron sq = unit_square();
    CHECK(interior_membership(sq, RVec{R(Rat(1, 2)), R(Rat(1, 2))}));
    CHECK(!interior_membership(sq, rv({0, 0})));
}

TEST_CASE("dimension and closure") {
    CHECK(dimension(SemilinearSet::full(2)) == 2);
    CHECK(dimension(SemilinearSet::points(2, {rv({1, 1})})) == 0);
    Polyhedron implicit{2, {{rv({1, 0}), R(0), false}, {rv({0, 1}), R(0), false}, {rv({-1, -1}), R(0), false}}};
    CHECK(dimension(implicit) == 0);
    SemilinearSet open = SemilinearSet::of(Polyhedron{1, {{RVec{R(1)}, R(0), true}}});
    CHECK(set_equal(closure(open), SemilinearSet::of(Polyhedron{1, {{RVec{R(1)}, R(0), false}}})));
    CHECK(closure(open).closed());
    Polyhedron bad{1, {{RVec{R(1)}, R(0), true}, {RVec{R(-1)}, R(0), true}}};
    CHECK(closure(SemilinearSet::of(bad)).polyhedra.empty());
}

TEST_CASE("canonical form") {
    Polyhedron p{2, {{rv({2, 4}), R(6), false}, {rv({1, 2}), R(3), false}, {rv({-3, 0}), R(3), true}}};
    Polyhedron c = canonical(p);
    REQUIRE(c.constraints.size() == 2);
    CHECK(c.constraints[0].normal[0] == R(-1));
    CHECK(c.constraints[1].normal == rv({1, 2}));
}

TEST_CASE("subset against sampling on random boxes") {
    std::mt19937 rng(5);
    for (int it = 0; it < 30; ++it) {
        auto box = [&](int lo_max) {
            Polyhedron b{2, {}};
            for (int k = 0; k < 2; ++k) {
                long lo = long(rng() % lo_max), hi = lo + 1 + long(rng() % 4);
                RVec e(2), f(2);
                e[k] = R(1);
                f[k] = R(-1);
                b.add({e, R(lo), false});
                b.add({f, R(-hi), false});
            }
            return b;
        };
        Polyhedron p = box(3);
        SemilinearSet s = SemilinearSet::empty(2);
        for (int k = 0; k < 3; ++k) s.add(box(4));
        bool sampled = true;
        for (int a = 0; a <= 24 && sampled; ++a)
            for (int b = 0; b <= 24; ++b) {
                RVec v{R(Rat(a, 4)), R(Rat(b, 4))};
                if (p.contains(v) && !membership(s, v)) {
                    sampled = false;
                    break;
                }
            }
        SubsetResult r = subset(p, s);
        if (!sampled) CHECK(!r.holds);
        if (!r.holds) {
            REQUIRE(r.witness);
            CHECK(p.contains(*r.witness));
            CHECK(!membership(s, *r.witness));
        }
    }
}
