#include <random>

#include "doctest.h"
#include "semilin/exactlin.hpp"
#include "semilin/scalar_io.hpp"

using namespace semilin;

namespace {

using C = ComplexAlgebraic;

Matrix example1() { return Matrix{{1, -2}, {2, 1}} * C(Rat(1, 2)); }

Matrix eval_poly(const std::vector<C>& p, const Matrix& a) {
    Matrix r(a.rows(), a.cols());
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) r = r * a + Matrix::identity(a.rows()) * p[i];
    return r;
}

void check_jordan(const Matrix& a) {
    JordanForm jf = jordan_form(a);
    CHECK(jf.Q * jf.Qinv == Matrix::identity(a.rows()));
    CHECK(jf.Q * a * jf.Qinv == jf.J());
    CHECK(jf.Qinv * jf.J() * jf.Q == a);
    int total = 0;
    for (const auto& b : jf.blocks) total += b.size;
    CHECK(total == a.rows());
    // algebraic multiplicities agree with char_poly
    for (const auto& r : roots_of(char_poly(a))) {
        int m = 0;
        for (const auto& b : jf.blocks)
            if (b.eigenvalue == r.value) m += b.size;
        CHECK(m == r.mult);
    }
}

}  // namespace

TEST_CASE("char_poly") {
    Matrix a = example1();
    auto p = char_poly(a);
    REQUIRE(p.size() == 3);
    CHECK(p[0] == C(Rat(5, 4)));
    CHECK(p[1] == C(-1));
    CHECK(p[2] == C(1));
    CHECK(eval_poly(p, a).is_zero());
    auto q = char_poly(Matrix::identity(2));
    CHECK(q == std::vector<C>{1, -2, 1});
    auto z = char_poly(Matrix{{0, 1}, {0, 0}});
    CHECK(z == std::vector<C>{0, 0, 1});
    Matrix b{{2, 1, 0, 3}, {1, 0, 5, 0}, {0, 1, 1, 1}, {4, 0, 0, 2}};
    CHECK(eval_poly(char_poly(b), b).is_zero());
    CHECK(char_poly(b)[0] == det(b));
}

TEST_CASE("basic linear algebra") {
    Matrix b{{1, 2}, {3, 4}};
    CHECK(det(b) == C(-2));
    CHECK(b * inverse(b) == Matrix::identity(2));
    Matrix s{{1, 2}, {2, 4}};
    CHECK(rank(s) == 1);
    CHECK_THROWS_AS(inverse(s), std::domain_error);
    auto k = kernel(s);
    REQUIRE(k.size() == 1);
    CHECK(is_zero(s * k[0]));
}

TEST_CASE("jordan_form examples") {
    JordanForm jf = jordan_form(example1());
    REQUIRE(jf.blocks.size() == 2);
    CHECK(jf.blocks[0].eigenvalue == parse_scalar("(1-2*i)/2"));
    CHECK(jf.blocks[1].eigenvalue == parse_scalar("(1+2*i)/2"));
    check_jordan(example1());

    JordanForm id = jordan_form(Matrix::identity(3));
    CHECK(id.blocks.size() == 3);
    CHECK(id.Q == Matrix::identity(3));

    JordanForm nil = jordan_form(Matrix{{0, 1}, {0, 0}});
    REQUIRE(nil.blocks.size() == 1);
    CHECK(nil.blocks[0].size == 2);
    CHECK(nil.blocks[0].eigenvalue.is_zero());

    check_jordan(Matrix{{2, 1, 0}, {0, 2, 0}, {0, 0, 2}});
    check_jordan(Matrix{{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
    check_jordan(Matrix{{1, 1, 1}, {0, 1, 1}, {0, 0, 2}});
    check_jordan(Matrix{{0, -1}, {1, 0}});
    check_jordan(Matrix{{3, 1}, {-1, 1}});  // (l-2)^2, one block
    CHECK(jordan_form(Matrix{{3, 1}, {-1, 1}}).blocks.size() == 1);
}

TEST_CASE("jordan_structure") {
    std::vector<JordanBlock> bl{{C(2), 2, 0}, {C(3), 1, 2}};
    auto s = jordan_structure(jordan_matrix(bl));
    REQUIRE(s.size() == 2);
    CHECK(s[0].size == 2);
    CHECK(s[1].eigenvalue == C(3));
    CHECK(jordan_structure(Matrix{{1, 2}, {0, 1}}).empty());
}

TEST_CASE("jordan round trip on random integer matrices") {
    std::mt19937 rng(11);
    for (int it = 0; it < 12; ++it) {
        int d = 1 + static_cast<int>(rng() % 4);
        // conjugate a random Jordan matrix by a random unimodular-ish basis
        std::vector<JordanBlock> bl;
        int off = 0;
        while (off < d) {
            int sz = 1 + static_cast<int>(rng() % (d - off));
            bl.push_back({C(long(rng() % 3) - 1), sz, off});
            off += sz;
        }
        Matrix P(d, d);
        do {
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) P(i, j) = C(long(rng() % 5) - 2);
        } while (!is_invertible(P));
        Matrix a = P * jordan_matrix(bl) * inverse(P);
        check_jordan(a);
    }
}

TEST_CASE("conjugate_instance and apply_power") {
    OrbitInstance l{example1(), Vector{1, 0}, Vector{0, 1}};
    OrbitInstance same = conjugate_instance(l, Matrix::identity(2), Matrix::identity(2));
    CHECK(same.A == l.A);
    JordanForm jf = jordan_form(l.A);
    OrbitInstance c = conjugate_instance(l, jf.Q, jf.Qinv);
    CHECK(c.A == Matrix::diagonal({parse_scalar("(1-2*i)/2"), parse_scalar("(1+2*i)/2")}));
    OrbitInstance back = conjugate_instance(c, jf.Qinv, jf.Q);
    CHECK(back.A == l.A);
    CHECK(back.x == l.x);
    CHECK(back.y == l.y);
    CHECK_THROWS_AS(conjugate_instance(l, Matrix{{1, 1}, {0, 1}}, Matrix::identity(2)), std::invalid_argument);

    CHECK(apply_power(l.A, l.x, 0) == l.x);
    CHECK(apply_power(Matrix{{2}}, Vector{1}, 5) == Vector{32});
    CHECK(apply_power(l.A, l.x, 1) == Vector{C(Rat(1, 2)), C(1)});
    CHECK(apply_power(l.A, l.x, 7) == apply_power(l.A, apply_power(l.A, l.x, 3), 4));
}
