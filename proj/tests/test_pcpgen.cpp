#include <random>

#include "doctest.h"
#include "semilin/checker.hpp"
#include "semilin/pcpgen.hpp"
#include "semilin/scalar_io.hpp"

using namespace semilin;

namespace {

using Pairs = std::vector<std::pair<std::string, std::string>>;

ComplexAlgebraic P_rat(long a, long b) { return ComplexAlgebraic(Rat(a, b)); }

std::string random_word(std::mt19937& g, int max_len) {
    std::uniform_int_distribution<int> len(1, max_len), bit(0, 1);
    std::string w;
    for (int i = len(g); i > 0; --i) w += bit(g) ? '2' : '0';
    return w;
}

// direct sum over letters, independent of the library's encoder
Rat oracle_encode(const std::string& w) {
    Rat r = 0, scale = 1;
    for (char c : w) {
        r += (c - '0') * scale;
        scale /= 4;
    }
    return r;
}

Rat pow4(long e) {
    Rat r = 1;
    for (long i = 0; i < (e < 0 ? -e : e); ++i) r *= 4;
    return e < 0 ? Rat(1 / r) : r;
}

}  // namespace

TEST_CASE("quaternary encoding") {
    CHECK(encode_word("") == 0);
    CHECK(encode_word("2") == 2);
    CHECK(encode_word("222") == Rat(21, 8));
    CHECK(encode_word("02") == Rat(1, 2));
    CHECK_THROWS_AS(encode_word("012"), std::invalid_argument);
    std::mt19937 g(7);
    for (int t = 0; t < 200; ++t) {
        std::string a = random_word(g, 8), b = random_word(g, 8);
        CHECK(encode_word(a + b) == encode_word(a) + pow4(-static_cast<long>(a.size())) * encode_word(b));
        CHECK(encode_word(a) == oracle_encode(a));
        CHECK(encode_word(a) >= 0);
        CHECK(encode_word(a) <= Rat(8, 3));
    }
}

TEST_CASE("instances pad to nine pairs") {
    auto p = PcpInstance::from({{"0", "22"}, {"2", "0"}});
    REQUIRE(p.pairs.size() == 9);
    CHECK(p.pairs[8] == std::make_pair(std::string("2"), std::string("0")));
    CHECK_THROWS_AS(PcpInstance::from({{"", "2"}}), std::invalid_argument);
    CHECK_THROWS_AS(PcpInstance::from({{"1", "2"}}), std::invalid_argument);
    CHECK_THROWS_AS(PcpInstance::from({}), std::invalid_argument);
}

TEST_CASE("9x3 matrices") {
    auto f = family_9x3(PcpInstance::from({{"0", "00"}}));
    CHECK(f.matrices.size() == 9);
    Matrix expect{{1, 0, 0}, {0, P_rat(1, 4), 0}, {0, 0, P_rat(1, 16)}};
    CHECK(f.matrices[0] == expect);
}

TEST_CASE("9x3 word products") {
    std::mt19937 g(11);
    Pairs pairs;
    for (int i = 0; i < 9; ++i) pairs.push_back({random_word(g, 3), random_word(g, 3)});
    auto p = PcpInstance::from(pairs);
    auto f = family_9x3(p);
    std::uniform_int_distribution<int> letter(1, 9), len(0, 6);
    for (int t = 0; t < 60; ++t) {
        std::vector<int> w(len(g));
        std::string u, v;
        for (auto& c : w) {
            c = letter(g);
            u += p.pairs[c - 1].first;
            v += p.pairs[c - 1].second;
        }
        Vector z = apply_word(f.matrices, w, f.x);
        CHECK(z[0] == ComplexAlgebraic(Rat(oracle_encode(u) - oracle_encode(v))));
        CHECK(z[1] == ComplexAlgebraic(pow4(-static_cast<long>(u.size()))));
        CHECK(z[2] == ComplexAlgebraic(pow4(-static_cast<long>(v.size()))));
    }
}

TEST_CASE("solution instance converges to the target") {
    auto f = family_9x3(PcpInstance::from({{"2", "2"}}));
    Vector z = f.x;
    for (long r = 1; r <= 12; ++r) {
        z = f.matrices[0] * z;
        CHECK(z[0].is_zero());
        CHECK(z[1] == ComplexAlgebraic(pow4(-r)));
        CHECK(z[2] == ComplexAlgebraic(pow4(-r)));
    }
    CHECK_FALSE(pcp_depth_bound(PcpInstance::from({{"2", "2"}}), 8).has_value());
    CHECK_THROWS_AS(proof_invariant_9x3(PcpInstance::from({{"2", "2"}})), PcpSearchExhausted);
}

TEST_CASE("proof invariants for instances without solutions") {
    for (const Pairs& pairs : std::vector<Pairs>{{{"0", "22"}},
                                                 {{"0", "2"}, {"2", "0"}},
                                                 {{"02", "20"}, {"2", "00"}, {"0", "2"}},
                                                 {{"2", "0"}, {"20", "02"}, {"22", "0"}, {"0", "22"}},
                                                 {{"00", "2"}, {"2", "02"}}}) {
        auto p = PcpInstance::from(pairs);
        auto n0 = pcp_depth_bound(p);
        REQUIRE(n0.has_value());
        CHECK(*n0 == 1);
        auto f = family_9x3(p);
        SemilinearSet I = proof_invariant_9x3(p, *n0);
        auto r = check_certificate(f.matrices, f.x, f.y, I);
        CHECK(r.pass());
    }
    // the words first differ at the second letter
    auto p = PcpInstance::from({{"2", "20"}});
    auto n0 = pcp_depth_bound(p);
    REQUIRE(n0.has_value());
    CHECK(*n0 == 2);
    auto f = family_9x3(p);
    CHECK(check_certificate(f.matrices, f.x, f.y, proof_invariant_9x3(p, *n0)).pass());
}

TEST_CASE("27-dimensional embedding") {
    auto p = PcpInstance::from({{"0", "22"}, {"2", "0"}, {"02", "2"}, {"20", "202"}});
    auto small = family_9x3(p);
    auto big = family_2x27(p);
    REQUIRE(big.matrices.size() == 2);
    const Matrix &ms = big.matrices[0], &mp = big.matrices[1];
    CHECK(ms.rows() == 27);
    Vector z{3, P_rat(-1, 2), 5};
    CHECK(ms * shift27(z, 8) == shift27(z, 0));
    for (int i = 1; i <= 9; ++i) {
        Vector v = shift27(z, 0);
        for (int k = 1; k < i; ++k) v = ms * v;
        CHECK(mp * v == shift27(small.matrices[i - 1] * z, 0));
    }
    // the block-0 content of the 27-dimensional orbit follows the 3-dimensional one
    std::vector<int> w{2, 4, 1, 3};
    Vector big_z = big.x;
    for (int c : w) {
        for (int k = 1; k < c; ++k) big_z = ms * big_z;
        big_z = mp * big_z;
    }
    CHECK(big_z == shift27(apply_word(small.matrices, w, small.x), 0));
}

TEST_CASE("21-dimensional family") {
    auto f = family_robust_21(PcpInstance::from({{"0", "22"}}));
    REQUIRE(f.matrices.size() == 16);
    auto idx = [&](const std::string& n) {
        return static_cast<size_t>(std::find(f.names.begin(), f.names.end(), n) - f.names.begin());
    };
    auto block = [](int b, std::vector<int> vals) {
        Vector v(21);
        for (int i = 0; i < 7; ++i) v[7 * b + i] = vals[i];
        return v;
    };
    // second block (s, c, d, n, r, k, a) under Mx
    CHECK(f.matrices[idx("Mx")] * block(1, {1, 2, 3, 4, 5, 6, 7}) == block(1, {3, 2, 8, 4, 5, -1, 7}));
    // transfer from the first block with r = 0
    CHECK(f.matrices[idx("Mm1")] * block(0, {9, 1, 1, 4, 0, 6, 1}) == block(1, {1, 1, 9, 4, 9, 6, 1}));
    CHECK(f.matrices[idx("Mm2")] * block(0, {-9, 1, 1, 4, 0, 6, 1}) == block(1, {1, 1, 9, 4, 9, 6, 1}));
    Vector t = block(2, {1, 0, 1, 5, 0, 0, 1});
    CHECK(f.matrices[idx("Mminus")] * t == block(2, {1, 0, 1, 3, 0, 0, 1}));
    CHECK(f.matrices[idx("Mp")] * t == block(2, {2, 0, 1, 5, 0, 0, 1}));
    CHECK(f.matrices[idx("Md")] * t == block(2, {1, 0, 0, 5, 0, 0, 1}));
    CHECK(f.matrices[idx("Me")] * block(1, {1, 2, 3, 4, 5, 6, 7}) == block(2, {1, 0, 3, 4, 0, 6, 7}));
    CHECK(f.x == block(0, {0, 1, 1, 0, 1, 1, 1}));
    CHECK(f.y == block(2, {-1, 0, 0, 1, 0, 0, 1}));
    // M1 scales k so that k s, k c, k d stay integers
    Vector h = apply_word(f.matrices, {1, 1}, f.x);
    CHECK(h[5] == ComplexAlgebraic(Rat(pow4(6))));
    CHECK(h[5] * h[1] == ComplexAlgebraic(Rat(pow4(4))));
    CHECK(h[3] == ComplexAlgebraic(4));
}
