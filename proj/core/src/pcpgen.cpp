#include "semilin/pcpgen.hpp"

#include <set>
#include <stdexcept>
#include <tuple>

namespace semilin {

namespace {

Rat pow4_inv(size_t n) {
    mpz_class den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), 2 * n);
    return Rat(1, den);
}

// 1-based entry
void set(Matrix& m, int r, int c, const ComplexAlgebraic& v) { m(r - 1, c - 1) = v; }

Matrix pcp_matrix(const std::pair<std::string, std::string>& uv) {
    Matrix m(3, 3);
    m(0, 0) = 1;
    m(0, 1) = encode_word(uv.first);
    m(0, 2) = Rat(-encode_word(uv.second));
    m(1, 1) = pow4_inv(uv.first.size());
    m(2, 2) = pow4_inv(uv.second.size());
    return m;
}

// some w with |w| = n0 + 2 agrees on the first n0 letters
bool agreeing_word_exists(const PcpInstance& p, unsigned long n0) {
    // unmatched suffixes and the matched length
    using State = std::tuple<std::string, std::string, size_t>;
    std::set<State> level{{"", "", 0}};
    for (unsigned long depth = 0; depth < n0 + 2 && !level.empty(); ++depth) {
        std::set<State> next;
        for (const auto& [a, b, m] : level)
            for (const auto& [u, v] : p.pairs) {
                std::string a2 = a + u, b2 = b + v;
                size_t k = std::min(a2.size(), b2.size());
                bool clash = false;
                size_t j = 0;
                for (; j < k && m + j < n0; ++j)
                    if (a2[j] != b2[j]) {
                        clash = true;
                        break;
                    }
                if (clash) continue;
                if (m + k >= n0) return true;
                next.emplace(a2.substr(k), b2.substr(k), m + k);
            }
        level = std::move(next);
    }
    return !level.empty();
}

}  // namespace

PcpInstance PcpInstance::from(std::vector<std::pair<std::string, std::string>> pairs) {
    if (pairs.empty() || pairs.size() > 9) throw std::invalid_argument("PCP instance needs 1 to 9 pairs");
    for (const auto& [u, v] : pairs) {
        if (u.empty() || v.empty()) throw std::invalid_argument("PCP words must be non-empty");
        encode_word(u);
        encode_word(v);
    }
    while (pairs.size() < 9) pairs.push_back(pairs.back());
    return PcpInstance{std::move(pairs)};
}

Rat encode_word(const std::string& w) {
    Rat r = 0;
    for (size_t i = 0; i < w.size(); ++i) {
        if (w[i] != '0' && w[i] != '2') throw std::invalid_argument("letter '" + std::string(1, w[i]) + "' not in {0,2}");
        if (w[i] == '2') r += 2 * pow4_inv(i);
    }
    return r;
}

ReductionFamily family_9x3(const PcpInstance& p) {
    ReductionFamily f;
    f.kind = "9x3";
    f.dimension = 3;
    for (size_t i = 0; i < p.pairs.size(); ++i) {
        f.names.push_back("M" + std::to_string(i + 1));
        f.matrices.push_back(pcp_matrix(p.pairs[i]));
    }
    f.x = {0, 1, 1};
    f.y = {0, 0, 0};
    return f;
}

Vector shift27(const Vector& z, int i) {
    if (z.size() != 3 || i < 0 || i > 8) throw std::invalid_argument("shift27: needs a 3-vector and 0 <= i <= 8");
    Vector r(27);
    for (int k = 0; k < 3; ++k) r[3 * i + k] = z[k];
    return r;
}

ReductionFamily family_2x27(const PcpInstance& p) {
    ReductionFamily base = family_9x3(p);
    Matrix ms(27, 27), mp(27, 27);
    for (int i = 0; i < 9; ++i) {
        int to = (i + 1) % 9;
        for (int k = 0; k < 3; ++k) ms(3 * to + k, 3 * i + k) = 1;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) mp(r, 3 * i + c) = base.matrices[i](r, c);
    }
    ReductionFamily f;
    f.kind = "2x27";
    f.dimension = 27;
    f.names = {"Ms", "Mp"};
    f.matrices = {ms, mp};
    f.x = shift27(base.x, 0);
    f.y = shift27(base.y, 0);
    return f;
}

ReductionFamily family_robust_21(const PcpInstance& p) {
    ReductionFamily f;
    f.kind = "robust21";
    f.dimension = 21;
    for (size_t i = 0; i < p.pairs.size(); ++i) {
        const auto& [u, v] = p.pairs[i];
        Matrix m(21, 21);
        set(m, 1, 1, 1);
        set(m, 1, 2, encode_word(u));
        set(m, 1, 3, Rat(-encode_word(v)));
        set(m, 2, 2, pow4_inv(u.size()));
        set(m, 3, 3, pow4_inv(v.size()));
        set(m, 4, 4, 1);
        set(m, 4, 7, 2);
        set(m, 5, 5, 1);
        set(m, 6, 6, Rat(Rat(1) / pow4_inv(u.size() + v.size())));
        set(m, 7, 7, 1);
        f.names.push_back("M" + std::to_string(i + 1));
        f.matrices.push_back(std::move(m));
    }
    Matrix m1(21, 21);
    set(m1, 8, 1, 1), set(m1, 8, 2, -4), set(m1, 8, 3, -4);
    set(m1, 9, 1, 1), set(m1, 9, 2, -4), set(m1, 9, 3, -4), set(m1, 9, 5, -1);
    set(m1, 10, 1, 1), set(m1, 11, 4, 1), set(m1, 12, 1, 1), set(m1, 13, 6, 1), set(m1, 14, 7, 1);

    Matrix m2(21, 21);
    set(m2, 8, 1, -1), set(m2, 8, 2, -4), set(m2, 8, 3, -4), set(m2, 8, 5, -1);
    set(m2, 9, 1, -1), set(m2, 9, 2, -4), set(m2, 9, 3, -4), set(m2, 9, 5, -1);
    set(m2, 10, 1, -1), set(m2, 11, 4, 1), set(m2, 12, 1, -1), set(m2, 13, 6, 1), set(m2, 14, 7, 1);

    Matrix mx(21, 21);
    for (int i = 8; i <= 14; ++i) set(mx, i, i, 1);
    set(mx, 8, 9, 1), set(mx, 10, 12, 1), set(mx, 13, 14, -1);

    Matrix me(21, 21);
    set(me, 15, 8, 1), set(me, 17, 10, 1), set(me, 18, 11, 1), set(me, 20, 13, 1), set(me, 21, 14, 1);

    Matrix mminus(21, 21), mplus(21, 21), md(21, 21);
    for (int i = 15; i <= 21; ++i) {
        set(mminus, i, i, 1);
        set(mplus, i, i, 1);
        set(md, i, i, 1);
    }
    set(mminus, 18, 21, -2);
    set(mplus, 15, 21, 1);
    set(md, 17, 21, -1);

    for (auto& [name, m] : std::vector<std::pair<std::string, Matrix>>{
             {"Mm1", m1}, {"Mm2", m2}, {"Mx", mx}, {"Me", me}, {"Mminus", mminus}, {"Mp", mplus}, {"Md", md}}) {
        f.names.push_back(name);
        f.matrices.push_back(std::move(m));
    }
    f.x = Vector(21);
    for (int i : {1, 2, 4, 5, 6}) f.x[i] = 1;
    f.y = Vector(21);
    f.y[14] = -1;
    f.y[17] = 1;
    f.y[20] = 1;
    return f;
}

ReductionFamily make_family(const std::string& kind, const PcpInstance& p) {
    if (kind == "9x3") return family_9x3(p);
    if (kind == "2x27") return family_2x27(p);
    if (kind == "robust21") return family_robust_21(p);
    throw std::invalid_argument("unknown family '" + kind + "' (expected 9x3, 2x27 or robust21)");
}

Vector apply_word(const std::vector<Matrix>& ms, const std::vector<int>& w, Vector x) {
    for (int letter : w) {
        if (letter < 1 || letter > static_cast<int>(ms.size())) throw std::invalid_argument("apply_word: bad letter");
        x = ms[letter - 1] * x;
    }
    return x;
}

std::optional<unsigned long> pcp_depth_bound(const PcpInstance& p, unsigned long cap) {
    for (unsigned long n0 = 1; n0 <= cap; ++n0)
        if (!agreeing_word_exists(p, n0)) return n0;
    return std::nullopt;
}

SemilinearSet proof_invariant_9x3(const PcpInstance& p, unsigned long n0) {
    if (n0 < 1) throw std::invalid_argument("proof_invariant_9x3: n0 >= 1");
    ReductionFamily f = family_9x3(p);
    RealAlgebraic margin(pow4_inv(n0 + 1));
    SemilinearSet outer = SemilinearSet::empty(3);
    for (int sign : {1, -1}) {
        Polyhedron q = Polyhedron::full(3);
        q.add({RVec{RealAlgebraic(sign), RealAlgebraic(-4), RealAlgebraic(-4)}, margin, false});
        q.add({RVec{RealAlgebraic(0), RealAlgebraic(1), RealAlgebraic(0)}, RealAlgebraic(0), false});
        q.add({RVec{RealAlgebraic(0), RealAlgebraic(0), RealAlgebraic(1)}, RealAlgebraic(0), false});
        outer.add(std::move(q));
    }
    // orbit points of words up to n0 + 1, skipping those already in the outer part
    std::set<std::string> seen;
    std::vector<Vector> level{f.x};
    std::vector<RVec> pts;
    for (unsigned long len = 0; len <= n0 + 1; ++len) {
        std::vector<Vector> next;
        for (const auto& z : level) {
            if (!seen.insert(to_string(z)).second) continue;
            RVec r{z[0].re, z[1].re, z[2].re};
            if (!membership(outer, r)) pts.push_back(r);
            if (len <= n0)
                for (const auto& m : f.matrices) next.push_back(m * z);
        }
        level = std::move(next);
    }
    SemilinearSet I = outer;
    for (const auto& q : SemilinearSet::points(3, pts).polyhedra) I.add(q);
    return from_real(I);
}

SemilinearSet proof_invariant_9x3(const PcpInstance& p) {
    auto n0 = pcp_depth_bound(p);
    if (!n0)
        throw PcpSearchExhausted("no depth bound up to " + std::to_string(kPcpDepthCap) +
                                 "; the instance may have a solution");
    return proof_invariant_9x3(p, *n0);
}

}  // namespace semilin
