// Factorization over Z: modular factorization (Cantor-Zassenhaus),
// linear Hensel lifting and subset recombination.
#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "semilin/poly.hpp"

namespace semilin {
namespace {

using i64 = long;
using MP = std::vector<i64>;  // polynomial over F_p, low to high

i64 md(i64 a, i64 p) {
    a %= p;
    return a < 0 ? a + p : a;
}

i64 inv_mod(i64 a, i64 p) {
    i64 g = p, x = 0, x1 = 1, r = md(a, p);
    while (r) {
        i64 q = g / r;
        i64 t = g - q * r;
        g = r;
        r = t;
        t = x - q * x1;
        x = x1;
        x1 = t;
    }
    if (g != 1) throw std::logic_error("not invertible mod p");
    return md(x, p);
}

void mtrim(MP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

MP msub(const MP& a, const MP& b, i64 p) {
    MP r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = md(r[i] - b[i], p);
    mtrim(r);
    return r;
}

MP mmul(const MP& a, const MP& b, i64 p) {
    if (a.empty() || b.empty()) return {};
    MP r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    mtrim(r);
    return r;
}

void mdivmod(const MP& a, const MP& b, i64 p, MP& q, MP& r) {
    r = a;
    mtrim(r);
    int db = static_cast<int>(b.size()) - 1;
    if (static_cast<int>(r.size()) - 1 < db) {
        q.clear();
        return;
    }
    q.assign(r.size() - b.size() + 1, 0);
    i64 inv = inv_mod(b.back(), p);
    for (int k = static_cast<int>(r.size()) - 1 - db; k >= 0; --k) {
        i64 t = r[k + db] * inv % p;
        q[k] = t;
        if (!t) continue;
        for (int j = 0; j <= db; ++j) r[k + j] = md(r[k + j] - t * b[j], p);
    }
    r.resize(db);
    mtrim(r);
    mtrim(q);
}

MP mmod(const MP& a, const MP& b, i64 p) {
    MP q, r;
    mdivmod(a, b, p, q, r);
    return r;
}

MP mmonic(const MP& a, i64 p) {
    if (a.empty()) return a;
    i64 inv = inv_mod(a.back(), p);
    MP r = a;
    for (auto& v : r) v = v * inv % p;
    return r;
}

MP mgcd(MP a, MP b, i64 p) {
    mtrim(a);
    mtrim(b);
    while (!b.empty()) {
        MP r = mmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return mmonic(a, p);
}

// s*a + t*b = 1 (a, b coprime)
void mxgcd(const MP& a, const MP& b, i64 p, MP& s, MP& t) {
    MP r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
    while (!r1.empty()) {
        MP q, r;
        mdivmod(r0, r1, p, q, r);
        MP s2 = msub(s0, mmul(q, s1, p), p);
        MP t2 = msub(t0, mmul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.size() != 1) throw std::logic_error("xgcd: not coprime");
    i64 inv = inv_mod(r0[0], p);
    for (auto& v : s0) v = v * inv % p;
    for (auto& v : t0) v = v * inv % p;
    s = s0;
    t = t0;
}

MP mderiv(const MP& a, i64 p) {
    if (a.size() <= 1) return {};
    MP r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<i64>(i % p) % p;
    mtrim(r);
    return r;
}

MP mpowmod(MP base, const Int& e, const MP& f, i64 p) {
    MP result = {1};
    base = mmod(base, f, p);
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        result = mmod(mmul(result, result, p), f, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = mmod(mmul(result, base, p), f, p);
    }
    return result;
}

MP reduce_mod(const Poly& f, i64 p) {
    MP r(f.c.size());
    for (size_t i = 0; i < f.c.size(); ++i) {
        Int v = f.c[i].get_num();
        Int m = v % Int(p);
        if (m < 0) m += p;
        r[i] = m.get_si();
    }
    mtrim(r);
    return r;
}

// distinct-degree then equal-degree splitting of a monic squarefree f
std::vector<MP> factor_mod(const MP& f, i64 p, std::mt19937_64& rng) {
    std::vector<std::pair<MP, int>> ddf;
    MP rest = f;
    MP h = {0, 1};
    MP xpoly = {0, 1};
    Int P = p;
    for (int i = 1; 2 * i <= static_cast<int>(rest.size()) - 1; ++i) {
        h = mpowmod(h, P, rest, p);
        MP g = mgcd(msub(h, xpoly, p), rest, p);
        if (g.size() > 1) {
            ddf.emplace_back(g, i);
            MP q, r;
            mdivmod(rest, g, p, q, r);
            rest = q;
            h = mmod(h, rest, p);
        }
    }
    if (rest.size() > 1) ddf.emplace_back(mmonic(rest, p), static_cast<int>(rest.size()) - 1);

    std::vector<MP> out;
    for (auto& [g, d] : ddf) {
        std::vector<MP> work = {g};
        Int pd;
        mpz_ui_pow_ui(pd.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
        Int e = (pd - 1) / 2;
        while (!work.empty()) {
            MP cur = work.back();
            work.pop_back();
            if (static_cast<int>(cur.size()) - 1 == d) {
                out.push_back(cur);
                continue;
            }
            while (true) {
                MP a(cur.size() - 1);
                for (auto& v : a) v = static_cast<i64>(rng() % static_cast<unsigned long long>(p));
                mtrim(a);
                if (a.size() <= 1) continue;
                MP b = mpowmod(a, e, cur, p);
                b = msub(b, MP{1}, p);
                MP gg = mgcd(b, cur, p);
                if (gg.size() > 1 && gg.size() < cur.size()) {
                    MP q, r;
                    mdivmod(cur, gg, p, q, r);
                    work.push_back(gg);
                    work.push_back(mmonic(q, p));
                    break;
                }
            }
        }
    }
    return out;
}

using ZP = std::vector<Int>;

void ztrim(ZP& a) {
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

ZP zmul(const ZP& a, const ZP& b) {
    if (a.empty() || b.empty()) return {};
    ZP r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    ztrim(r);
    return r;
}

ZP zmod(ZP a, const Int& m) {
    for (auto& v : a) {
        v %= m;
        if (v < 0) v += m;
    }
    ztrim(a);
    return a;
}

ZP to_z(const MP& a) {
    ZP r;
    for (auto v : a) r.emplace_back(static_cast<long>(v));
    return r;
}

MP to_m(const ZP& a, i64 p) {
    MP r(a.size());
    Int P = p;
    for (size_t i = 0; i < a.size(); ++i) {
        Int m = a[i] % P;
        if (m < 0) m += P;
        r[i] = m.get_si();
    }
    mtrim(r);
    return r;
}

// lift F = g0*h0 mod p (g0 monic, lc(h0) = lc(F)) to F = G*H mod p^k
void hensel_pair(const ZP& F, const MP& g0, const MP& h0, i64 p, int k, ZP& G, ZP& H) {
    MP s, t;
    mxgcd(g0, h0, p, s, t);
    G = to_z(g0);
    H = to_z(h0);
    H.back() = F.back();
    Int pj = p;
    for (int j = 1; j < k; ++j) {
        ZP GH = zmul(G, H);
        ZP e(std::max(F.size(), GH.size()), Int(0));
        for (size_t i = 0; i < F.size(); ++i) e[i] += F[i];
        for (size_t i = 0; i < GH.size(); ++i) e[i] -= GH[i];
        for (auto& v : e) v /= pj;
        ztrim(e);
        MP em = to_m(e, p);
        MP tau = mmod(mmul(em, t, p), g0, p);
        MP q, r;
        mdivmod(msub(em, mmul(tau, h0, p), p), g0, p, q, r);
        MP sigma = q;
        ZP tz = to_z(tau), sz = to_z(sigma);
        if (G.size() < tz.size()) G.resize(tz.size(), Int(0));
        for (size_t i = 0; i < tz.size(); ++i) G[i] += pj * tz[i];
        if (H.size() < sz.size()) H.resize(sz.size(), Int(0));
        for (size_t i = 0; i < sz.size(); ++i) H[i] += pj * sz[i];
        pj *= p;
    }
    G = zmod(G, pj);
    // keep the exact leading coefficient of H
    Int lead = H.back();
    H = zmod(H, pj);
    H.resize(F.size() - G.size() + 1, Int(0));
    H.back() = lead;
}

std::vector<ZP> hensel_all(const ZP& F, const std::vector<MP>& gs, i64 p, int k) {
    Int pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
    if (gs.size() == 1) {
        Int inv;
        Int l = F.back() % pk;
        if (l < 0) l += pk;
        mpz_invert(inv.get_mpz_t(), l.get_mpz_t(), pk.get_mpz_t());
        ZP r = F;
        for (auto& v : r) v *= inv;
        return {zmod(r, pk)};
    }
    MP h0;
    {
        Int l = F.back() % Int(p);
        if (l < 0) l += p;
        h0 = {l.get_si()};
    }
    for (size_t i = 1; i < gs.size(); ++i) h0 = mmul(h0, gs[i], p);
    ZP G, H;
    hensel_pair(F, gs[0], h0, p, k, G, H);
    std::vector<ZP> out = {G};
    std::vector<MP> rest(gs.begin() + 1, gs.end());
    auto more = hensel_all(H, rest, p, k);
    out.insert(out.end(), more.begin(), more.end());
    return out;
}

Poly from_z(const ZP& a) {
    std::vector<Rat> c(a.begin(), a.end());
    return Poly(std::move(c));
}

ZP symmetric(ZP a, const Int& m) {
    Int half = m / 2;
    for (auto& v : a) {
        v %= m;
        if (v < 0) v += m;
        if (v > half) v -= m;
    }
    ztrim(a);
    return a;
}

bool small_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<Poly> zassenhaus(const Poly& f) {
    int n = f.degree();
    if (n <= 1) return {f};
    ZP F;
    for (const auto& v : f.c) F.push_back(v.get_num());

    // choose a prime giving few modular factors
    std::mt19937_64 rng(0x5eed1e5ULL);
    i64 best_p = 0;
    std::vector<MP> best;
    int tried = 0;
    for (i64 p = 3; tried < 4 && p < 100000; p += 2) {
        if (!small_prime(p)) continue;
        Int lc = F.back() % Int(p);
        if (lc == 0) continue;
        MP fm = reduce_mod(f, p);
        if (static_cast<int>(fm.size()) - 1 != n) continue;
        MP g = mgcd(fm, mderiv(fm, p), p);
        if (g.size() != 1) continue;
        ++tried;
        auto facs = factor_mod(mmonic(fm, p), p, rng);
        if (best_p == 0 || facs.size() < best.size()) {
            best_p = p;
            best = facs;
        }
        if (best.size() == 1) break;
    }
    if (best_p == 0) throw std::runtime_error("factorization: no suitable prime");
    if (best.size() == 1) return {f};
    std::sort(best.begin(), best.end());
    i64 p = best_p;

    // coefficient bound for factors (Mignotte-style, generous)
    Int maxc = 0;
    for (auto& v : F)
        if (abs(v) > maxc) maxc = abs(v);
    Int B = maxc * Int(n + 1);
    B <<= n;
    B *= abs(F.back());
    B *= 2;
    int k = 1;
    Int pk = p;
    while (pk <= B) {
        pk *= p;
        ++k;
    }
    auto lifted = hensel_all(F, best, p, k);

    std::vector<Poly> out;
    std::vector<int> idx(lifted.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    Poly cur = f;
    int s = 1;
    while (2 * s <= static_cast<int>(idx.size())) {
        bool found = false;
        std::vector<int> sel(s);
        for (int i = 0; i < s; ++i) sel[i] = i;
        while (true) {
            Int l = cur.lead().get_num();
            ZP g = {l};
            for (int i : sel) g = zmod(zmul(g, lifted[idx[i]]), pk);
            g = symmetric(g, pk);
            Poly cand = from_z(g);
            if (cand.degree() > 0) {
                cand = cand.primitive();
                auto [q, r] = divmod(cur, cand);
                if (r.is_zero() && q.is_integral()) {
                    out.push_back(cand);
                    cur = q;
                    std::vector<int> rest;
                    for (int i = 0; i < static_cast<int>(idx.size()); ++i)
                        if (std::find(sel.begin(), sel.end(), i) == sel.end()) rest.push_back(idx[i]);
                    idx = rest;
                    found = true;
                    break;
                }
            }
            int i = s - 1;
            while (i >= 0 && sel[i] == static_cast<int>(idx.size()) - s + i) --i;
            if (i < 0) break;
            ++sel[i];
            for (int j = i + 1; j < s; ++j) sel[j] = sel[j - 1] + 1;
        }
        if (!found) ++s;
    }
    if (cur.degree() > 0) out.push_back(cur.primitive());
    return out;
}

}  // namespace

std::vector<Poly> factor_irreducible(const Poly& p) {
    std::vector<Poly> out;
    if (p.degree() <= 0) return out;
    for (auto& [sqf, mult] : squarefree_decomposition(p)) {
        (void)mult;
        Poly f = sqf.primitive();
        // strip x factors
        if (sgn(f.c[0]) == 0) {
            out.push_back(Poly{0, 1});
            std::vector<Rat> c(f.c.begin() + 1, f.c.end());
            f = Poly(std::move(c));
            if (f.degree() <= 0) continue;
        }
        if (f.degree() == 2) {
            Rat disc = f.c[1] * f.c[1] - 4 * f.c[0] * f.c[2];
            if (disc >= 0 && mpz_perfect_square_p(disc.get_num_mpz_t())) {
                Int s;
                mpz_sqrt(s.get_mpz_t(), disc.get_num_mpz_t());
                Rat r1 = (-f.c[1] + Rat(s)) / (2 * f.c[2]);
                Rat r2 = (-f.c[1] - Rat(s)) / (2 * f.c[2]);
                out.push_back(Poly(std::vector<Rat>{-r1, Rat(1)}).primitive());
                out.push_back(Poly(std::vector<Rat>{-r2, Rat(1)}).primitive());
                continue;
            }
            out.push_back(f);
            continue;
        }
        for (auto& g : zassenhaus(f)) out.push_back(g.primitive());
    }
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (int i = a.degree(); i >= 0; --i)
            if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
        return false;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace semilin
