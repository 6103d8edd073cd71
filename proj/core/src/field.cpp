#include "semilin/field.hpp"

#include <map>
#include <stdexcept>

namespace semilin {

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval operator*(const Interval& a, const Interval& b) {
    Rat p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    Rat lo = p[0], hi = p[0];
    for (int i = 1; i < 4; ++i) {
        if (p[i] < lo) lo = p[i];
        if (p[i] > hi) hi = p[i];
    }
    return {lo, hi};
}

Interval operator*(const Interval& a, const Rat& s) {
    if (sgn(s) >= 0) return {a.lo * s, a.hi * s};
    return {a.hi * s, a.lo * s};
}

namespace {

using Vec = NumberField::Vec;

Rat det_q(std::vector<std::vector<Rat>> m) {
    int n = static_cast<int>(m.size());
    Rat d = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (sgn(m[r][c]) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return Rat(0);
        if (piv != c) {
            std::swap(m[piv], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (int r = c + 1; r < n; ++r) {
            if (sgn(m[r][c]) == 0) continue;
            Rat f = m[r][c] / m[c][c];
            for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return d;
}

// solves m * v = b for square invertible m
Vec solve_q(std::vector<std::vector<Rat>> m, Vec b) {
    int n = static_cast<int>(m.size());
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (sgn(m[r][c]) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::logic_error("singular system");
        std::swap(m[piv], m[c]);
        std::swap(b[piv], b[c]);
        for (int r = 0; r < n; ++r) {
            if (r == c || sgn(m[r][c]) == 0) continue;
            Rat f = m[r][c] / m[c][c];
            for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
            b[r] -= f * b[c];
        }
    }
    for (int i = 0; i < n; ++i) b[i] /= m[i][i];
    return b;
}

Int isqrt(const Int& v) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

bool is_square(const Int& v) { return sgn(v) >= 0 && mpz_perfect_square_p(v.get_mpz_t()); }

}  // namespace

NumberField::NumberField(Poly minpoly, Rat lo, Rat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    prim_ = minpoly.primitive();
    e_ = prim_.degree();
    if (e_ < 2) throw std::invalid_argument("number field needs degree >= 2");
    init_tables();
    sign_lo_ = sign_at_int(zc_, lo_);
}

NumberField::NumberField(Int radicand) : radicand_(std::move(radicand)) {
    prim_ = Poly(std::vector<Rat>{Rat(-radicand_), Rat(0), Rat(1)});
    e_ = 2;
    Int s = isqrt(radicand_);
    lo_ = Rat(s);
    hi_ = Rat(s + 1);
    init_tables();
    sign_lo_ = sign_at_int(zc_, lo_);
}

void NumberField::init_tables() {
    monic_ = prim_.monic();
    zc_ = integer_coeffs(prim_);
    Vec top(e_);
    for (int i = 0; i < e_; ++i) top[i] = -monic_.c[i];
    xpow_.clear();
    xpow_.push_back(top);
    for (int k = 1; k + 1 < e_; ++k) {
        const Vec& prev = xpow_.back();
        Vec nx(e_);
        for (int i = 0; i + 1 < e_; ++i) nx[i + 1] = prev[i];
        const Rat& carry = prev[e_ - 1];
        if (sgn(carry) != 0)
            for (int i = 0; i < e_; ++i) nx[i] += carry * top[i];
        xpow_.push_back(std::move(nx));
    }
}

Vec NumberField::one() const {
    Vec v(e_);
    v[0] = 1;
    return v;
}

Vec NumberField::generator() const {
    Vec v(e_);
    v[1] = 1;
    return v;
}

Vec NumberField::from_rat(const Rat& r) const {
    Vec v(e_);
    v[0] = r;
    return v;
}

Vec NumberField::add(const Vec& a, const Vec& b) const {
    Vec r(e_);
    for (int i = 0; i < e_; ++i) r[i] = a[i] + b[i];
    return r;
}

Vec NumberField::sub(const Vec& a, const Vec& b) const {
    Vec r(e_);
    for (int i = 0; i < e_; ++i) r[i] = a[i] - b[i];
    return r;
}

Vec NumberField::neg(const Vec& a) const {
    Vec r(e_);
    for (int i = 0; i < e_; ++i) r[i] = -a[i];
    return r;
}

Vec NumberField::scale(const Vec& a, const Rat& s) const {
    Vec r(e_);
    for (int i = 0; i < e_; ++i) r[i] = a[i] * s;
    return r;
}

Vec NumberField::mul(const Vec& a, const Vec& b) const {
    std::vector<Rat> prod(2 * e_ - 1);
    for (int i = 0; i < e_; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (int j = 0; j < e_; ++j)
            if (sgn(b[j]) != 0) prod[i + j] += a[i] * b[j];
    }
    Vec r(prod.begin(), prod.begin() + e_);
    for (int k = 0; k + 1 < e_; ++k) {
        const Rat& c = prod[e_ + k];
        if (sgn(c) == 0) continue;
        for (int i = 0; i < e_; ++i) r[i] += c * xpow_[k][i];
    }
    return r;
}

bool NumberField::is_zero(const Vec& a) {
    for (const auto& v : a)
        if (sgn(v) != 0) return false;
    return true;
}

Vec NumberField::inv(const Vec& a) const {
    if (is_zero(a)) throw std::domain_error("division by zero");
    // extended Euclid: s*a == 1 mod minpoly
    Poly r0 = monic_, r1 = Poly(a);
    Poly s0, s1 = Poly::constant(1);
    while (r1.degree() > 0) {
        auto [q, r] = divmod(r0, r1);
        Poly s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    Poly res = s1 * (Rat(1) / r1.c[0]);
    res = res % monic_;
    Vec v(e_);
    for (int i = 0; i <= res.degree(); ++i) v[i] = res.c[i];
    return v;
}

void NumberField::refine_to(int bits) const {
    Rat target(1);
    mpq_div_2exp(target.get_mpq_t(), target.get_mpq_t(), bits);
    while (hi_ - lo_ > target) {
        Rat mid = (lo_ + hi_) / 2;
        int s = sign_at_int(zc_, mid);
        if (s == sign_lo_)
            lo_ = mid;
        else
            hi_ = mid;
    }
    if (bits > bits_) bits_ = bits;
}

Interval NumberField::generator_interval(int bits) const {
    std::lock_guard<std::mutex> lk(mu_);
    if (bits > bits_) refine_to(bits);
    return {lo_, hi_};
}

Interval NumberField::enclose(const Vec& a, int bits) const {
    Interval t = generator_interval(bits);
    Interval r{a[e_ - 1], a[e_ - 1]};
    for (int i = e_ - 2; i >= 0; --i) r = r * t + Interval{a[i], a[i]};
    return r;
}

int NumberField::sign(const Vec& a) const {
    if (is_zero(a)) return 0;
    if (is_sqrt()) {
        // a0 + a1 sqrt(D)
        int s0 = sgn(a[0]), s1 = sgn(a[1]);
        if (s1 == 0) return s0;
        if (s0 == 0 || s0 == s1) return s0 == 0 ? s1 : s0;
        Rat l = a[0] * a[0], r = a[1] * a[1] * Rat(radicand_);
        return l > r ? s0 : s1;
    }
    for (int bits = 16;; bits *= 2) {
        Interval r = enclose(a, bits);
        if (sgn(r.lo) > 0) return 1;
        if (sgn(r.hi) < 0) return -1;
    }
}

std::vector<Vec> NumberField::mult_matrix(const Vec& a) const {
    std::vector<Vec> m(e_, Vec(e_));
    Vec col = a;
    Vec g = generator();
    for (int j = 0; j < e_; ++j) {
        for (int i = 0; i < e_; ++i) m[i][j] = col[i];
        if (j + 1 < e_) col = mul(col, g);
    }
    return m;
}

Rat NumberField::norm(const Vec& a) const { return det_q(mult_matrix(a)); }

Poly NumberField::charpoly(const Vec& a) const {
    auto m = mult_matrix(a);
    std::vector<Rat> xs, ys;
    for (int t = 0; t <= e_; ++t) {
        auto tm = m;
        for (int i = 0; i < e_; ++i) {
            for (int j = 0; j < e_; ++j) tm[i][j] = -tm[i][j];
            tm[i][i] += t;
        }
        xs.emplace_back(t);
        ys.push_back(det_q(tm));
    }
    return interpolate(xs, ys);
}

// ---------------------------------------------------------------------------
// registry

namespace {

struct Embedding {
    FieldPtr field;
    Vec img_a, img_b;  // images of the two generators
};

struct Registry {
    std::mutex mu;
    std::map<Int, FieldPtr> sqrt_fields;
    std::vector<FieldPtr> fields;
    std::map<std::pair<const NumberField*, const NumberField*>, Embedding> cache;
};

Registry& registry() {
    static Registry r;
    return r;
}

// value of polynomial (coeffs in Q) at element g of field f
Vec eval_in(const NumberField& f, const Vec& coeffs, const Vec& g) {
    Vec r = f.zero();
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
        r = f.mul(r, g);
        r[0] += coeffs[i];
    }
    return r;
}

// polynomials over a number field, low to high
using KPoly = std::vector<Vec>;

void ktrim(KPoly& p) {
    while (!p.empty() && NumberField::is_zero(p.back())) p.pop_back();
}

KPoly kgcd(const NumberField& f, KPoly a, KPoly b) {
    ktrim(a);
    ktrim(b);
    while (!b.empty()) {
        // a mod b
        Vec il = f.inv(b.back());
        while (a.size() >= b.size()) {
            Vec q = f.mul(a.back(), il);
            size_t sh = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) a[sh + i] = f.sub(a[sh + i], f.mul(q, b[i]));
            a.pop_back();
            ktrim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    if (!a.empty()) {
        Vec il = f.inv(a.back());
        for (auto& c : a) c = f.mul(c, il);
    }
    return a;
}

Embedding compute_compositum(const FieldPtr& fa, const FieldPtr& fb) {
    const Poly& p = fa->minpoly();
    const Poly& q = fb->minpoly();
    for (long k : {1L, 2L, -1L, 3L, -2L, 5L, -3L, 7L, 11L, -5L, 13L}) {
        Poly qk = q.compose_affine(Rat(1) / Rat(k), Rat(0));
        Poly R = resultant_sum(p, qk);
        if (gcd(R, R.derivative()).degree() > 0) continue;
        SturmSequence sR(R);
        Rat glo, ghi;
        for (int bits = 8;; bits += 8) {
            Interval a = fa->generator_interval(bits);
            Interval b = fb->generator_interval(bits);
            Interval g = a + b * Rat(k);
            if (sR.count(g.lo, g.hi) == 1 && R.sign_at(g.lo) != 0) {
                glo = g.lo;
                ghi = g.hi;
                break;
            }
        }
        Poly fac;
        for (const auto& f : factor_irreducible(R))
            if (SturmSequence(f).count(glo, ghi) == 1) {
                fac = f;
                break;
            }
        auto [K, gamma] = field_of_root(fac, glo, ghi);
        // beta = theta_b: linear gcd of q(Y) and p(gamma - kY) over K[Y]
        KPoly qy;
        for (const auto& c : q.c) qy.push_back(K->from_rat(c));
        KPoly lin{gamma, K->from_rat(Rat(-k))};
        KPoly pg;
        for (int i = p.degree(); i >= 0; --i) {
            KPoly nx(pg.size() + 1, K->zero());
            for (size_t j = 0; j < pg.size(); ++j) {
                nx[j] = K->add(nx[j], K->mul(pg[j], lin[0]));
                nx[j + 1] = K->add(nx[j + 1], K->mul(pg[j], lin[1]));
            }
            if (nx.empty()) nx.push_back(K->zero());
            nx[0] = K->add(nx[0], K->from_rat(p.c[i]));
            pg = std::move(nx);
        }
        KPoly g = kgcd(*K, qy, pg);
        if (g.size() != 2) throw std::logic_error("compositum: gcd not linear");
        Vec beta = K->neg(g[0]);
        Vec alpha = K->sub(gamma, K->scale(beta, Rat(k)));
        auto reuse = [&](const FieldPtr& F, const Vec& gen_img, const Vec& other_img) -> Vec {
            int e = F->degree();
            std::vector<std::vector<Rat>> m(e, std::vector<Rat>(e));
            Vec pw = K->one();
            for (int j = 0; j < e; ++j) {
                for (int i = 0; i < e; ++i) m[i][j] = pw[i];
                pw = K->mul(pw, gen_img);
            }
            return solve_q(m, other_img);
        };
        if (K->degree() == fa->degree()) return {fa, fa->generator(), reuse(fa, alpha, beta)};
        if (K->degree() == fb->degree()) return {fb, reuse(fb, beta, alpha), fb->generator()};
        return {K, alpha, beta};
    }
    throw std::logic_error("compositum: no separating multiplier");
}

const Embedding& get_embedding(const FieldPtr& fa, const FieldPtr& fb) {
    Registry& reg = registry();
    auto key = std::make_pair(fa.get(), fb.get());
    {
        std::lock_guard<std::mutex> lk(reg.mu);
        auto it = reg.cache.find(key);
        if (it != reg.cache.end()) return it->second;
    }
    Embedding e = compute_compositum(fa, fb);
    std::lock_guard<std::mutex> lk(reg.mu);
    auto it = reg.cache.find(key);
    if (it != reg.cache.end()) return it->second;
    reg.cache[std::make_pair(fb.get(), fa.get())] = Embedding{e.field, e.img_b, e.img_a};
    return reg.cache.emplace(key, std::move(e)).first->second;
}

}  // namespace

FieldPtr sqrt_field(const Int& radicand) {
    Registry& reg = registry();
    std::lock_guard<std::mutex> lk(reg.mu);
    auto it = reg.sqrt_fields.find(radicand);
    if (it != reg.sqrt_fields.end()) return it->second;
    auto f = std::make_shared<const NumberField>(radicand);
    reg.sqrt_fields.emplace(radicand, f);
    return f;
}

std::pair<Rat, Int> split_sqrt(const Rat& r) {
    if (sgn(r) < 0) throw std::domain_error("sqrt of negative");
    if (sgn(r) == 0) return {Rat(0), Int(1)};
    Int nd = r.get_num() * r.get_den();
    Int outside = 1, rest = nd;
    for (unsigned long p = 2; p < 100000 && Int(p) * Int(p) <= rest; p += (p == 2 ? 1 : 2)) {
        Int pp = Int(p) * Int(p);
        while (rest % pp == 0) {
            rest /= pp;
            outside *= p;
        }
    }
    if (is_square(rest)) {
        outside *= isqrt(rest);
        rest = 1;
    }
    return {Rat(outside) / Rat(r.get_den()), rest};
}

std::pair<FieldPtr, Vec> field_of_root(const Poly& p0, const Rat& lo, const Rat& hi) {
    Poly p = p0.primitive();
    if (p.degree() < 2) throw std::invalid_argument("field_of_root: degree < 2");
    if (p.degree() == 2) {
        Rat a = p.c[2], b = p.c[1], c = p.c[0];
        Rat disc = b * b - 4 * a * c;
        auto [s, D] = split_sqrt(disc);
        FieldPtr f = sqrt_field(D);
        bool larger = p.sign_at(hi) == sgn(a);
        Vec v{-b / (2 * a), s / (2 * a)};
        if (!larger) v[1] = -v[1];
        return {f, v};
    }
    Registry& reg = registry();
    {
        std::lock_guard<std::mutex> lk(reg.mu);
        SturmSequence st(p);
        for (const auto& f : reg.fields) {
            if (f->minpoly() != p) continue;
            Interval g = f->generator_interval(0);
            Rat l = std::max(g.lo, lo), h = std::min(g.hi, hi);
            if (l > h) continue;
            if (l == h ? p.sign_at(l) == 0 : st.count(l, h) + (p.sign_at(l) == 0 ? 1 : 0) == 1)
                return {f, f->generator()};
        }
        auto f = std::make_shared<const NumberField>(p, lo, hi);
        reg.fields.push_back(f);
        return {f, f->generator()};
    }
}

Unified unify(const FieldPtr& fa, const Vec& a, const FieldPtr& fb, const Vec& b) {
    if (fa == fb) return {fa, a, b};
    const Embedding& e = get_embedding(fa, fb);
    const NumberField& K = *e.field;
    Vec ia = e.field == fa ? a : eval_in(K, a, e.img_a);
    Vec ib = e.field == fb ? b : eval_in(K, b, e.img_b);
    return {e.field, ia, ib};
}

Vec embed(const FieldPtr& from, const Vec& v, const FieldPtr& to) {
    if (from == to) return v;
    const Embedding& e = get_embedding(to, from);
    if (e.field != to) throw std::logic_error("embed: target does not contain source");
    return eval_in(*to, v, e.img_b);
}

}  // namespace semilin
