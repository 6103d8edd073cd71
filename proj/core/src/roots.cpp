#include <algorithm>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>

#include "semilin/algnum.hpp"

namespace semilin {

namespace {

using CLD = std::complex<long double>;

struct GRat {
    Rat re, im;
};

GRat gmul(const GRat& a, const GRat& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
GRat gadd(const GRat& a, const GRat& b) { return {a.re + b.re, a.im + b.im}; }
Rat gnorm(const GRat& a) { return a.re * a.re + a.im * a.im; }

GRat geval(const Poly& p, const GRat& z) {
    GRat r{Rat(0), Rat(0)};
    for (int i = p.degree(); i >= 0; --i) r = gadd(gmul(r, z), GRat{p.c[i], Rat(0)});
    return r;
}

Rat round_to(const Rat& v, int bits) {
    Rat s = v;
    mpq_mul_2exp(s.get_mpq_t(), s.get_mpq_t(), bits);
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    Rat r(f);
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), bits);
    return r;
}

// rational upper bound of sqrt(r)
Rat sqrt_upper(const Rat& r) {
    if (sgn(r) == 0) return Rat(0);
    // scale so the integer square root has ~64 significant bits
    long k = 64 - static_cast<long>(mpz_sizeinbase(r.get_num_mpz_t(), 2)) +
             static_cast<long>(mpz_sizeinbase(r.get_den_mpz_t(), 2));
    k = std::max(k / 2 + 32, 32L);
    Rat s = r;
    mpq_mul_2exp(s.get_mpq_t(), s.get_mpq_t(), 2 * k);
    Int f;
    mpz_cdiv_q(f.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    Int q;
    mpz_sqrt(q.get_mpz_t(), f.get_mpz_t());
    q += 1;
    Rat res(q);
    mpq_div_2exp(res.get_mpq_t(), res.get_mpq_t(), k);
    return res;
}

std::vector<CLD> aberth(const Poly& p) {
    int n = p.degree();
    std::vector<CLD> c(n + 1);
    for (int i = 0; i <= n; ++i) c[i] = CLD(p.c[i].get_d(), 0);
    auto ev = [&](CLD z, CLD& d) {
        CLD v = c[n];
        d = 0;
        for (int i = n - 1; i >= 0; --i) {
            d = d * z + v;
            v = v * z + c[i];
        }
        return v;
    };
    long double rad = 1;
    if (sgn(p.c[0]) != 0) rad = std::pow(std::abs(c[0] / c[n]), 1.0L / n);
    std::vector<CLD> z(n);
    for (int i = 0; i < n; ++i) z[i] = std::polar(rad, 6.283185307179586L * (i + 0.25L) / n);
    for (int it = 0; it < 600; ++it) {
        long double maxstep = 0;
        for (int i = 0; i < n; ++i) {
            CLD d;
            CLD v = ev(z[i], d);
            if (std::abs(v) == 0) continue;
            CLD ratio = v / d;
            CLD s = 0;
            for (int j = 0; j < n; ++j)
                if (j != i) s += 1.0L / (z[i] - z[j]);
            CLD w = ratio / (1.0L - ratio * s);
            z[i] -= w;
            maxstep = std::max(maxstep, std::abs(w) / std::max<long double>(1, std::abs(z[i])));
        }
        if (maxstep < 1e-17L) break;
    }
    return z;
}

struct Candidates {
    std::vector<Poly> facs;
    std::vector<SturmSequence> st;
    explicit Candidates(const Poly& p) {
        facs = factor_irreducible(p);
        for (const auto& f : facs) st.emplace_back(f);
    }
    // unique candidate root in [lo, hi], or -1
    int unique_in(const Rat& lo, const Rat& hi) const {
        int total = 0, which = -1;
        for (size_t i = 0; i < facs.size(); ++i) {
            int c = st[i].count(lo, hi) + (facs[i].sign_at(lo) == 0 ? 1 : 0);
            total += c;
            if (c) which = static_cast<int>(i);
        }
        return total == 1 ? which : -1;
    }
};

std::vector<ComplexAlgebraic> nonreal_roots(const Poly& g, int nreal) {
    int n = g.degree();
    int nc = n - nreal;
    Poly gp = g.derivative();

    Candidates re_c(resultant_sum(g, g).compose_affine(Rat(2), Rat(0)));
    Poly D = resultant_sum(g, g.compose_affine(Rat(-1), Rat(0)));
    // D(t) = t^n e(t^2)
    std::vector<Rat> ec;
    for (int i = n; i <= D.degree(); i += 2) ec.push_back(D.coeff(i));
    Poly e(ec);
    Candidates im_c(e.compose(Poly{0, 0, -4}));

    std::vector<CLD> approx = aberth(g);
    std::vector<GRat> z(n);
    for (int i = 0; i < n; ++i) z[i] = {Rat(static_cast<double>(approx[i].real())), Rat(static_cast<double>(approx[i].imag()))};

    int bits = 50;
    for (int round = 0; round < 40; ++round, bits = std::min(bits * 2, 4096)) {
        std::vector<Rat> r2(n);
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            GRat gv = geval(g, z[i]), dv = geval(gp, z[i]);
            Rat dn = gnorm(dv);
            if (sgn(dn) == 0) {
                ok = false;
                break;
            }
            r2[i] = Rat(n * n) * gnorm(gv) / dn;
        }
        int off = 0;
        if (ok) {
            for (int i = 0; i < n && ok; ++i)
                for (int j = i + 1; j < n && ok; ++j) {
                    GRat d{z[i].re - z[j].re, z[i].im - z[j].im};
                    Rat rhs = gnorm(d) - r2[i] - r2[j];
                    if (sgn(rhs) <= 0 || 4 * r2[i] * r2[j] >= rhs * rhs) ok = false;
                }
            for (int i = 0; i < n; ++i)
                if (z[i].im * z[i].im > r2[i]) ++off;
            if (off != nc) ok = false;
        }
        std::vector<ComplexAlgebraic> out;
        if (ok) {
            for (int i = 0; i < n && ok; ++i) {
                if (sgn(z[i].im) <= 0 || z[i].im * z[i].im <= r2[i]) continue;
                Rat r = sqrt_upper(r2[i]);
                Rat rlo = z[i].re - r, rhi = z[i].re + r;
                Rat ilo = z[i].im - r, ihi = z[i].im + r;
                if (sgn(ilo) <= 0) ilo = 0;
                int a = re_c.unique_in(rlo, rhi);
                int b = im_c.unique_in(ilo, ihi);
                if (a < 0 || b < 0) {
                    ok = false;
                    break;
                }
                RealAlgebraic re = real_root(re_c.facs[a], rlo, rhi);
                RealAlgebraic im = real_root(im_c.facs[b], ilo, ihi);
                out.emplace_back(re, im);
                out.emplace_back(re, -im);
            }
        }
        if (ok && static_cast<int>(out.size()) == nc) return out;
        // exact Newton step, rounded
        for (int i = 0; i < n; ++i) {
            GRat gv = geval(g, z[i]), dv = geval(gp, z[i]);
            Rat dn = gnorm(dv);
            if (sgn(dn) == 0) {
                z[i].re += Rat(1, 1 << 20);
                continue;
            }
            // gv / dv = gv * conj(dv) / |dv|^2
            GRat q{(gv.re * dv.re + gv.im * dv.im) / dn, (gv.im * dv.re - gv.re * dv.im) / dn};
            z[i] = {round_to(z[i].re - q.re, bits), round_to(z[i].im - q.im, bits)};
        }
    }
    throw std::runtime_error("complex root isolation did not converge");
}

std::vector<ComplexAlgebraic> roots_irreducible(const Poly& g) {
    int n = g.degree();
    std::vector<ComplexAlgebraic> out;
    if (n == 1) {
        out.emplace_back(RealAlgebraic(Rat(-g.c[0] / g.c[1])));
        return out;
    }
    if (n == 2) {
        Rat a = g.c[2], b = g.c[1], c = g.c[0];
        Rat disc = b * b - 4 * a * c;
        RealAlgebraic m(Rat(-b / (2 * a)));
        Rat den = 2 * a;
        if (sgn(den) < 0) den = -den;
        if (sgn(disc) >= 0) {
            RealAlgebraic s = RealAlgebraic::sqrt_of(disc) / RealAlgebraic(den);
            out.emplace_back(m - s);
            out.emplace_back(m + s);
        } else {
            RealAlgebraic s = RealAlgebraic::sqrt_of(-disc) / RealAlgebraic(den);
            out.emplace_back(m, -s);
            out.emplace_back(m, s);
        }
        return out;
    }
    auto iv = isolate_real_roots(g);
    for (const auto& [lo, hi] : iv) out.emplace_back(real_root(g, lo, hi));
    if (static_cast<int>(iv.size()) < n) {
        auto nr = nonreal_roots(g, static_cast<int>(iv.size()));
        out.insert(out.end(), nr.begin(), nr.end());
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

std::mutex cache_mu;
std::map<std::vector<Rat>, std::vector<ComplexAlgebraic>> root_cache;

std::vector<ComplexAlgebraic> cached_roots(const Poly& g) {
    {
        std::lock_guard<std::mutex> lk(cache_mu);
        auto it = root_cache.find(g.c);
        if (it != root_cache.end()) return it->second;
    }
    auto r = roots_irreducible(g);
    std::lock_guard<std::mutex> lk(cache_mu);
    root_cache.emplace(g.c, r);
    return r;
}

}  // namespace

std::vector<RootMult> roots_of(const Poly& p) {
    if (p.is_zero()) throw std::invalid_argument("roots_of: zero polynomial");
    std::vector<RootMult> out;
    for (const auto& [f, k] : squarefree_decomposition(p)) {
        if (f.degree() < 1) continue;
        for (const auto& g : factor_irreducible(f))
            for (auto& z : cached_roots(g)) out.push_back({z, k});
    }
    std::sort(out.begin(), out.end(), [](const RootMult& a, const RootMult& b) { return lex_less(a.value, b.value); });
    return out;
}

namespace {

ComplexAlgebraic ceval(const std::vector<ComplexAlgebraic>& c, const ComplexAlgebraic& z) {
    ComplexAlgebraic r;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) r = r * z + c[i];
    return r;
}

std::vector<ComplexAlgebraic> cderiv(const std::vector<ComplexAlgebraic>& c) {
    std::vector<ComplexAlgebraic> d;
    for (size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * ComplexAlgebraic(static_cast<long>(i)));
    return d;
}

}  // namespace

std::vector<RootMult> roots_of(const std::vector<ComplexAlgebraic>& coeffs0) {
    std::vector<ComplexAlgebraic> c = coeffs0;
    while (!c.empty() && c.back().is_zero()) c.pop_back();
    if (c.empty()) throw std::invalid_argument("roots_of: zero polynomial");
    int d = static_cast<int>(c.size()) - 1;
    if (d == 0) return {};

    bool rational = true, real = true;
    for (const auto& v : c) {
        if (!v.is_rational()) rational = false;
        if (!v.is_real()) real = false;
    }
    if (rational) {
        std::vector<Rat> rc;
        for (const auto& v : c) rc.push_back(v.re.rational());
        return roots_of(Poly(rc));
    }

    // coefficients of P * conj(P), real
    std::vector<RealAlgebraic> q;
    if (real) {
        for (const auto& v : c) q.push_back(v.re);
    } else {
        q.assign(2 * d + 1, RealAlgebraic(0));
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d; ++j) q[i + j] += c[i].re * c[j].re + c[i].im * c[j].im;
    }
    // common field
    FieldPtr K;
    for (const auto& v : q) {
        if (v.is_rational()) continue;
        if (!K)
            K = v.field();
        else if (K != v.field())
            K = unify(K, K->one(), v.field(), v.field()->one()).field;
    }
    Poly R;
    if (!K) {
        std::vector<Rat> rc;
        for (const auto& v : q) rc.push_back(v.rational());
        R = Poly(rc);
    } else {
        std::vector<NumberField::Vec> qv;
        for (const auto& v : q)
            qv.push_back(v.is_rational() ? K->from_rat(v.rational()) : embed(v.field(), v.coords(), K));
        int qd = static_cast<int>(qv.size()) - 1;
        int deg = qd * K->degree();
        std::vector<Rat> xs, ys;
        for (int t = 0; t <= deg; ++t) {
            NumberField::Vec acc = K->zero();
            for (int i = qd; i >= 0; --i) acc = K->add(K->scale(acc, Rat(t)), qv[i]);
            xs.emplace_back(t);
            ys.push_back(K->norm(acc));
        }
        R = interpolate(xs, ys);
    }

    std::vector<RootMult> out;
    int total = 0;
    for (const auto& cand : roots_of(R)) {
        if (!ceval(c, cand.value).is_zero()) continue;
        int m = 1;
        auto der = cderiv(c);
        while (static_cast<int>(der.size()) > 1 && ceval(der, cand.value).is_zero()) {
            ++m;
            der = cderiv(der);
        }
        out.push_back({cand.value, m});
        total += m;
    }
    if (total != d) throw std::logic_error("roots_of: multiplicities do not sum to degree");
    return out;
}

}  // namespace semilin
