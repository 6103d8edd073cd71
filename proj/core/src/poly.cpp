#include "semilin/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace semilin {

Poly::Poly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c.emplace_back(v);
    trim();
}

Poly Poly::constant(const Rat& v) { return Poly(std::vector<Rat>{v}); }

Poly Poly::monomial(const Rat& v, int deg) {
    std::vector<Rat> cs(deg + 1);
    cs[deg] = v;
    return Poly(std::move(cs));
}

Rat Poly::coeff(int i) const {
    if (i < 0 || i > degree()) return Rat(0);
    return c[i];
}

void Poly::trim() {
    while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& v : r.c) v = -v;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size());
    for (size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size());
    for (size_t i = 0; i < o.c.size(); ++i) c[i] -= o.c[i];
    trim();
    return *this;
}

Poly& Poly::operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
}

Poly& Poly::operator*=(const Rat& s) {
    if (sgn(s) == 0) {
        c.clear();
        return *this;
    }
    for (auto& v : c) v *= s;
    return *this;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }
Poly operator*(Poly a, const Rat& s) { return a *= s; }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rat> r(a.c.size() + b.c.size() - 1);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (sgn(a.c[i]) == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    }
    return Poly(std::move(r));
}

Poly Poly::derivative() const {
    if (c.size() <= 1) return Poly();
    std::vector<Rat> r(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * static_cast<long>(i);
    return Poly(std::move(r));
}

Rat Poly::eval(const Rat& v) const {
    Rat acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * v + c[i];
    return acc;
}

int Poly::sign_at(const Rat& v) const { return sgn(eval(v)); }

Poly Poly::monic() const {
    if (is_zero()) return *this;
    Rat l = lead();
    Poly r = *this;
    for (auto& v : r.c) v /= l;
    return r;
}

Poly Poly::primitive() const {
    if (is_zero()) return *this;
    Int den = 1;
    for (const auto& v : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    Int g = 0;
    std::vector<Int> num(c.size());
    for (size_t i = 0; i < c.size(); ++i) {
        Rat t = c[i] * Rat(den);
        num[i] = t.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num[i].get_mpz_t());
    }
    if (sgn(c.back()) < 0) g = -g;
    std::vector<Rat> r(c.size());
    for (size_t i = 0; i < c.size(); ++i) r[i] = Rat(Int(num[i] / g));
    return Poly(std::move(r));
}

bool Poly::is_integral() const {
    for (const auto& v : c)
        if (v.get_den() != 1) return false;
    return true;
}

Poly Poly::compose_affine(const Rat& a, const Rat& b) const {
    // Horner in the polynomial ring
    Poly lin(std::vector<Rat>{b, a});
    Poly acc;
    for (size_t i = c.size(); i-- > 0;) {
        acc = acc * lin;
        acc += constant(c[i]);
    }
    return acc;
}

Poly Poly::compose(const Poly& q) const {
    Poly acc;
    for (size_t i = c.size(); i-- > 0;) {
        acc = acc * q;
        acc += constant(c[i]);
    }
    return acc;
}

Poly Poly::reverse() const {
    std::vector<Rat> r(c.rbegin(), c.rend());
    return Poly(std::move(r));
}

std::string Poly::str(const char* var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c.size(); i-- > 0;) {
        if (sgn(c[i]) == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c[i].get_str() << ")";
        if (i > 0) os << "*" << var << "^" << i;
    }
    return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<Rat> r = a.c;
    int db = b.degree();
    std::vector<Rat> q(a.degree() - db + 1);
    Rat inv = 1 / b.lead();
    for (int k = a.degree() - db; k >= 0; --k) {
        Rat t = r[k + db] * inv;
        q[k] = t;
        if (sgn(t) == 0) continue;
        for (int j = 0; j <= db; ++j) r[k + j] -= t * b.c[j];
    }
    r.resize(db);
    return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        // keep coefficient sizes in check
        a = std::move(b);
        b = r.is_zero() ? r : r.primitive();
    }
    return a.monic();
}

Poly squarefree_part(const Poly& p) {
    if (p.degree() <= 0) return p.monic();
    Poly g = gcd(p, p.derivative());
    return (p / g).monic();
}

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f) {
    std::vector<std::pair<Poly, int>> out;
    if (f.degree() <= 0) return out;
    Poly fp = f.derivative();
    Poly a = gcd(f, fp);
    Poly b = f / a;
    Poly cc = fp / a;
    Poly d = cc - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        Poly ai = gcd(b, d);
        Poly bn = b / ai;
        Poly cn = d / ai;
        if (ai.degree() > 0) out.emplace_back(ai.monic(), i);
        b = bn;
        d = cn - b.derivative();
        ++i;
    }
    return out;
}

Rat resultant(const Poly& a0, const Poly& b0) {
    if (a0.is_zero() || b0.is_zero()) return Rat(0);
    Poly a = a0, b = b0;
    Rat acc = 1;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) acc = -acc;
    }
    while (true) {
        int m = a.degree(), n = b.degree();
        if (n == 0) {
            Rat base = b.lead();
            Rat r = 1;
            for (int k = 0; k < m; ++k) r *= base;
            return acc * r;
        }
        Poly r = a % b;
        if (r.is_zero()) return Rat(0);
        int k = r.degree();
        if ((m % 2 == 1) && (n % 2 == 1)) acc = -acc;
        Rat l = b.lead();
        for (int t = 0; t < m - k; ++t) acc *= l;
        a = std::move(b);
        b = std::move(r);
    }
}

Poly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    size_t n = xs.size();
    std::vector<Rat> dd = ys;
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n - 1; i >= j; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
            if (i == j) break;
        }
    Poly acc = Poly::constant(dd[n - 1]);
    for (size_t i = n - 1; i-- > 0;) {
        acc = acc * Poly(std::vector<Rat>{-xs[i], Rat(1)});
        acc += Poly::constant(dd[i]);
    }
    return acc;
}

Poly resultant_sum(const Poly& p, const Poly& q) {
    int D = p.degree() * q.degree();
    std::vector<Rat> xs, ys;
    for (int k = 0; k <= D; ++k) {
        Rat x0(k);
        xs.push_back(x0);
        ys.push_back(resultant(p, q.compose_affine(Rat(-1), x0)));
    }
    return interpolate(xs, ys);
}

Poly resultant_product(const Poly& p, const Poly& q) {
    int D = p.degree() * q.degree();
    int n = q.degree();
    std::vector<Rat> xs, ys;
    for (int k = 0; k <= D; ++k) {
        Rat x0(k);
        std::vector<Rat> cs(n + 1);
        Rat pw = 1;
        for (int i = 0; i <= n; ++i) {
            cs[n - i] = q.coeff(i) * pw;
            pw *= x0;
        }
        xs.push_back(x0);
        ys.push_back(resultant(p, Poly(std::move(cs))));
    }
    return interpolate(xs, ys);
}

std::vector<Int> integer_coeffs(const Poly& p) {
    std::vector<Int> out;
    if (p.is_zero()) return out;
    Int den = 1;
    for (const auto& v : p.c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    for (const auto& v : p.c) {
        Rat t = v * Rat(den);
        out.push_back(t.get_num());
    }
    return out;
}

int sign_at_int(const std::vector<Int>& zc, const Rat& v) {
    if (zc.empty()) return 0;
    const Int& a = v.get_num();
    const Int& b = v.get_den();
    size_t n = zc.size() - 1;
    Int acc = zc[n];
    Int bp = 1;
    for (size_t i = n; i-- > 0;) {
        bp *= b;
        acc = acc * a + zc[i] * bp;
    }
    return sgn(acc);
}

SturmSequence::SturmSequence(const Poly& p) {
    Poly a = p, b = p.derivative();
    auto scaled = [](const Poly& q) {
        std::vector<Int> z = integer_coeffs(q);
        Int g = 0;
        for (auto& v : z) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g > 1)
            for (auto& v : z) v /= g;
        return z;
    };
    seq_.push_back(scaled(a));
    while (!b.is_zero()) {
        seq_.push_back(scaled(b));
        Poly r = -(a % b);
        a = std::move(b);
        b = r.is_zero() ? r : Poly(std::vector<Rat>(r.c));
        if (!b.is_zero()) {
            // scale by positive content to keep sizes down
            std::vector<Int> z = scaled(b);
            std::vector<Rat> rc(z.begin(), z.end());
            b = Poly(std::move(rc));
        }
    }
}

int SturmSequence::variations(const Rat& v) const {
    int last = 0, count = 0;
    for (const auto& z : seq_) {
        int s = sign_at_int(z, v);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

int SturmSequence::variations_at_infinity(int sx) const {
    int last = 0, count = 0;
    for (const auto& z : seq_) {
        int s = sgn(z.back());
        if (sx < 0 && (z.size() - 1) % 2 == 1) s = -s;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

int SturmSequence::count(const Rat& a, const Rat& b) const { return variations(a) - variations(b); }

int SturmSequence::count_all() const { return variations_at_infinity(-1) - variations_at_infinity(1); }

Rat root_bound(const Poly& p) {
    Rat m = 0;
    for (int i = 0; i < p.degree(); ++i) {
        Rat t = abs(p.c[i] / p.lead());
        if (t > m) m = t;
    }
    Rat b = 1;
    while (b <= m + 1) b *= 2;
    return b;
}

std::vector<std::pair<Rat, Rat>> isolate_real_roots(const Poly& p) {
    std::vector<std::pair<Rat, Rat>> out;
    if (p.degree() <= 0) return out;
    SturmSequence s(p);
    Rat B = root_bound(p);
    struct Item {
        Rat lo, hi;
        int n;
    };
    std::vector<Item> stack;
    int total = s.count(-B, B);
    if (total > 0) stack.push_back({-B, B, total});
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        if (it.n == 1) {
            if (p.sign_at(it.hi) == 0)
                out.emplace_back(it.hi, it.hi);
            else
                out.emplace_back(it.lo, it.hi);
            continue;
        }
        Rat mid = (it.lo + it.hi) / 2;
        int left = s.count(it.lo, mid);
        if (left > 0) stack.push_back({it.lo, mid, left});
        if (it.n - left > 0) stack.push_back({mid, it.hi, it.n - left});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}  // namespace semilin
