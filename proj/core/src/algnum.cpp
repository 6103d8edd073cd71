#include "semilin/algnum.hpp"

#include <stdexcept>

namespace semilin {

namespace {

Rat pow2(int k) {
    Rat r(1);
    if (k >= 0)
        mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), k);
    else
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), -k);
    return r;
}

Int floor_q(const Rat& v) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return r;
}

// rational bounds on sqrt(r), width <= 2^-k
std::pair<Rat, Rat> sqrt_bounds(const Rat& r, int k) {
    Rat scaled = r * pow2(2 * k);
    Int f = floor_q(scaled);
    Int s;
    mpz_sqrt(s.get_mpz_t(), f.get_mpz_t());
    return {Rat(s) / pow2(k), Rat(s + 1) / pow2(k)};
}

}  // namespace

RealAlgebraic RealAlgebraic::in_field(FieldPtr f, NumberField::Vec v) {
    RealAlgebraic r;
    r.f_ = std::move(f);
    r.v_ = std::move(v);
    r.demote();
    return r;
}

void RealAlgebraic::demote() {
    if (!f_) return;
    for (size_t i = 1; i < v_.size(); ++i)
        if (sgn(v_[i]) != 0) return;
    q_ = v_[0];
    f_.reset();
    v_.clear();
}

RealAlgebraic RealAlgebraic::sqrt_of(const Rat& r) {
    auto [c, D] = split_sqrt(r);
    if (D == 1) return RealAlgebraic(c);
    return in_field(sqrt_field(D), {Rat(0), c});
}

int RealAlgebraic::sign() const { return f_ ? f_->sign(v_) : sgn(q_); }

Poly RealAlgebraic::minimal_poly() const {
    if (!f_) return Poly(std::vector<Rat>{-q_, Rat(1)}).primitive();
    return squarefree_part(f_->charpoly(v_)).primitive();
}

Interval RealAlgebraic::interval(int bits) const {
    if (!f_) return {q_, q_};
    Rat target = pow2(-bits);
    for (int b = bits + 4;; b += 16) {
        Interval r = f_->enclose(v_, b);
        if (r.width() <= target) return r;
    }
}

double RealAlgebraic::approx() const {
    if (!f_) return q_.get_d();
    Interval r = interval(60);
    return Rat((r.lo + r.hi) / 2).get_d();
}

Rat RealAlgebraic::floor_rat() const {
    if (!f_) return Rat(floor_q(q_));
    for (int b = 8;; b += 16) {
        Interval r = interval(b);
        Int a = floor_q(r.lo), c = floor_q(r.hi);
        if (a == c) return Rat(a);
    }
}

RealAlgebraic RealAlgebraic::operator-() const {
    RealAlgebraic r = *this;
    if (f_)
        r.v_ = f_->neg(v_);
    else
        r.q_ = -q_;
    return r;
}

namespace {

template <class OpQ, class OpV>
RealAlgebraic combine(const RealAlgebraic& a, const RealAlgebraic& b, OpQ oq, OpV ov) {
    if (a.is_rational() && b.is_rational()) return RealAlgebraic(oq(a.rational(), b.rational()));
    if (a.is_rational()) {
        const auto& f = b.field();
        return RealAlgebraic::in_field(f, ov(*f, f->from_rat(a.rational()), b.coords()));
    }
    if (b.is_rational()) {
        const auto& f = a.field();
        return RealAlgebraic::in_field(f, ov(*f, a.coords(), f->from_rat(b.rational())));
    }
    Unified u = unify(a.field(), a.coords(), b.field(), b.coords());
    return RealAlgebraic::in_field(u.field, ov(*u.field, u.a, u.b));
}

}  // namespace

RealAlgebraic& RealAlgebraic::operator+=(const RealAlgebraic& o) {
    if (!f_ && !o.f_) {
        q_ += o.q_;
        return *this;
    }
    *this = combine(
        *this, o, [](const Rat& x, const Rat& y) { return Rat(x + y); },
        [](const NumberField& f, const NumberField::Vec& x, const NumberField::Vec& y) { return f.add(x, y); });
    return *this;
}

RealAlgebraic& RealAlgebraic::operator-=(const RealAlgebraic& o) {
    if (!f_ && !o.f_) {
        q_ -= o.q_;
        return *this;
    }
    *this = combine(
        *this, o, [](const Rat& x, const Rat& y) { return Rat(x - y); },
        [](const NumberField& f, const NumberField::Vec& x, const NumberField::Vec& y) { return f.sub(x, y); });
    return *this;
}

RealAlgebraic& RealAlgebraic::operator*=(const RealAlgebraic& o) {
    if (!f_ && !o.f_) {
        q_ *= o.q_;
        return *this;
    }
    if (!o.f_) {
        if (sgn(o.q_) == 0) return *this = RealAlgebraic(0);
        v_ = f_->scale(v_, o.q_);
        return *this;
    }
    if (!f_) {
        if (sgn(q_) == 0) return *this;
        Rat s = q_;
        *this = o;
        v_ = f_->scale(v_, s);
        return *this;
    }
    *this = combine(
        *this, o, [](const Rat& x, const Rat& y) { return Rat(x * y); },
        [](const NumberField& f, const NumberField::Vec& x, const NumberField::Vec& y) { return f.mul(x, y); });
    return *this;
}

RealAlgebraic RealAlgebraic::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (!f_) return RealAlgebraic(Rat(1) / q_);
    return in_field(f_, f_->inv(v_));
}

RealAlgebraic& RealAlgebraic::operator/=(const RealAlgebraic& o) {
    if (!o.f_) {
        if (sgn(o.q_) == 0) throw std::domain_error("division by zero");
        if (!f_)
            q_ /= o.q_;
        else
            v_ = f_->scale(v_, Rat(1) / o.q_);
        return *this;
    }
    return *this *= o.inverse();
}

RealAlgebraic operator+(RealAlgebraic a, const RealAlgebraic& b) { return a += b; }
RealAlgebraic operator-(RealAlgebraic a, const RealAlgebraic& b) { return a -= b; }
RealAlgebraic operator*(RealAlgebraic a, const RealAlgebraic& b) { return a *= b; }
RealAlgebraic operator/(RealAlgebraic a, const RealAlgebraic& b) { return a /= b; }

namespace {

// sign of a - b without forming a common field when the fields differ
int cmp_sign(const RealAlgebraic& a, const RealAlgebraic& b) {
    if (a.is_rational() && b.is_rational()) return cmp(a.rational(), b.rational());
    if (a.field() == b.field() || a.is_rational() || b.is_rational()) return (a - b).sign();
    bool same_poly_checked = false;
    for (int bits = 16;; bits *= 2) {
        Interval ia = a.interval(bits), ib = b.interval(bits);
        if (ia.hi < ib.lo) return -1;
        if (ib.hi < ia.lo) return 1;
        if (!same_poly_checked) {
            same_poly_checked = true;
            Poly ma = a.minimal_poly();
            if (ma == b.minimal_poly()) {
                // same conjugacy class: equal iff a single root lies in the hull
                Rat lo = std::min(ia.lo, ib.lo), hi = std::max(ia.hi, ib.hi);
                SturmSequence st(ma);
                for (;;) {
                    if (st.count(lo, hi) + (ma.sign_at(lo) == 0 ? 1 : 0) == 1) return 0;
                    bits *= 2;
                    ia = a.interval(bits);
                    ib = b.interval(bits);
                    if (ia.hi < ib.lo) return -1;
                    if (ib.hi < ia.lo) return 1;
                    lo = std::min(ia.lo, ib.lo);
                    hi = std::max(ia.hi, ib.hi);
                }
            }
        }
    }
}

}  // namespace

Cmp compare(const RealAlgebraic& a, const RealAlgebraic& b) {
    int s = cmp_sign(a, b);
    return s < 0 ? Cmp::LT : (s > 0 ? Cmp::GT : Cmp::EQ);
}

bool operator==(const RealAlgebraic& a, const RealAlgebraic& b) {
    if (a.is_rational() != b.is_rational()) return false;
    if (a.is_rational()) return a.rational() == b.rational();
    if (a.field() == b.field()) return a.coords() == b.coords();
    return cmp_sign(a, b) == 0;
}
bool operator!=(const RealAlgebraic& a, const RealAlgebraic& b) { return !(a == b); }
bool operator<(const RealAlgebraic& a, const RealAlgebraic& b) { return compare(a, b) == Cmp::LT; }
bool operator>(const RealAlgebraic& a, const RealAlgebraic& b) { return compare(a, b) == Cmp::GT; }
bool operator<=(const RealAlgebraic& a, const RealAlgebraic& b) { return compare(a, b) != Cmp::GT; }
bool operator>=(const RealAlgebraic& a, const RealAlgebraic& b) { return compare(a, b) != Cmp::LT; }

RealAlgebraic abs(const RealAlgebraic& a) { return a.sign() < 0 ? -a : a; }
RealAlgebraic max(const RealAlgebraic& a, const RealAlgebraic& b) { return a < b ? b : a; }
RealAlgebraic min(const RealAlgebraic& a, const RealAlgebraic& b) { return b < a ? b : a; }

RealAlgebraic arith(ArithOp op, const RealAlgebraic& a, const RealAlgebraic& b) {
    switch (op) {
        case ArithOp::Add: return a + b;
        case ArithOp::Sub: return a - b;
        case ArithOp::Mul: return a * b;
        case ArithOp::Div: return a / b;
        case ArithOp::Neg: return -a;
    }
    throw std::logic_error("bad op");
}

RealAlgebraic real_root(const Poly& p, const Rat& lo, const Rat& hi) {
    Poly q = p.primitive();
    if (q.degree() < 1) throw std::invalid_argument("real_root: constant polynomial");
    if (q.degree() == 1) return RealAlgebraic(-q.c[0] / q.c[1]);
    auto [f, v] = field_of_root(q, lo, hi);
    return RealAlgebraic::in_field(f, v);
}

RealAlgebraic sqrt(const RealAlgebraic& a) {
    int s = a.sign();
    if (s < 0) throw std::domain_error("sqrt of negative");
    if (s == 0) return RealAlgebraic(0);
    if (a.is_rational()) return RealAlgebraic::sqrt_of(a.rational());
    Poly m = a.minimal_poly();
    Poly m2 = m.compose(Poly{0, 0, 1});
    std::vector<Poly> facs = factor_irreducible(m2);
    std::vector<SturmSequence> st;
    for (const auto& f : facs) st.emplace_back(f);
    for (int b = 8;; b += 8) {
        Interval ia = a.interval(2 * b);
        if (sgn(ia.lo) <= 0) continue;
        Rat lo = sqrt_bounds(ia.lo, b).first, hi = sqrt_bounds(ia.hi, b).second;
        int total = 0, which = -1;
        for (size_t i = 0; i < facs.size(); ++i) {
            int c = st[i].count(lo, hi) + (facs[i].sign_at(lo) == 0 ? 1 : 0);
            total += c;
            if (c) which = static_cast<int>(i);
        }
        if (total == 1) return real_root(facs[which], lo, hi);
    }
}

// ---------------------------------------------------------------------------

RealAlgebraic ComplexAlgebraic::norm2() const { return re * re + im * im; }

ComplexAlgebraic ComplexAlgebraic::inverse() const {
    RealAlgebraic n = norm2();
    if (n.is_zero()) throw std::domain_error("division by zero");
    RealAlgebraic inv = n.inverse();
    return {re * inv, -(im * inv)};
}

ComplexAlgebraic& ComplexAlgebraic::operator+=(const ComplexAlgebraic& o) {
    re += o.re;
    im += o.im;
    return *this;
}

ComplexAlgebraic& ComplexAlgebraic::operator-=(const ComplexAlgebraic& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

ComplexAlgebraic& ComplexAlgebraic::operator*=(const ComplexAlgebraic& o) {
    if (im.is_zero() && o.im.is_zero()) {
        re *= o.re;
        return *this;
    }
    RealAlgebraic r = re * o.re - im * o.im;
    RealAlgebraic i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

ComplexAlgebraic& ComplexAlgebraic::operator/=(const ComplexAlgebraic& o) {
    if (o.im.is_zero()) {
        re /= o.re;
        im /= o.re;
        return *this;
    }
    return *this *= o.inverse();
}

ComplexAlgebraic operator+(ComplexAlgebraic a, const ComplexAlgebraic& b) { return a += b; }
ComplexAlgebraic operator-(ComplexAlgebraic a, const ComplexAlgebraic& b) { return a -= b; }
ComplexAlgebraic operator*(ComplexAlgebraic a, const ComplexAlgebraic& b) { return a *= b; }
ComplexAlgebraic operator/(ComplexAlgebraic a, const ComplexAlgebraic& b) { return a /= b; }
bool operator==(const ComplexAlgebraic& a, const ComplexAlgebraic& b) { return a.re == b.re && a.im == b.im; }
bool operator!=(const ComplexAlgebraic& a, const ComplexAlgebraic& b) { return !(a == b); }

Cmp compare(const ComplexAlgebraic& a, const ComplexAlgebraic& b) {
    Cmp c = compare(a.re, b.re);
    if (c != Cmp::EQ) return c;
    return compare(a.im, b.im);
}

bool lex_less(const ComplexAlgebraic& a, const ComplexAlgebraic& b) { return compare(a, b) == Cmp::LT; }

ComplexAlgebraic pow(const ComplexAlgebraic& z, unsigned long n) {
    ComplexAlgebraic r(1), b = z;
    while (n) {
        if (n & 1) r *= b;
        n >>= 1;
        if (n) b *= b;
    }
    return r;
}

RealAlgebraic modulus_squared(const ComplexAlgebraic& z) { return z.norm2(); }

unsigned long euler_phi(unsigned long n) {
    unsigned long r = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

std::optional<unsigned long> is_root_of_unity(const ComplexAlgebraic& z, unsigned long cap) {
    if (z.is_zero()) return std::nullopt;
    if (modulus_squared(z) != RealAlgebraic(1)) return std::nullopt;
    if (z.is_real()) return z.re.sign() > 0 ? 1UL : 2UL;
    // degree of z over Q is at most twice the degree of Q(re, im)
    int e = 1;
    if (!z.re.is_rational() && !z.im.is_rational())
        e = unify(z.re.field(), z.re.coords(), z.im.field(), z.im.coords()).field->degree();
    else if (!z.re.is_rational())
        e = z.re.field()->degree();
    else if (!z.im.is_rational())
        e = z.im.field()->degree();
    unsigned long k = 2UL * static_cast<unsigned long>(e);
    // phi(n) >= sqrt(n/2)
    unsigned long nmax = 2 * k * k;
    if (nmax > cap) throw std::runtime_error("root-of-unity search bound exceeds cap");
    ComplexAlgebraic w = z;
    ComplexAlgebraic one(1);
    for (unsigned long n = 1; n <= nmax; ++n) {
        if (euler_phi(n) <= k && w == one) return n;
        w *= z;
    }
    return std::nullopt;
}

std::optional<unsigned long> ratio_order(const ComplexAlgebraic& a, const ComplexAlgebraic& b, unsigned long cap) {
    if (b.is_zero()) throw std::domain_error("ratio_order: zero denominator");
    return is_root_of_unity(a / b, cap);
}

}  // namespace semilin
