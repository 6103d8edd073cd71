#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace semilin {

using Int = mpz_class;
using Rat = mpq_class;

// Dense univariate polynomial over Q; c[i] is the coefficient of x^i.
class Poly {
public:
    std::vector<Rat> c;

    Poly() = default;
    explicit Poly(std::vector<Rat> coeffs);
    Poly(std::initializer_list<long> coeffs);

    static Poly constant(const Rat& v);
    static Poly monomial(const Rat& v, int deg);
    static Poly x() { return monomial(Rat(1), 1); }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const Rat& lead() const { return c.back(); }
    Rat coeff(int i) const;

    void trim();

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Rat& s);

    Poly derivative() const;
    Rat eval(const Rat& v) const;
    int sign_at(const Rat& v) const;

    Poly monic() const;
    // integer coefficients with content 1 and positive leading coefficient
    Poly primitive() const;
    bool is_integral() const;

    // p(a*x + b)
    Poly compose_affine(const Rat& a, const Rat& b) const;
    Poly compose(const Poly& q) const;
    // x^deg * p(1/x)
    Poly reverse() const;

    bool operator==(const Poly& o) const { return c == o.c; }
    bool operator!=(const Poly& o) const { return !(c == o.c); }

    std::string str(const char* var = "x") const;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(Poly a, const Rat& s);

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);

Poly gcd(Poly a, Poly b);
Poly squarefree_part(const Poly& p);
// Yun: p = lc * prod f_k^k with f_k squarefree, coprime, monic
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p);

Rat resultant(const Poly& a, const Poly& b);
Poly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys);

// Res_y(p(y), q(x - y)), Res_y(p(y), y^n q(x/y))
Poly resultant_sum(const Poly& p, const Poly& q);
Poly resultant_product(const Poly& p, const Poly& q);

// Sign evaluation of an integral polynomial at a rational, without
// building rationals.
int sign_at_int(const std::vector<Int>& zc, const Rat& v);
std::vector<Int> integer_coeffs(const Poly& p);

class SturmSequence {
public:
    explicit SturmSequence(const Poly& p);
    // number of distinct real roots in (a, b]
    int count(const Rat& a, const Rat& b) const;
    int count_all() const;

private:
    int variations(const Rat& v) const;
    int variations_at_infinity(int sign_of_x) const;
    std::vector<std::vector<Int>> seq_;
};

Rat root_bound(const Poly& p);
// isolating intervals (lo, hi) for the real roots of a squarefree p with no
// rational roots at the endpoints; sorted increasingly
std::vector<std::pair<Rat, Rat>> isolate_real_roots(const Poly& p);

// irreducible factors over Z of a nonzero polynomial, each primitive with
// positive leading coefficient; constant factors are dropped and
// multiplicities are discarded
std::vector<Poly> factor_irreducible(const Poly& p);

}  // namespace semilin
