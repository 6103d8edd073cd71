#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semilin/field.hpp"
#include "semilin/poly.hpp"

namespace semilin {

enum class Cmp { LT = -1, EQ = 0, GT = 1 };

// Exact real algebraic number: a rational, or an element of a real number
// field Q(theta) with theta pinned by an isolating interval.
class RealAlgebraic {
public:
    RealAlgebraic() = default;
    RealAlgebraic(long v) : q_(v) {}
    RealAlgebraic(int v) : q_(v) {}
    RealAlgebraic(Rat v) : q_(std::move(v)) {}
    static RealAlgebraic in_field(FieldPtr f, NumberField::Vec v);
    static RealAlgebraic sqrt_of(const Rat& r);

    bool is_rational() const { return !f_; }
    const Rat& rational() const { return q_; }
    const FieldPtr& field() const { return f_; }
    const NumberField::Vec& coords() const { return v_; }

    int sign() const;
    bool is_zero() const { return !f_ && sgn(q_) == 0; }

    // primitive integer polynomial of least degree with this root
    Poly minimal_poly() const;
    // rational interval of width <= 2^-bits containing the value
    Interval interval(int bits) const;
    double approx() const;
    Rat floor_rat() const;

    RealAlgebraic operator-() const;
    RealAlgebraic& operator+=(const RealAlgebraic& o);
    RealAlgebraic& operator-=(const RealAlgebraic& o);
    RealAlgebraic& operator*=(const RealAlgebraic& o);
    RealAlgebraic& operator/=(const RealAlgebraic& o);
    RealAlgebraic inverse() const;

    // canonical element of the smallest-degree representation
    std::string str() const;

private:
    void demote();
    FieldPtr f_;
    Rat q_;
    NumberField::Vec v_;
};

RealAlgebraic operator+(RealAlgebraic a, const RealAlgebraic& b);
RealAlgebraic operator-(RealAlgebraic a, const RealAlgebraic& b);
RealAlgebraic operator*(RealAlgebraic a, const RealAlgebraic& b);
RealAlgebraic operator/(RealAlgebraic a, const RealAlgebraic& b);

Cmp compare(const RealAlgebraic& a, const RealAlgebraic& b);
bool operator==(const RealAlgebraic& a, const RealAlgebraic& b);
bool operator!=(const RealAlgebraic& a, const RealAlgebraic& b);
bool operator<(const RealAlgebraic& a, const RealAlgebraic& b);
bool operator>(const RealAlgebraic& a, const RealAlgebraic& b);
bool operator<=(const RealAlgebraic& a, const RealAlgebraic& b);
bool operator>=(const RealAlgebraic& a, const RealAlgebraic& b);

RealAlgebraic abs(const RealAlgebraic& a);
RealAlgebraic max(const RealAlgebraic& a, const RealAlgebraic& b);
RealAlgebraic min(const RealAlgebraic& a, const RealAlgebraic& b);
// nonnegative square root
RealAlgebraic sqrt(const RealAlgebraic& a);
// the designated real root of an irreducible polynomial in [lo, hi]
RealAlgebraic real_root(const Poly& irreducible, const Rat& lo, const Rat& hi);

enum class ArithOp { Add, Sub, Mul, Div, Neg };
RealAlgebraic arith(ArithOp op, const RealAlgebraic& a, const RealAlgebraic& b = RealAlgebraic());

class ComplexAlgebraic {
public:
    RealAlgebraic re, im;

    ComplexAlgebraic() = default;
    ComplexAlgebraic(long v) : re(v) {}
    ComplexAlgebraic(int v) : re(v) {}
    ComplexAlgebraic(Rat v) : re(std::move(v)) {}
    ComplexAlgebraic(RealAlgebraic r) : re(std::move(r)) {}
    ComplexAlgebraic(RealAlgebraic r, RealAlgebraic i) : re(std::move(r)), im(std::move(i)) {}
    static ComplexAlgebraic I() { return ComplexAlgebraic(RealAlgebraic(0), RealAlgebraic(1)); }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }
    bool is_rational() const { return re.is_rational() && im.is_rational() && sgn(im.rational()) == 0; }
    ComplexAlgebraic conj() const { return {re, -im}; }
    RealAlgebraic norm2() const;
    ComplexAlgebraic inverse() const;

    ComplexAlgebraic operator-() const { return {-re, -im}; }
    ComplexAlgebraic& operator+=(const ComplexAlgebraic& o);
    ComplexAlgebraic& operator-=(const ComplexAlgebraic& o);
    ComplexAlgebraic& operator*=(const ComplexAlgebraic& o);
    ComplexAlgebraic& operator/=(const ComplexAlgebraic& o);

    std::string str() const;
};

ComplexAlgebraic operator+(ComplexAlgebraic a, const ComplexAlgebraic& b);
ComplexAlgebraic operator-(ComplexAlgebraic a, const ComplexAlgebraic& b);
ComplexAlgebraic operator*(ComplexAlgebraic a, const ComplexAlgebraic& b);
ComplexAlgebraic operator/(ComplexAlgebraic a, const ComplexAlgebraic& b);
bool operator==(const ComplexAlgebraic& a, const ComplexAlgebraic& b);
bool operator!=(const ComplexAlgebraic& a, const ComplexAlgebraic& b);
// lexicographic on (re, im)
Cmp compare(const ComplexAlgebraic& a, const ComplexAlgebraic& b);
bool lex_less(const ComplexAlgebraic& a, const ComplexAlgebraic& b);

ComplexAlgebraic pow(const ComplexAlgebraic& z, unsigned long n);

RealAlgebraic modulus_squared(const ComplexAlgebraic& z);

struct RootMult {
    ComplexAlgebraic value;
    int mult;
};

// all complex roots, sorted by (re, im), with multiplicities
std::vector<RootMult> roots_of(const Poly& p);
// roots of a polynomial with algebraic coefficients (low to high)
std::vector<RootMult> roots_of(const std::vector<ComplexAlgebraic>& coeffs);

// upper bound on n examined; exceeding it raises an error
inline constexpr unsigned long kRootOfUnityCap = 10000;

std::optional<unsigned long> is_root_of_unity(const ComplexAlgebraic& z, unsigned long cap = kRootOfUnityCap);
std::optional<unsigned long> ratio_order(const ComplexAlgebraic& a, const ComplexAlgebraic& b,
                                         unsigned long cap = kRootOfUnityCap);

unsigned long euler_phi(unsigned long n);

}  // namespace semilin
