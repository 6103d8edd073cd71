#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "semilin/poly.hpp"

namespace semilin {

struct Interval {
    Rat lo, hi;
    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
    Rat width() const { return hi - lo; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Rat& s);

// Real number field Q(theta), theta a real root of an irreducible
// polynomial of degree >= 2. Elements are coordinate vectors in the power
// basis 1, theta, ..., theta^(e-1).
class NumberField {
public:
    using Vec = std::vector<Rat>;

    NumberField(Poly minpoly, Rat lo, Rat hi);
    explicit NumberField(Int radicand);

    int degree() const { return e_; }
    const Poly& minpoly() const { return prim_; }
    bool is_sqrt() const { return sgn(radicand_) != 0; }
    const Int& radicand() const { return radicand_; }

    Vec zero() const { return Vec(e_); }
    Vec one() const;
    Vec generator() const;
    Vec from_rat(const Rat& r) const;

    Vec add(const Vec& a, const Vec& b) const;
    Vec sub(const Vec& a, const Vec& b) const;
    Vec neg(const Vec& a) const;
    Vec mul(const Vec& a, const Vec& b) const;
    Vec scale(const Vec& a, const Rat& s) const;
    Vec inv(const Vec& a) const;

    static bool is_zero(const Vec& a);
    int sign(const Vec& a) const;

    // interval enclosing the generator, of width at most 2^-bits
    Interval generator_interval(int bits) const;
    Interval enclose(const Vec& a, int bits) const;

    // matrix of multiplication by a in the power basis (columns = images)
    std::vector<Vec> mult_matrix(const Vec& a) const;
    Rat norm(const Vec& a) const;
    Poly charpoly(const Vec& a) const;

private:
    void init_tables();
    void refine_to(int bits) const;

    Poly prim_;
    Poly monic_;
    std::vector<Int> zc_;
    Int radicand_ = 0;
    int e_ = 0;
    std::vector<Vec> xpow_;  // theta^e .. theta^(2e-2) reduced

    mutable std::mutex mu_;
    mutable Rat lo_, hi_;
    mutable int bits_ = 0;
    int sign_lo_ = 0;
};

using FieldPtr = std::shared_ptr<const NumberField>;

// Fields are interned; pointer equality means same embedded field.
FieldPtr sqrt_field(const Int& radicand);
// field Q(theta) for the root of irreducible p isolated by [lo, hi];
// returns the field and the coordinates of that root
std::pair<FieldPtr, NumberField::Vec> field_of_root(const Poly& p, const Rat& lo, const Rat& hi);

struct Unified {
    FieldPtr field;
    NumberField::Vec a, b;
};
Unified unify(const FieldPtr& fa, const NumberField::Vec& a, const FieldPtr& fb, const NumberField::Vec& b);
// express an element of `from` inside `to`; `to` must contain `from`
NumberField::Vec embed(const FieldPtr& from, const NumberField::Vec& v, const FieldPtr& to);

// polynomial of a real algebraic sqrt: s with s^2 = r, s >= 0; returns
// (rational coefficient, radicand) with value coeff*sqrt(radicand),
// radicand == 1 meaning rational
std::pair<Rat, Int> split_sqrt(const Rat& r);

}  // namespace semilin
