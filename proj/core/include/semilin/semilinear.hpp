#pragma once

#include <map>
#include <optional>
#include <vector>

#include "semilin/exactlin.hpp"
#include "semilin/lp.hpp"

namespace semilin {

// C^d is identified with R^{2d} as (Re z1, Im z1, Re z2, ...).
using RMatrix = std::vector<RVec>;

RVec realify(const Vector& v);
Vector complexify(const RVec& v);
RMatrix realify(const Matrix& a);
RVec mat_vec(const RMatrix& m, const RVec& v);

// normal . z >= offset, or > when strict
struct HalfSpace {
    RVec normal;
    RealAlgebraic offset;
    bool strict = false;

    bool holds(const RVec& z) const;
    HalfSpace negation() const;
};

bool operator==(const HalfSpace& a, const HalfSpace& b);

struct Polyhedron {
    int ambient = 0;
    std::vector<HalfSpace> constraints;  // empty = whole space

    static Polyhedron full(int n) { return Polyhedron{n, {}}; }
    static Polyhedron point(const RVec& v);

    bool contains(const RVec& z) const;
    bool closed() const;
    Polyhedron& add(HalfSpace h);
    Polyhedron& add_equality(RVec normal, const RealAlgebraic& offset);
};

struct SemilinearSet {
    int ambient = 0;
    std::vector<Polyhedron> polyhedra;  // empty = empty set

    static SemilinearSet empty(int n) { return SemilinearSet{n, {}}; }
    static SemilinearSet full(int n) { return SemilinearSet{n, {Polyhedron::full(n)}}; }
    static SemilinearSet of(Polyhedron p) {
        int n = p.ambient;
        return SemilinearSet{n, {std::move(p)}};
    }
    // finite point set, one equality polyhedron per point
    static SemilinearSet points(int n, const std::vector<RVec>& pts);

    bool closed() const;
    SemilinearSet& add(Polyhedron p);
};

// first nonzero normal coefficient scaled to +-1
HalfSpace normalized(const HalfSpace& h);
Polyhedron canonical(const Polyhedron& p);
SemilinearSet canonical(const SemilinearSet& s);

std::vector<LinCon> to_lincons(const Polyhedron& p);

bool membership(const SemilinearSet& s, const RVec& v);
bool membership(const SemilinearSet& s, const Vector& v);
bool is_empty(const Polyhedron& p);
std::optional<RVec> witness(const Polyhedron& p);
bool is_empty(const SemilinearSet& s);

Polyhedron intersect(const Polyhedron& a, const Polyhedron& b);
SemilinearSet intersect(const SemilinearSet& a, const SemilinearSet& b);
SemilinearSet unite(const SemilinearSet& a, const SemilinearSet& b);
// a over its coordinates times b over the following ones
SemilinearSet product(const SemilinearSet& a, const SemilinearSet& b);
// coordinate i of p becomes coordinate coords[i] of an ambient-dimensional space
Polyhedron embed(const Polyhedron& p, const std::vector<int>& coords, int ambient);
SemilinearSet embed(const SemilinearSet& s, const std::vector<int>& coords, int ambient);

// {z : M z in S}
Polyhedron preimage(const Polyhedron& p, const RMatrix& m);
SemilinearSet preimage(const SemilinearSet& s, const RMatrix& m);
SemilinearSet preimage(const SemilinearSet& s, const Matrix& a);
// {M z : z in S}
SemilinearSet image_linear(const SemilinearSet& s, const RMatrix& m);
SemilinearSet image_linear(const SemilinearSet& s, const Matrix& a);

struct SubsetResult {
    bool holds = true;
    std::optional<RVec> witness;  // point of P outside S
};
SubsetResult subset(const Polyhedron& p, const SemilinearSet& s);
SubsetResult subset(const SemilinearSet& a, const SemilinearSet& b);
bool set_equal(const SemilinearSet& a, const SemilinearSet& b);

struct StabilityResult {
    bool stable = true;
    std::optional<RVec> counterexample;  // v in S with M v outside S
};
StabilityResult is_stable(const SemilinearSet& s, const RMatrix& m);
StabilityResult is_stable(const SemilinearSet& s, const Matrix& a);

// Fourier-Motzkin projection onto the kept coordinates, in the order given
Polyhedron project(const Polyhedron& p, const std::vector<int>& keep);
SemilinearSet project(const SemilinearSet& s, const std::vector<int>& keep);
// substitute assigned coordinates; the result lives on the remaining ones
SemilinearSet section(const SemilinearSet& s, const std::map<int, RealAlgebraic>& t);

std::optional<RVec> bounded_witness(const SemilinearSet& s);

// planar hull; every point has 2 coordinates; throws std::invalid_argument otherwise
Polyhedron convex_hull(const std::vector<RVec>& points);
// hull vertices in counterclockwise order
std::vector<RVec> hull_vertices(const std::vector<RVec>& points);
bool interior_membership(const Polyhedron& p, const RVec& v);

int dimension(const Polyhedron& p);  // -1 when empty
int dimension(const SemilinearSet& s);
SemilinearSet closure(const SemilinearSet& s);

// {z in C^d : Im z = 0}
Polyhedron real_subspace(int d);
// a set of R^d viewed inside C^d (imaginary parts zero)
SemilinearSet from_real(const SemilinearSet& s);

RealAlgebraic sup_norm(const RVec& v);
// real normal of z -> Re(c * z_j) on C^d
RVec re_functional(int d, int j, const ComplexAlgebraic& c);

}  // namespace semilin
