#include "semilin/semilinear.hpp"

#include <algorithm>
#include <stdexcept>

namespace semilin {

RVec realify(const Vector& v) {
    RVec r(2 * v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        r[2 * i] = v[i].re;
        r[2 * i + 1] = v[i].im;
    }
    return r;
}

Vector complexify(const RVec& v) {
    if (v.size() % 2) throw std::invalid_argument("complexify: odd length");
    Vector r(v.size() / 2);
    for (size_t i = 0; i < r.size(); ++i) r[i] = ComplexAlgebraic(v[2 * i], v[2 * i + 1]);
    return r;
}

RMatrix realify(const Matrix& a) {
    int r = a.rows(), c = a.cols();
    RMatrix m(2 * r, RVec(2 * c));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            const ComplexAlgebraic& z = a(i, j);
            m[2 * i][2 * j] = z.re;
            m[2 * i][2 * j + 1] = -z.im;
            m[2 * i + 1][2 * j] = z.im;
            m[2 * i + 1][2 * j + 1] = z.re;
        }
    return m;
}

RVec mat_vec(const RMatrix& m, const RVec& v) {
    RVec r(m.size());
    for (size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], v);
    return r;
}

bool HalfSpace::holds(const RVec& z) const {
    if (z.size() != normal.size()) throw std::invalid_argument("membership: dimension mismatch");
    int s = (dot(normal, z) - offset).sign();
    return strict ? s > 0 : s >= 0;
}

HalfSpace HalfSpace::negation() const {
    RVec n(normal.size());
    for (size_t i = 0; i < n.size(); ++i) n[i] = -normal[i];
    return {std::move(n), -offset, !strict};
}

bool operator==(const HalfSpace& a, const HalfSpace& b) {
    return a.strict == b.strict && a.offset == b.offset && a.normal == b.normal;
}

Polyhedron Polyhedron::point(const RVec& v) {
    int n = static_cast<int>(v.size());
    Polyhedron p{n, {}};
    for (int i = 0; i < n; ++i) {
        RVec e(n);
        e[i] = RealAlgebraic(1);
        p.add_equality(std::move(e), v[i]);
    }
    return p;
}

bool Polyhedron::contains(const RVec& z) const {
    return std::all_of(constraints.begin(), constraints.end(), [&](const HalfSpace& h) { return h.holds(z); });
}

bool Polyhedron::closed() const {
    return std::none_of(constraints.begin(), constraints.end(), [](const HalfSpace& h) { return h.strict; });
}

Polyhedron& Polyhedron::add(HalfSpace h) {
    if (static_cast<int>(h.normal.size()) != ambient) throw std::invalid_argument("half-space dimension mismatch");
    constraints.push_back(std::move(h));
    return *this;
}

Polyhedron& Polyhedron::add_equality(RVec normal, const RealAlgebraic& offset) {
    HalfSpace h{std::move(normal), offset, false};
    HalfSpace g = h.negation();
    g.strict = false;
    add(std::move(h));
    return add(std::move(g));
}

SemilinearSet SemilinearSet::points(int n, const std::vector<RVec>& pts) {
    SemilinearSet s = empty(n);
    for (const auto& p : pts) s.add(Polyhedron::point(p));
    return s;
}

bool SemilinearSet::closed() const {
    return std::all_of(polyhedra.begin(), polyhedra.end(), [](const Polyhedron& p) { return p.closed(); });
}

SemilinearSet& SemilinearSet::add(Polyhedron p) {
    if (p.ambient != ambient) throw std::invalid_argument("polyhedron dimension mismatch");
    polyhedra.push_back(std::move(p));
    return *this;
}

HalfSpace normalized(const HalfSpace& h) {
    for (const auto& v : h.normal)
        if (!v.is_zero()) {
            RealAlgebraic s = abs(v).inverse();
            if (s == RealAlgebraic(1)) return h;
            HalfSpace r = h;
            for (auto& c : r.normal)
                if (!c.is_zero()) c *= s;
            r.offset *= s;
            return r;
        }
    return h;
}

namespace {

Cmp compare_vec(const RVec& a, const RVec& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        Cmp c = compare(a[i], b[i]);
        if (c != Cmp::EQ) return c;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? Cmp::LT : Cmp::GT;
    return Cmp::EQ;
}

bool hs_less(const HalfSpace& a, const HalfSpace& b) {
    Cmp c = compare_vec(a.normal, b.normal);
    if (c != Cmp::EQ) return c == Cmp::LT;
    c = compare(a.offset, b.offset);
    if (c != Cmp::EQ) return c == Cmp::LT;
    return !a.strict && b.strict;
}

bool zero_normal(const RVec& v) {
    return std::all_of(v.begin(), v.end(), [](const RealAlgebraic& x) { return x.is_zero(); });
}

// 0 >= offset (or > when strict)
bool constant_holds(const HalfSpace& h) {
    int s = h.offset.sign();
    return h.strict ? s < 0 : s <= 0;
}

HalfSpace false_constraint(int n) { return HalfSpace{RVec(n), RealAlgebraic(1), false}; }

Polyhedron empty_polyhedron(int n) {
    Polyhedron p{n, {}};
    p.constraints.push_back(false_constraint(n));
    return p;
}

bool trivially_empty(const Polyhedron& p) {
    for (const auto& h : p.constraints)
        if (zero_normal(h.normal) && !constant_holds(h)) return true;
    return false;
}

}  // namespace

Polyhedron canonical(const Polyhedron& p) {
    Polyhedron r{p.ambient, {}};
    for (const auto& h : p.constraints) {
        if (zero_normal(h.normal)) {
            if (constant_holds(h)) continue;
            return empty_polyhedron(p.ambient);
        }
        r.constraints.push_back(normalized(h));
    }
    std::sort(r.constraints.begin(), r.constraints.end(), hs_less);
    r.constraints.erase(std::unique(r.constraints.begin(), r.constraints.end()), r.constraints.end());
    return r;
}

SemilinearSet canonical(const SemilinearSet& s) {
    SemilinearSet r = SemilinearSet::empty(s.ambient);
    for (const auto& p : s.polyhedra) {
        Polyhedron c = canonical(p);
        if (!trivially_empty(c)) r.polyhedra.push_back(std::move(c));
    }
    return r;
}

std::vector<LinCon> to_lincons(const Polyhedron& p) {
    std::vector<HalfSpace> hs;
    hs.reserve(p.constraints.size());
    for (const auto& h : p.constraints) hs.push_back(normalized(h));
    std::vector<bool> used(hs.size(), false);
    std::vector<LinCon> out;
    for (size_t i = 0; i < hs.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        if (!hs[i].strict) {
            HalfSpace neg = hs[i].negation();
            neg.strict = false;
            for (size_t j = i + 1; j < hs.size(); ++j)
                if (!used[j] && hs[j] == neg) {
                    used[j] = true;
                    out.push_back({hs[i].normal, hs[i].offset, Rel::EQ});
                    goto next;
                }
        }
        out.push_back({hs[i].normal, hs[i].offset, hs[i].strict ? Rel::GT : Rel::GE});
    next:;
    }
    return out;
}

bool membership(const SemilinearSet& s, const RVec& v) {
    if (static_cast<int>(v.size()) != s.ambient) throw std::invalid_argument("membership: dimension mismatch");
    return std::any_of(s.polyhedra.begin(), s.polyhedra.end(), [&](const Polyhedron& p) { return p.contains(v); });
}

bool membership(const SemilinearSet& s, const Vector& v) { return membership(s, realify(v)); }

std::optional<RVec> witness(const Polyhedron& p) { return lp_feasible(p.ambient, to_lincons(p)); }

bool is_empty(const Polyhedron& p) { return !witness(p); }

bool is_empty(const SemilinearSet& s) {
    return std::all_of(s.polyhedra.begin(), s.polyhedra.end(), [](const Polyhedron& p) { return is_empty(p); });
}

Polyhedron intersect(const Polyhedron& a, const Polyhedron& b) {
    if (a.ambient != b.ambient) throw std::invalid_argument("intersect: dimension mismatch");
    Polyhedron r = a;
    r.constraints.insert(r.constraints.end(), b.constraints.begin(), b.constraints.end());
    return r;
}

SemilinearSet intersect(const SemilinearSet& a, const SemilinearSet& b) {
    if (a.ambient != b.ambient) throw std::invalid_argument("intersect: dimension mismatch");
    SemilinearSet r = SemilinearSet::empty(a.ambient);
    for (const auto& p : a.polyhedra)
        for (const auto& q : b.polyhedra) r.polyhedra.push_back(intersect(p, q));
    return r;
}

SemilinearSet unite(const SemilinearSet& a, const SemilinearSet& b) {
    if (a.ambient != b.ambient) throw std::invalid_argument("unite: dimension mismatch");
    SemilinearSet r = a;
    r.polyhedra.insert(r.polyhedra.end(), b.polyhedra.begin(), b.polyhedra.end());
    return r;
}

Polyhedron embed(const Polyhedron& p, const std::vector<int>& coords, int ambient) {
    if (static_cast<int>(coords.size()) != p.ambient) throw std::invalid_argument("embed: coordinate map mismatch");
    Polyhedron r{ambient, {}};
    for (const auto& h : p.constraints) {
        RVec n(ambient);
        for (size_t i = 0; i < coords.size(); ++i) n[coords[i]] = h.normal[i];
        r.constraints.push_back({std::move(n), h.offset, h.strict});
    }
    return r;
}

SemilinearSet embed(const SemilinearSet& s, const std::vector<int>& coords, int ambient) {
    SemilinearSet r = SemilinearSet::empty(ambient);
    for (const auto& p : s.polyhedra) r.polyhedra.push_back(embed(p, coords, ambient));
    return r;
}

SemilinearSet product(const SemilinearSet& a, const SemilinearSet& b) {
    int n = a.ambient + b.ambient;
    std::vector<int> ca(a.ambient), cb(b.ambient);
    for (int i = 0; i < a.ambient; ++i) ca[i] = i;
    for (int i = 0; i < b.ambient; ++i) cb[i] = a.ambient + i;
    return intersect(embed(a, ca, n), embed(b, cb, n));
}

Polyhedron preimage(const Polyhedron& p, const RMatrix& m) {
    if (static_cast<int>(m.size()) != p.ambient) throw std::invalid_argument("preimage: dimension mismatch");
    int cols = m.empty() ? 0 : static_cast<int>(m[0].size());
    Polyhedron r{cols, {}};
    for (const auto& h : p.constraints) {
        RVec n(cols);
        for (size_t i = 0; i < m.size(); ++i) {
            if (h.normal[i].is_zero()) continue;
            for (int j = 0; j < cols; ++j)
                if (!m[i][j].is_zero()) n[j] += h.normal[i] * m[i][j];
        }
        r.constraints.push_back({std::move(n), h.offset, h.strict});
    }
    return r;
}

SemilinearSet preimage(const SemilinearSet& s, const RMatrix& m) {
    int cols = m.empty() ? 0 : static_cast<int>(m[0].size());
    SemilinearSet r = SemilinearSet::empty(cols);
    for (const auto& p : s.polyhedra) r.polyhedra.push_back(preimage(p, m));
    return r;
}

SemilinearSet preimage(const SemilinearSet& s, const Matrix& a) { return preimage(s, realify(a)); }

namespace {

std::optional<RMatrix> real_inverse(const RMatrix& m) {
    int n = static_cast<int>(m.size());
    if (n == 0 || static_cast<int>(m[0].size()) != n) return std::nullopt;
    Matrix c(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c(i, j) = m[i][j];
    if (!is_invertible(c)) return std::nullopt;
    Matrix inv = inverse(c);
    RMatrix r(n, RVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i][j] = inv(i, j).re;
    return r;
}

}  // namespace

SemilinearSet image_linear(const SemilinearSet& s, const RMatrix& m) {
    if (auto inv = real_inverse(m)) return preimage(s, *inv);
    int rows = static_cast<int>(m.size());
    int cols = rows ? static_cast<int>(m[0].size()) : 0;
    if (cols != s.ambient) throw std::invalid_argument("image_linear: dimension mismatch");
    // lift to (z, w) with w = M z, then eliminate z
    std::vector<int> zc(cols), keep(rows);
    for (int j = 0; j < cols; ++j) zc[j] = j;
    for (int i = 0; i < rows; ++i) keep[i] = cols + i;
    SemilinearSet r = SemilinearSet::empty(rows);
    for (const auto& p : s.polyhedra) {
        Polyhedron lifted = embed(p, zc, cols + rows);
        for (int i = 0; i < rows; ++i) {
            RVec n(cols + rows);
            for (int j = 0; j < cols; ++j) n[j] = -m[i][j];
            n[cols + i] = RealAlgebraic(1);
            lifted.add_equality(std::move(n), RealAlgebraic(0));
        }
        Polyhedron q = project(lifted, keep);
        if (!trivially_empty(q)) r.polyhedra.push_back(std::move(q));
    }
    return r;
}

SemilinearSet image_linear(const SemilinearSet& s, const Matrix& a) { return image_linear(s, realify(a)); }

namespace {

LinCon negate(const LinCon& c) {
    LinCon r;
    r.a.resize(c.a.size());
    for (size_t i = 0; i < c.a.size(); ++i) r.a[i] = -c.a[i];
    r.b = -c.b;
    r.rel = c.rel == Rel::GE ? Rel::GT : Rel::GE;
    return r;
}

class Cover {
public:
    Cover(int n, const SemilinearSet& s) : n_(n) {
        for (const auto& q : s.polyhedra) qs_.push_back(to_lincons(q));
    }

    // a point satisfying cons and outside every Q (from index k), or nothing
    std::optional<RVec> outside(std::vector<LinCon>& cons, size_t k) {
        while (k < qs_.size()) {
            const auto& q = qs_[k];
            if (q.empty()) return std::nullopt;
            size_t base = cons.size();
            cons.insert(cons.end(), q.begin(), q.end());
            bool meets = lp_feasible(n_, cons).has_value();
            cons.resize(base);
            if (meets) break;
            ++k;
        }
        if (k == qs_.size()) return lp_feasible(n_, cons);
        size_t base = cons.size();
        for (const auto& c : qs_[k]) {
            std::vector<LinCon> branches;
            if (c.rel == Rel::EQ) {
                branches.push_back(LinCon{c.a, c.b, Rel::GT});
                branches.push_back(negate(LinCon{c.a, c.b, Rel::GE}));
            } else {
                branches.push_back(negate(c));
            }
            for (auto& br : branches) {
                cons.push_back(br);
                if (lp_feasible(n_, cons)) {
                    auto w = outside(cons, k + 1);
                    if (w) {
                        cons.pop_back();
                        return w;
                    }
                }
                cons.pop_back();
            }
            // later branches may assume this constraint holds
            cons.push_back(c);
            bool ok = lp_feasible(n_, cons).has_value();
            if (!ok) break;
        }
        cons.resize(base);
        return std::nullopt;
    }

private:
    int n_;
    std::vector<std::vector<LinCon>> qs_;
};

}  // namespace

SubsetResult subset(const Polyhedron& p, const SemilinearSet& s) {
    if (p.ambient != s.ambient) throw std::invalid_argument("subset: dimension mismatch");
    std::vector<LinCon> cons = to_lincons(p);
    if (!lp_feasible(p.ambient, cons)) return {};
    Cover cov(p.ambient, s);
    auto w = cov.outside(cons, 0);
    if (!w) return {};
    return {false, w};
}

SubsetResult subset(const SemilinearSet& a, const SemilinearSet& b) {
    for (const auto& p : a.polyhedra) {
        SubsetResult r = subset(p, b);
        if (!r.holds) return r;
    }
    return {};
}

bool set_equal(const SemilinearSet& a, const SemilinearSet& b) { return subset(a, b).holds && subset(b, a).holds; }

StabilityResult is_stable(const SemilinearSet& s, const RMatrix& m) {
    SemilinearSet pre = preimage(s, m);
    for (const auto& p : s.polyhedra) {
        SubsetResult r = subset(p, pre);
        if (!r.holds) return {false, r.witness};
    }
    return {};
}

StabilityResult is_stable(const SemilinearSet& s, const Matrix& a) { return is_stable(s, realify(a)); }

namespace {

struct FmCon {
    RVec a;
    RealAlgebraic b;
    Rel rel;
};

FmCon combine(const FmCon& p, const FmCon& q, int j) {
    // p has a_j > 0, q has a_j < 0
    RealAlgebraic fp = -q.a[j], fq = p.a[j];
    FmCon r{RVec(p.a.size()), fp * p.b + fq * q.b, (p.rel == Rel::GT || q.rel == Rel::GT) ? Rel::GT : Rel::GE};
    for (size_t i = 0; i < p.a.size(); ++i) {
        if (static_cast<int>(i) == j) continue;
        RealAlgebraic v;
        if (!p.a[i].is_zero()) v += fp * p.a[i];
        if (!q.a[i].is_zero()) v += fq * q.a[i];
        r.a[i] = v;
    }
    return r;
}

std::vector<LinCon> as_lincons(const std::vector<FmCon>& v) {
    std::vector<LinCon> out;
    for (const auto& c : v) out.push_back({c.a, c.b, c.rel});
    return out;
}

// drop duplicates and constraints implied by the others
bool simplify(std::vector<FmCon>& cs, int n, bool lp_prune) {
    std::vector<FmCon> out;
    for (auto& c : cs) {
        if (zero_normal(c.a)) {
            int s = c.b.sign();
            bool ok = c.rel == Rel::EQ ? s == 0 : (c.rel == Rel::GT ? s < 0 : s <= 0);
            if (!ok) return false;
            continue;
        }
        HalfSpace h = normalized(HalfSpace{c.a, c.b, c.rel == Rel::GT});
        FmCon nc{h.normal, h.offset, c.rel};
        bool dup = false;
        for (const auto& o : out)
            if (o.rel == nc.rel && o.b == nc.b && o.a == nc.a) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(std::move(nc));
    }
    if (lp_prune) {
        for (size_t i = 0; i < out.size();) {
            if (out[i].rel == Rel::EQ) {
                ++i;
                continue;
            }
            std::vector<FmCon> rest = out;
            rest.erase(rest.begin() + i);
            std::vector<LinCon> test = as_lincons(rest);
            test.push_back(negate(LinCon{out[i].a, out[i].b, out[i].rel}));
            if (!lp_feasible(n, test))
                out.erase(out.begin() + i);
            else
                ++i;
        }
    }
    cs = std::move(out);
    return true;
}

}  // namespace

Polyhedron project(const Polyhedron& p, const std::vector<int>& keep) {
    int n = p.ambient;
    std::vector<bool> kept(n, false);
    for (int k : keep) {
        if (k < 0 || k >= n) throw std::invalid_argument("project: coordinate out of range");
        kept[k] = true;
    }
    int m = static_cast<int>(keep.size());
    std::vector<FmCon> cs;
    for (const auto& c : to_lincons(p)) cs.push_back({c.a, c.b, c.rel});
    if (!simplify(cs, n, false)) return empty_polyhedron(m);
    for (int j = 0; j < n; ++j) {
        if (kept[j]) continue;
        int eq = -1;
        for (size_t i = 0; i < cs.size(); ++i)
            if (cs[i].rel == Rel::EQ && !cs[i].a[j].is_zero()) {
                eq = static_cast<int>(i);
                break;
            }
        std::vector<FmCon> next;
        if (eq >= 0) {
            FmCon e = cs[eq];
            for (size_t i = 0; i < cs.size(); ++i) {
                if (static_cast<int>(i) == eq) continue;
                FmCon c = cs[i];
                if (!c.a[j].is_zero()) {
                    RealAlgebraic f = c.a[j] / e.a[j];
                    for (int t = 0; t < n; ++t)
                        if (!e.a[t].is_zero()) c.a[t] -= f * e.a[t];
                    c.b -= f * e.b;
                    c.a[j] = RealAlgebraic();
                }
                next.push_back(std::move(c));
            }
        } else {
            std::vector<FmCon> pos, neg;
            for (auto& c : cs) {
                int s = c.a[j].sign();
                if (s > 0)
                    pos.push_back(c);
                else if (s < 0)
                    neg.push_back(c);
                else
                    next.push_back(c);
            }
            for (const auto& a : pos)
                for (const auto& b : neg) next.push_back(combine(a, b, j));
        }
        cs = std::move(next);
        if (!simplify(cs, n, cs.size() > static_cast<size_t>(2 * n + 4))) return empty_polyhedron(m);
    }
    if (!simplify(cs, n, true)) return empty_polyhedron(m);
    Polyhedron r{m, {}};
    for (const auto& c : cs) {
        RVec a(m);
        for (int i = 0; i < m; ++i) a[i] = c.a[keep[i]];
        if (c.rel == Rel::EQ)
            r.add_equality(a, c.b);
        else
            r.add({a, c.b, c.rel == Rel::GT});
    }
    if (auto w = lp_feasible(m, to_lincons(r)); !w) return empty_polyhedron(m);
    return r;
}

SemilinearSet project(const SemilinearSet& s, const std::vector<int>& keep) {
    SemilinearSet r = SemilinearSet::empty(static_cast<int>(keep.size()));
    for (const auto& p : s.polyhedra) {
        Polyhedron q = project(p, keep);
        if (!trivially_empty(q)) r.polyhedra.push_back(std::move(q));
    }
    return r;
}

SemilinearSet section(const SemilinearSet& s, const std::map<int, RealAlgebraic>& t) {
    int n = s.ambient;
    std::vector<int> rest;
    for (int i = 0; i < n; ++i)
        if (!t.count(i)) rest.push_back(i);
    for (const auto& [k, v] : t)
        if (k < 0 || k >= n) throw std::invalid_argument("section: coordinate out of range");
    int m = static_cast<int>(rest.size());
    SemilinearSet r = SemilinearSet::empty(m);
    for (const auto& p : s.polyhedra) {
        Polyhedron q{m, {}};
        bool empty = false;
        for (const auto& h : p.constraints) {
            RealAlgebraic b = h.offset;
            for (const auto& [k, v] : t)
                if (!h.normal[k].is_zero()) b -= h.normal[k] * v;
            RVec a(m);
            for (int i = 0; i < m; ++i) a[i] = h.normal[rest[i]];
            HalfSpace g{std::move(a), b, h.strict};
            if (zero_normal(g.normal)) {
                if (!constant_holds(g)) {
                    empty = true;
                    break;
                }
                continue;
            }
            q.constraints.push_back(std::move(g));
        }
        if (!empty) r.polyhedra.push_back(std::move(q));
    }
    return r;
}

Polyhedron real_subspace(int d) {
    Polyhedron p = Polyhedron::full(2 * d);
    for (int j = 0; j < d; ++j) {
        RVec e(2 * d);
        e[2 * j + 1] = 1;
        p.add_equality(e, 0);
    }
    return p;
}

SemilinearSet from_real(const SemilinearSet& s) {
    int d = s.ambient;
    std::vector<int> coords;
    for (int j = 0; j < d; ++j) coords.push_back(2 * j);
    SemilinearSet e = embed(s, coords, 2 * d);
    return intersect(e, SemilinearSet::of(real_subspace(d)));
}

RealAlgebraic sup_norm(const RVec& v) {
    RealAlgebraic m;
    for (const auto& x : v) m = max(m, abs(x));
    return m;
}

std::optional<RVec> bounded_witness(const SemilinearSet& s) {
    int n = s.ambient;
    std::optional<RVec> best;
    RealAlgebraic best_norm;
    for (const auto& p : s.polyhedra) {
        std::vector<LinCon> cons = to_lincons(p);
        if (!lp_feasible(n, cons)) continue;
        // minimize t with -t <= z_i <= t over the closure
        std::vector<LinCon> ext;
        for (const auto& c : cons) {
            LinCon e = c;
            e.a.push_back(RealAlgebraic());
            if (e.rel == Rel::GT) e.rel = Rel::GE;
            ext.push_back(std::move(e));
        }
        for (int i = 0; i < n; ++i) {
            RVec a(n + 1), b(n + 1);
            a[i] = RealAlgebraic(-1);
            a[n] = RealAlgebraic(1);
            b[i] = RealAlgebraic(1);
            b[n] = RealAlgebraic(1);
            ext.push_back({a, RealAlgebraic(), Rel::GE});
            ext.push_back({b, RealAlgebraic(), Rel::GE});
        }
        RVec obj(n + 1);
        obj[n] = RealAlgebraic(-1);
        LpResult lr = lp_maximize(n + 1, ext, obj);
        RVec pt(lr.point.begin(), lr.point.begin() + n);
        if (!p.contains(pt)) {
            // strict constraints: take a feasible point within the optimal norm plus one
            RealAlgebraic bound = -lr.value + RealAlgebraic(1);
            std::vector<LinCon> near = cons;
            for (int i = 0; i < n; ++i) {
                RVec a(n), b(n);
                a[i] = RealAlgebraic(-1);
                b[i] = RealAlgebraic(1);
                near.push_back({a, -bound, Rel::GE});
                near.push_back({b, -bound, Rel::GE});
            }
            auto w = lp_feasible(n, near);
            if (!w) continue;
            pt = *w;
        }
        RealAlgebraic nm = sup_norm(pt);
        if (!best || nm < best_norm) {
            best = pt;
            best_norm = nm;
        }
    }
    return best;
}

namespace {

RealAlgebraic cross(const RVec& o, const RVec& a, const RVec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

}  // namespace

std::vector<RVec> hull_vertices(const std::vector<RVec>& points) {
    if (points.empty()) throw std::invalid_argument("convex_hull: no points");
    for (const auto& p : points)
        if (p.size() != 2) throw std::invalid_argument("convex_hull: only planar hulls are supported");
    std::vector<RVec> pts = points;
    std::sort(pts.begin(), pts.end(), [](const RVec& a, const RVec& b) { return compare_vec(a, b) == Cmp::LT; });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() == 1) return pts;
    std::vector<RVec> h;
    for (int pass = 0; pass < 2; ++pass) {
        size_t start = h.size();
        for (const auto& p : pts) {
            while (h.size() >= start + 2 && cross(h[h.size() - 2], h.back(), p).sign() <= 0) h.pop_back();
            h.push_back(p);
        }
        h.pop_back();
        std::reverse(pts.begin(), pts.end());
    }
    return h;
}

Polyhedron convex_hull(const std::vector<RVec>& points) {
    std::vector<RVec> h = hull_vertices(points);
    if (h.size() == 1) return Polyhedron::point(h[0]);
    Polyhedron r{2, {}};
    if (h.size() == 2) {
        const RVec &p = h[0], &q = h[1];
        RVec d{q[0] - p[0], q[1] - p[1]};
        RVec nrm{-d[1], d[0]};
        r.add_equality(nrm, dot(nrm, p));
        r.add({d, dot(d, p), false});
        r.add({RVec{-d[0], -d[1]}, -dot(d, q), false});
        return r;
    }
    for (size_t i = 0; i < h.size(); ++i) {
        const RVec &p = h[i], &q = h[(i + 1) % h.size()];
        RVec nrm{p[1] - q[1], q[0] - p[0]};
        r.add({nrm, dot(nrm, p), false});
    }
    return r;
}

bool interior_membership(const Polyhedron& p, const RVec& v) {
    if (static_cast<int>(v.size()) != p.ambient) throw std::invalid_argument("interior_membership: dimension mismatch");
    for (const auto& h : p.constraints) {
        if (zero_normal(h.normal)) {
            if (!constant_holds(h)) return false;
            continue;
        }
        if ((dot(h.normal, v) - h.offset).sign() <= 0) return false;
    }
    return true;
}

int dimension(const Polyhedron& p) {
    int n = p.ambient;
    std::vector<LinCon> cons = to_lincons(p);
    if (!lp_feasible(n, cons)) return -1;
    std::vector<RVec> eqs;
    for (size_t i = 0; i < cons.size(); ++i) {
        if (cons[i].rel == Rel::EQ) {
            eqs.push_back(cons[i].a);
            continue;
        }
        if (cons[i].rel == Rel::GT) continue;
        std::vector<LinCon> t = cons;
        t[i].rel = Rel::GT;
        if (!lp_feasible(n, t)) eqs.push_back(cons[i].a);
    }
    if (eqs.empty()) return n;
    Matrix m(static_cast<int>(eqs.size()), n);
    for (size_t i = 0; i < eqs.size(); ++i)
        for (int j = 0; j < n; ++j) m(static_cast<int>(i), j) = eqs[i][j];
    return n - rank(m);
}

int dimension(const SemilinearSet& s) {
    int d = -1;
    for (const auto& p : s.polyhedra) d = std::max(d, dimension(p));
    return d;
}

SemilinearSet closure(const SemilinearSet& s) {
    SemilinearSet r = SemilinearSet::empty(s.ambient);
    for (const auto& p : s.polyhedra) {
        if (is_empty(p)) continue;
        Polyhedron q = p;
        for (auto& h : q.constraints) h.strict = false;
        r.polyhedra.push_back(std::move(q));
    }
    return r;
}

RVec re_functional(int d, int j, const ComplexAlgebraic& c) {
    RVec r(2 * d);
    r[2 * j] = c.re;
    r[2 * j + 1] = -c.im;
    return r;
}

}  // namespace semilin
