#include "semilin/synth.hpp"

#include <numeric>
#include <stdexcept>

#include "semilin/scalar_io.hpp"

namespace semilin {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::ModGt1Real:
            return "ModGt1Real";
        case Provenance::ModGt1Complex:
            return "ModGt1Complex";
        case Provenance::ModLt1:
            return "ModLt1";
        case Provenance::RootOfUnityNonDiag:
            return "RootOfUnityNonDiag";
        case Provenance::Minimal:
            return "Minimal";
        case Provenance::Normalization:
            return "Normalization";
    }
    return "?";
}

std::string to_string(Verdict::Kind k) {
    switch (k) {
        case Verdict::Kind::Reach:
            return "REACH";
        case Verdict::Kind::InvariantExists:
            return "INVARIANT_EXISTS";
        case Verdict::Kind::NoInvariant:
            return "NO_INVARIANT";
        case Verdict::Kind::Unknown:
            return "UNKNOWN";
    }
    return "?";
}

namespace {

constexpr unsigned long kSearchCap = 1000000;

RealAlgebraic l1(const ComplexAlgebraic& v) { return abs(v.re) + abs(v.im); }
RVec cplx(const ComplexAlgebraic& v) { return {v.re, v.im}; }
RVec rot(const ComplexAlgebraic& l, const RVec& v) {
    return {l.re * v[0] - l.im * v[1], l.re * v[1] + l.im * v[0]};
}
RealAlgebraic modulus(const ComplexAlgebraic& z) { return z.is_real() ? abs(z.re) : sqrt(z.norm2()); }

const JordanBlock& checked_block(const NormalizedInstance& n, size_t block) {
    if (block >= n.blocks.size()) throw std::invalid_argument("block index out of range");
    const JordanBlock& b = n.blocks[block];
    if (n.inst.x[b.offset + b.size - 1].is_zero()) throw std::invalid_argument("last coordinate of x_J is 0");
    return b;
}

std::vector<Vector> jordan_orbit(const NormalizedInstance& n, unsigned long count) {
    std::vector<Vector> r;
    Vector z = n.inst.x;
    for (unsigned long i = 0; i < count; ++i) {
        r.push_back(z);
        if (i + 1 < count) z = jordan_apply(n.blocks, z);
    }
    return r;
}

SemilinearSet point_set(int d, const std::vector<Vector>& pts) {
    SemilinearSet s = SemilinearSet::empty(2 * d);
    for (const auto& p : pts) s.add(Polyhedron::point(realify(p)));
    return s;
}

std::string str(const RealAlgebraic& v) { return to_string(v); }

// 0 strictly inside and every constraint at distance >= sqrt(r2) from it
bool disc_inside(const Polyhedron& h, const RealAlgebraic& r2) {
    if (h.constraints.size() < 3) return false;
    for (const auto& c : h.constraints) {
        if (c.offset.sign() >= 0) return false;
        RealAlgebraic n2 = c.normal[0] * c.normal[0] + c.normal[1] * c.normal[1];
        if (c.offset * c.offset < r2 * n2) return false;
    }
    return true;
}

// least p with B(0, |lambda|^p u) inside conv{lambda^i u : i <= p}
unsigned long wrap_count(const ComplexAlgebraic& lam, const RealAlgebraic& u) {
    RealAlgebraic m2 = lam.norm2(), r2 = u * u;
    std::vector<RVec> pts{{u, RealAlgebraic(0)}};
    for (unsigned long p = 1; p < kSearchCap; ++p) {
        pts.push_back(rot(lam, pts.back()));
        r2 *= m2;
        if (p >= 2 && disc_inside(convex_hull(pts), r2)) return p;
    }
    throw std::runtime_error("small_stable_set: hull does not wrap");
}

Polyhedron plane_in(const Polyhedron& h, int d, int c) { return embed(h, {2 * c, 2 * c + 1}, 2 * d); }

bool conj_equivalent_pair(const std::vector<JordanBlock>& blocks) {
    for (size_t i = 0; i < blocks.size(); ++i)
        for (size_t j = i + 1; j < blocks.size(); ++j)
            if (ratio_order(blocks[i].eigenvalue, blocks[j].eigenvalue.conj())) return true;
    return false;
}

bool is_real(const Vector& v) {
    for (const auto& c : v)
        if (!c.is_real()) return false;
    return true;
}

SemilinearSet minimal_jnf(const Matrix& a, const Vector& x, const std::vector<JordanBlock>& blocks) {
    int d = a.rows();
    for (const auto& b : blocks) {
        int p = b.offset + b.size - 1;
        if (!x[p].is_zero()) continue;
        auto kept = coords_except(d, {p});
        SemilinearSet r = embed(minimal_invariant_nonequiv(sub_matrix(a, kept), sub_vector(x, kept)),
                                real_coords(kept), 2 * d);
        for (auto& q : r.polyhedra) pin(q, p, ComplexAlgebraic(0));
        return r;
    }
    for (size_t i = 0; i < blocks.size(); ++i)
        for (size_t j = i + 1; j < blocks.size(); ++j) {
            if (blocks[i].eigenvalue != blocks[j].eigenvalue) continue;
            // glue the smaller block's last coordinate to the larger one's
            const JordanBlock& b1 = blocks[i].size >= blocks[j].size ? blocks[i] : blocks[j];
            const JordanBlock& b2 = blocks[i].size >= blocks[j].size ? blocks[j] : blocks[i];
            int p1 = b1.offset + b1.size - 1, p2 = b2.offset + b2.size - 1;
            auto kept = coords_except(d, {p2});
            Matrix a2 = sub_matrix(a, kept);
            if (b2.size >= 2) {
                auto idx = [&](int c) { return static_cast<int>(std::find(kept.begin(), kept.end(), c) - kept.begin()); };
                a2(idx(p2 - 1), idx(p1)) += x[p2] / x[p1];
            }
            SemilinearSet r = embed(minimal_invariant_nonequiv(a2, sub_vector(x, kept)), real_coords(kept), 2 * d);
            // x_{p1} z_{p2} - x_{p2} z_{p1} = 0, real and imaginary parts
            ComplexAlgebraic c1 = x[p1], c2 = -x[p2], mi = -ComplexAlgebraic::I();
            RVec re = re_functional(d, p2, c1), im = re_functional(d, p2, mi * c1);
            RVec re2 = re_functional(d, p1, c2), im2 = re_functional(d, p1, mi * c2);
            for (size_t k = 0; k < re.size(); ++k) {
                re[k] += re2[k];
                im[k] += im2[k];
            }
            for (auto& q : r.polyhedra) {
                q.add_equality(re, 0);
                q.add_equality(im, 0);
            }
            return r;
        }
    return SemilinearSet::full(2 * d);
}

}  // namespace

// ---------------------------------------------------------------- |lambda| > 1

Certificate synth_mod_gt1(const NormalizedInstance& n, size_t block) {
    const JordanBlock& b = checked_block(n, block);
    const ComplexAlgebraic& lam = b.eigenvalue;
    if (!(lam.norm2() > RealAlgebraic(1))) throw std::invalid_argument("synth_mod_gt1: |lambda| <= 1");
    const auto& l = n.inst;
    int d = l.dim(), p = b.offset + b.size - 1;
    Certificate c;
    if (lam.is_real()) {
        RealAlgebraic thr = max(RealAlgebraic(2) * l1(l.y[p]), l1(l.x[p]) / RealAlgebraic(2));
        unsigned long n0 = 0;
        for (ComplexAlgebraic v = l.x[p]; !(l1(v) > thr); v *= lam) ++n0;
        c.invariant = point_set(d, jordan_orbit(n, n0));
        for (int s1 : {1, -1})
            for (int s2 : {1, -1}) {
                RVec nrm(2 * d);
                nrm[2 * p] = s1;
                nrm[2 * p + 1] = s2;
                c.invariant.add(Polyhedron{2 * d, {HalfSpace{nrm, thr, false}}});
            }
        c.provenance = Provenance::ModGt1Real;
        c.parameters["n0"] = std::to_string(n0);
        c.parameters["c"] = str(thr);
        return c;
    }
    RVec xp = cplx(l.x[p]), yp = cplx(l.y[p]);
    std::vector<RVec> pts;
    ComplexAlgebraic v = l.x[p];
    Polyhedron hull;
    unsigned long n0 = 1;
    for (;; ++n0) {
        if (n0 > kSearchCap) throw std::runtime_error("synth_mod_gt1: hull search exceeded");
        v *= lam;
        pts.push_back(cplx(v));
        if (n0 < 3) continue;
        hull = convex_hull(pts);
        if (interior_membership(hull, xp) && interior_membership(hull, yp)) break;
    }
    c.invariant = point_set(d, jordan_orbit(n, n0 + 1));
    for (const auto& h : hull.constraints) {
        Polyhedron outside{2, {HalfSpace{{-h.normal[0], -h.normal[1]}, -h.offset, false}}};
        c.invariant.add(plane_in(outside, d, p));
    }
    c.provenance = Provenance::ModGt1Complex;
    c.parameters["n0"] = std::to_string(n0);
    return c;
}

// ---------------------------------------------------------------- |lambda| < 1

SmallStableSet small_stable_set(int dJ, const ComplexAlgebraic& lam, const RealAlgebraic& eps) {
    if (dJ < 1) throw std::invalid_argument("small_stable_set: empty block");
    if (!(lam.norm2() < RealAlgebraic(1))) throw std::invalid_argument("small_stable_set: |lambda| >= 1");
    if (eps.sign() <= 0) throw std::invalid_argument("small_stable_set: eps <= 0");
    RealAlgebraic mod = modulus(lam), r = RealAlgebraic(1) - mod;
    SmallStableSet out;
    if (lam.is_real()) {
        Polyhedron box = Polyhedron::full(2 * dJ);
        RealAlgebraic bound = eps;
        for (int i = 0; i < dJ; ++i) {
            bound *= r;
            for (int s1 : {1, -1})
                for (int s2 : {1, -1}) {
                    RVec nrm(2 * dJ);
                    nrm[2 * i] = -s1;
                    nrm[2 * i + 1] = -s2;
                    box.add({nrm, -bound, false});
                }
        }
        out.set = SemilinearSet::of(box);
        out.inner = bound / RealAlgebraic(2);
        RealAlgebraic h = eps * r, z(0);
        out.hull = {{h, z}, {z, h}, {-h, z}, {z, -h}};
        return out;
    }
    if (dJ == 1) {
        unsigned long p = wrap_count(lam, eps);
        std::vector<RVec> pts{{eps, RealAlgebraic(0)}};
        for (unsigned long i = 1; i <= p; ++i) pts.push_back(rot(lam, pts.back()));
        RealAlgebraic alpha = eps;
        for (unsigned long i = 0; i < p; ++i) alpha *= mod;
        out.set = SemilinearSet::of(convex_hull(pts));
        out.hull = hull_vertices(pts);
        out.inner = alpha / RealAlgebraic(2);
        return out;
    }
    RealAlgebraic u = eps / RealAlgebraic(2);
    unsigned long p = wrap_count(lam, u);
    RealAlgebraic alpha = u;
    for (unsigned long i = 0; i < p; ++i) alpha *= mod;
    SmallStableSet sub = small_stable_set(dJ - 1, lam, alpha / RealAlgebraic(2) * r);

    // C_0 = {u}, C_{j+1} = lambda C_j + pi_1(sub)
    std::vector<RVec> cj{{u, RealAlgebraic(0)}};
    std::vector<RVec> seen = cj;
    for (unsigned long j = 1;; ++j) {
        if (j > kSearchCap) throw std::runtime_error("small_stable_set: hull search exceeded");
        std::vector<RVec> next;
        for (const auto& v : cj) {
            RVec w = rot(lam, v);
            for (const auto& h : sub.hull) next.push_back({w[0] + h[0], w[1] + h[1]});
        }
        cj = hull_vertices(next);
        if (j >= p + 1) {
            Polyhedron h = convex_hull(seen);
            bool inside = true;
            for (const auto& v : cj) inside = inside && h.contains(v);
            if (inside) break;
        }
        seen.insert(seen.end(), cj.begin(), cj.end());
        seen = hull_vertices(seen);
    }
    Polyhedron first = convex_hull(seen);
    std::vector<int> rest(2 * (dJ - 1));
    std::iota(rest.begin(), rest.end(), 2);
    Polyhedron prod = intersect(embed(first, {0, 1}, 2 * dJ), embed(sub.set.polyhedra.at(0), rest, 2 * dJ));
    out.set = SemilinearSet::of(prod);
    out.hull = seen;
    out.inner = min(alpha / RealAlgebraic(2), sub.inner);
    return out;
}

Certificate synth_mod_lt1(const NormalizedInstance& n, size_t block) {
    const JordanBlock& b = checked_block(n, block);
    if (!(b.eigenvalue.norm2() < RealAlgebraic(1))) throw std::invalid_argument("synth_mod_lt1: |lambda| >= 1");
    const auto& l = n.inst;
    int d = l.dim();
    auto J = block_coords(b);
    RVec yj = realify(sub_vector(l.y, J));
    if (is_zero(sub_vector(l.y, J))) throw std::invalid_argument("synth_mod_lt1: y_J = 0");
    RealAlgebraic eps = sup_norm(yj) / RealAlgebraic(2);
    SmallStableSet S = small_stable_set(b.size, b.eigenvalue, eps);
    std::vector<JordanBlock> one{{b.eigenvalue, b.size, 0}};
    Vector z = sub_vector(l.x, J);
    unsigned long n0 = 0;
    while (!membership(S.set, realify(z))) {
        if (++n0 > kSearchCap) throw std::runtime_error("synth_mod_lt1: orbit does not enter the set");
        z = jordan_apply(one, z);
    }
    Certificate c;
    c.invariant = point_set(d, jordan_orbit(n, n0));
    for (const auto& q : embed(S.set, real_coords(J), 2 * d).polyhedra) c.invariant.add(q);
    c.provenance = Provenance::ModLt1;
    c.parameters["n0"] = std::to_string(n0);
    c.parameters["eps"] = str(eps);
    c.parameters["eps_inner"] = str(S.inner);
    return c;
}

// ---------------------------------------------------------------- roots of unity

Certificate synth_rou_nondiag(const NormalizedInstance& n, size_t block) {
    const JordanBlock& b = checked_block(n, block);
    if (b.size < 2) throw std::invalid_argument("synth_rou_nondiag: diagonal block");
    auto ord = is_root_of_unity(b.eigenvalue);
    if (!ord) throw std::invalid_argument("synth_rou_nondiag: eigenvalue is not a root of unity");
    const auto& l = n.inst;
    const ComplexAlgebraic& lam = b.eigenvalue;
    int d = l.dim(), p = b.offset + b.size - 1, q = p - 1;
    auto form = [&](const Vector& z) { return (lam * z[q] * z[p].conj()).re; };
    RealAlgebraic target = form(l.y);
    unsigned long n0 = 0;
    Vector z = l.x;
    while (!(form(z) > target)) {
        if (++n0 > kSearchCap) throw std::runtime_error("synth_rou_nondiag: search exceeded");
        z = jordan_apply(n.blocks, z);
    }
    RealAlgebraic M = form(z);
    Certificate c;
    c.invariant = point_set(d, jordan_orbit(n, n0));
    ComplexAlgebraic v = l.x[p];
    for (unsigned long i = 0; i < *ord; ++i) {
        Polyhedron ray = Polyhedron::full(2 * d);
        pin(ray, p, v);
        ray.add({re_functional(d, q, lam * v.conj()), M, false});
        c.invariant.add(std::move(ray));
        v *= lam;
    }
    c.provenance = Provenance::RootOfUnityNonDiag;
    c.parameters["n0"] = std::to_string(n0);
    c.parameters["M"] = str(M);
    c.parameters["m"] = std::to_string(*ord);
    return c;
}

// ---------------------------------------------------------------- modulus 1

SemilinearSet minimal_invariant_nonequiv(const Matrix& a, const Vector& x) {
    int d = a.rows();
    if (d == 0) return SemilinearSet::full(0);
    auto blocks = jordan_structure(a);
    if (!blocks.empty()) return minimal_jnf(a, x, blocks);
    JordanForm jf = jordan_form(a);
    return preimage(minimal_jnf(jf.J(), jf.Q * x, jf.blocks), jf.Q);
}

SemilinearSet minimal_invariant_mod1(const NormalizedInstance& n) {
    for (const auto& b : n.blocks) {
        if (b.eigenvalue.norm2() != RealAlgebraic(1))
            throw std::invalid_argument("minimal_invariant_mod1: eigenvalue of modulus != 1");
        if (is_root_of_unity(b.eigenvalue))
            throw std::invalid_argument("minimal_invariant_mod1: root-of-unity eigenvalue");
    }
    unsigned long N = 1;
    for (size_t i = 0; i < n.blocks.size(); ++i)
        for (size_t j = i + 1; j < n.blocks.size(); ++j)
            if (auto o = ratio_order(n.blocks[i].eigenvalue, n.blocks[j].eigenvalue)) N = std::lcm(N, *o);
    const Matrix& A = n.inst.A;
    SemilinearSet base = minimal_invariant_nonequiv(power(A, N), n.inst.x);
    SemilinearSet r = base;
    Matrix P = A;
    for (unsigned long i = 1; i < N; ++i) {
        for (const auto& q : image_linear(base, P).polyhedra) r.add(q);
        P = A * P;
    }
    return r;
}

// ---------------------------------------------------------------- decide

Verdict decide(const OrbitInstance& l, unsigned long horizon) {
    l.validate();
    Verdict v;
    ReachResult rr = reach_bounded(l, horizon);
    if (rr.kind == ReachResult::Kind::Reach) {
        v.kind = Verdict::Kind::Reach;
        v.reach_n = rr.n;
        return v;
    }
    NormalizeResult nr = normalize(l, horizon);
    v.trace = nr.trace;
    const bool real = l.A.is_real() && is_real(l.x);

    auto accept = [&](Certificate c) {
        c.report = check_certificate({l.A}, l.x, l.y, c.invariant);
        if (!c.report->pass()) {
            v.kind = Verdict::Kind::Unknown;
            v.reason = "synthesized certificate (" + to_string(c.provenance) + ") failed the check";
        } else {
            v.kind = Verdict::Kind::InvariantExists;
        }
        v.certificate = std::move(c);
        return v;
    };
    auto refuse = [&](SemilinearSet I0, std::string why) {
        v.minimal = std::move(I0);
        if (!nr.trace.exact()) {
            v.kind = Verdict::Kind::Unknown;
            v.reason = why + "; a bounded search established part of the reduction";
        } else {
            v.kind = Verdict::Kind::NoInvariant;
            v.reason = std::move(why);
        }
        return v;
    };

    switch (nr.kind) {
        case NormalizeResult::Kind::Reach:
            v.kind = Verdict::Kind::Reach;
            v.reach_n = nr.reach_n;
            return v;
        case NormalizeResult::Kind::ImmediateYes: {
            Certificate c;
            c.invariant = nr.invariant;
            c.provenance = Provenance::Normalization;
            c.parameters["reason"] = nr.reason;
            return accept(std::move(c));
        }
        case NormalizeResult::Kind::ImmediateNo:
            return refuse(nr.invariant, nr.reason);
        case NormalizeResult::Kind::Normalized:
            break;
    }

    const NormalizedInstance& N = nr.normalized;
    std::optional<size_t> gt, lt, rou;
    for (size_t i = 0; i < N.blocks.size(); ++i) {
        Cmp m = compare(N.blocks[i].eigenvalue.norm2(), RealAlgebraic(1));
        if (m == Cmp::GT && !gt) gt = i;
        if (m == Cmp::LT && !lt) lt = i;
        if (m == Cmp::EQ && !rou && N.blocks[i].size >= 2 && is_root_of_unity(N.blocks[i].eigenvalue)) rou = i;
    }
    if (gt || lt || rou) {
        Certificate c;
        try {
            c = gt ? synth_mod_gt1(N, *gt) : lt ? synth_mod_lt1(N, *lt) : synth_rou_nondiag(N, *rou);
        } catch (const std::runtime_error& e) {
            v.kind = Verdict::Kind::Unknown;
            v.reason = e.what();
            return v;
        }
        c.invariant = pull_back(c.invariant, nr.trace);
        return accept(std::move(c));
    }

    if (!real && conj_equivalent_pair(N.blocks)) {
        v.kind = Verdict::Kind::Unknown;
        v.reason = "non-real instance with eigenvalues equivalent to conjugates of each other";
        return v;
    }
    SemilinearSet I0 = pull_back(minimal_invariant_mod1(N), nr.trace);
    if (real) I0 = intersect(I0, SemilinearSet::of(real_subspace(l.dim())));
    if (membership(I0, l.y)) return refuse(I0, "target lies in the minimal invariant");
    v.minimal = I0;
    Certificate c;
    c.invariant = I0;
    c.provenance = Provenance::Minimal;
    unsigned long Nn = 1;
    for (size_t i = 0; i < N.blocks.size(); ++i)
        for (size_t j = i + 1; j < N.blocks.size(); ++j)
            if (auto o = ratio_order(N.blocks[i].eigenvalue, N.blocks[j].eigenvalue)) Nn = std::lcm(Nn, *o);
    c.parameters["N"] = std::to_string(Nn);
    return accept(std::move(c));
}

}  // namespace semilin
