#include "semilin/normalize.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "semilin/scalar_io.hpp"

namespace semilin {

unsigned long default_horizon() {
    if (const char* s = std::getenv("SEMILIN_HORIZON")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(s, &end, 10);
        if (end != s && *end == '\0') return v;
    }
    return kDefaultHorizon;
}

std::vector<int> real_coords(const std::vector<int>& complex_coords) {
    std::vector<int> r;
    r.reserve(2 * complex_coords.size());
    for (int c : complex_coords) {
        r.push_back(2 * c);
        r.push_back(2 * c + 1);
    }
    return r;
}

std::vector<int> block_coords(const JordanBlock& b) {
    std::vector<int> r(b.size);
    std::iota(r.begin(), r.end(), b.offset);
    return r;
}

std::vector<int> coords_except(int d, const std::vector<int>& drop) {
    std::vector<int> r;
    for (int i = 0; i < d; ++i)
        if (std::find(drop.begin(), drop.end(), i) == drop.end()) r.push_back(i);
    return r;
}

Vector sub_vector(const Vector& v, const std::vector<int>& keep) {
    Vector r;
    r.reserve(keep.size());
    for (int i : keep) r.push_back(v[i]);
    return r;
}

Matrix sub_matrix(const Matrix& a, const std::vector<int>& keep) {
    int m = static_cast<int>(keep.size());
    Matrix r(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) r(i, j) = a(keep[i], keep[j]);
    return r;
}

OrbitInstance restrict_instance(const OrbitInstance& l, const std::vector<int>& keep) {
    return {sub_matrix(l.A, keep), sub_vector(l.x, keep), sub_vector(l.y, keep)};
}

void pin(Polyhedron& p, int c, const ComplexAlgebraic& v) {
    RVec e(p.ambient), f(p.ambient);
    e[2 * c] = 1;
    f[2 * c + 1] = 1;
    p.add_equality(e, v.re);
    p.add_equality(f, v.im);
}

Vector jordan_apply(const std::vector<JordanBlock>& blocks, const Vector& z) {
    Vector r(z.size());
    for (const auto& b : blocks)
        for (int i = b.offset; i < b.offset + b.size; ++i) {
            r[i] = b.eigenvalue * z[i];
            if (i + 1 < b.offset + b.size) r[i] += z[i + 1];
        }
    return r;
}

std::vector<JordanBlock> jnf_blocks(const Matrix& a) {
    if (a.rows() == 0) return {};
    auto b = jordan_structure(a);
    if (b.empty()) throw std::logic_error("matrix is not in Jordan normal form");
    return b;
}

// ---------------------------------------------------------------- reach

HitAnalysis orbit_hits(const OrbitInstance& l, const std::vector<JordanBlock>& blocks, unsigned long horizon,
                       bool first_only) {
    HitAnalysis r;
    if (l.dim() == 0) {
        r.hits = {0};
        r.exact = r.infinite = true;
        return r;
    }
    const unsigned long beyond = horizon + 2;  // a bound that cannot be reached by the search
    std::optional<unsigned long> bound;
    auto cap = [&](unsigned long b) { bound = bound ? std::min(*bound, b) : b; };
    auto never = [&] {
        r.hits.clear();
        r.exact = true;
        return r;
    };
    unsigned long pre = 0, period = 1;
    bool periodic = true, single = false;

    for (const auto& b : blocks) {
        int o = b.offset, s = b.size;
        int p = -1;
        for (int i = 0; i < s; ++i)
            if (!l.x[o + i].is_zero()) p = i;
        for (int i = p + 1; i < s; ++i)
            if (!l.y[o + i].is_zero()) return never();
        if (p < 0) continue;
        bool yzero = true;
        for (int i = 0; i < s; ++i) yzero = yzero && l.y[o + i].is_zero();
        const ComplexAlgebraic& lam = b.eigenvalue;
        if (lam.is_zero()) {
            if (!yzero)
                cap(p + 1);
            else
                pre = std::max(pre, static_cast<unsigned long>(p + 1));
            continue;
        }
        RealAlgebraic m2 = modulus_squared(lam);
        RealAlgebraic a = modulus_squared(l.x[o + p]), c = modulus_squared(l.y[o + p]);
        Cmp cm = compare(m2, RealAlgebraic(1));
        if (cm != Cmp::EQ) {
            // |lambda^n x_p|^2 is strictly monotone in n
            periodic = false;
            if (cm == Cmp::LT && c.is_zero()) return never();
            unsigned long n = 0;
            RealAlgebraic cur = a;
            while (n <= horizon && (cm == Cmp::GT ? cur <= c : cur >= c)) {
                cur *= m2;
                ++n;
            }
            cap(n <= horizon ? n : beyond);
            continue;
        }
        if (a != c) return never();
        if (p >= 1) {
            // |(A^n x)_{p-1}| >= n |x_p| - |x_{p-1}|
            periodic = false;
            RealAlgebraic q = (sqrt(modulus_squared(l.x[o + p - 1])) + sqrt(modulus_squared(l.y[o + p - 1]))) / sqrt(a);
            Rat f = q.floor_rat();
            cap(f < Rat(static_cast<long>(horizon)) ? f.get_num().get_ui() + 1 : beyond);
            continue;
        }
        if (auto ord = is_root_of_unity(lam))
            period = std::lcm(period, *ord);
        else {
            periodic = false;
            single = true;  // lambda^n = y_p / x_p for at most one n
        }
    }

    unsigned long limit;
    if (bound) {
        limit = *bound;
    } else if (periodic) {
        limit = pre + period;
    } else {
        limit = beyond;
    }
    r.exact = limit <= horizon + 1;
    limit = std::min(limit, horizon + 1);
    Vector z = l.x;
    for (unsigned long n = 0; n < limit; ++n) {
        if (z == l.y) {
            r.hits.push_back(n);
            if (first_only) break;
        }
        if (n + 1 < limit) z = jordan_apply(blocks, z);
    }
    if (!bound && periodic && r.exact) r.infinite = !r.hits.empty() && r.hits.back() >= pre;
    if (single && !r.hits.empty()) r.exact = true;
    return r;
}

ReachResult reach_bounded(const OrbitInstance& l, unsigned long horizon) {
    l.validate();
    OrbitInstance j = l;
    std::vector<JordanBlock> blocks;
    if (l.dim() > 0) {
        blocks = jordan_structure(l.A);
        if (blocks.empty()) {
            JordanForm jf = jordan_form(l.A);
            j = conjugate_instance(l, jf.Q, jf.Qinv);
            blocks = jf.blocks;
        }
    }
    HitAnalysis h = orbit_hits(j, blocks, horizon, true);
    ReachResult r;
    if (!h.hits.empty()) {
        r.kind = ReachResult::Kind::Reach;
        r.n = h.hits.front();
    } else {
        r.kind = h.exact ? ReachResult::Kind::NonReach : ReachResult::Kind::Unknown;
    }
    return r;
}

// ---------------------------------------------------------------- trace

std::string to_string(TraceStep::Kind k) {
    switch (k) {
        case TraceStep::Kind::BasisChange:
            return "BasisChange";
        case TraceStep::Kind::DropZeroEigBlock:
            return "DropZeroEigBlock";
        case TraceStep::Kind::DropLastCoord:
            return "DropLastCoord";
        case TraceStep::Kind::UnrollRootOfUnityDiag:
            return "UnrollRootOfUnityDiag";
        case TraceStep::Kind::DropSmallBlockWithZeroTarget:
            return "DropSmallBlockWithZeroTarget";
    }
    return "?";
}

std::string describe(const TraceStep& s) {
    std::string out = to_string(s.kind) + " " + std::to_string(s.dim_before) + "->" + std::to_string(s.dim_after);
    auto coords = [](const std::vector<int>& v) {
        std::string r = "[";
        for (size_t i = 0; i < v.size(); ++i) r += (i ? "," : "") + std::to_string(v[i]);
        return r + "]";
    };
    switch (s.kind) {
        case TraceStep::Kind::BasisChange:
            break;
        case TraceStep::Kind::DropZeroEigBlock:
        case TraceStep::Kind::DropLastCoord:
            out += " J=" + coords(s.block) + " prefix=" + std::to_string(s.prefix.size());
            break;
        case TraceStep::Kind::UnrollRootOfUnityDiag:
            out += " J=" + coords(s.block) + " lambda=" + to_string(s.lambda) + " k=" + std::to_string(s.k) +
                   " n=" + std::to_string(s.n);
            break;
        case TraceStep::Kind::DropSmallBlockWithZeroTarget:
            out += " J=" + coords(s.block) + " n0=" + std::to_string(s.n0) + (s.exact ? "" : " (bounded search)");
            break;
    }
    return out;
}

bool NormalizationTrace::exact() const {
    for (const auto& s : steps)
        if (!s.exact) return false;
    return true;
}

bool is_normalized(const NormalizedInstance& n) {
    const auto& l = n.inst;
    if (l.dim() == 0) return n.blocks.empty();
    auto b = jordan_structure(l.A);
    if (b.size() != n.blocks.size()) return false;
    for (const auto& blk : n.blocks) {
        if (blk.eigenvalue.is_zero()) return false;
        if (l.x[blk.offset + blk.size - 1].is_zero()) return false;
        if (blk.size == 1 && is_root_of_unity(blk.eigenvalue)) return false;
        if (modulus_squared(blk.eigenvalue) < RealAlgebraic(1)) {
            bool yzero = true;
            for (int i = blk.offset; i < blk.offset + blk.size; ++i) yzero = yzero && l.y[i].is_zero();
            if (yzero) return false;
        }
    }
    return true;
}

namespace {

SemilinearSet lift(const SemilinearSet& I, const std::vector<int>& kept, int d) {
    return embed(I, real_coords(kept), 2 * d);
}

SemilinearSet with_prefix(const std::vector<Vector>& prefix, const SemilinearSet& rest) {
    SemilinearSet r = SemilinearSet::empty(rest.ambient);
    for (const auto& p : prefix) r.add(Polyhedron::point(realify(p)));
    for (const auto& p : rest.polyhedra) r.add(p);
    return r;
}

SemilinearSet step_back(const SemilinearSet& I, const TraceStep& s) {
    if (I.ambient != 2 * s.dim_after) throw std::invalid_argument("pull_back: trace/instance mismatch");
    int d = s.dim_before;
    switch (s.kind) {
        case TraceStep::Kind::BasisChange:
            return preimage(I, s.Q);
        case TraceStep::Kind::DropZeroEigBlock: {
            SemilinearSet r = lift(I, s.kept, d);
            for (auto& p : r.polyhedra)
                for (int c : s.block) pin(p, c, ComplexAlgebraic(0));
            return with_prefix(s.prefix, r);
        }
        case TraceStep::Kind::DropLastCoord: {
            SemilinearSet r = lift(I, s.kept, d);
            for (auto& p : r.polyhedra) pin(p, s.block.back(), ComplexAlgebraic(0));
            return with_prefix(s.prefix, r);
        }
        case TraceStep::Kind::UnrollRootOfUnityDiag: {
            SemilinearSet r = SemilinearSet::empty(2 * d);
            Matrix P = Matrix::identity(s.A_kept.rows());
            ComplexAlgebraic v = pow(s.lambda, s.k) * s.xJ;
            for (unsigned long kk = 0; kk < s.n; ++kk) {
                SemilinearSet part = lift(kk == 0 ? I : image_linear(I, P), s.kept, d);
                for (auto& p : part.polyhedra) {
                    pin(p, s.block.front(), v);
                    r.add(std::move(p));
                }
                P = s.A_kept * P;
                v *= s.lambda;
            }
            return with_prefix(s.prefix, r);
        }
        case TraceStep::Kind::DropSmallBlockWithZeroTarget:
            return with_prefix(s.prefix, lift(I, s.kept, d));
    }
    throw std::logic_error("pull_back: unknown step");
}

std::vector<Vector> orbit_prefix(const OrbitInstance& l, unsigned long count) {
    std::vector<Vector> r;
    Vector z = l.x;
    for (unsigned long i = 0; i < count; ++i) {
        r.push_back(z);
        if (i + 1 < count) z = l.A * z;
    }
    return r;
}

}  // namespace

SemilinearSet pull_back(const SemilinearSet& I, const NormalizationTrace& trace, size_t upto) {
    if (upto > trace.steps.size()) throw std::invalid_argument("pull_back: step index out of range");
    SemilinearSet r = I;
    for (size_t i = upto; i-- > 0;) r = step_back(r, trace.steps[i]);
    return r;
}

SemilinearSet pull_back(const SemilinearSet& I, const NormalizationTrace& trace) {
    if (trace.steps.empty()) {
        if (I.ambient != 2 * trace.original_dim) throw std::invalid_argument("pull_back: trace/instance mismatch");
        return I;
    }
    return pull_back(I, trace, trace.steps.size());
}

// ---------------------------------------------------------------- normalize

NormalizeResult normalize(const OrbitInstance& l, unsigned long horizon) {
    l.validate();
    NormalizeResult res;
    res.trace.original_dim = l.dim();
    OrbitInstance cur = l;
    std::vector<JordanBlock> blocks;
    // orbit time of cur corresponds to offset + scale * t in the original, while steps keep reach intact
    unsigned long t_off = 0, t_scale = 1;
    bool reach_preserving = true;

    auto to_jnf = [&] {
        if (cur.dim() == 0) {
            blocks.clear();
            return;
        }
        blocks = jordan_structure(cur.A);
        if (!blocks.empty()) return;
        JordanForm jf = jordan_form(cur.A);
        TraceStep st;
        st.kind = TraceStep::Kind::BasisChange;
        st.dim_before = st.dim_after = cur.dim();
        st.Q = jf.Q;
        st.Qinv = jf.Qinv;
        cur = conjugate_instance(cur, jf.Q, jf.Qinv);
        blocks = jf.blocks;
        res.trace.steps.push_back(std::move(st));
    };
    auto immediate = [&](NormalizeResult::Kind k, const SemilinearSet& s, std::string why) {
        res.kind = k;
        res.invariant = pull_back(s, res.trace);
        res.reason = std::move(why);
        return res;
    };
    auto reached = [&](unsigned long t, std::string why) {
        if (!reach_preserving)
            return immediate(NormalizeResult::Kind::ImmediateNo, SemilinearSet::full(2 * cur.dim()),
                             why + " in a reduced instance");
        res.kind = NormalizeResult::Kind::Reach;
        res.reach_n = t_off + t_scale * t;
        res.reason = std::move(why);
        return res;
    };
    auto push = [&](TraceStep st, OrbitInstance next) {
        st.dim_before = cur.dim();
        st.dim_after = next.dim();
        res.trace.steps.push_back(std::move(st));
        cur = std::move(next);
    };

    to_jnf();
    for (;;) {
        int d = cur.dim();
        if (d == 0) return reached(0, "target reached");
        bool changed = false;

        for (const auto& b : blocks) {
            if (!b.eigenvalue.is_zero()) continue;
            auto J = block_coords(b);
            auto orbit = orbit_prefix(cur, b.size + 1);
            std::vector<Vector> prefix(orbit.begin(), orbit.end() - 1);
            for (size_t i = 0; i < prefix.size(); ++i)
                if (prefix[i] == cur.y) return reached(i, "target on the orbit prefix");
            if (!is_zero(sub_vector(cur.y, J))) {
                Polyhedron zero = Polyhedron::full(2 * d);
                for (int c : J) pin(zero, c, ComplexAlgebraic(0));
                SemilinearSet I = with_prefix(prefix, SemilinearSet::of(zero));
                return immediate(NormalizeResult::Kind::ImmediateYes, I, "zero-eigenvalue block with y_J != 0");
            }
            TraceStep st;
            st.kind = TraceStep::Kind::DropZeroEigBlock;
            st.block = J;
            st.kept = coords_except(d, J);
            st.prefix = prefix;
            OrbitInstance next{sub_matrix(cur.A, st.kept), sub_vector(orbit.back(), st.kept), sub_vector(cur.y, st.kept)};
            t_off += t_scale * b.size;
            push(std::move(st), std::move(next));
            changed = true;
            break;
        }
        if (changed) {
            to_jnf();
            continue;
        }

        for (const auto& b : blocks) {
            int p = b.offset + b.size - 1;
            if (!cur.x[p].is_zero()) continue;
            if (!cur.y[p].is_zero()) {
                Polyhedron zero = Polyhedron::full(2 * d);
                pin(zero, p, ComplexAlgebraic(0));
                return immediate(NormalizeResult::Kind::ImmediateYes, SemilinearSet::of(zero),
                                 "last block coordinate of x is 0 but not that of y");
            }
            TraceStep st;
            st.kind = TraceStep::Kind::DropLastCoord;
            st.block = {p};
            st.kept = coords_except(d, {p});
            push(std::move(st), restrict_instance(cur, coords_except(d, {p})));
            changed = true;
            break;
        }
        if (changed) {
            to_jnf();
            continue;
        }

        for (const auto& b : blocks) {
            if (b.size != 1) continue;
            auto ord = is_root_of_unity(b.eigenvalue);
            if (!ord) continue;
            int c = b.offset;
            const ComplexAlgebraic& lam = b.eigenvalue;
            std::optional<unsigned long> k;
            ComplexAlgebraic v = cur.x[c];
            std::vector<ComplexAlgebraic> values;
            for (unsigned long i = 0; i < *ord; ++i) {
                if (!k && v == cur.y[c]) k = i;
                values.push_back(v);
                v *= lam;
            }
            if (!k) {
                SemilinearSet I = SemilinearSet::empty(2 * d);
                for (const auto& val : values) {
                    Polyhedron q = Polyhedron::full(2 * d);
                    pin(q, c, val);
                    I.add(std::move(q));
                }
                return immediate(NormalizeResult::Kind::ImmediateYes, I,
                                 "root-of-unity diagonal block never takes the target value");
            }
            TraceStep st;
            st.kind = TraceStep::Kind::UnrollRootOfUnityDiag;
            st.block = {c};
            st.kept = coords_except(d, {c});
            st.lambda = lam;
            st.xJ = cur.x[c];
            st.k = *k;
            st.n = *ord;
            st.A_kept = sub_matrix(cur.A, st.kept);
            st.prefix = orbit_prefix(cur, *k);
            for (size_t i = 0; i < st.prefix.size(); ++i)
                if (st.prefix[i] == cur.y) return reached(i, "target on the orbit prefix");
            OrbitInstance next{power(st.A_kept, *ord), apply_power(st.A_kept, sub_vector(cur.x, st.kept), *k),
                               sub_vector(cur.y, st.kept)};
            t_off += t_scale * *k;
            t_scale *= *ord;
            push(std::move(st), std::move(next));
            changed = true;
            break;
        }
        if (changed) {
            to_jnf();
            continue;
        }

        for (const auto& b : blocks) {
            if (!(modulus_squared(b.eigenvalue) < RealAlgebraic(1))) continue;
            auto J = block_coords(b);
            if (!is_zero(sub_vector(cur.y, J))) continue;
            auto kept = coords_except(d, J);
            OrbitInstance rest = restrict_instance(cur, kept);
            HitAnalysis h = orbit_hits(rest, jnf_blocks(rest.A), horizon, false);
            if (h.infinite)
                return immediate(NormalizeResult::Kind::ImmediateNo, SemilinearSet::full(2 * d),
                                 "target recurs infinitely often beside a contracting block");
            TraceStep st;
            st.kind = TraceStep::Kind::DropSmallBlockWithZeroTarget;
            st.block = J;
            st.kept = kept;
            st.n0 = h.hits.empty() ? 0 : h.hits.back() + 1;
            st.exact = h.exact;
            st.prefix = orbit_prefix(cur, st.n0);
            OrbitInstance next{rest.A, apply_power(rest.A, rest.x, st.n0), rest.y};
            reach_preserving = false;
            push(std::move(st), std::move(next));
            changed = true;
            break;
        }
        if (!changed) break;
        to_jnf();
    }
    res.kind = NormalizeResult::Kind::Normalized;
    res.normalized = {cur, blocks};
    return res;
}

}  // namespace semilin
