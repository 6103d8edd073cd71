#include "semilin/lp.hpp"

#include <stdexcept>

namespace semilin {

RealAlgebraic dot(const RVec& a, const RVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    RealAlgebraic s;
    for (size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

namespace {

using Row = std::vector<RealAlgebraic>;

// z = z0 + N w over the solution set of the equality constraints
struct Affine {
    RVec z0;
    std::vector<RVec> N;  // n rows, k columns
    int k = 0;
};

std::optional<Affine> solve_equalities(int n, const std::vector<LinCon>& cons) {
    std::vector<Row> m;
    for (const auto& c : cons)
        if (c.rel == Rel::EQ) {
            Row r = c.a;
            r.push_back(c.b);
            m.push_back(std::move(r));
        }
    std::vector<int> piv;
    int r = 0;
    for (int col = 0; col < n && r < static_cast<int>(m.size()); ++col) {
        int p = -1;
        for (int i = r; i < static_cast<int>(m.size()); ++i)
            if (!m[i][col].is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(m[p], m[r]);
        RealAlgebraic inv = m[r][col].inverse();
        for (int j = col; j <= n; ++j) m[r][j] *= inv;
        for (int i = 0; i < static_cast<int>(m.size()); ++i) {
            if (i == r || m[i][col].is_zero()) continue;
            RealAlgebraic f = m[i][col];
            for (int j = col; j <= n; ++j)
                if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
        }
        piv.push_back(col);
        ++r;
    }
    for (size_t i = r; i < m.size(); ++i)
        if (!m[i][n].is_zero()) return std::nullopt;
    Affine a;
    a.z0.assign(n, RealAlgebraic());
    std::vector<int> is_piv(n, -1);
    for (int i = 0; i < r; ++i) {
        is_piv[piv[i]] = i;
        a.z0[piv[i]] = m[i][n];
    }
    std::vector<int> freev;
    for (int j = 0; j < n; ++j)
        if (is_piv[j] < 0) freev.push_back(j);
    a.k = static_cast<int>(freev.size());
    a.N.assign(n, RVec(a.k));
    for (int c = 0; c < a.k; ++c) {
        int f = freev[c];
        a.N[f][c] = RealAlgebraic(1);
        for (int i = 0; i < r; ++i) a.N[piv[i]][c] = -m[i][f];
    }
    return a;
}

RVec apply_affine(const Affine& af, const RVec& w) {
    RVec z = af.z0;
    for (size_t i = 0; i < z.size(); ++i)
        for (int c = 0; c < af.k; ++c)
            if (!af.N[i][c].is_zero() && !w[c].is_zero()) z[i] += af.N[i][c] * w[c];
    return z;
}

// reduced inequality  a . w >= b  (strict if gt)
struct Ineq {
    RVec a;
    RealAlgebraic b;
    bool gt = false;
};

struct Reduced {
    Affine af;
    std::vector<Ineq> rows;
    bool infeasible = false;
};

Reduced reduce(int n, const std::vector<LinCon>& cons) {
    Reduced red;
    for (const auto& c : cons)
        if (static_cast<int>(c.a.size()) != n) throw std::invalid_argument("lp: constraint dimension mismatch");
    auto af = solve_equalities(n, cons);
    if (!af) {
        red.infeasible = true;
        return red;
    }
    red.af = *af;
    for (const auto& c : cons) {
        if (c.rel == Rel::EQ) continue;
        Ineq q;
        q.a.assign(red.af.k, RealAlgebraic());
        for (int j = 0; j < n; ++j) {
            if (c.a[j].is_zero()) continue;
            for (int t = 0; t < red.af.k; ++t)
                if (!red.af.N[j][t].is_zero()) q.a[t] += c.a[j] * red.af.N[j][t];
        }
        q.b = c.b - dot(c.a, red.af.z0);
        q.gt = c.rel == Rel::GT;
        bool zero = true;
        for (const auto& v : q.a)
            if (!v.is_zero()) {
                zero = false;
                break;
            }
        if (zero) {
            int s = q.b.sign();
            if (s > 0 || (s == 0 && q.gt)) {
                red.infeasible = true;
                return red;
            }
            continue;
        }
        red.rows.push_back(std::move(q));
    }
    return red;
}

class Tableau {
public:
    // columns: [0, nvars) structural, then artificials; last entry of each row is the rhs
    std::vector<Row> T;
    std::vector<int> basis;
    int ncols = 0;

    void pivot(int r, int c) {
        RealAlgebraic inv = T[r][c].inverse();
        for (auto& v : T[r])
            if (!v.is_zero()) v *= inv;
        for (size_t i = 0; i < T.size(); ++i) {
            if (static_cast<int>(i) == r || T[i][c].is_zero()) continue;
            RealAlgebraic f = T[i][c];
            for (int j = 0; j <= ncols; ++j)
                if (!T[r][j].is_zero()) T[i][j] -= f * T[r][j];
        }
        basis[r] = c;
    }

    // maximize obj . x over columns < limit; returns false if unbounded
    bool run(const Row& obj, int limit) {
        for (;;) {
            Row red(limit);
            for (int j = 0; j < limit; ++j) {
                RealAlgebraic v = obj[j];
                for (size_t i = 0; i < T.size(); ++i)
                    if (!obj[basis[i]].is_zero() && !T[i][j].is_zero()) v -= obj[basis[i]] * T[i][j];
                red[j] = v;
            }
            int enter = -1;
            for (int j = 0; j < limit; ++j)
                if (red[j].sign() > 0) {
                    enter = j;
                    break;
                }
            if (enter < 0) return true;
            int leave = -1;
            RealAlgebraic best;
            for (size_t i = 0; i < T.size(); ++i) {
                if (T[i][enter].sign() <= 0) continue;
                RealAlgebraic ratio = T[i][ncols] / T[i][enter];
                if (leave < 0) {
                    leave = static_cast<int>(i);
                    best = ratio;
                    continue;
                }
                Cmp c = compare(ratio, best);
                if (c == Cmp::LT || (c == Cmp::EQ && basis[i] < basis[leave])) {
                    leave = static_cast<int>(i);
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }

    RealAlgebraic value_of(int col) const {
        for (size_t i = 0; i < T.size(); ++i)
            if (basis[i] == col) return T[i][ncols];
        return RealAlgebraic();
    }
};

struct CoreResult {
    LpResult::Status status;
    RealAlgebraic value;
    RVec w;
};

// maximize obj . w + objt * t over rows a.w - tcoef*t >= b, w free, t >= 0 (if use_t)
CoreResult core(int k, const std::vector<Ineq>& rows, const RVec& obj, bool use_t, bool t_cap) {
    int nstruct = 2 * k + (use_t ? 1 : 0);
    int m = static_cast<int>(rows.size()) + (t_cap ? 1 : 0);
    int nslack = m;
    // count artificials
    std::vector<RVec> A;
    RVec b;
    for (const auto& q : rows) {
        RVec r(nstruct);
        for (int j = 0; j < k; ++j) {
            r[j] = q.a[j];
            r[k + j] = -q.a[j];
        }
        if (use_t && q.gt) r[2 * k] = RealAlgebraic(-1);
        A.push_back(std::move(r));
        b.push_back(q.b);
    }
    if (t_cap) {
        RVec r(nstruct);
        r[2 * k] = RealAlgebraic(-1);
        A.push_back(std::move(r));
        b.push_back(RealAlgebraic(-1));
    }
    // row i: A_i x - s_i = b_i
    std::vector<bool> flip(m);
    int nart = 0;
    for (int i = 0; i < m; ++i) {
        flip[i] = b[i].sign() < 0;
        if (!flip[i]) ++nart;
    }
    Tableau tb;
    tb.ncols = nstruct + nslack + nart;
    tb.T.assign(m, Row(tb.ncols + 1));
    tb.basis.assign(m, -1);
    int art = nstruct + nslack;
    for (int i = 0; i < m; ++i) {
        RealAlgebraic sg(flip[i] ? -1 : 1);
        for (int j = 0; j < nstruct; ++j)
            if (!A[i][j].is_zero()) tb.T[i][j] = flip[i] ? RealAlgebraic(-A[i][j]) : A[i][j];
        tb.T[i][nstruct + i] = -sg;
        tb.T[i][tb.ncols] = flip[i] ? RealAlgebraic(-b[i]) : b[i];
        if (flip[i]) {
            tb.basis[i] = nstruct + i;
        } else {
            tb.T[i][art] = RealAlgebraic(1);
            tb.basis[i] = art++;
        }
    }
    if (nart) {
        Row ph1(tb.ncols);
        for (int j = nstruct + nslack; j < tb.ncols; ++j) ph1[j] = RealAlgebraic(-1);
        tb.run(ph1, tb.ncols);
        for (int i = 0; i < m; ++i)
            if (tb.basis[i] >= nstruct + nslack && !tb.T[i][tb.ncols].is_zero())
                return {LpResult::Status::Infeasible, {}, {}};
        // drive zero-valued artificials out of the basis
        for (int i = 0; i < static_cast<int>(tb.T.size());) {
            if (tb.basis[i] < nstruct + nslack) {
                ++i;
                continue;
            }
            int c = -1;
            for (int j = 0; j < nstruct + nslack; ++j)
                if (!tb.T[i][j].is_zero()) {
                    c = j;
                    break;
                }
            if (c >= 0) {
                tb.pivot(i, c);
                ++i;
            } else {
                tb.T.erase(tb.T.begin() + i);
                tb.basis.erase(tb.basis.begin() + i);
            }
        }
    }
    Row ph2(tb.ncols);
    for (int j = 0; j < k; ++j) {
        ph2[j] = obj[j];
        ph2[k + j] = -obj[j];
    }
    if (use_t) ph2[2 * k] = obj[k];
    bool bounded = tb.run(ph2, nstruct + nslack);
    CoreResult res;
    res.w.assign(k + (use_t ? 1 : 0), RealAlgebraic());
    for (int j = 0; j < k; ++j) res.w[j] = tb.value_of(j) - tb.value_of(k + j);
    if (use_t) res.w[k] = tb.value_of(2 * k);
    if (!bounded) {
        res.status = LpResult::Status::Unbounded;
        return res;
    }
    res.status = LpResult::Status::Optimal;
    RealAlgebraic v;
    for (int j = 0; j < nstruct; ++j)
        if (!ph2[j].is_zero()) v += ph2[j] * tb.value_of(j);
    res.value = v;
    return res;
}

}  // namespace

LpResult lp_maximize(int n, const std::vector<LinCon>& cons, const RVec& objective) {
    if (static_cast<int>(objective.size()) != n) throw std::invalid_argument("lp: objective dimension mismatch");
    std::vector<LinCon> relaxed = cons;
    for (auto& c : relaxed)
        if (c.rel == Rel::GT) c.rel = Rel::GE;
    Reduced red = reduce(n, relaxed);
    LpResult out;
    if (red.infeasible) return out;
    const Affine& af = red.af;
    RVec obj(af.k);
    for (int t = 0; t < af.k; ++t)
        for (int j = 0; j < n; ++j)
            if (!objective[j].is_zero() && !af.N[j][t].is_zero()) obj[t] += objective[j] * af.N[j][t];
    CoreResult cr = core(af.k, red.rows, obj, false, false);
    out.status = cr.status;
    if (cr.status == LpResult::Status::Infeasible) return out;
    out.point = apply_affine(af, cr.w);
    out.value = dot(objective, out.point);
    return out;
}

std::optional<RVec> lp_feasible(int n, const std::vector<LinCon>& cons) {
    Reduced red = reduce(n, cons);
    if (red.infeasible) return std::nullopt;
    bool strict = false;
    for (const auto& q : red.rows) strict = strict || q.gt;
    const Affine& af = red.af;
    if (!strict) {
        CoreResult cr = core(af.k, red.rows, RVec(af.k), false, false);
        if (cr.status == LpResult::Status::Infeasible) return std::nullopt;
        return apply_affine(af, cr.w);
    }
    RVec obj(af.k + 1);
    obj[af.k] = RealAlgebraic(1);
    CoreResult cr = core(af.k, red.rows, obj, true, true);
    if (cr.status != LpResult::Status::Optimal || cr.value.sign() <= 0) return std::nullopt;
    RVec w(cr.w.begin(), cr.w.begin() + af.k);
    return apply_affine(af, w);
}

}  // namespace semilin
