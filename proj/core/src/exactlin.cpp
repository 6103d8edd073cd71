#include "semilin/exactlin.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "semilin/scalar_io.hpp"

namespace semilin {

Matrix::Matrix(std::initializer_list<std::initializer_list<ComplexAlgebraic>> rows) {
    r_ = static_cast<int>(rows.size());
    c_ = r_ ? static_cast<int>(rows.begin()->size()) : 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != c_) throw std::invalid_argument("ragged matrix");
        for (const auto& v : row) a_.push_back(v);
    }
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = ComplexAlgebraic(1);
    return m;
}

Matrix Matrix::diagonal(const Vector& d) {
    int n = static_cast<int>(d.size());
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    Matrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged matrix");
        for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Vector Matrix::row(int i) const {
    Vector v(c_);
    for (int j = 0; j < c_; ++j) v[j] = (*this)(i, j);
    return v;
}

Vector Matrix::col(int j) const {
    Vector v(r_);
    for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

Matrix Matrix::block(int r0, int c0, int nr, int nc) const {
    Matrix m(nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
}

void Matrix::set_block(int r0, int c0, const Matrix& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) (*this)(r0 + i, c0 + j) = m(i, j);
}

Matrix Matrix::transpose() const {
    Matrix m(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

Matrix Matrix::conj() const {
    Matrix m = *this;
    for (auto& v : m.a_) v = v.conj();
    return m;
}

bool Matrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const ComplexAlgebraic& v) { return v.is_zero(); });
}

bool Matrix::is_real() const {
    return std::all_of(a_.begin(), a_.end(), [](const ComplexAlgebraic& v) { return v.is_real(); });
}

bool Matrix::is_rational() const {
    return std::all_of(a_.begin(), a_.end(), [](const ComplexAlgebraic& v) { return v.is_rational(); });
}

Matrix Matrix::operator-() const {
    Matrix m = *this;
    for (auto& v : m.a_) v = -v;
    return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix size mismatch");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix size mismatch");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

Matrix& Matrix::operator*=(const ComplexAlgebraic& s) {
    for (auto& v : a_) v *= s;
    return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, const ComplexAlgebraic& s) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix size mismatch");
    Matrix m(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const ComplexAlgebraic& v = a(i, k);
            if (v.is_zero()) continue;
            for (int j = 0; j < b.cols(); ++j)
                if (!b(k, j).is_zero()) m(i, j) += v * b(k, j);
        }
    return m;
}

Vector operator*(const Matrix& a, const Vector& v) {
    if (a.cols() != static_cast<int>(v.size())) throw std::invalid_argument("matrix/vector size mismatch");
    Vector r(a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero() && !v[j].is_zero()) r[i] += a(i, j) * v[j];
    return r;
}

bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}
bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

Vector operator+(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Vector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vector operator-(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Vector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vector scale(const Vector& a, const ComplexAlgebraic& s) {
    Vector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

bool is_zero(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](const ComplexAlgebraic& z) { return z.is_zero(); });
}

std::vector<int> rref(Matrix& m) {
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!m(i, c).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        ComplexAlgebraic inv = m(r, c).inverse();
        for (int j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            ComplexAlgebraic f = m(i, c);
            for (int j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

int rank(Matrix m) { return static_cast<int>(rref(m).size()); }

std::vector<Vector> kernel(const Matrix& m0) {
    Matrix m = m0;
    std::vector<int> piv = rref(m);
    std::vector<bool> is_piv(m.cols(), false);
    for (int c : piv) is_piv[c] = true;
    std::vector<Vector> out;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) continue;
        Vector v(m.cols());
        v[f] = ComplexAlgebraic(1);
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m(static_cast<int>(i), f);
        out.push_back(std::move(v));
    }
    return out;
}

ComplexAlgebraic det(Matrix m) {
    if (!m.square()) throw std::invalid_argument("det of non-square matrix");
    int n = m.rows();
    ComplexAlgebraic d(1);
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (!m(i, c).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) return ComplexAlgebraic(0);
        if (p != c) {
            for (int j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            d = -d;
        }
        d *= m(c, c);
        ComplexAlgebraic inv = m(c, c).inverse();
        for (int i = c + 1; i < n; ++i) {
            if (m(i, c).is_zero()) continue;
            ComplexAlgebraic f = m(i, c) * inv;
            for (int j = c; j < n; ++j)
                if (!m(c, j).is_zero()) m(i, j) -= f * m(c, j);
        }
    }
    return d;
}

Matrix inverse(const Matrix& m) {
    if (!m.square()) throw std::invalid_argument("inverse of non-square matrix");
    int n = m.rows();
    Matrix aug(n, 2 * n);
    aug.set_block(0, 0, m);
    aug.set_block(0, n, Matrix::identity(n));
    std::vector<int> piv = rref(aug);
    if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw std::domain_error("singular matrix");
    return aug.block(0, n, n, n);
}

bool is_invertible(const Matrix& m) { return m.square() && rank(m) == m.rows(); }

Matrix power(const Matrix& a, unsigned long n) {
    Matrix r = Matrix::identity(a.rows()), b = a;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

namespace {

using CPoly = std::vector<ComplexAlgebraic>;

CPoly cp_mul_linear(const CPoly& p, const ComplexAlgebraic& root) {
    // (x - root) * p
    CPoly r(p.size() + 1);
    for (size_t i = 0; i < p.size(); ++i) {
        r[i + 1] += p[i];
        r[i] -= root * p[i];
    }
    return r;
}

}  // namespace

std::vector<ComplexAlgebraic> char_poly(const Matrix& a) {
    if (!a.square()) throw std::invalid_argument("char_poly of non-square matrix");
    int n = a.rows();
    Matrix h = a;
    // Hessenberg reduction by elementary similarities
    for (int k = 0; k + 2 < n; ++k) {
        int p = -1;
        for (int i = k + 1; i < n; ++i)
            if (!h(i, k).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != k + 1) {
            for (int j = 0; j < n; ++j) std::swap(h(p, j), h(k + 1, j));
            for (int i = 0; i < n; ++i) std::swap(h(i, p), h(i, k + 1));
        }
        ComplexAlgebraic inv = h(k + 1, k).inverse();
        for (int j = k + 2; j < n; ++j) {
            if (h(j, k).is_zero()) continue;
            ComplexAlgebraic u = h(j, k) * inv;
            for (int c = 0; c < n; ++c)
                if (!h(k + 1, c).is_zero()) h(j, c) -= u * h(k + 1, c);
            for (int r = 0; r < n; ++r)
                if (!h(r, j).is_zero()) h(r, k + 1) += u * h(r, j);
        }
    }
    std::vector<CPoly> p(n + 1);
    p[0] = CPoly{ComplexAlgebraic(1)};
    for (int m = 0; m < n; ++m) {
        CPoly next = cp_mul_linear(p[m], h(m, m));
        ComplexAlgebraic prod(1);
        for (int i = m - 1; i >= 0; --i) {
            prod *= h(i + 1, i);
            if (prod.is_zero()) break;
            ComplexAlgebraic coef = h(i, m) * prod;
            if (coef.is_zero()) continue;
            for (size_t k = 0; k < p[i].size(); ++k) next[k] -= coef * p[i][k];
        }
        p[m + 1] = std::move(next);
    }
    return p[n];
}

Matrix jordan_block(int size, const ComplexAlgebraic& lambda) {
    Matrix m(size, size);
    for (int i = 0; i < size; ++i) {
        m(i, i) = lambda;
        if (i + 1 < size) m(i, i + 1) = ComplexAlgebraic(1);
    }
    return m;
}

Matrix jordan_matrix(const std::vector<JordanBlock>& blocks) {
    int n = 0;
    for (const auto& b : blocks) n += b.size;
    Matrix m(n, n);
    for (const auto& b : blocks) m.set_block(b.offset, b.offset, jordan_block(b.size, b.eigenvalue));
    return m;
}

Matrix JordanForm::J() const { return jordan_matrix(blocks); }

namespace {

// incremental echelon basis used to test linear independence
class Span {
public:
    explicit Span(size_t n) : n_(n) {}
    bool add(Vector v) {
        for (size_t k = 0; k < rows_.size(); ++k) {
            const ComplexAlgebraic& c = v[piv_[k]];
            if (c.is_zero()) continue;
            ComplexAlgebraic f = c;
            for (size_t j = 0; j < n_; ++j)
                if (!rows_[k][j].is_zero()) v[j] -= f * rows_[k][j];
        }
        for (size_t j = 0; j < n_; ++j)
            if (!v[j].is_zero()) {
                ComplexAlgebraic inv = v[j].inverse();
                for (auto& x : v) x *= inv;
                // keep existing rows reduced at the new pivot
                for (auto& r : rows_) {
                    if (r[j].is_zero()) continue;
                    ComplexAlgebraic f = r[j];
                    for (size_t t = 0; t < n_; ++t)
                        if (!v[t].is_zero()) r[t] -= f * v[t];
                }
                rows_.push_back(std::move(v));
                piv_.push_back(j);
                return true;
            }
        return false;
    }

private:
    size_t n_;
    std::vector<Vector> rows_;
    std::vector<size_t> piv_;
};

struct Chain {
    ComplexAlgebraic lambda;
    std::vector<Vector> cols;  // p_1 .. p_s in component coordinates
};

std::vector<std::vector<int>> components(const Matrix& a) {
    int n = a.rows();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && !a(i, j).is_zero()) parent[find(i)] = find(j);
    std::vector<std::vector<int>> out;
    std::vector<int> slot(n, -1);
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[slot[r]].push_back(i);
    }
    return out;
}

std::vector<std::vector<int>> sccs(const Matrix& a) {
    int n = a.rows();
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on(n, false);
    std::vector<int> st;
    std::vector<std::vector<int>> out;
    int counter = 0;
    std::function<void(int)> dfs = [&](int v) {
        index[v] = low[v] = counter++;
        st.push_back(v);
        on[v] = true;
        for (int w = 0; w < n; ++w) {
            if (w == v || a(v, w).is_zero()) continue;
            if (index[w] < 0) {
                dfs(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<int> comp;
            int w;
            do {
                w = st.back();
                st.pop_back();
                on[w] = false;
                comp.push_back(w);
            } while (w != v);
            std::sort(comp.begin(), comp.end());
            out.push_back(std::move(comp));
        }
    };
    for (int v = 0; v < n; ++v)
        if (index[v] < 0) dfs(v);
    return out;
}

std::vector<RootMult> eigenvalues(const Matrix& a) {
    std::vector<RootMult> ev;
    auto add = [&](const ComplexAlgebraic& z, int m) {
        for (auto& e : ev)
            if (e.value == z) {
                e.mult += m;
                return;
            }
        ev.push_back({z, m});
    };
    for (const auto& comp : sccs(a)) {
        if (comp.size() == 1) {
            add(a(comp[0], comp[0]), 1);
            continue;
        }
        int k = static_cast<int>(comp.size());
        Matrix sub(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub(i, j) = a(comp[i], comp[j]);
        for (const auto& r : roots_of(char_poly(sub))) add(r.value, r.mult);
    }
    return ev;
}

std::vector<Chain> chains_for(const Matrix& a, const ComplexAlgebraic& lambda, int mult) {
    int n = a.rows();
    Matrix N = a - Matrix::identity(n) * lambda;
    std::vector<std::vector<Vector>> K{{}};
    Matrix Np = Matrix::identity(n);
    while (static_cast<int>(K.back().size()) < mult) {
        Np = Np * N;
        K.push_back(kernel(Np));
        if (K.size() > static_cast<size_t>(n) + 1) throw std::logic_error("jordan: kernel chain did not stabilize");
    }
    int r = static_cast<int>(K.size()) - 1;
    std::vector<std::vector<Vector>> level(r + 1);
    std::vector<std::pair<int, Vector>> heads;
    for (int s = r; s >= 1; --s) {
        Span sp(n);
        for (const auto& v : K[s - 1]) sp.add(v);
        for (const auto& v : level[s]) sp.add(v);
        for (const auto& v : K[s])
            if (sp.add(v)) {
                heads.emplace_back(s, v);
                level[s].push_back(v);
            }
        for (const auto& v : level[s]) level[s - 1].push_back(N * v);
    }
    std::vector<Chain> out;
    for (const auto& [s, v] : heads) {
        Chain c{lambda, std::vector<Vector>(s)};
        c.cols[s - 1] = v;
        for (int k = s - 1; k >= 1; --k) c.cols[k - 1] = N * c.cols[k];
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

JordanForm jordan_form(const Matrix& a) {
    if (!a.square()) throw std::invalid_argument("jordan_form of non-square matrix");
    int n = a.rows();
    struct Placed {
        ComplexAlgebraic lambda;
        std::vector<Vector> cols;  // full coordinates
    };
    std::vector<Placed> all;
    for (const auto& comp : components(a)) {
        int k = static_cast<int>(comp.size());
        Matrix sub(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub(i, j) = a(comp[i], comp[j]);
        for (const auto& e : eigenvalues(sub))
            for (auto& ch : chains_for(sub, e.value, e.mult)) {
                Placed p{ch.lambda, {}};
                for (const auto& c : ch.cols) {
                    Vector full(n);
                    for (int i = 0; i < k; ++i) full[comp[i]] = c[i];
                    p.cols.push_back(std::move(full));
                }
                all.push_back(std::move(p));
            }
    }
    std::stable_sort(all.begin(), all.end(), [](const Placed& x, const Placed& y) {
        Cmp c = compare(x.lambda, y.lambda);
        if (c != Cmp::EQ) return c == Cmp::LT;
        return x.cols.size() > y.cols.size();
    });
    JordanForm jf;
    Matrix P(n, n);
    int off = 0;
    for (const auto& p : all) {
        jf.blocks.push_back({p.lambda, static_cast<int>(p.cols.size()), off});
        for (const auto& c : p.cols) {
            for (int i = 0; i < n; ++i) P(i, off) = c[i];
            ++off;
        }
    }
    if (off != n) throw std::logic_error("jordan_form: block sizes do not sum to dimension");
    jf.Qinv = P;
    jf.Q = inverse(P);
    return jf;
}

std::vector<JordanBlock> jordan_structure(const Matrix& a) {
    std::vector<JordanBlock> blocks;
    if (!a.square()) return blocks;
    int n = a.rows();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j == i || j == i + 1) continue;
            if (!a(i, j).is_zero()) return {};
        }
    int start = 0;
    for (int i = 0; i < n; ++i) {
        bool link = i + 1 < n && !a(i, i + 1).is_zero();
        if (link) {
            if (a(i, i + 1) != ComplexAlgebraic(1) || a(i, i) != a(i + 1, i + 1)) return {};
            continue;
        }
        blocks.push_back({a(start, start), i - start + 1, start});
        start = i + 1;
    }
    return blocks;
}

void OrbitInstance::validate() const {
    if (!A.square()) throw std::invalid_argument("instance matrix is not square");
    if (static_cast<int>(x.size()) != A.rows() || static_cast<int>(y.size()) != A.rows())
        throw std::invalid_argument("instance dimensions disagree");
}

OrbitInstance conjugate_instance(const OrbitInstance& l, const Matrix& Q, const Matrix& Qinv) {
    if (Q * Qinv != Matrix::identity(Q.rows())) throw std::invalid_argument("conjugate_instance: Q and Qinv are not inverse");
    return {Q * l.A * Qinv, Q * l.x, Q * l.y};
}

Vector apply_power(const Matrix& a, const Vector& x, unsigned long n) { return power(a, n) * x; }

std::string to_string(const Vector& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += to_string(v[i]);
    }
    return s + "]";
}

std::string to_string(const Matrix& m) {
    std::string s = "[";
    for (int i = 0; i < m.rows(); ++i) {
        if (i) s += ", ";
        s += to_string(m.row(i));
    }
    return s + "]";
}

}  // namespace semilin
