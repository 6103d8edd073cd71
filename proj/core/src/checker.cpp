#include "semilin/checker.hpp"

#include <stdexcept>

namespace semilin {

bool CheckReport::all_stable() const {
    for (const auto& m : stable)
        if (!m.stable) return false;
    return true;
}

CheckReport check_certificate(const std::vector<Matrix>& matrices, const Vector& x, const Vector& y,
                              const SemilinearSet& I) {
    auto t0 = std::chrono::steady_clock::now();
    int d = static_cast<int>(x.size());
    if (static_cast<int>(y.size()) != d || I.ambient != 2 * d)
        throw std::invalid_argument("check_certificate: dimension mismatch");
    for (const auto& a : matrices)
        if (a.rows() != d || a.cols() != d) throw std::invalid_argument("check_certificate: dimension mismatch");

    CheckReport r;
    r.x_in = membership(I, x);
    r.y_out = !membership(I, y);
    r.closed = I.closed();
    for (const auto& a : matrices) {
        StabilityResult s = is_stable(I, a);
        r.stable.push_back({s.stable, s.counterexample});
    }
    r.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0);
    return r;
}

std::vector<Vector> orbit_trace(const Matrix& a, const Vector& x, unsigned long n) {
    if (a.rows() != static_cast<int>(x.size()) || !a.square())
        throw std::invalid_argument("orbit_trace: dimension mismatch");
    std::vector<Vector> out{x};
    out.reserve(n + 1);
    for (unsigned long i = 0; i < n; ++i) out.push_back(a * out.back());
    return out;
}

}  // namespace semilin
