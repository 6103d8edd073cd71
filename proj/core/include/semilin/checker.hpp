#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "semilin/exactlin.hpp"
#include "semilin/semilinear.hpp"

namespace semilin {

struct MatrixCheck {
    bool stable = false;
    std::optional<RVec> counterexample;  // v in I with A v outside I
};

struct CheckReport {
    bool x_in = false;
    std::vector<MatrixCheck> stable;
    bool y_out = false;
    bool closed = false;
    std::chrono::microseconds elapsed{0};

    bool all_stable() const;
    bool pass() const { return x_in && all_stable() && y_out && closed; }
};

// throws std::invalid_argument on dimension mismatch
CheckReport check_certificate(const std::vector<Matrix>& matrices, const Vector& x, const Vector& y,
                              const SemilinearSet& I);

// [x, Ax, ..., A^n x]
std::vector<Vector> orbit_trace(const Matrix& a, const Vector& x, unsigned long n);

}  // namespace semilin
