#pragma once

#include <optional>
#include <vector>

#include "semilin/algnum.hpp"

namespace semilin {

using RVec = std::vector<RealAlgebraic>;

enum class Rel { GE, GT, EQ };

// a . z  rel  b
struct LinCon {
    RVec a;
    RealAlgebraic b;
    Rel rel = Rel::GE;
};

struct LpResult {
    enum class Status { Infeasible, Unbounded, Optimal };
    Status status = Status::Infeasible;
    RealAlgebraic value;
    RVec point;
};

// Exact simplex (Bland's rule). Strict constraints are read as non-strict.
LpResult lp_maximize(int n, const std::vector<LinCon>& cons, const RVec& objective);

// A point satisfying every constraint (strict ones strictly), or nothing.
std::optional<RVec> lp_feasible(int n, const std::vector<LinCon>& cons);

RealAlgebraic dot(const RVec& a, const RVec& b);

}  // namespace semilin
