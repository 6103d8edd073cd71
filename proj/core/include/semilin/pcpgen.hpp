#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "semilin/exactlin.hpp"
#include "semilin/semilinear.hpp"

namespace semilin {

inline constexpr unsigned long kPcpDepthCap = 20;

// nine pairs of non-empty words over {0,2}
struct PcpInstance {
    std::vector<std::pair<std::string, std::string>> pairs;

    // pads to nine pairs by repeating the last one; throws std::invalid_argument on bad words
    static PcpInstance from(std::vector<std::pair<std::string, std::string>> pairs);
};

// sum w_i 4^(1-i); throws std::invalid_argument on letters outside {0,2}
Rat encode_word(const std::string& w);

struct ReductionFamily {
    std::string kind;  // "9x3", "2x27", "robust21"
    int dimension = 0;
    std::vector<std::string> names;
    std::vector<Matrix> matrices;
    Vector x, y;
};

ReductionFamily family_9x3(const PcpInstance& p);
ReductionFamily family_2x27(const PcpInstance& p);
ReductionFamily family_robust_21(const PcpInstance& p);
ReductionFamily make_family(const std::string& kind, const PcpInstance& p);

// z placed at block i of a 27-vector
Vector shift27(const Vector& z, int i);
// M_{w_k} ... M_{w_1} x, letters 1-based
Vector apply_word(const std::vector<Matrix>& ms, const std::vector<int>& w, Vector x);

// least n0 <= cap such that every w with |w| = n0 + 2 has u^(w), v^(w) differing at a letter <= n0
std::optional<unsigned long> pcp_depth_bound(const PcpInstance& p, unsigned long cap = kPcpDepthCap);

// {(s,c,d) : |s| >= 4(c+d) + 4^(-n0-1), c, d >= 0} together with {M_w x : |w| <= n0 + 1}, over C^3
SemilinearSet proof_invariant_9x3(const PcpInstance& p, unsigned long n0);

struct PcpSearchExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// searches n0 up to cap; throws PcpSearchExhausted when none is found
SemilinearSet proof_invariant_9x3(const PcpInstance& p);

}  // namespace semilin
