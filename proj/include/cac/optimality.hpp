#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cac/code.hpp"

namespace cac {

// Packing bound valid whenever no w-subset of Z_L is exceptional.
int64_t upper_nonexceptional(int64_t L, int64_t w);

struct Justification {
    std::string kind;  // "theorem" | "oracle"
    std::string tag;   // theorem tag ("" for oracle results)
    std::vector<std::pair<std::string, int64_t>> params;
    int64_t budget = 0;   // oracle: node budget
    int64_t nodes = 0;    // oracle: nodes explored
    bool complete = true; // oracle: search ran to completion
};

struct Certificate {
    std::string claim;  // K_exact | K_lower | K_upper | K_mixed_exact
    int64_t length = 0;
    int64_t w = 0;
    std::optional<int64_t> w_star;  // mixed claims only
    std::optional<int64_t> n_star;  // required count of weight-w_star codewords
    int64_t value = 0;
    Justification justification;
    std::vector<std::string> checked_preconditions;
    std::optional<Code> witness;
};

struct OracleOptions {
    int64_t node_budget = 1'000'000'000;
};

// Largest modulus the exhaustive oracles accept.
int64_t oracle_cap(int64_t max_weight);

// Exact K(L, w) by canonical depth-first packing search over difference
// sets.  Exceeding the budget demotes the claim to K_lower (with witness).
Certificate k_exact_oracle(int64_t L, int64_t w, const OracleOptions& opts = {});

// Exact K^e(L, w): as above, restricted to equi-difference codewords.
Certificate k_equi_oracle(int64_t L, int64_t w, const OracleOptions& opts = {});

// Exact K(L, w; w*, n): maximum code with exactly n codewords of weight
// w_star, the rest of weight w.
Certificate k_mixed_oracle(int64_t L, int64_t w, int64_t w_star, int64_t n,
                           const OracleOptions& opts = {});

struct CertifyRequest {
    std::string theorem;
    int64_t p = 0;
    int r = 1;
    int64_t w = 0;
    int64_t d = 1;
    int64_t w_star = 0;  // mixed theorems
    int64_t n = 0;       // mixed-w-1pr: equi-difference codewords in the base
};

// Machine-checks a theorem's hypotheses, builds its witness code, and returns
// a K_exact / K_mixed_exact certificate with the closed-form value.
// Supported tags: main_w-1dpr, main_pr, main_wpr, main_2w-1pr, main_2w-1p,
// mixed_w-1pr, mixed_wpr, mixed_2w-1pr.
Certificate certify(const CertifyRequest& req);

}  // namespace cac
