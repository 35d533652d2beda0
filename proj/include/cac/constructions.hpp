#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cac/code.hpp"

namespace cac {

// Direct construction of an equi-difference code of length ((w-1)/d) * p^r.
struct DirectParams {
    int64_t p;
    int r;
    int64_t w;
    int64_t d;
};

// One residue set that must hit every coset of H^{2d}(p) exactly once.
struct SdrSetReport {
    int64_t index;                  // 0 for {±1..±d}, then i = 1 .. (w-1)/d - 1
    std::vector<int64_t> values;    // signed, as written in the condition
    std::vector<int64_t> labels;    // coset labels of the reduced values (-1: divisible by p)
    bool sdr;
};

struct SdrConditionReport {
    int64_t p, w, d;
    bool ok;
    std::vector<SdrSetReport> sets;
};

// Checks the hypothesis sets of the direct construction.  For d = 1 this is
// exactly: -1 is a quadratic non-residue, and (i/p)((i-w+1)/p) = -1 for
// i = 1..w-2.  Requires d | w-1, 2d | p-1, p >= w.
SdrConditionReport check_sdr_conditions(int64_t p, int64_t w, int64_t d);

struct WpFactorReport {
    int64_t i;
    int lhs;  // legendre(i, p)
    int rhs;  // legendre(i - w, p)
};

struct WpConditionReport {
    int64_t p, w;
    bool ok;  // (i/p)((i-w)/p) = -1 for every i = 1..w-1
    std::vector<WpFactorReport> factors;
};

WpConditionReport check_wp_condition(int64_t p, int64_t w);

// Generators of an equi-difference code over Z_p (prime length).
struct BaseCode {
    int64_t p = 0;
    int64_t w = 0;
    std::vector<int64_t> generators;  // sorted residues in [1, p)

    int64_t m() const { return static_cast<int64_t>(generators.size()); }
};

// The base's codewords as a Code over Z_p.
Code base_as_code(const BaseCode& base);

// Length ((w-1)/d) p^r, weight w, (p^r-1)/(2d) codewords with generators
// crt_join(1, g) for g ranging over the lift of H^{2d}(p).
Code construct_direct(const DirectParams& params);

// Exhaustive backtracking for a maximum (or target_m-sized) generator set
// over Z_p^*.  Deterministic: returns the lexicographically first optimum.
// Requires p prime, p >= 2w-1.
BaseCode search_base(int64_t p, int64_t w,
                     std::optional<int64_t> target_m = std::nullopt);

// Length p^r, generators = lift of the base generators; m(p^r-1)/(p-1)
// codewords.  Requires p >= 2w-1.
Code extend_to_pr(const BaseCode& base, int r);

// Length w*p^r: base lift on the (0,.) fiber, quadratic residues on the
// (1,.) fiber, plus (1,0); m(p^r-1)/(p-1) + (p^r-1)/2 + 1 codewords.
// Requires p >= 2w-1 and the quadratic character condition on (p, w).
Code construct_wpr(const BaseCode& base, int r);

// Length (2w-1)p^r: base lift on the (0,.) fiber plus the full (1,.) fiber;
// p^r + m(p^r-1)/(p-1) codewords.  Requires p > 2w-1.
Code construct_2w1pr(const BaseCode& base, int r);

// Length (2w-1)p for w <= p < 2w-1: the (1,.) fiber plus (0,1); p+1 codewords.
Code construct_2w1p_small(int64_t p, int64_t w);

// Mixed-weight rebuild of the direct construction (d = 1): each equi-difference
// codeword of base_a (a CAC of length p^r) is re-planted on the (0,.) fiber,
// its transferred differences are freed by truncating the matching quadratic-
// residue codewords to weight w-1, and {(j,0)} joins as the extra weight-(w-1)
// codeword.  base_a codewords must be equi-difference and non-exceptional.
Code mixed_w1pr(int64_t p, int r, int64_t w, const Code& base_a);

// construct_wpr with the (0,.) fiber carrying weight-w* codewords from a
// CAC^e(p, w*) base; (p^r+1)/2 weight-w plus m(p^r-1)/(p-1) weight-w*.
Code mixed_wpr(const BaseCode& base, int r, int64_t w);

// construct_2w1pr with the (0,.) fiber carrying weight-w* codewords;
// p^r weight-w plus m(p^r-1)/(p-1) weight-w*.
Code mixed_2w1pr(const BaseCode& base, int r, int64_t w);

}  // namespace cac
