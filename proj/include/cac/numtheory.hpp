#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace cac::nt {

// Reduce a into [0, m). Works for negative a; m must be positive.
int64_t mod_reduce(int64_t a, int64_t m);

int64_t mul_mod(int64_t a, int64_t b, int64_t m);
int64_t pow_mod(int64_t base, int64_t exp, int64_t m);

// Modular inverse of a in Z_m; requires gcd(a, m) = 1.
int64_t inv_mod(int64_t a, int64_t m);

// p^r as int64_t; throws on overflow.
int64_t pow_int(int64_t p, int r);

// Deterministic Miller-Rabin, valid for the whole int64_t range.
bool is_prime(int64_t n);

// Legendre symbol (a / p) for odd prime p.  a may be negative or >= p.
int legendre(int64_t a, int64_t p);

// Smallest positive primitive root modulo the odd prime p.
int64_t primitive_root(int64_t p);

// The cosets of the index-e subgroup H^e = <alpha^e> of Z_p^*, with coset j
// represented as alpha^j * H^e.  Labels are discrete logs mod e, so
// label(alpha) = 1 mod e and label(x*y) = label(x) + label(y) mod e.
class CosetSystem {
public:
    CosetSystem(int64_t p, int64_t e, int64_t alpha, std::vector<int32_t> labels);

    int64_t p() const { return p_; }
    int64_t e() const { return e_; }
    int64_t alpha() const { return alpha_; }

    // Coset label of x (reduced mod p); x must not be divisible by p.
    int64_t label(int64_t x) const;

    // Sorted elements of coset j, 0 <= j < e.  Each has size (p-1)/e.
    std::vector<int64_t> coset(int64_t j) const;

private:
    int64_t p_, e_, alpha_;
    std::vector<int32_t> labels_;  // labels_[x] for x in [1, p); labels_[0] unused
};

// Requires p an odd prime and e a divisor of p-1.
CosetSystem coset_system(int64_t p, int64_t e);

// True iff xs reduced mod p are e distinct nonzero residues meeting every
// coset of the system exactly once.  Residues divisible by p yield false.
bool is_sdr(std::span<const int64_t> xs, const CosetSystem& cs);

// Ring isomorphism Z_{a*q} -> Z_a x Z_q for coprime a, q.
std::pair<int64_t, int64_t> crt_split(int64_t x, int64_t a, int64_t q);
int64_t crt_join(int64_t xa, int64_t xq, int64_t a, int64_t q);

// Position of the least significant nonzero p-ary digit of c, and that digit.
// c must lie in [1, p^r).  layer t means p^t || c.
struct PAdicProfile {
    int64_t p;
    int r;
    int layer;      // 0 <= layer < r
    int64_t digit;  // in [1, p)
};

PAdicProfile p_adic_profile(int64_t c, int64_t p, int r);

// All c in [1, p^r) whose least significant nonzero digit lies in A, where
// A is a set of residues in [1, p).  Result is sorted; its size is
// |A| * (p^r - 1) / (p - 1).
std::vector<int64_t> lift_set(std::span<const int64_t> a, int64_t p, int r);

}  // namespace cac::nt
