#include "cac/numtheory.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "cac/errors.hpp"

namespace cac::nt {

int64_t mod_reduce(int64_t a, int64_t m) {
    if (m <= 0) throw precondition_error("mod_reduce: modulus must be positive");
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

int64_t mul_mod(int64_t a, int64_t b, int64_t m) {
    return static_cast<int64_t>(static_cast<__int128>(a) * b % m);
}

int64_t pow_mod(int64_t base, int64_t exp, int64_t m) {
    if (m <= 0) throw precondition_error("pow_mod: modulus must be positive");
    if (exp < 0) throw precondition_error("pow_mod: negative exponent");
    if (m == 1) return 0;
    int64_t acc = 1;
    int64_t b = mod_reduce(base, m);
    while (exp > 0) {
        if (exp & 1) acc = mul_mod(acc, b, m);
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    return acc;
}

int64_t inv_mod(int64_t a, int64_t m) {
    if (m <= 0) throw precondition_error("inv_mod: modulus must be positive");
    int64_t r0 = m, r1 = mod_reduce(a, m);
    int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        int64_t q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        t0 -= q * t1;
        std::swap(t0, t1);
    }
    if (r0 != 1)
        throw precondition_error("inv_mod: argument not invertible (gcd "
                                 + std::to_string(r0) + ")");
    return mod_reduce(t0, m);
}

int64_t pow_int(int64_t p, int r) {
    if (p < 1 || r < 0) throw precondition_error("pow_int: bad arguments");
    int64_t acc = 1;
    for (int i = 0; i < r; ++i) {
        if (acc > INT64_MAX / p) throw precondition_error("pow_int: overflow");
        acc *= p;
    }
    return acc;
}

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % q == 0) return n == q;
    }
    // n > 37 and odd here.
    int64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set is deterministic for all 64-bit n.
    for (int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        int64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

int legendre(int64_t a, int64_t p) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw precondition_error("legendre: modulus must be an odd prime");
    int64_t r = mod_reduce(a, p);
    if (r == 0) return 0;
    int64_t e = pow_mod(r, (p - 1) / 2, p);  // Euler's criterion
    return e == 1 ? 1 : -1;
}

namespace {

std::vector<int64_t> prime_factors(int64_t n) {
    std::vector<int64_t> fs;
    for (int64_t q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            fs.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

}  // namespace

int64_t primitive_root(int64_t p) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw precondition_error("primitive_root: modulus must be an odd prime");
    auto fs = prime_factors(p - 1);
    for (int64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (int64_t q : fs) {
            if (pow_mod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw precondition_error("primitive_root: none found");  // unreachable for prime p
}

CosetSystem::CosetSystem(int64_t p, int64_t e, int64_t alpha, std::vector<int32_t> labels)
    : p_(p), e_(e), alpha_(alpha), labels_(std::move(labels)) {}

int64_t CosetSystem::label(int64_t x) const {
    int64_t r = mod_reduce(x, p_);
    if (r == 0) throw precondition_error("CosetSystem::label: argument divisible by p");
    return labels_[static_cast<size_t>(r)];
}

std::vector<int64_t> CosetSystem::coset(int64_t j) const {
    if (j < 0 || j >= e_) throw precondition_error("CosetSystem::coset: label out of range");
    std::vector<int64_t> out;
    out.reserve(static_cast<size_t>((p_ - 1) / e_));
    for (int64_t x = 1; x < p_; ++x)
        if (labels_[static_cast<size_t>(x)] == j) out.push_back(x);
    return out;
}

CosetSystem coset_system(int64_t p, int64_t e) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw precondition_error("coset_system: modulus must be an odd prime");
    if (p > (int64_t{1} << 24))
        throw precondition_error("coset_system: modulus too large for a label table");
    if (e < 1 || (p - 1) % e != 0)
        throw precondition_error("coset_system: index must divide p-1");
    int64_t alpha = primitive_root(p);
    std::vector<int32_t> labels(static_cast<size_t>(p), -1);
    int64_t x = 1;
    for (int64_t i = 0; i < p - 1; ++i) {
        labels[static_cast<size_t>(x)] = static_cast<int32_t>(i % e);
        x = mul_mod(x, alpha, p);
    }
    return CosetSystem(p, e, alpha, std::move(labels));
}

bool is_sdr(std::span<const int64_t> xs, const CosetSystem& cs) {
    if (static_cast<int64_t>(xs.size()) != cs.e()) return false;
    std::vector<int64_t> residues;
    residues.reserve(xs.size());
    for (int64_t x : xs) {
        int64_t r = mod_reduce(x, cs.p());
        if (r == 0) return false;
        residues.push_back(r);
    }
    std::sort(residues.begin(), residues.end());
    if (std::adjacent_find(residues.begin(), residues.end()) != residues.end()) return false;
    std::vector<bool> seen(static_cast<size_t>(cs.e()), false);
    for (int64_t r : residues) {
        int64_t j = cs.label(r);
        if (seen[static_cast<size_t>(j)]) return false;
        seen[static_cast<size_t>(j)] = true;
    }
    return true;  // e distinct labels in [0, e) => every coset met once
}

std::pair<int64_t, int64_t> crt_split(int64_t x, int64_t a, int64_t q) {
    if (a < 1 || q < 1) throw precondition_error("crt_split: moduli must be positive");
    if (std::gcd(a, q) != 1) throw precondition_error("crt_split: moduli must be coprime");
    return {mod_reduce(x, a), mod_reduce(x, q)};
}

int64_t crt_join(int64_t xa, int64_t xq, int64_t a, int64_t q) {
    if (a < 1 || q < 1) throw precondition_error("crt_join: moduli must be positive");
    if (std::gcd(a, q) != 1) throw precondition_error("crt_join: moduli must be coprime");
    if (a == 1) return mod_reduce(xq, q);
    if (q == 1) return mod_reduce(xa, a);
    xa = mod_reduce(xa, a);
    xq = mod_reduce(xq, q);
    // x = xa*u*q + xq*v*a with u = q^{-1} mod a, v = a^{-1} mod q.
    int64_t u = inv_mod(q % a, a);
    int64_t v = inv_mod(a % q, q);
    __int128 x = static_cast<__int128>(mul_mod(xa, u, a)) * q
               + static_cast<__int128>(mul_mod(xq, v, q)) * a;
    return static_cast<int64_t>(x % (static_cast<__int128>(a) * q));
}

PAdicProfile p_adic_profile(int64_t c, int64_t p, int r) {
    if (p < 2 || r < 1) throw precondition_error("p_adic_profile: bad base");
    int64_t pr = pow_int(p, r);
    if (c < 1 || c >= pr) throw precondition_error("p_adic_profile: value out of range");
    int t = 0;
    while (c % p == 0) {
        c /= p;
        ++t;
    }
    return PAdicProfile{p, r, t, c % p};
}

std::vector<int64_t> lift_set(std::span<const int64_t> a, int64_t p, int r) {
    if (p < 2 || r < 1) throw precondition_error("lift_set: bad base");
    std::vector<bool> take(static_cast<size_t>(p), false);
    for (int64_t x : a) {
        if (x < 1 || x >= p) throw precondition_error("lift_set: digits must lie in [1, p)");
        take[static_cast<size_t>(x)] = true;
    }
    int64_t pr = pow_int(p, r);
    std::vector<int64_t> out;
    for (int64_t c = 1; c < pr; ++c) {
        int64_t v = c;
        while (v % p == 0) v /= p;
        if (take[static_cast<size_t>(v % p)]) out.push_back(c);
    }
    return out;
}

}  // namespace cac::nt
