#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cac/code.hpp"

namespace cac {

// Largest modulus for which difference sets are materialised as bitmasks.
inline constexpr int64_t kMaxBitmaskLength = int64_t{1} << 22;

// Subset of Z_L as a bitmask.
class ResidueMask {
public:
    explicit ResidueMask(int64_t length);

    int64_t length() const { return length_; }
    void set(int64_t x);
    bool test(int64_t x) const;
    int64_t count() const;
    bool intersects(const ResidueMask& other) const;
    // Smallest residue present in both masks, or nullopt.
    std::optional<int64_t> first_common(const ResidueMask& other) const;
    ResidueMask& operator|=(const ResidueMask& other);

private:
    int64_t length_;
    std::vector<uint64_t> words_;
};

// d*(S): all differences x - y mod L over ordered pairs of distinct elements.
ResidueMask difference_mask(const Codeword& cw);
std::vector<int64_t> diff_star(const Codeword& cw);

struct Conflict {
    size_t i, j;         // codeword indices, i < j
    int64_t difference;  // smallest residue shared by the two difference sets
};

struct Verdict {
    bool ok;
    std::optional<Conflict> conflict;  // lexicographically least (i, j) when !ok
};

// Checks the defining property: difference sets of distinct codewords are disjoint.
Verdict verify_cac(const Code& code);

// H(T) = { h : h + T = T }, a subgroup of Z_L.  T must be nonempty.
std::vector<int64_t> stabilizer(std::span<const int64_t> t, int64_t length);

// The unique subgroup of Z_L of order d (requires d | L): multiples of L/d.
std::vector<int64_t> subgroup_of_order(int64_t length, int64_t d);

// |A+B| >= |A+H| + |B+H| - |H| with H the stabilizer of A+B (Kneser bound,
// specialised to cyclic groups).  Returns true when the bound holds.
bool kneser_check(std::span<const int64_t> a, std::span<const int64_t> b, int64_t length);

struct StabilizerReport {
    Codeword subject;
    std::vector<int64_t> dstar;       // d*(S), sorted
    std::vector<int64_t> stab;        // H(d(S)) including 0, sorted
    bool exceptional;                 // |d*(S)| < 2(|S| - 1)
};

StabilizerReport classify_exceptional(const Codeword& cw);

}  // namespace cac
