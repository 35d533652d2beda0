#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cac {

// One codeword: a nonempty subset of Z_L, stored sorted and duplicate-free.
// Equi-difference codewords {0, g, 2g, ..., (w-1)g} remember their generator.
struct Codeword {
    int64_t length = 0;
    std::vector<int64_t> elements;
    std::optional<int64_t> generator;

    static Codeword from_elements(int64_t length, std::vector<int64_t> elems);

    // {0, g, 2g, ..., (w-1)g} mod length; throws if the multiples collide.
    static Codeword equi(int64_t length, int64_t g, int64_t w);

    int64_t weight() const { return static_cast<int64_t>(elements.size()); }
    bool contains(int64_t x) const;

    // Translate so that the codeword contains 0 (shift by -min element).
    Codeword normalized() const;

    bool operator==(const Codeword&) const = default;
};

// How a code came to be, kept for audit output.
struct Provenance {
    std::string kind;                                        // "construction" | "search" | "manual"
    std::string name;                                        // construction or search routine
    std::vector<std::pair<std::string, int64_t>> params;     // ordered (name, value)
    // Generators recorded as coordinate pairs (x mod a, x mod q) where the
    // construction worked through a product-ring factorisation; informational.
    std::vector<std::pair<int64_t, int64_t>> generator_pairs;
};

struct Code {
    int64_t length = 0;
    std::vector<Codeword> codewords;
    Provenance provenance;

    int64_t size() const { return static_cast<int64_t>(codewords.size()); }

    // weight -> number of codewords of that weight
    std::map<int64_t, int64_t> weight_multiset() const;

    // Sort codewords lexicographically by element list (canonical order).
    void sort_canonical();
};

}  // namespace cac
