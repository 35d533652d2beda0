#include "cac/core.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "cac/errors.hpp"
#include "cac/numtheory.hpp"

namespace cac {

Codeword Codeword::from_elements(int64_t length, std::vector<int64_t> elems) {
    if (length < 1) throw precondition_error("Codeword: length must be positive");
    if (elems.empty()) throw precondition_error("Codeword: empty element set");
    for (int64_t& x : elems) x = nt::mod_reduce(x, length);
    std::sort(elems.begin(), elems.end());
    if (std::adjacent_find(elems.begin(), elems.end()) != elems.end())
        throw precondition_error("Codeword: repeated element");
    Codeword cw;
    cw.length = length;
    cw.elements = std::move(elems);
    return cw;
}

Codeword Codeword::equi(int64_t length, int64_t g, int64_t w) {
    if (w < 1 || w > length) throw precondition_error("Codeword::equi: bad weight");
    g = nt::mod_reduce(g, length);
    std::vector<int64_t> elems;
    elems.reserve(static_cast<size_t>(w));
    for (int64_t j = 0; j < w; ++j) elems.push_back(nt::mul_mod(j, g, length));
    std::sort(elems.begin(), elems.end());
    if (std::adjacent_find(elems.begin(), elems.end()) != elems.end())
        throw precondition_error("Codeword::equi: multiples of " + std::to_string(g)
                                 + " collide mod " + std::to_string(length));
    Codeword cw;
    cw.length = length;
    cw.elements = std::move(elems);
    cw.generator = g;
    return cw;
}

bool Codeword::contains(int64_t x) const {
    return std::binary_search(elements.begin(), elements.end(), nt::mod_reduce(x, length));
}

Codeword Codeword::normalized() const {
    Codeword out = *this;
    int64_t shift = elements.front();
    if (shift == 0) return out;
    for (int64_t& x : out.elements) x = nt::mod_reduce(x - shift, length);
    std::sort(out.elements.begin(), out.elements.end());
    return out;
}

std::map<int64_t, int64_t> Code::weight_multiset() const {
    std::map<int64_t, int64_t> m;
    for (const Codeword& cw : codewords) ++m[cw.weight()];
    return m;
}

void Code::sort_canonical() {
    std::sort(codewords.begin(), codewords.end(),
              [](const Codeword& a, const Codeword& b) { return a.elements < b.elements; });
}

ResidueMask::ResidueMask(int64_t length) : length_(length) {
    if (length < 1 || length > kMaxBitmaskLength)
        throw precondition_error("ResidueMask: length out of supported range");
    words_.assign(static_cast<size_t>((length + 63) / 64), 0);
}

void ResidueMask::set(int64_t x) {
    words_[static_cast<size_t>(x >> 6)] |= uint64_t{1} << (x & 63);
}

bool ResidueMask::test(int64_t x) const {
    return (words_[static_cast<size_t>(x >> 6)] >> (x & 63)) & 1;
}

int64_t ResidueMask::count() const {
    int64_t n = 0;
    for (uint64_t w : words_) n += std::popcount(w);
    return n;
}

bool ResidueMask::intersects(const ResidueMask& other) const {
    for (size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & other.words_[i]) return true;
    return false;
}

std::optional<int64_t> ResidueMask::first_common(const ResidueMask& other) const {
    for (size_t i = 0; i < words_.size(); ++i) {
        uint64_t w = words_[i] & other.words_[i];
        if (w) return static_cast<int64_t>(i * 64 + std::countr_zero(w));
    }
    return std::nullopt;
}

ResidueMask& ResidueMask::operator|=(const ResidueMask& other) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
}

ResidueMask difference_mask(const Codeword& cw) {
    ResidueMask m(cw.length);
    const auto& e = cw.elements;
    for (size_t i = 0; i < e.size(); ++i)
        for (size_t j = 0; j < e.size(); ++j)
            if (i != j) m.set(nt::mod_reduce(e[i] - e[j], cw.length));
    return m;
}

std::vector<int64_t> diff_star(const Codeword& cw) {
    ResidueMask m = difference_mask(cw);
    std::vector<int64_t> out;
    for (int64_t x = 0; x < cw.length; ++x)
        if (m.test(x)) out.push_back(x);
    return out;
}

Verdict verify_cac(const Code& code) {
    for (const Codeword& cw : code.codewords)
        if (cw.length != code.length)
            throw precondition_error("verify_cac: codeword length disagrees with code length");
    std::vector<ResidueMask> masks;
    masks.reserve(code.codewords.size());
    for (const Codeword& cw : code.codewords) masks.push_back(difference_mask(cw));
    for (size_t i = 0; i < masks.size(); ++i) {
        for (size_t j = i + 1; j < masks.size(); ++j) {
            if (auto d = masks[i].first_common(masks[j]))
                return Verdict{false, Conflict{i, j, *d}};
        }
    }
    return Verdict{true, std::nullopt};
}

std::vector<int64_t> stabilizer(std::span<const int64_t> t, int64_t length) {
    if (t.empty()) throw precondition_error("stabilizer: empty set");
    if (length < 1 || length > kMaxBitmaskLength)
        throw precondition_error("stabilizer: length out of supported range");
    ResidueMask mask(length);
    std::vector<int64_t> reduced;
    reduced.reserve(t.size());
    for (int64_t x : t) {
        int64_t r = nt::mod_reduce(x, length);
        if (!mask.test(r)) reduced.push_back(r);
        mask.set(r);
    }
    // h + T = T forces h = t - t0 for some t in T.
    std::vector<int64_t> out;
    int64_t t0 = reduced.front();
    for (int64_t t1 : reduced) {
        int64_t h = nt::mod_reduce(t1 - t0, length);
        bool ok = true;
        for (int64_t x : reduced) {
            if (!mask.test(nt::mod_reduce(x + h, length))) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(h);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int64_t> subgroup_of_order(int64_t length, int64_t d) {
    if (length < 1 || d < 1 || length % d != 0)
        throw precondition_error("subgroup_of_order: order must divide the modulus");
    std::vector<int64_t> out;
    out.reserve(static_cast<size_t>(d));
    int64_t step = length / d;
    for (int64_t k = 0; k < d; ++k) out.push_back(k * step);
    return out;
}

namespace {

ResidueMask sumset_mask(std::span<const int64_t> a, std::span<const int64_t> b, int64_t length) {
    ResidueMask m(length);
    for (int64_t x : a)
        for (int64_t y : b) m.set(nt::mod_reduce(x + y, length));
    return m;
}

std::vector<int64_t> mask_elements(const ResidueMask& m) {
    std::vector<int64_t> out;
    for (int64_t x = 0; x < m.length(); ++x)
        if (m.test(x)) out.push_back(x);
    return out;
}

}  // namespace

bool kneser_check(std::span<const int64_t> a, std::span<const int64_t> b, int64_t length) {
    if (a.empty() || b.empty()) throw precondition_error("kneser_check: empty operand");
    ResidueMask ab = sumset_mask(a, b, length);
    std::vector<int64_t> sum = mask_elements(ab);
    std::vector<int64_t> h = stabilizer(sum, length);
    int64_t ah = sumset_mask(a, h, length).count();
    int64_t bh = sumset_mask(b, h, length).count();
    return ab.count() >= ah + bh - static_cast<int64_t>(h.size());
}

StabilizerReport classify_exceptional(const Codeword& cw) {
    StabilizerReport rep;
    rep.subject = cw;
    rep.dstar = diff_star(cw);
    // Stabilizer of d(S) = d*(S) together with 0.
    std::vector<int64_t> d = rep.dstar;
    d.insert(d.begin(), 0);
    rep.stab = stabilizer(d, cw.length);
    rep.exceptional =
        static_cast<int64_t>(rep.dstar.size()) < 2 * (cw.weight() - 1);
    return rep;
}

}  // namespace cac
