#include "cac/optimality.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include "cac/constructions.hpp"
#include "cac/core.hpp"
#include "cac/errors.hpp"
#include "cac/numtheory.hpp"

namespace cac {

int64_t upper_nonexceptional(int64_t L, int64_t w) {
    if (w < 2 || L <= w)
        throw precondition_error("upper_nonexceptional: need L > w >= 2");
    return (L - 1) / (2 * w - 2);
}

int64_t oracle_cap(int64_t max_weight) { return max_weight <= 3 ? 400 : 200; }

namespace {

// ---------------------------------------------------------------------------
// Exhaustive packing oracle.
//
// Candidates are codewords containing 0 (every codeword translates to one
// with an identical difference set), stored as difference bitmasks and
// deduplicated: candidates with equal difference sets are interchangeable in
// any packing.  The search is depth-first in candidate order, include before
// exclude, so the first packing of each size it reaches is the canonical
// (lexicographically first) one.
//
// Counting prune: a codeword S of weight v satisfies
// |d*(S)| + |H*(d(S))| >= 2v-2, the H* sets of distinct codewords are
// disjoint, and every nontrivial H*(d(S)) lies inside U = the union of the
// nontrivial subgroups of Z_L of order <= 2v_max-2.  Summing over any
// completion: with F free differences and u = |U ∩ free|, at most
// (F + u) / (2v-2) codewords of weight v still fit.
// ---------------------------------------------------------------------------

struct Pool {
    int64_t L = 0;
    int64_t w = 0;
    size_t words = 0;
    size_t count = 0;
    std::vector<uint64_t> masks;   // count * words, bits of d*(S)
    std::vector<int32_t> elems;    // count * w elements per candidate
    std::vector<int32_t> popcnt;   // |d*(S)|
    std::vector<int32_t> gens;     // generator per candidate (equi pools only)

    const uint64_t* mask(size_t i) const { return masks.data() + i * words; }
};

void pool_add(Pool& pool, std::unordered_multimap<size_t, size_t>& seen,
              const std::vector<int64_t>& subset, int64_t gen = -1) {
    std::vector<uint64_t> m(pool.words, 0);
    int32_t bits = 0;
    for (size_t i = 0; i < subset.size(); ++i) {
        for (size_t j = 0; j < subset.size(); ++j) {
            if (i == j) continue;
            int64_t d = nt::mod_reduce(subset[i] - subset[j], pool.L);
            uint64_t& word = m[static_cast<size_t>(d >> 6)];
            uint64_t bit = uint64_t{1} << (d & 63);
            if (!(word & bit)) {
                word |= bit;
                ++bits;
            }
        }
    }
    size_t h = 0xcbf29ce484222325ull;
    for (uint64_t x : m) {
        h ^= x;
        h *= 0x100000001b3ull;
    }
    auto [lo, hi] = seen.equal_range(h);
    for (auto it = lo; it != hi; ++it)
        if (std::equal(m.begin(), m.end(), pool.mask(it->second))) return;
    seen.emplace(h, pool.count);
    pool.masks.insert(pool.masks.end(), m.begin(), m.end());
    for (int64_t e : subset) pool.elems.push_back(static_cast<int32_t>(e));
    pool.popcnt.push_back(bits);
    pool.gens.push_back(static_cast<int32_t>(gen));
    ++pool.count;
}

// Memory guard for candidate enumeration at large weights.
constexpr size_t kMaxStoredCandidates = 4'000'000;

// All w-subsets of Z_L containing 0, in lexicographic element order.
// Enumeration charges `budget` one node per subset; running out (or hitting
// the storage cap) leaves a truncated pool, flagged for the caller.
Pool build_full_pool(int64_t L, int64_t w, int64_t& budget, bool& truncated) {
    Pool pool{L, w, static_cast<size_t>((L + 63) / 64), 0, {}, {}, {}, {}};
    std::unordered_multimap<size_t, size_t> seen;
    std::vector<int64_t> subset(static_cast<size_t>(w));
    subset[0] = 0;
    auto rec = [&](auto&& self, int64_t depth, int64_t start) -> void {
        if (truncated) return;
        if (depth == w) {
            if (--budget < 0 || pool.count >= kMaxStoredCandidates) {
                truncated = true;
                return;
            }
            pool_add(pool, seen, subset);
            return;
        }
        for (int64_t x = start; x <= L - (w - depth) && !truncated; ++x) {
            subset[static_cast<size_t>(depth)] = x;
            self(self, depth + 1, x + 1);
        }
    };
    if (w <= L) rec(rec, 1, 1);
    if (budget < 0) budget = 0;
    return pool;
}

// Equi-difference candidates {0, g, ..., (w-1)g}, in generator order.
Pool build_equi_pool(int64_t L, int64_t w, int64_t& budget, bool& truncated) {
    Pool pool{L, w, static_cast<size_t>((L + 63) / 64), 0, {}, {}, {}, {}};
    std::unordered_multimap<size_t, size_t> seen;
    for (int64_t g = 1; g < L; ++g) {
        if (--budget < 0) {
            truncated = true;
            break;
        }
        std::vector<int64_t> subset;
        bool ok = true;
        for (int64_t j = 0; j < w && ok; ++j) {
            int64_t e = nt::mul_mod(j, g, L);
            ok = std::find(subset.begin(), subset.end(), e) == subset.end();
            subset.push_back(e);
        }
        if (ok) pool_add(pool, seen, subset, g);
    }
    if (budget < 0) budget = 0;
    return pool;
}

// Union of the nontrivial subgroups of Z_L of order <= bound, minus 0.
std::vector<uint64_t> subgroup_union_mask(int64_t L, int64_t bound) {
    std::vector<uint64_t> m(static_cast<size_t>((L + 63) / 64), 0);
    for (int64_t d = 2; d <= bound; ++d) {
        if (L % d != 0) continue;
        for (int64_t k = 1; k < d; ++k) {
            int64_t x = k * (L / d);
            m[static_cast<size_t>(x >> 6)] |= uint64_t{1} << (x & 63);
        }
    }
    return m;
}

// Maximum packing with an optional exact-count first phase: place exactly
// `quota` candidates from quota_pool, then as many from open_pool as fit.
// With open_pool null the search stops at the first quota-sized packing.
class Packer {
public:
    Packer(const Pool* quota_pool, int64_t quota, const Pool* open_pool,
           int64_t L, int64_t node_budget)
        : quota_pool_(quota_pool), open_pool_(open_pool), quota_(quota) {
        budget_ = node_budget;
        words_ = static_cast<size_t>((L + 63) / 64);
        free_.assign(words_, ~uint64_t{0});
        free_[0] &= ~uint64_t{1};  // 0 is never a difference
        if (int64_t tail = L % 64; tail)
            free_.back() &= (uint64_t{1} << tail) - 1;
        free_count_ = L - 1;
        per_quota_ = quota_pool_ ? 2 * quota_pool_->w - 2 : 1;
        per_open_ = open_pool_ ? 2 * open_pool_->w - 2 : 1;
        int64_t max_w = std::max(quota_pool_ ? quota_pool_->w : 0,
                                 open_pool_ ? open_pool_->w : 0);
        discount_ = subgroup_union_mask(L, 2 * max_w - 2);
    }

    void run() {
        root_bound_ = bound(quota_);
        if (root_bound_ < 0) return;  // quota infeasible by counting
        dfs_quota(0);
    }

    bool found() const { return best_total_ >= 0; }
    bool complete() const { return !aborted_; }
    // The counting bound was met, so the result is optimal no matter what
    // part of the candidate space was explored.
    bool proved_optimal() const { return done_ && best_total_ >= root_bound_; }
    // The counting bound already rules out the quota at the root.
    bool root_infeasible() const { return root_bound_ < 0; }
    int64_t best() const { return best_total_; }
    int64_t nodes() const { return nodes_; }
    const std::vector<size_t>& best_quota_ids() const { return best_quota_; }
    const std::vector<size_t>& best_open_ids() const { return best_open_; }

private:
    // Optimistic total size given `rem` quota placements still owed.
    int64_t bound(int64_t rem) const {
        int64_t u = 0;
        for (size_t i = 0; i < words_; ++i)
            u += std::popcount(discount_[i] & free_[i]);
        int64_t b = free_count_ + u;
        if (rem > 0) {
            if (b < rem * per_quota_) return -1;
            b -= rem * per_quota_;
        }
        int64_t total = placed_total_ + rem;
        if (open_pool_) total += b / per_open_;
        return total;
    }

    bool charge() {
        if (++nodes_ > budget_) {
            aborted_ = true;
            return false;
        }
        return true;
    }

    bool fits(const uint64_t* m) const {
        for (size_t i = 0; i < words_; ++i)
            if (m[i] & ~free_[i]) return false;
        return true;
    }

    void place(const uint64_t* m, int32_t pc) {
        for (size_t i = 0; i < words_; ++i) free_[i] &= ~m[i];
        free_count_ -= pc;
    }
    void unplace(const uint64_t* m, int32_t pc) {
        for (size_t i = 0; i < words_; ++i) free_[i] |= m[i];
        free_count_ += pc;
    }

    void record() {
        if (placed_total_ > best_total_) {
            best_total_ = placed_total_;
            best_quota_ = chosen_quota_;
            best_open_ = chosen_open_;
        }
    }

    void dfs_quota(size_t next) {
        if (aborted_ || done_) return;
        int64_t rem = quota_ - static_cast<int64_t>(chosen_quota_.size());
        if (rem == 0) {
            if (open_pool_) {
                dfs_open(0);
            } else {
                record();
                done_ = true;  // existence settled; first packing is canonical
            }
            return;
        }
        int64_t b = bound(rem);
        if (b < 0 || b <= best_total_) return;
        const Pool& pool = *quota_pool_;
        for (size_t i = next; i + static_cast<size_t>(rem) <= pool.count; ++i) {
            if (!charge()) return;
            const uint64_t* m = pool.mask(i);
            if (!fits(m)) continue;
            place(m, pool.popcnt[i]);
            chosen_quota_.push_back(i);
            ++placed_total_;
            dfs_quota(i + 1);
            --placed_total_;
            chosen_quota_.pop_back();
            unplace(m, pool.popcnt[i]);
            if (aborted_ || done_) return;
        }
    }

    void dfs_open(size_t next) {
        if (aborted_ || done_) return;
        record();
        if (best_total_ >= root_bound_) {
            done_ = true;  // counting bound met: optimum proven
            return;
        }
        if (bound(0) <= best_total_) return;
        const Pool& pool = *open_pool_;
        for (size_t i = next; i < pool.count; ++i) {
            if (!charge()) return;
            const uint64_t* m = pool.mask(i);
            if (!fits(m)) continue;
            place(m, pool.popcnt[i]);
            chosen_open_.push_back(i);
            ++placed_total_;
            dfs_open(i + 1);
            --placed_total_;
            chosen_open_.pop_back();
            unplace(m, pool.popcnt[i]);
            if (aborted_ || done_) return;
        }
    }

    const Pool* quota_pool_;
    const Pool* open_pool_;
    int64_t quota_;
    size_t words_ = 0;
    std::vector<uint64_t> free_;
    std::vector<uint64_t> discount_;
    int64_t free_count_ = 0;
    int64_t per_quota_ = 1;
    int64_t per_open_ = 1;
    int64_t placed_total_ = 0;
    int64_t best_total_ = -1;
    int64_t root_bound_ = 0;
    int64_t nodes_ = 0;
    int64_t budget_ = 0;
    bool aborted_ = false;
    bool done_ = false;
    std::vector<size_t> chosen_quota_;
    std::vector<size_t> chosen_open_;
    std::vector<size_t> best_quota_;
    std::vector<size_t> best_open_;
};

void append_codewords(Code& code, const Pool& pool, const std::vector<size_t>& ids) {
    for (size_t id : ids) {
        const int32_t* e = pool.elems.data() + id * static_cast<size_t>(pool.w);
        std::vector<int64_t> elems(e, e + pool.w);
        Codeword cw = Codeword::from_elements(code.length, std::move(elems));
        if (pool.gens[id] >= 0) cw.generator = pool.gens[id];
        code.codewords.push_back(std::move(cw));
    }
}

Code search_witness(int64_t L, const std::string& name,
                    std::vector<std::pair<std::string, int64_t>> params,
                    const Pool* qp, const std::vector<size_t>& qids,
                    const Pool* op, const std::vector<size_t>& oids) {
    Code code;
    code.length = L;
    if (qp) append_codewords(code, *qp, qids);
    if (op) append_codewords(code, *op, oids);
    code.provenance.kind = "search";
    code.provenance.name = name;
    code.provenance.params = std::move(params);
    code.sort_canonical();
    return code;
}

void check_oracle_domain(int64_t L, int64_t max_weight, int64_t min_weight,
                         std::vector<std::string>& checked) {
    if (min_weight < 2)
        throw precondition_error("oracle: weights must be at least 2");
    checked.push_back("weights >= 2");
    if (L <= max_weight)
        throw precondition_error("oracle: length must exceed every weight");
    checked.push_back("L > max weight");
    int64_t cap = oracle_cap(max_weight);
    if (L > cap)
        throw precondition_error("oracle: L = " + std::to_string(L) +
                                 " exceeds the exhaustive-search cap " +
                                 std::to_string(cap));
    checked.push_back("L <= " + std::to_string(cap) + " (exhaustive-search cap)");
}

}  // namespace

Certificate k_exact_oracle(int64_t L, int64_t w, const OracleOptions& opts) {
    Certificate cert;
    check_oracle_domain(L, w, w, cert.checked_preconditions);
    int64_t left = opts.node_budget;
    bool truncated = false;
    Pool pool = build_full_pool(L, w, left, truncated);
    Packer packer(nullptr, 0, &pool, L, left);
    packer.run();
    bool exact = (packer.complete() && !truncated) || packer.proved_optimal();
    cert.claim = exact ? "K_exact" : "K_lower";
    cert.length = L;
    cert.w = w;
    cert.value = packer.best();
    int64_t nodes = opts.node_budget - left + packer.nodes();
    cert.justification = {"oracle", "k_exact_oracle", {{"L", L}, {"w", w}},
                          opts.node_budget, nodes, exact};
    cert.witness = search_witness(L, "k_exact_oracle", {{"L", L}, {"w", w}},
                                  nullptr, {}, &pool, packer.best_open_ids());
    return cert;
}

Certificate k_equi_oracle(int64_t L, int64_t w, const OracleOptions& opts) {
    Certificate cert;
    check_oracle_domain(L, w, w, cert.checked_preconditions);
    int64_t left = opts.node_budget;
    bool truncated = false;
    Pool pool = build_equi_pool(L, w, left, truncated);
    Packer packer(nullptr, 0, &pool, L, left);
    packer.run();
    bool exact = (packer.complete() && !truncated) || packer.proved_optimal();
    cert.claim = exact ? "K_exact" : "K_lower";
    cert.length = L;
    cert.w = w;
    cert.value = packer.best();
    int64_t nodes = opts.node_budget - left + packer.nodes();
    cert.justification = {"oracle", "k_equi_oracle",
                          {{"L", L}, {"w", w}, {"equi", 1}},
                          opts.node_budget, nodes, exact};
    cert.witness = search_witness(L, "k_equi_oracle",
                                  {{"L", L}, {"w", w}, {"equi", 1}},
                                  nullptr, {}, &pool, packer.best_open_ids());
    return cert;
}

Certificate k_mixed_oracle(int64_t L, int64_t w, int64_t w_star, int64_t n,
                           const OracleOptions& opts) {
    Certificate cert;
    if (w_star == w)
        throw precondition_error("k_mixed_oracle: w_star must differ from w");
    if (n < 0) throw precondition_error("k_mixed_oracle: n must be >= 0");
    check_oracle_domain(L, std::max(w, w_star), std::min(w, w_star),
                        cert.checked_preconditions);
    int64_t left = opts.node_budget;
    bool truncated = false;
    Pool quota_pool;
    if (n > 0) quota_pool = build_full_pool(L, w_star, left, truncated);
    Pool open_pool = build_full_pool(L, w, left, truncated);
    Packer packer(n > 0 ? &quota_pool : nullptr, n, &open_pool, L, left);
    packer.run();
    bool exact = (packer.complete() && !truncated) || packer.proved_optimal();
    if (!packer.found()) {
        if (!packer.root_infeasible() && (truncated || !packer.complete()))
            throw budget_error("k_mixed_oracle: node budget exhausted before any "
                               "packing with the required weight-" +
                               std::to_string(w_star) + " count was found");
        throw precondition_error(
            "k_mixed_oracle: no code of length " + std::to_string(L) +
            " has exactly " + std::to_string(n) + " codewords of weight " +
            std::to_string(w_star));
    }
    cert.claim = exact ? "K_mixed_exact" : "K_lower";
    cert.length = L;
    cert.w = w;
    cert.w_star = w_star;
    cert.n_star = n;
    cert.value = packer.best();
    int64_t nodes = opts.node_budget - left + packer.nodes();
    std::vector<std::pair<std::string, int64_t>> params{
        {"L", L}, {"w", w}, {"w_star", w_star}, {"n", n}};
    cert.justification = {"oracle", "k_mixed_oracle", params,
                          opts.node_budget, nodes, exact};
    cert.witness = search_witness(L, "k_mixed_oracle", params,
                                  n > 0 ? &quota_pool : nullptr,
                                  packer.best_quota_ids(), &open_pool,
                                  packer.best_open_ids());
    return cert;
}

namespace {

struct HypothesisLog {
    std::string theorem;
    std::vector<std::string> checked;

    void require(bool ok, const std::string& condition) {
        if (!ok)
            throw precondition_error("certify(" + theorem +
                                     "): hypothesis failed: " + condition);
        checked.push_back(condition);
    }
};

std::string num(int64_t v) { return std::to_string(v); }

void require_odd_prime(HypothesisLog& h, int64_t p) {
    h.require(p > 2 && p % 2 == 1 && nt::is_prime(p),
              "p = " + num(p) + " is an odd prime");
}

// Base of exactly m generators over Z_p, established by exhaustive search.
BaseCode certified_base(HypothesisLog& h, int64_t p, int64_t w, int64_t m) {
    BaseCode base = search_base(p, w, m);
    h.require(base.m() == m, "an equi-difference code of length " + num(p) +
                                 ", weight " + num(w) + " with " + num(m) +
                                 " codewords exists (found by search)");
    return base;
}

void validate_witness(const Code& witness, int64_t expected_size,
                      const std::string& tag) {
    if (!verify_cac(witness).ok || witness.size() != expected_size)
        throw std::logic_error("certify(" + tag + "): witness failed validation");
}

// A code over Z_len holding exactly n equi-difference weight-w codewords.
// Prefers lifting a maximum prime-length base; falls back to a direct
// search over Z_len when the lift is too small and len is within cap.
Code certified_equi_packing(HypothesisLog& h, int64_t p, int r, int64_t w,
                            int64_t n) {
    int64_t len = nt::pow_int(p, r);
    Code base_code;
    base_code.length = len;
    if (n == 0) {
        h.checked.push_back("n = 0 (empty base code)");
        return base_code;
    }
    BaseCode prime_base = search_base(p, w, std::nullopt);
    int64_t lifted = r == 1 ? prime_base.m()
                            : prime_base.m() * ((len - 1) / (p - 1));
    if (n <= lifted) {
        Code full = r == 1 ? base_as_code(prime_base)
                           : extend_to_pr(prime_base, r);
        base_code.codewords.assign(full.codewords.begin(),
                                   full.codewords.begin() + n);
        h.checked.push_back("a code of length " + num(len) + " with " + num(n) +
                            " equi-difference weight-" + num(w) +
                            " codewords exists (found by search)");
        return base_code;
    }
    if (r == 1)
        h.require(false, "a code of length " + num(len) + " with " + num(n) +
                             " equi-difference weight-" + num(w) +
                             " codewords exists (found by search)");
    if (len > oracle_cap(w))
        throw precondition_error(
            "certify(" + h.theorem + "): cannot establish the base hypothesis: " +
            num(len) + " exceeds the exhaustive-search cap");
    int64_t left = OracleOptions{}.node_budget;
    bool truncated = false;
    Pool pool = build_equi_pool(len, w, left, truncated);
    Packer packer(&pool, n, nullptr, len, left);
    packer.run();
    if (!packer.complete() && !packer.found())
        throw budget_error("certify(" + h.theorem +
                           "): base search exhausted its node budget");
    h.require(packer.found(), "a code of length " + num(len) + " with " +
                                  num(n) + " equi-difference weight-" + num(w) +
                                  " codewords exists (found by search)");
    append_codewords(base_code, pool, packer.best_quota_ids());
    base_code.sort_canonical();
    return base_code;
}

}  // namespace

Certificate certify(const CertifyRequest& req) {
    HypothesisLog h{req.theorem, {}};
    const int64_t p = req.p, w = req.w, d = req.d;
    const int r = req.r;
    Certificate cert;
    cert.justification.kind = "theorem";
    cert.justification.tag = req.theorem;
    cert.claim = "K_exact";
    cert.w = w;

    if (req.theorem == "main_w-1dpr" || req.theorem == "main_pr") {
        // main_pr is the d = w-1 specialisation with the base found by
        // search instead of coset structure.
        require_odd_prime(h, p);
        h.require(w >= 2, "w = " + num(w) + " >= 2");
        h.require(r >= 1, "r = " + num(r) + " >= 1");
        int64_t pr = nt::pow_int(p, r);
        if (req.theorem == "main_w-1dpr") {
            h.require(d >= 1 && (w - 1) % d == 0,
                      "d = " + num(d) + " divides w - 1 = " + num(w - 1));
            h.require((p - 1) % (2 * d) == 0,
                      "2d = " + num(2 * d) + " divides p - 1 = " + num(p - 1));
            h.require(p >= w, "p = " + num(p) + " >= w = " + num(w));
            h.require(check_sdr_conditions(p, w, d).ok,
                      "the signed residue sets hit every coset of the "
                      "index-" + num(2 * d) + " subgroup exactly once");
            cert.length = ((w - 1) / d) * pr;
            cert.value = (pr - 1) / (2 * d);
            cert.witness = construct_direct({p, r, w, d});
            cert.justification.params = {{"p", p}, {"r", r}, {"w", w}, {"d", d}};
        } else {
            h.require((p - 1) % (2 * w - 2) == 0,
                      "2w - 2 = " + num(2 * w - 2) + " divides p - 1 = " + num(p - 1));
            int64_t m = (p - 1) / (2 * w - 2);
            BaseCode base = certified_base(h, p, w, m);
            cert.length = pr;
            cert.value = (pr - 1) / (2 * w - 2);
            cert.witness = r == 1 ? base_as_code(base) : extend_to_pr(base, r);
            cert.justification.params = {{"p", p}, {"r", r}, {"w", w}, {"m", m}};
        }
    } else if (req.theorem == "main_wpr") {
        require_odd_prime(h, p);
        h.require(w >= 2, "w = " + num(w) + " >= 2");
        h.require(r >= 1, "r = " + num(r) + " >= 1");
        h.require((p - 1) % (2 * w - 2) == 0,
                  "2w - 2 = " + num(2 * w - 2) + " divides p - 1 = " + num(p - 1));
        h.require(check_wp_condition(p, w).ok,
                  "(i/p)((i-w)/p) = -1 for every i = 1..w-1");
        int64_t m = (p - 1) / (2 * w - 2);
        BaseCode base = certified_base(h, p, w, m);
        int64_t pr = nt::pow_int(p, r);
        cert.length = w * pr;
        cert.value = (pr - 1) / (2 * w - 2) + (pr - 1) / 2 + 1;
        cert.witness = construct_wpr(base, r);
        cert.justification.params = {{"p", p}, {"r", r}, {"w", w}, {"m", m}};
    } else if (req.theorem == "main_2w-1pr") {
        require_odd_prime(h, p);
        h.require(w >= 2, "w = " + num(w) + " >= 2");
        h.require(r >= 1, "r = " + num(r) + " >= 1");
        h.require((p - 1) % (2 * w - 2) == 0,
                  "2w - 2 = " + num(2 * w - 2) + " divides p - 1 = " + num(p - 1));
        int64_t m = (p - 1) / (2 * w - 2);
        BaseCode base = certified_base(h, p, w, m);
        int64_t pr = nt::pow_int(p, r);
        cert.length = (2 * w - 1) * pr;
        cert.value = pr + (pr - 1) / (2 * w - 2);
        if (p == 2 * w - 1) {
            // (2w-1)p^r = p^(r+1); the prime-power tower gives the same count.
            h.checked.push_back("p = 2w - 1: length is p^" + num(r + 1));
            cert.witness = extend_to_pr(base, r + 1);
        } else {
            h.checked.push_back("p = " + num(p) + " > 2w - 1 = " + num(2 * w - 1));
            cert.witness = construct_2w1pr(base, r);
        }
        cert.justification.params = {{"p", p}, {"r", r}, {"w", w}, {"m", m}};
    } else if (req.theorem == "main_2w-1p") {
        h.require(nt::is_prime(p), "p = " + num(p) + " is prime");
        h.require(w >= 2, "w = " + num(w) + " >= 2");
        h.require(w <= p && p < 2 * w - 1,
                  "w = " + num(w) + " <= p = " + num(p) + " < 2w - 1 = " + num(2 * w - 1));
        cert.length = (2 * w - 1) * p;
        cert.value = p + 1;
        cert.witness = construct_2w1p_small(p, w);
        cert.justification.params = {{"p", p}, {"w", w}};
    } else if (req.theorem == "mixed_w-1pr") {
        // Claims K((w-1)p^r, w-1; w, n') with n' = (p^r-1)/2 - n(w-2);
        // req.w_star in {w-1, w} is the weight of the base codewords.
        const int64_t ws = req.w_star, n = req.n;
        require_odd_prime(h, p);
        h.require(w >= 3, "w = " + num(w) + " >= 3");
        h.require(r >= 1, "r = " + num(r) + " >= 1");
        h.require(p >= 2 * w - 1, "p = " + num(p) + " >= 2w - 1 = " + num(2 * w - 1));
        h.require(ws == w - 1 || ws == w,
                  "base weight " + num(ws) + " is w - 1 or w");
        h.require(check_sdr_conditions(p, w, 1).ok,
                  "-1 is a quadratic non-residue and (i/p)((i-w+1)/p) = -1 "
                  "for every i = 1..w-2");
        int64_t pr = nt::pow_int(p, r);
        h.require(n >= 0 && n <= (pr - 1) / (2 * (ws - 1)),
                  "0 <= n = " + num(n) + " <= (p^r - 1)/(2(w* - 1)) = " +
                      num((pr - 1) / (2 * (ws - 1))));
        Code base_a = certified_equi_packing(h, p, r, ws, n);
        int64_t n_prime = (pr - 1) / 2 - n * (w - 2);
        cert.claim = "K_mixed_exact";
        cert.length = (w - 1) * pr;
        cert.w = w - 1;
        cert.w_star = w;
        cert.n_star = n_prime;
        cert.value = n + (pr + 1) / 2;
        cert.witness = mixed_w1pr(p, r, w, base_a);
        cert.justification.params = {
            {"p", p}, {"r", r}, {"w", w}, {"base_w", ws}, {"n", n},
            {"n_prime", n_prime}};
        auto weights = cert.witness->weight_multiset();
        if (weights[w] != n_prime)
            throw std::logic_error("certify(mixed_w-1pr): witness weight-" +
                                   num(w) + " count mismatch");
    } else if (req.theorem == "mixed_wpr" || req.theorem == "mixed_2w-1pr") {
        const int64_t ws = req.w_star;
        h.require(nt::is_prime(p), "p = " + num(p) + " is prime");
        h.require(w >= 2, "w = " + num(w) + " >= 2");
        h.require(r >= 1, "r = " + num(r) + " >= 1");
        h.require(w < ws, "w = " + num(w) + " < w* = " + num(ws));
        h.require((p - 1) % (2 * ws - 2) == 0,
                  "2w* - 2 = " + num(2 * ws - 2) + " divides p - 1 = " + num(p - 1));
        int64_t m = (p - 1) / (2 * ws - 2);
        int64_t pr = nt::pow_int(p, r);
        int64_t n_star = (pr - 1) / (2 * ws - 2);
        cert.claim = "K_mixed_exact";
        cert.w_star = ws;
        cert.n_star = n_star;
        if (req.theorem == "mixed_wpr") {
            h.require(check_wp_condition(p, w).ok,
                      "(i/p)((i-w)/p) = -1 for every i = 1..w-1");
            BaseCode base = certified_base(h, p, ws, m);
            cert.length = w * pr;
            cert.value = (pr + 1) / 2 + n_star;
            cert.witness = mixed_wpr(base, r, w);
        } else {
            h.require((ws - 1) % (2 * w - 1) == 0 || (2 * ws - 1) % (2 * w - 1) == 0,
                      "2w - 1 = " + num(2 * w - 1) + " divides w* - 1 or 2w* - 1");
            BaseCode base = certified_base(h, p, ws, m);
            cert.length = (2 * w - 1) * pr;
            cert.value = pr + n_star;
            cert.witness = mixed_2w1pr(base, r, w);
        }
        cert.justification.params = {
            {"p", p}, {"r", r}, {"w", w}, {"w_star", ws}, {"m", m}};
        auto weights = cert.witness->weight_multiset();
        if (weights[ws] != n_star)
            throw std::logic_error("certify(" + req.theorem +
                                   "): witness weight-" + num(ws) +
                                   " count mismatch");
    } else {
        throw precondition_error("certify: unknown theorem tag '" + req.theorem + "'");
    }

    validate_witness(*cert.witness, cert.value, req.theorem);
    cert.checked_preconditions = std::move(h.checked);
    return cert;
}

}  // namespace cac
