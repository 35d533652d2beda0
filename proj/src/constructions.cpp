#include "cac/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "cac/core.hpp"
#include "cac/errors.hpp"
#include "cac/numtheory.hpp"

namespace cac {

using nt::crt_join;
using nt::legendre;
using nt::lift_set;
using nt::mod_reduce;
using nt::pow_int;

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw precondition_error(what);
}

std::vector<int64_t> quadratic_residues(int64_t p) {
    std::vector<int64_t> q;
    q.reserve(static_cast<size_t>((p - 1) / 2));
    for (int64_t x = 1; x < p; ++x)
        if (legendre(x, p) == 1) q.push_back(x);
    return q;
}

// Pairwise-disjointness of the difference sets induced by equi-difference
// generators over Z_p; cheap sanity gate for every base-consuming extension.
void validate_base(const BaseCode& base) {
    require(base.p >= 2 && nt::is_prime(base.p), "base code: p must be prime");
    require(base.w >= 1 && base.w <= base.p, "base code: weight out of range");
    std::vector<bool> used(static_cast<size_t>(base.p), false);
    std::set<int64_t> seen;
    for (int64_t g : base.generators) {
        require(g >= 1 && g < base.p, "base code: generator out of range");
        require(seen.insert(g).second, "base code: repeated generator");
        for (int64_t j = 1; j < base.w; ++j) {
            for (int64_t v : {nt::mul_mod(j, g, base.p), base.p - nt::mul_mod(j, g, base.p)}) {
                require(v != 0, "base code: degenerate difference");
                require(!used[static_cast<size_t>(v)],
                        "base code: difference sets overlap (not a conflict-avoiding code)");
                used[static_cast<size_t>(v)] = true;
            }
        }
    }
}

void append_param(Provenance& prov, const char* k, int64_t v) {
    prov.params.emplace_back(k, v);
}

}  // namespace

SdrConditionReport check_sdr_conditions(int64_t p, int64_t w, int64_t d) {
    require(d >= 1 && w >= 2, "sdr conditions: need w >= 2 and d >= 1");
    require((w - 1) % d == 0, "sdr conditions: d must divide w-1");
    require(nt::is_prime(p) && p % 2 == 1, "sdr conditions: p must be an odd prime");
    require((p - 1) % (2 * d) == 0, "sdr conditions: 2d must divide p-1");
    require(p >= w, "sdr conditions: p must be at least w");

    auto cs = nt::coset_system(p, 2 * d);
    SdrConditionReport rep{p, w, d, true, {}};

    auto add_set = [&](int64_t index, std::vector<int64_t> values) {
        SdrSetReport sr{index, values, {}, false};
        for (int64_t v : values) {
            int64_t r = mod_reduce(v, p);
            sr.labels.push_back(r == 0 ? -1 : cs.label(r));
        }
        sr.sdr = nt::is_sdr(values, cs);
        rep.ok = rep.ok && sr.sdr;
        rep.sets.push_back(std::move(sr));
    };

    std::vector<int64_t> t0;
    for (int64_t j = 1; j <= d; ++j) {
        t0.push_back(j);
        t0.push_back(-j);
    }
    add_set(0, std::move(t0));

    int64_t step = (w - 1) / d;
    for (int64_t i = 1; i < step; ++i) {
        std::vector<int64_t> ti;
        for (int64_t j = 0; j < d; ++j) ti.push_back(i + j * step);
        for (int64_t j = 0; j < d; ++j) ti.push_back(i - (j + 1) * step);
        add_set(i, std::move(ti));
    }
    return rep;
}

WpConditionReport check_wp_condition(int64_t p, int64_t w) {
    require(w >= 2, "wp condition: need w >= 2");
    require(nt::is_prime(p) && p % 2 == 1, "wp condition: p must be an odd prime");
    WpConditionReport rep{p, w, true, {}};
    for (int64_t i = 1; i < w; ++i) {
        int lhs = legendre(i, p);
        int rhs = legendre(i - w, p);
        rep.factors.push_back({i, lhs, rhs});
        if (lhs * rhs != -1) rep.ok = false;
    }
    return rep;
}

Code base_as_code(const BaseCode& base) {
    validate_base(base);
    Code code;
    code.length = base.p;
    for (int64_t g : base.generators)
        code.codewords.push_back(Codeword::equi(base.p, g, base.w));
    code.provenance.kind = "manual";
    code.provenance.name = "base";
    append_param(code.provenance, "p", base.p);
    append_param(code.provenance, "w", base.w);
    code.sort_canonical();
    return code;
}

Code construct_direct(const DirectParams& params) {
    auto [p, r, w, d] = params;
    require(r >= 1, "direct construction: need r >= 1");
    SdrConditionReport cond = check_sdr_conditions(p, w, d);
    if (!cond.ok) {
        for (const auto& s : cond.sets)
            if (!s.sdr)
                throw precondition_error("direct construction: condition set "
                                         + std::to_string(s.index)
                                         + " is not a coset transversal");
    }

    int64_t a = (w - 1) / d;
    int64_t pr = pow_int(p, r);
    int64_t length = a * pr;

    auto gamma = nt::coset_system(p, 2 * d).coset(0);  // H^{2d}(p)
    Code code;
    code.length = length;
    code.provenance.kind = "construction";
    code.provenance.name = "direct";
    append_param(code.provenance, "p", p);
    append_param(code.provenance, "r", r);
    append_param(code.provenance, "w", w);
    append_param(code.provenance, "d", d);
    for (int64_t g : lift_set(gamma, p, r)) {
        code.codewords.push_back(Codeword::equi(length, crt_join(1, g, a, pr), w));
        code.provenance.generator_pairs.emplace_back(1 % a, g);
    }
    code.sort_canonical();
    return code;
}

BaseCode search_base(int64_t p, int64_t w, std::optional<int64_t> target_m) {
    require(nt::is_prime(p), "base search: p must be prime");
    require(w >= 2 && p >= 2 * w - 1, "base search: need p >= 2w-1");
    if (target_m && *target_m < 0) throw precondition_error("base search: bad target");

    // g and p-g induce the same difference set; the lexicographically first
    // optimum therefore only uses g <= (p-1)/2, and always contains g = 1
    // (multiply any solution by the inverse of its least generator).
    int64_t half = (p - 1) / 2;
    std::vector<std::vector<int64_t>> diffs(static_cast<size_t>(half) + 1);
    for (int64_t g = 1; g <= half; ++g) {
        for (int64_t j = 1; j < w; ++j) {
            int64_t v = nt::mul_mod(j, g, p);
            diffs[static_cast<size_t>(g)].push_back(v);
            diffs[static_cast<size_t>(g)].push_back(p - v);
        }
    }

    std::vector<bool> used(static_cast<size_t>(p), false);
    std::vector<int64_t> chosen, best;
    bool found_target = false;

    auto fits = [&](int64_t g) {
        for (int64_t v : diffs[static_cast<size_t>(g)])
            if (used[static_cast<size_t>(v)]) return false;
        return true;
    };
    auto place = [&](int64_t g, bool on) {
        for (int64_t v : diffs[static_cast<size_t>(g)]) used[static_cast<size_t>(v)] = on;
    };

    auto dfs = [&](auto&& self, int64_t next) -> void {
        if (found_target) return;
        if (target_m && static_cast<int64_t>(chosen.size()) == *target_m) {
            best = chosen;
            found_target = true;
            return;
        }
        if (!target_m && chosen.size() > best.size()) best = chosen;
        std::vector<int64_t> viable;
        for (int64_t g = next; g <= half; ++g)
            if (fits(g)) viable.push_back(g);
        for (size_t i = 0; i < viable.size(); ++i) {
            // Even taking every still-viable candidate cannot beat the
            // incumbent (or reach the target).
            int64_t reach = static_cast<int64_t>(chosen.size() + viable.size() - i);
            if (target_m ? reach < *target_m
                         : reach <= static_cast<int64_t>(best.size()))
                break;
            int64_t g = viable[i];
            if (!fits(g)) continue;  // blocked by a pick made earlier in this loop
            place(g, true);
            chosen.push_back(g);
            self(self, g + 1);
            chosen.pop_back();
            place(g, false);
            if (found_target) return;
        }
    };

    if (target_m && *target_m == 0) {
        best.clear();
    } else {
        // Any optimum is multiplier-equivalent to one containing 1.
        place(1, true);
        chosen.push_back(1);
        dfs(dfs, 2);
        if (target_m && !found_target)
            throw precondition_error("base search: no generator set of size "
                                     + std::to_string(*target_m) + " exists");
    }

    BaseCode base{p, w, best};
    std::sort(base.generators.begin(), base.generators.end());
    return base;
}

Code extend_to_pr(const BaseCode& base, int r) {
    require(r >= 1, "p^r extension: need r >= 1");
    require(base.p >= 2 * base.w - 1, "p^r extension: need p >= 2w-1");
    validate_base(base);
    int64_t pr = pow_int(base.p, r);
    Code code;
    code.length = pr;
    code.provenance.kind = "construction";
    code.provenance.name = "pr";
    append_param(code.provenance, "p", base.p);
    append_param(code.provenance, "r", r);
    append_param(code.provenance, "w", base.w);
    append_param(code.provenance, "m", base.m());
    if (!base.generators.empty())
        for (int64_t g : lift_set(base.generators, base.p, r))
            code.codewords.push_back(Codeword::equi(pr, g, base.w));
    code.sort_canonical();
    return code;
}

Code construct_wpr(const BaseCode& base, int r) {
    require(r >= 1, "wp^r construction: need r >= 1");
    const int64_t p = base.p, w = base.w;
    require(p >= 2 * w - 1, "wp^r construction: need p >= 2w-1");
    validate_base(base);
    require(check_wp_condition(p, w).ok,
            "wp^r construction: quadratic character condition fails");

    int64_t pr = pow_int(p, r);
    int64_t length = w * pr;
    Code code;
    code.length = length;
    code.provenance.kind = "construction";
    code.provenance.name = "wpr";
    append_param(code.provenance, "p", p);
    append_param(code.provenance, "r", r);
    append_param(code.provenance, "w", w);
    append_param(code.provenance, "m", base.m());

    auto push = [&](int64_t x, int64_t y) {
        code.codewords.push_back(Codeword::equi(length, crt_join(x, y, w, pr), w));
        code.provenance.generator_pairs.emplace_back(x, y);
    };
    if (!base.generators.empty())
        for (int64_t g : lift_set(base.generators, p, r)) push(0, g);
    for (int64_t g : lift_set(quadratic_residues(p), p, r)) push(1, g);
    push(1, 0);
    code.sort_canonical();
    return code;
}

Code construct_2w1pr(const BaseCode& base, int r) {
    require(r >= 1, "(2w-1)p^r construction: need r >= 1");
    const int64_t p = base.p, w = base.w;
    require(p > 2 * w - 1, "(2w-1)p^r construction: need p > 2w-1");
    validate_base(base);

    int64_t pr = pow_int(p, r);
    int64_t a = 2 * w - 1;
    int64_t length = a * pr;
    Code code;
    code.length = length;
    code.provenance.kind = "construction";
    code.provenance.name = "2w1pr";
    append_param(code.provenance, "p", p);
    append_param(code.provenance, "r", r);
    append_param(code.provenance, "w", w);
    append_param(code.provenance, "m", base.m());

    auto push = [&](int64_t x, int64_t y) {
        code.codewords.push_back(Codeword::equi(length, crt_join(x, y, a, pr), w));
        code.provenance.generator_pairs.emplace_back(x, y);
    };
    if (!base.generators.empty())
        for (int64_t g : lift_set(base.generators, p, r)) push(0, g);
    for (int64_t g = 0; g < pr; ++g) push(1, g);
    code.sort_canonical();
    return code;
}

Code construct_2w1p_small(int64_t p, int64_t w) {
    require(nt::is_prime(p), "(2w-1)p small construction: p must be prime");
    require(w >= 2 && w <= p && p < 2 * w - 1,
            "(2w-1)p small construction: need w <= p < 2w-1");
    int64_t a = 2 * w - 1;
    int64_t length = a * p;
    Code code;
    code.length = length;
    code.provenance.kind = "construction";
    code.provenance.name = "2w1p-small";
    append_param(code.provenance, "p", p);
    append_param(code.provenance, "w", w);
    auto push = [&](int64_t x, int64_t y) {
        code.codewords.push_back(Codeword::equi(length, crt_join(x, y, a, p), w));
        code.provenance.generator_pairs.emplace_back(x, y);
    };
    for (int64_t g = 0; g < p; ++g) push(1, g);
    push(0, 1);
    code.sort_canonical();
    return code;
}

Code mixed_w1pr(int64_t p, int r, int64_t w, const Code& base_a) {
    require(r >= 1 && w >= 2, "mixed rebuild: need r >= 1 and w >= 2");
    SdrConditionReport cond = check_sdr_conditions(p, w, 1);
    require(cond.ok, "mixed rebuild: quadratic residue conditions fail");
    int64_t pr = pow_int(p, r);
    require(base_a.length == pr, "mixed rebuild: base code length must be p^r");
    require(verify_cac(base_a).ok, "mixed rebuild: base is not a conflict-avoiding code");

    int64_t a = w - 1;
    int64_t length = a * pr;
    int64_t inv_w1 = nt::inv_mod(w - 1, pr);

    // The direct-construction codewords, indexed by their Z_{p^r} generator.
    std::vector<int64_t> sq = lift_set(quadratic_residues(p), p, r);
    std::set<int64_t> removed;

    Code code;
    code.length = length;
    code.provenance.kind = "construction";
    code.provenance.name = "mixed-w1pr";
    append_param(code.provenance, "p", p);
    append_param(code.provenance, "r", r);
    append_param(code.provenance, "w", w);
    append_param(code.provenance, "n", base_a.size());

    auto is_square_lift = [&](int64_t c) {
        return legendre(nt::p_adic_profile(c, p, r).digit, p) == 1;
    };

    for (const Codeword& cw : base_a.codewords) {
        require(cw.generator.has_value(),
                "mixed rebuild: base codewords must be equi-difference with generators");
        require(!classify_exceptional(cw).exceptional,
                "mixed rebuild: exceptional base codewords are not supported");
        // Replant the codeword on the (0,.) fiber.
        std::vector<int64_t> elems;
        for (int64_t e : cw.elements) elems.push_back(crt_join(0, e, a, pr));
        Codeword t = Codeword::from_elements(length, std::move(elems));
        t.generator = crt_join(0, *cw.generator, a, pr);
        code.codewords.push_back(std::move(t));
        code.provenance.generator_pairs.emplace_back(0, *cw.generator);

        // Each transferred difference +-k*a_i frees one quadratic-residue
        // codeword, found through (w-1)g = +-k*a_i.
        for (int64_t k = 1; k < cw.weight(); ++k) {
            int64_t u = nt::mul_mod(nt::mul_mod(k, *cw.generator, pr), inv_w1, pr);
            int64_t v = pr - u;
            bool qu = is_square_lift(u), qv = is_square_lift(v);
            require(qu != qv, "mixed rebuild: quadratic residue choice not exclusive");
            int64_t g = qu ? u : v;
            require(removed.insert(g).second,
                    "mixed rebuild: generator freed twice (base differences collide)");
        }
    }

    // Truncated weight-(w-1) codewords for the freed generators, plus {(j,0)}.
    auto prefix_multiples = [&](int64_t gen, int64_t count) {
        std::vector<int64_t> elems;
        for (int64_t j = 0; j < count; ++j) elems.push_back(nt::mul_mod(j, gen, length));
        Codeword cw = Codeword::from_elements(length, std::move(elems));
        cw.generator = gen;
        return cw;
    };
    for (int64_t g : removed)
        code.codewords.push_back(prefix_multiples(crt_join(1, g, a, pr), w - 1));
    code.codewords.push_back(prefix_multiples(crt_join(1, 0, a, pr), w - 1));

    // Surviving full-weight codewords.
    for (int64_t g : sq)
        if (!removed.contains(g))
            code.codewords.push_back(Codeword::equi(length, crt_join(1, g, a, pr), w));

    code.sort_canonical();
    return code;
}

namespace {

// Shared tail of the two fiber-swap constructions: weight-w* codewords from
// the lifted base on the (0,.) fiber, weight-w codewords from `others`.
// For r >= 2 the lift argument additionally needs p >= 2w*-1: inside one
// layer the multipliers +-1..+-(w*-1) must stay distinct mod p.
Code mixed_fiber_swap(const BaseCode& base, int r, int64_t w, int64_t cofactor,
                      const char* name,
                      const std::vector<std::pair<int64_t, int64_t>>& others) {
    validate_base(base);
    const int64_t p = base.p, w_star = base.w;
    if (r >= 2 && p < 2 * w_star - 1)
        throw precondition_error(std::string(name)
                                 + ": lifting a weight-" + std::to_string(w_star)
                                 + " base to r >= 2 requires p >= 2w*-1");
    int64_t pr = pow_int(p, r);
    int64_t length = cofactor * pr;

    Code code;
    code.length = length;
    code.provenance.kind = "construction";
    code.provenance.name = name;
    Provenance& prov = code.provenance;
    prov.params.emplace_back("p", p);
    prov.params.emplace_back("r", r);
    prov.params.emplace_back("w", w);
    prov.params.emplace_back("w_star", w_star);
    prov.params.emplace_back("m", base.m());

    if (!base.generators.empty()) {
        for (int64_t g : lift_set(base.generators, p, r)) {
            code.codewords.push_back(
                Codeword::equi(length, crt_join(0, g, cofactor, pr), w_star));
            prov.generator_pairs.emplace_back(0, g);
        }
    }
    for (auto [x, y] : others) {
        code.codewords.push_back(Codeword::equi(length, crt_join(x, y, cofactor, pr), w));
        prov.generator_pairs.emplace_back(x, y);
    }
    code.sort_canonical();
    return code;
}

}  // namespace

Code mixed_wpr(const BaseCode& base, int r, int64_t w) {
    require(r >= 1 && w >= 2, "mixed wp^r: need r >= 1 and w >= 2");
    require(base.p >= 2 * w - 1, "mixed wp^r: need p >= 2w-1");
    require(check_wp_condition(base.p, w).ok,
            "mixed wp^r: quadratic character condition fails");
    std::vector<std::pair<int64_t, int64_t>> others;
    for (int64_t g : lift_set(quadratic_residues(base.p), base.p, r))
        others.emplace_back(1, g);
    others.emplace_back(1, 0);
    return mixed_fiber_swap(base, r, w, w, "mixed-wpr", others);
}

Code mixed_2w1pr(const BaseCode& base, int r, int64_t w) {
    require(r >= 1 && w >= 2, "mixed (2w-1)p^r: need r >= 1 and w >= 2");
    require(base.p > 2 * w - 1, "mixed (2w-1)p^r: need p > 2w-1");
    int64_t pr = pow_int(base.p, r);
    std::vector<std::pair<int64_t, int64_t>> others;
    for (int64_t g = 0; g < pr; ++g) others.emplace_back(1, g);
    return mixed_fiber_swap(base, r, w, 2 * w - 1, "mixed-2w1pr", others);
}

}  // namespace cac
