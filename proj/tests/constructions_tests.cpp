#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "cac/constructions.hpp"
#include "cac/core.hpp"
#include "cac/errors.hpp"

using namespace cac;

namespace {

std::vector<int64_t> generators_of(const Code& code) {
    std::vector<int64_t> gens;
    for (const auto& cw : code.codewords) {
        REQUIRE(cw.generator.has_value());
        gens.push_back(*cw.generator);
    }
    std::sort(gens.begin(), gens.end());
    return gens;
}

std::set<std::vector<int64_t>> element_sets(const Code& code) {
    std::set<std::vector<int64_t>> sets;
    for (const auto& cw : code.codewords) sets.insert(cw.elements);
    return sets;
}

}  // namespace

TEST_CASE("residue-class hypothesis reports") {
    CHECK(check_sdr_conditions(37, 7, 2).ok);
    CHECK(check_sdr_conditions(23, 4, 1).ok);
    CHECK(check_sdr_conditions(7, 4, 1).ok);

    auto rep = check_sdr_conditions(13, 4, 1);
    CHECK_FALSE(rep.ok);
    REQUIRE_FALSE(rep.sets.empty());
    CHECK_FALSE(rep.sets[0].sdr);  // {1,-1}: -1 is a square mod 13

    CHECK_THROWS_AS(check_sdr_conditions(36, 7, 2), precondition_error);  // p composite
    CHECK_THROWS_AS(check_sdr_conditions(37, 7, 4), precondition_error);  // d does not divide w-1
    CHECK_THROWS_AS(check_sdr_conditions(11, 7, 2), precondition_error);  // 2d does not divide p-1

    CHECK(check_wp_condition(5, 3).ok);
    CHECK(check_wp_condition(13, 3).ok);
    CHECK(check_wp_condition(47, 4).ok);
    CHECK_FALSE(check_wp_condition(13, 4).ok);
    CHECK_FALSE(check_wp_condition(17, 3).ok);  // 17 = 1 (mod 8)
    auto wp = check_wp_condition(13, 4);
    CHECK(wp.factors.size() == 3);
}

TEST_CASE("direct product construction, r = 1") {
    Code code = construct_direct({37, 1, 7, 2});
    CHECK(code.length == 111);
    CHECK(code.size() == 9);  // (p - 1)/(2d)
    CHECK(generators_of(code) ==
          std::vector<int64_t>{1, 7, 10, 16, 34, 46, 49, 70, 100});
    CHECK(verify_cac(code).ok);
    for (const auto& cw : code.codewords) CHECK(cw.weight() == 7);
    CHECK(code.provenance.kind == "construction");
    CHECK_FALSE(code.provenance.generator_pairs.empty());
}

TEST_CASE("direct product construction, r = 2") {
    Code code = construct_direct({37, 2, 7, 2});
    CHECK(code.length == 4107);
    CHECK(code.size() == 342);  // (37^2 - 1)/4
    CHECK(verify_cac(code).ok);

    auto gens = generators_of(code);
    auto has = [&](int64_t g) { return std::binary_search(gens.begin(), gens.end(), g); };
    // depth-0 digits (b = 0) and the pure-37 layer (a = 0)
    for (int64_t g : {1, 7, 10, 16, 34, 1378, 1381, 1402, 2764}) CHECK(has(g));
    for (int64_t g : {37, 259, 370, 592, 1258, 1702, 1813, 2590, 3700}) CHECK(has(g));
}

TEST_CASE("direct construction rejects broken hypotheses") {
    CHECK_THROWS_AS(construct_direct({13, 1, 4, 1}), precondition_error);  // -1 is a square
    CHECK_THROWS_AS(construct_direct({37, 1, 7, 4}), precondition_error);
    CHECK_THROWS_AS(construct_direct({2, 1, 3, 1}), precondition_error);
}

TEST_CASE("base generator search is lexicographically pinned") {
    auto base37 = search_base(37, 4);
    CHECK(base37.generators == std::vector<int64_t>{1, 6, 8, 10, 11, 14});
    auto base47 = search_base(47, 4);
    CHECK(base47.generators == std::vector<int64_t>{1, 4, 11, 19, 20, 21});
    auto tiny = search_base(7, 4);
    CHECK(tiny.generators == std::vector<int64_t>{1});

    auto forced = search_base(37, 4, 3);
    CHECK(forced.m() == 3);
    CHECK(verify_cac(base_as_code(forced)).ok);
    CHECK(search_base(37, 4, 0).m() == 0);
    CHECK_THROWS_AS(search_base(37, 4, 7), precondition_error);  // only 6 exist
    CHECK_THROWS_AS(search_base(4, 3), precondition_error);      // p not prime
    CHECK_THROWS_AS(search_base(3, 3), precondition_error);      // p < 2w - 1
}

TEST_CASE("prime-power extension") {
    auto base = search_base(37, 4);
    Code c1 = extend_to_pr(base, 1);
    CHECK(c1.length == 37);
    CHECK(c1.size() == 6);
    CHECK(verify_cac(c1).ok);
    CHECK(element_sets(c1).count({0, 1, 2, 3}) == 1);

    Code c2 = extend_to_pr(base, 2);
    CHECK(c2.length == 1369);
    CHECK(c2.size() == 6 * 38);  // m (p^2 - 1)/(p - 1)
    CHECK(verify_cac(c2).ok);
}

TEST_CASE("length-4p extension reproduces the reference generators") {
    Code code = construct_wpr(search_base(47, 4), 1);
    CHECK(code.length == 188);
    CHECK(code.size() == 30);
    CHECK(verify_cac(code).ok);

    const std::vector<int64_t> gamma_hat = {4, 20, 48, 68, 152, 160};
    const std::vector<int64_t> q_hat = {1,  9,  17, 21,  25,  37,  49,  53,  61,  65,  81, 89,
                                        97, 101, 121, 145, 149, 153, 157, 165, 169, 173, 177};
    std::vector<int64_t> expected = gamma_hat;
    expected.insert(expected.end(), q_hat.begin(), q_hat.end());
    expected.push_back(141);
    std::sort(expected.begin(), expected.end());
    CHECK(generators_of(code) == expected);
}

TEST_CASE("length-7p extension reproduces the reference generators") {
    Code code = construct_2w1pr(search_base(37, 4), 1);
    CHECK(code.length == 259);
    CHECK(code.size() == 43);
    CHECK(verify_cac(code).ok);

    std::vector<int64_t> expected = {14, 84, 112, 119, 154, 196};
    for (int64_t g = 1; g <= 253; g += 7) expected.push_back(g);
    std::sort(expected.begin(), expected.end());
    CHECK(generators_of(code) == expected);

    CHECK_THROWS_AS(construct_2w1pr(search_base(5, 3), 1), precondition_error);  // needs p > 2w-1
}

TEST_CASE("small-prime length-(2w-1)p construction") {
    Code code = construct_2w1p_small(5, 4);
    CHECK(code.length == 35);
    CHECK(code.size() == 6);  // p + 1
    CHECK(verify_cac(code).ok);

    Code tiny = construct_2w1p_small(2, 2);
    CHECK(tiny.length == 6);
    CHECK(tiny.size() == 3);
    CHECK(verify_cac(tiny).ok);

    CHECK_THROWS_AS(construct_2w1p_small(7, 4), precondition_error);  // p must be < 2w-1
    CHECK_THROWS_AS(construct_2w1p_small(3, 4), precondition_error);  // p must be >= w
}

TEST_CASE("mixed-weight rebuild matches the reference length-69 code") {
    Code base;
    base.length = 23;
    base.codewords = {Codeword::equi(23, 1, 7)};  // {0,...,6}
    Code code = mixed_w1pr(23, 1, 4, base);

    CHECK(code.length == 69);
    CHECK(code.size() == 13);
    CHECK(verify_cac(code).ok);
    auto weights = code.weight_multiset();
    CHECK(weights[3] == 7);
    CHECK(weights[4] == 5);
    CHECK(weights[7] == 1);

    const std::set<std::vector<int64_t>> expected = {
        {0, 3, 6, 24, 27, 48, 51},  // planted weight-7 codeword
        {0, 1, 2},   {0, 25, 50}, {0, 35, 52}, {0, 31, 62},  // truncated
        {0, 41, 55}, {0, 16, 32}, {0, 23, 46},               // ... and the extra one
        {0, 9, 29, 49}, {0, 4, 8, 12}, {0, 36, 47, 58},      // untouched survivors
        {0, 13, 26, 39}, {0, 54, 59, 64},
    };
    CHECK(element_sets(code) == expected);
}

TEST_CASE("mixed-weight rebuild rejects unusable bases") {
    Code exceptional;
    exceptional.length = 23;
    exceptional.codewords = {Codeword::equi(23, 1, 13)};  // differences cover Z_23^*
    CHECK_THROWS_AS(mixed_w1pr(23, 1, 4, exceptional), precondition_error);

    Code fine;
    fine.length = 13;
    fine.codewords = {Codeword::equi(13, 1, 7)};
    CHECK_THROWS_AS(mixed_w1pr(13, 1, 4, fine), precondition_error);  // -1 is a square mod 13

    Code nonequi;
    nonequi.length = 23;
    nonequi.codewords = {Codeword::from_elements(23, {0, 1, 5})};
    CHECK_THROWS_AS(mixed_w1pr(23, 1, 4, nonequi), precondition_error);
}

TEST_CASE("mixed-weight fiber constructions") {
    auto base7 = search_base(7, 4);  // single generator {1}
    Code wpr = mixed_wpr(base7, 1, 2);
    CHECK(wpr.length == 14);
    CHECK(wpr.size() == 5);  // (p+1)/2 of weight 2, one of weight 4
    CHECK(verify_cac(wpr).ok);
    auto wm = wpr.weight_multiset();
    CHECK(wm[2] == 4);
    CHECK(wm[4] == 1);

    Code tw = mixed_2w1pr(base7, 1, 2);
    CHECK(tw.length == 21);
    CHECK(tw.size() == 8);  // p of weight 2, one of weight 4
    CHECK(verify_cac(tw).ok);
    wm = tw.weight_multiset();
    CHECK(wm[2] == 7);
    CHECK(wm[4] == 1);

    Code tw37 = mixed_2w1pr(search_base(37, 4), 1, 2);
    CHECK(tw37.length == 111);
    CHECK(tw37.size() == 43);
    CHECK(verify_cac(tw37).ok);
}
