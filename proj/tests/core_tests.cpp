#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <vector>

#include "cac/core.hpp"
#include "cac/errors.hpp"

using namespace cac;

TEST_CASE("codeword construction and normal form") {
    auto cw = Codeword::from_elements(21, {13, 0, 2, 11});
    CHECK(cw.elements == std::vector<int64_t>{0, 2, 11, 13});
    CHECK(cw.weight() == 4);
    CHECK(cw.contains(11));
    CHECK_FALSE(cw.contains(1));

    // multiples of 24 in Z_69: {0,24,48,3,27,51,6}
    auto t1 = Codeword::equi(69, 24, 7);
    CHECK(t1.elements == std::vector<int64_t>{0, 3, 6, 24, 27, 48, 51});
    CHECK(t1.generator == 24);

    CHECK_THROWS_AS(Codeword::equi(10, 5, 3), precondition_error);  // 2*5 = 0
    CHECK_THROWS_AS(Codeword::from_elements(5, {}), precondition_error);

    auto shifted = Codeword::from_elements(12, {3, 4, 6});
    CHECK(shifted.normalized().elements == std::vector<int64_t>{0, 1, 3});
}

TEST_CASE("difference sets") {
    auto cw = Codeword::from_elements(21, {0, 1, 2, 3});
    CHECK(diff_star(cw) == std::vector<int64_t>{1, 2, 3, 18, 19, 20});

    auto mask = difference_mask(cw);
    CHECK(mask.count() == 6);
    for (int64_t d : {1, 2, 3, 18, 19, 20}) CHECK(mask.test(d));
    CHECK_FALSE(mask.test(0));
    CHECK_FALSE(mask.test(4));
}

TEST_CASE("conflict detection") {
    Code good;
    good.length = 21;
    good.codewords = {Codeword::equi(21, 1, 4), Codeword::equi(21, 4, 4), Codeword::equi(21, 5, 4)};
    auto verdict = verify_cac(good);
    CHECK(verdict.ok);
    CHECK_FALSE(verdict.conflict.has_value());

    Code bad;
    bad.length = 12;
    bad.codewords = {Codeword::from_elements(12, {0, 1, 2}), Codeword::from_elements(12, {0, 3, 4})};
    verdict = verify_cac(bad);
    REQUIRE_FALSE(verdict.ok);
    REQUIRE(verdict.conflict.has_value());
    CHECK(verdict.conflict->i == 0);
    CHECK(verdict.conflict->j == 1);
    CHECK(verdict.conflict->difference == 1);

    // duplicated codeword is a conflict with itself shifted: {1,2} vs {3,4} share 1 too
    Code dup;
    dup.length = 10;
    dup.codewords = {Codeword::from_elements(10, {0, 1}), Codeword::from_elements(10, {0, 1})};
    CHECK_FALSE(verify_cac(dup).ok);
}

TEST_CASE("stabilizers of difference sets at length 60") {
    struct Row {
        std::vector<int64_t> s, dstar, stab;
        bool exceptional;
    };
    // weight-4 subsets of Z_60 exercising every legal stabilizer order
    const std::vector<Row> rows = {
        {{0, 15, 30, 45}, {15, 30, 45}, {0, 15, 30, 45}, true},
        {{0, 12, 24, 36}, {12, 24, 36, 48}, {0, 12, 24, 36, 48}, true},
        {{0, 10, 20, 30}, {10, 20, 30, 40, 50}, {0, 10, 20, 30, 40, 50}, true},
        {{0, 8, 30, 38}, {8, 22, 30, 38, 52}, {0, 30}, true},
        {{0, 8, 16, 24}, {8, 16, 24, 36, 44, 52}, {0}, false},
    };
    for (const auto& row : rows) {
        auto rep = classify_exceptional(Codeword::from_elements(60, row.s));
        CHECK(rep.dstar == row.dstar);
        CHECK(rep.stab == row.stab);
        CHECK(rep.exceptional == row.exceptional);
        if (rep.exceptional) {
            CHECK(rep.stab.size() >= 2);
            CHECK(rep.stab.size() <= 6);  // 2w - 2
        }
    }
}

TEST_CASE("stabilizer arithmetic") {
    CHECK(subgroup_of_order(60, 2) == std::vector<int64_t>{0, 30});
    CHECK(subgroup_of_order(60, 5) == std::vector<int64_t>{0, 12, 24, 36, 48});
    CHECK_THROWS_AS(subgroup_of_order(60, 7), precondition_error);

    const std::vector<int64_t> t = {0, 10, 20, 30, 40, 50};
    CHECK(stabilizer(t, 60) == t);
    const std::vector<int64_t> single = {7};
    CHECK(stabilizer(single, 60) == std::vector<int64_t>{0});
}

TEST_CASE("sumset bound") {
    // subgroup-heavy pairs are the tight cases
    const std::vector<int64_t> a = {0, 15, 30, 45}, b = {0, 30};
    CHECK(kneser_check(a, b, 60));
    const std::vector<int64_t> c = {0, 1, 2}, d = {5, 9};
    CHECK(kneser_check(c, d, 60));
    const std::vector<int64_t> full = {0, 1, 2, 3, 4, 5};
    CHECK(kneser_check(full, full, 6));
}
