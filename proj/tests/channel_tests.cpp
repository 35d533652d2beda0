#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "cac/channel.hpp"
#include "cac/constructions.hpp"
#include "cac/core.hpp"
#include "cac/errors.hpp"

using namespace cac;

namespace {

int64_t count_kind(const ChannelTrace& trace, SlotKind kind) {
    int64_t n = 0;
    for (const auto& slot : trace.slots)
        if (slot.kind == kind) ++n;
    return n;
}

int64_t successes_of(const ChannelTrace& trace, int64_t user) {
    int64_t n = 0;
    for (const auto& slot : trace.slots)
        if (slot.kind == SlotKind::success && slot.users[0] == user) ++n;
    return n;
}

const WeightClassStats& stats_for(const GuaranteeReport& report, int64_t w) {
    for (const auto& entry : report.per_weight)
        if (entry.weight == w) return entry;
    throw std::out_of_range("no stats for weight " + std::to_string(w));
}

}  // namespace

TEST_CASE("single transmitter always succeeds") {
    Codeword cw = Codeword::equi(21, 1, 4);
    ChannelTrace trace = simulate({{0, cw, 5, true}}, 42);
    CHECK(trace.length == 21);
    CHECK(count_kind(trace, SlotKind::success) == 2 * 4);
    CHECK(count_kind(trace, SlotKind::collision) == 0);
    // slot s carries a transmission iff (s - 5) mod 21 is a codeword element
    CHECK(trace.slots[5].kind == SlotKind::success);
    CHECK(trace.slots[6].kind == SlotKind::success);
    CHECK(trace.slots[4].kind == SlotKind::idle);
}

TEST_CASE("identical codeword and offset collide everywhere") {
    Codeword cw = Codeword::equi(10, 3, 3);
    ChannelTrace trace = simulate({{0, cw, 2, true}, {1, cw, 2, true}}, 10);
    CHECK(count_kind(trace, SlotKind::collision) == 3);
    CHECK(count_kind(trace, SlotKind::success) == 0);
    for (const auto& slot : trace.slots)
        if (slot.kind == SlotKind::collision)
            CHECK(slot.users == std::vector<int64_t>{0, 1});
}

TEST_CASE("codewords with disjoint difference sets collide at most once per window") {
    Code code = construct_direct({7, 1, 4, 1});  // L = 21, three codewords
    REQUIRE(code.size() == 3);
    const auto& a = code.codewords[0];
    const auto& b = code.codewords[1];
    for (int64_t da = 0; da < 21; ++da)
        for (int64_t db = 0; db < 21; ++db) {
            ChannelTrace trace = simulate({{0, a, da, true}, {1, b, db, true}}, 21);
            CHECK(count_kind(trace, SlotKind::collision) <= 1);
            CHECK(successes_of(trace, 0) >= 3);
            CHECK(successes_of(trace, 1) >= 3);
        }
}

TEST_CASE("traces are periodic and offset-equivariant") {
    Codeword a = Codeword::from_elements(15, {0, 1, 6});
    Codeword b = Codeword::from_elements(15, {0, 2, 9});
    ChannelTrace two = simulate({{0, a, 4, true}, {1, b, 11, true}}, 45);
    for (int64_t s = 0; s < 15; ++s) {
        CHECK(two.slots[s].kind == two.slots[s + 15].kind);
        CHECK(two.slots[s].users == two.slots[s + 30].users);
    }
    // shifting every offset by c shifts the whole trace by c
    ChannelTrace shifted = simulate({{0, a, 7, true}, {1, b, 14, true}}, 15);
    for (int64_t s = 0; s < 15; ++s)
        CHECK(shifted.slots[(s + 3) % 15].kind == two.slots[s].kind);

    CHECK_THROWS_AS(simulate({}, 10), precondition_error);
    CHECK_THROWS_AS(simulate({{0, a, 0, true}}, 0), precondition_error);
    Codeword other = Codeword::equi(10, 1, 3);
    CHECK_THROWS_AS(simulate({{0, a, 0, true}, {1, other, 0, true}}, 15),
                    precondition_error);
}

TEST_CASE("guarantee sweep accepts a verified code") {
    Code code = construct_direct({7, 1, 4, 1});
    GuaranteeReport report = verify_guarantee(code, 3);
    CHECK(report.ok);
    CHECK(report.mode == "exhaustive");
    CHECK(report.max_active == 3);
    CHECK(report.violations.empty());
    // sum over a of C(3, a) * 21^a
    CHECK(report.configurations_checked == 3 * 21 + 3 * 21 * 21 + 21 * 21 * 21);
    CHECK(stats_for(report, 4).min_successes_observed >= 2);  // 4 - (3-1)
}

TEST_CASE("guarantee sweep with one active user") {
    Code code;
    code.length = 9;
    code.codewords = {Codeword::equi(9, 2, 3)};
    GuaranteeReport report = verify_guarantee(code, 1);
    CHECK(report.ok);
    CHECK(stats_for(report, 3).min_successes_observed == 3);
    CHECK(stats_for(report, 3).worst_delay_observed == 5);  // gaps 2,2,5
}

TEST_CASE("guarantee sweep exhibits breaches of a defective code") {
    Code bad;
    bad.length = 21;
    bad.codewords = {Codeword::from_elements(21, {0, 1, 2, 3}),
                     Codeword::from_elements(21, {0, 1, 5, 11})};
    REQUIRE_FALSE(verify_cac(bad).ok);  // both difference sets contain 1

    GuaranteeReport report = verify_guarantee(bad, 2);
    CHECK_FALSE(report.ok);
    REQUIRE_FALSE(report.violations.empty());
    const Violation& v = report.violations.front();
    CHECK(v.successes < v.required);
    // replay the reported configuration
    std::vector<UserAssignment> users;
    for (size_t i = 0; i < v.active.size(); ++i)
        users.push_back({v.active[i], bad.codewords[v.active[i]], v.offsets[i], true});
    ChannelTrace trace = simulate(users, bad.length);
    CHECK(successes_of(trace, v.user) == v.successes);
}

TEST_CASE("sampled sweep is deterministic in the seed") {
    Code code = construct_direct({7, 1, 4, 1});
    ChannelOptions opts;
    opts.exhaustive = false;
    opts.samples = 500;
    opts.seed = 7;
    GuaranteeReport first = verify_guarantee(code, 3, opts);
    GuaranteeReport second = verify_guarantee(code, 3, opts);
    CHECK(first.ok);
    CHECK(first.mode == "sampled");
    CHECK(first.seed == 7);
    CHECK(first.configurations_checked == 500);
    CHECK(stats_for(first, 4).min_successes_observed ==
          stats_for(second, 4).min_successes_observed);
    CHECK(stats_for(first, 4).worst_delay_observed ==
          stats_for(second, 4).worst_delay_observed);
}

TEST_CASE("exhaustive sweep refuses oversized offset spaces") {
    Code code = construct_direct({37, 1, 7, 2});  // 9 users, L = 111
    CHECK_THROWS_AS(verify_guarantee(code, 9), precondition_error);
    ChannelOptions opts;
    opts.exhaustive = false;
    opts.samples = 200;
    CHECK(verify_guarantee(code, 9, opts).ok);
}

TEST_CASE("priority sweep tracks the heavy codeword") {
    // mixed-weight code of length 69: one weight-7, five weight-4, seven weight-3
    Code base;
    base.length = 23;
    base.codewords = {Codeword::equi(23, 1, 7)};
    Code code = mixed_w1pr(23, 1, 4, base);

    ChannelOptions opts;
    opts.exhaustive = false;
    opts.samples = 20000;
    opts.seed = 42;
    GuaranteeReport report = priority_report(code, 4, opts);
    CHECK(report.ok);
    CHECK(report.base_weight == 4);

    const WeightClassStats& heavy = stats_for(report, 7);
    CHECK(heavy.users == 1);
    CHECK(heavy.min_adjacent_gap == 3);
    CHECK(heavy.required_successes == 4);  // 7 - 4 + 1
    CHECK(heavy.min_successes_observed >= 4);
    CHECK(heavy.worst_delay_bound == 69 - 3 * 3);
    CHECK(heavy.worst_delay_observed <= heavy.worst_delay_bound);

    const WeightClassStats& light = stats_for(report, 3);
    CHECK(light.users == 7);
    CHECK(light.required_successes == 0);  // below the base weight
    CHECK(light.worst_delay_bound == -1);
    CHECK(stats_for(report, 4).required_successes == 1);
}

TEST_CASE("adjacent gap statistic") {
    CHECK(min_adjacent_gap(Codeword::equi(69, 24, 7)) == 3);
    CHECK(min_adjacent_gap(Codeword::from_elements(10, {2, 3, 9})) == 1);
    CHECK(min_adjacent_gap(Codeword::from_elements(10, {4})) == 10);
    CHECK(min_adjacent_gap(Codeword::equi(12, 3, 4)) == 3);
}
