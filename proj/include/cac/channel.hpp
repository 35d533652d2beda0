#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cac/code.hpp"

namespace cac {

// One scheduled user on the collision channel.  The user transmits in
// absolute slot s iff (s - offset) mod L lies in its codeword.
struct UserAssignment {
    int64_t user = 0;
    Codeword codeword;
    int64_t offset = 0;  // reduced mod codeword.length
    bool active = true;
};

enum class SlotKind { idle, success, collision };

struct SlotOutcome {
    SlotKind kind = SlotKind::idle;
    std::vector<int64_t> users;  // transmitting users, sorted ascending
};

struct ChannelTrace {
    int64_t length = 0;   // common period L
    int64_t horizon = 0;  // number of simulated slots
    std::vector<SlotOutcome> slots;
};

// Slot-synchronous simulation without feedback: a slot succeeds iff exactly
// one active user transmits in it.  Inactive users never transmit.
ChannelTrace simulate(const std::vector<UserAssignment>& assignments, int64_t horizon);

struct ChannelOptions {
    bool exhaustive = true;
    int64_t samples = 100000;  // configurations drawn when !exhaustive
    uint64_t seed = 0;
};

// One guarantee breach: with this active set and these offsets, `user`
// received fewer periodic successes than the pairwise collision bound allows.
struct Violation {
    std::vector<int64_t> active;   // user ids, ascending
    std::vector<int64_t> offsets;  // parallel to `active`
    int64_t user = 0;
    int64_t successes = 0;
    int64_t required = 0;
};

struct WeightClassStats {
    int64_t weight = 0;
    int64_t users = 0;
    int64_t min_adjacent_gap = 0;          // over codewords of this weight
    int64_t required_successes = 0;        // per period, from the weight gap
    int64_t min_successes_observed = -1;   // -1 until a config touches the class
    int64_t worst_delay_observed = -1;     // longest wait between successes
    int64_t worst_delay_bound = -1;        // -1 when no guarantee applies
};

struct GuaranteeReport {
    bool ok = true;
    std::string mode;  // "exhaustive" | "sampled"
    int64_t max_active = 0;
    int64_t base_weight = 0;
    int64_t configurations_checked = 0;
    uint64_t seed = 0;  // meaningful for sampled mode only
    std::vector<Violation> violations;
    std::vector<WeightClassStats> per_weight;
};

// Sweeps active subsets of size <= max_active (users = the code's codewords,
// ids = positions).  Exhaustive mode walks every offset tuple and fails when
// that space exceeds 10^8 configurations; sampled mode draws
// options.samples configurations from a seeded generator.  A user of weight
// w' sharing the channel with a-1 other actives must succeed at least
// w' - (a-1) times per period; anything less is recorded as a violation.
GuaranteeReport verify_guarantee(const Code& code, int64_t max_active,
                                 const ChannelOptions& options = {});

// Same sweep with max_active = base_weight, but the per-weight table is
// scored against the heterogeneous-priority guarantee: a weight-w' user
// among <= w actives succeeds >= w' - w + 1 times per period, with delay
// between consecutive successes at most L - (w' - w) * g where g is the
// smallest adjacent-transmission gap in its weight class.
GuaranteeReport priority_report(const Code& code, int64_t base_weight,
                                const ChannelOptions& options = {});

// Smallest cyclic gap between consecutive elements (L for a singleton).
int64_t min_adjacent_gap(const Codeword& cw);

}  // namespace cac
