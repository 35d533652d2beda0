#include "cac/channel.hpp"

#include <algorithm>
#include <random>
#include <tuple>

#include "cac/errors.hpp"
#include "cac/numtheory.hpp"

namespace cac {

namespace {

constexpr int64_t kMaxExhaustiveConfigs = 100'000'000;

// Deterministic bounded draw; std::uniform_int_distribution is
// implementation-defined, which would tie reports to a toolchain.
int64_t draw(std::mt19937_64& rng, int64_t bound) {
    return static_cast<int64_t>(rng() % static_cast<uint64_t>(bound));
}

struct Config {
    std::vector<size_t> active;    // codeword indices, ascending
    std::vector<int64_t> offsets;  // parallel to active
};

// Tracks guarantee compliance across configurations.  Per configuration the
// occupancy of each periodic slot decides success; the per-user requirement
// is weight - (actives - 1), since any other active user steals at most one
// slot per period from it.
class Sweep {
public:
    Sweep(const Code& code, int64_t base_weight)
        : code_(code), length_(code.length), occupancy_(static_cast<size_t>(code.length), 0) {
        for (const auto& cw : code.codewords) {
            auto& cls = class_for(cw.weight());
            cls.users += 1;
            cls.min_adjacent_gap = std::min(cls.min_adjacent_gap, min_adjacent_gap(cw));
        }
        for (auto& cls : classes_) {
            cls.required_successes = std::max<int64_t>(0, cls.weight - base_weight + 1);
            if (cls.weight >= base_weight)
                cls.worst_delay_bound = length_ - (cls.weight - base_weight) * cls.min_adjacent_gap;
        }
        std::sort(classes_.begin(), classes_.end(),
                  [](const WeightClassStats& a, const WeightClassStats& b) { return a.weight < b.weight; });
    }

    void run(const Config& cfg, std::vector<Violation>& violations) {
        const auto actives = static_cast<int64_t>(cfg.active.size());
        for (size_t i = 0; i < cfg.active.size(); ++i)
            for (int64_t x : code_.codewords[cfg.active[i]].elements)
                occupancy_[static_cast<size_t>(nt::mod_reduce(x + cfg.offsets[i], length_))] += 1;

        for (size_t i = 0; i < cfg.active.size(); ++i) {
            const Codeword& cw = code_.codewords[cfg.active[i]];
            success_slots_.clear();
            for (int64_t x : cw.elements) {
                int64_t slot = nt::mod_reduce(x + cfg.offsets[i], length_);
                if (occupancy_[static_cast<size_t>(slot)] == 1) success_slots_.push_back(slot);
            }
            const auto successes = static_cast<int64_t>(success_slots_.size());
            const int64_t required = std::max<int64_t>(0, cw.weight() - (actives - 1));
            if (successes < required) {
                Violation v;
                v.active.reserve(cfg.active.size());
                for (size_t id : cfg.active) v.active.push_back(static_cast<int64_t>(id));
                v.offsets = cfg.offsets;
                v.user = static_cast<int64_t>(cfg.active[i]);
                v.successes = successes;
                v.required = required;
                violations.push_back(std::move(v));
            }

            auto& cls = class_for(cw.weight());
            if (cls.min_successes_observed < 0 || successes < cls.min_successes_observed)
                cls.min_successes_observed = successes;
            if (successes > 0) {
                // Worst wait between consecutive successes of the periodic
                // schedule; a lone success recurs after exactly L slots.
                std::sort(success_slots_.begin(), success_slots_.end());
                int64_t worst = success_slots_.front() + length_ - success_slots_.back();
                for (size_t j = 1; j < success_slots_.size(); ++j)
                    worst = std::max(worst, success_slots_[j] - success_slots_[j - 1]);
                cls.worst_delay_observed = std::max(cls.worst_delay_observed, worst);
            }
        }

        for (size_t i = 0; i < cfg.active.size(); ++i)
            for (int64_t x : code_.codewords[cfg.active[i]].elements)
                occupancy_[static_cast<size_t>(nt::mod_reduce(x + cfg.offsets[i], length_))] = 0;
    }

    std::vector<WeightClassStats> classes() && { return std::move(classes_); }

private:
    WeightClassStats& class_for(int64_t weight) {
        for (auto& cls : classes_)
            if (cls.weight == weight) return cls;
        WeightClassStats cls;
        cls.weight = weight;
        cls.min_adjacent_gap = length_;
        classes_.push_back(cls);
        return classes_.back();
    }

    const Code& code_;
    int64_t length_;
    std::vector<int16_t> occupancy_;
    std::vector<int64_t> success_slots_;
    std::vector<WeightClassStats> classes_;
};

// sum over a = 1..m of C(n, a) * L^a, capped at kMaxExhaustiveConfigs + 1.
int64_t exhaustive_config_count(int64_t n, int64_t m, int64_t length) {
    const int64_t cap = kMaxExhaustiveConfigs + 1;
    int64_t total = 0;
    int64_t binom = 1;
    long double tuples = 1.0L;
    for (int64_t a = 1; a <= m; ++a) {
        binom = binom * (n - a + 1) / a;  // exact: product of a consecutive over a!
        tuples *= static_cast<long double>(length);
        long double add = static_cast<long double>(binom) * tuples;
        if (add >= static_cast<long double>(cap) || total >= cap) return cap;
        total += static_cast<int64_t>(add);
        if (total >= cap) return cap;
    }
    return total;
}

GuaranteeReport sweep_code(const Code& code, int64_t max_active, int64_t base_weight,
                           const ChannelOptions& options) {
    if (code.length < 2) throw precondition_error("channel sweep: length must be at least 2");
    if (code.codewords.empty()) throw precondition_error("channel sweep: code is empty");
    if (max_active < 1) throw precondition_error("channel sweep: max_active must be positive");
    // No conflict-avoidance gate here: sweeping a defective code is exactly
    // how its guarantee breaches get exhibited.

    const auto n = static_cast<int64_t>(code.codewords.size());
    const int64_t m = std::min(max_active, n);
    const int64_t length = code.length;

    GuaranteeReport report;
    report.max_active = max_active;
    report.base_weight = base_weight;
    report.seed = options.seed;

    Sweep sweep(code, base_weight);
    Config cfg;

    if (options.exhaustive) {
        if (exhaustive_config_count(n, m, length) > kMaxExhaustiveConfigs)
            throw precondition_error("channel sweep: exhaustive offset space exceeds 10^8 configurations");
        report.mode = "exhaustive";
        // Odometer over offset tuples inside a subset-enumeration recursion.
        std::vector<size_t> subset;
        auto walk_offsets = [&](auto&& self, size_t pos) -> void {
            if (pos == subset.size()) {
                cfg.active = subset;
                report.configurations_checked += 1;
                sweep.run(cfg, report.violations);
                return;
            }
            for (int64_t t = 0; t < length; ++t) {
                cfg.offsets[pos] = t;
                self(self, pos + 1);
            }
        };
        auto walk_subsets = [&](auto&& self, size_t next) -> void {
            if (!subset.empty() && static_cast<int64_t>(subset.size()) <= m) {
                cfg.offsets.assign(subset.size(), 0);
                walk_offsets(walk_offsets, 0);
            }
            if (static_cast<int64_t>(subset.size()) == m) return;
            for (size_t i = next; i < static_cast<size_t>(n); ++i) {
                subset.push_back(i);
                self(self, i + 1);
                subset.pop_back();
            }
        };
        walk_subsets(walk_subsets, 0);
    } else {
        if (options.samples < 1) throw precondition_error("channel sweep: sample count must be positive");
        report.mode = "sampled";
        std::mt19937_64 rng(options.seed);
        std::vector<size_t> ids(static_cast<size_t>(n));
        for (int64_t s = 0; s < options.samples; ++s) {
            const int64_t a = 1 + draw(rng, m);
            for (size_t i = 0; i < ids.size(); ++i) ids[i] = i;
            cfg.active.clear();
            for (int64_t i = 0; i < a; ++i) {
                size_t j = static_cast<size_t>(i) + static_cast<size_t>(draw(rng, n - i));
                std::swap(ids[static_cast<size_t>(i)], ids[j]);
                cfg.active.push_back(ids[static_cast<size_t>(i)]);
            }
            std::sort(cfg.active.begin(), cfg.active.end());
            cfg.offsets.clear();
            for (int64_t i = 0; i < a; ++i) cfg.offsets.push_back(draw(rng, length));
            report.configurations_checked += 1;
            sweep.run(cfg, report.violations);
        }
    }

    std::sort(report.violations.begin(), report.violations.end(),
              [](const Violation& a, const Violation& b) {
                  return std::tie(a.active, a.offsets, a.user) < std::tie(b.active, b.offsets, b.user);
              });
    report.ok = report.violations.empty();
    report.per_weight = std::move(sweep).classes();
    return report;
}

}  // namespace

ChannelTrace simulate(const std::vector<UserAssignment>& assignments, int64_t horizon) {
    if (assignments.empty()) throw precondition_error("simulate: no users");
    if (horizon < 1) throw precondition_error("simulate: horizon must be positive");
    const int64_t length = assignments.front().codeword.length;
    for (const auto& ua : assignments)
        if (ua.codeword.length != length)
            throw precondition_error("simulate: codeword lengths disagree");

    // Periodic transmission table: schedule[u][s] for s in [0, L).
    std::vector<std::vector<char>> schedule;
    schedule.reserve(assignments.size());
    for (const auto& ua : assignments) {
        std::vector<char> row(static_cast<size_t>(length), 0);
        if (ua.active)
            for (int64_t x : ua.codeword.elements)
                row[static_cast<size_t>(nt::mod_reduce(x + ua.offset, length))] = 1;
        schedule.push_back(std::move(row));
    }

    ChannelTrace trace;
    trace.length = length;
    trace.horizon = horizon;
    trace.slots.resize(static_cast<size_t>(horizon));
    for (int64_t s = 0; s < horizon; ++s) {
        SlotOutcome& out = trace.slots[static_cast<size_t>(s)];
        const auto slot = static_cast<size_t>(s % length);
        for (size_t u = 0; u < assignments.size(); ++u)
            if (schedule[u][slot]) out.users.push_back(assignments[u].user);
        std::sort(out.users.begin(), out.users.end());
        out.kind = out.users.empty()    ? SlotKind::idle
                   : out.users.size() == 1 ? SlotKind::success
                                           : SlotKind::collision;
    }
    return trace;
}

GuaranteeReport verify_guarantee(const Code& code, int64_t max_active,
                                 const ChannelOptions& options) {
    return sweep_code(code, max_active, max_active, options);
}

GuaranteeReport priority_report(const Code& code, int64_t base_weight,
                                const ChannelOptions& options) {
    if (base_weight < 1) throw precondition_error("priority_report: base weight must be positive");
    return sweep_code(code, base_weight, base_weight, options);
}

int64_t min_adjacent_gap(const Codeword& cw) {
    if (cw.weight() <= 1) return cw.length;
    int64_t best = cw.elements.front() + cw.length - cw.elements.back();
    for (size_t i = 1; i < cw.elements.size(); ++i)
        best = std::min(best, cw.elements[i] - cw.elements[i - 1]);
    return best;
}

}  // namespace cac
