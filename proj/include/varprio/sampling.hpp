#pragma once

// Configuration sampling algorithms. All of them work over the exhaustive
// list of valid configurations (canonical enumeration order) so that results
// are fully deterministic; ties always resolve to the earliest candidate in
// that order.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "varprio/condition.hpp"
#include "varprio/configspace.hpp"
#include "varprio/errors.hpp"

namespace varprio {

struct SampleResult {
    std::vector<Configuration> configs;
    std::vector<Configuration> dropped;     // candidates rejected by the feature model
    std::vector<ConditionPtr> dead_blocks;  // blocks no valid configuration satisfies
};

// One configuration per option with exactly that option enabled; candidates
// the feature model rejects are reported as dropped.
inline SampleResult sample_one_enabled(const FeatureModel& fm) {
    SampleResult result;
    for (std::size_t i = 0; i < fm.options.size(); ++i) {
        Configuration c;
        c.options = fm.options;
        c.values.assign(fm.options.size(), false);
        c.values[i] = true;
        if (fm.allows(c)) {
            result.configs.push_back(std::move(c));
        } else {
            result.dropped.push_back(std::move(c));
        }
    }
    return result;
}

// Dual of sample_one_enabled: exactly one option disabled per configuration.
inline SampleResult sample_one_disabled(const FeatureModel& fm) {
    SampleResult result;
    for (std::size_t i = 0; i < fm.options.size(); ++i) {
        Configuration c;
        c.options = fm.options;
        c.values.assign(fm.options.size(), true);
        c.values[i] = false;
        if (fm.allows(c)) {
            result.configs.push_back(std::move(c));
        } else {
            result.dropped.push_back(std::move(c));
        }
    }
    return result;
}

// The valid configuration with the most enabled options, then the one with
// the fewest (omitted when they coincide).
inline SampleResult sample_most_enabled_disabled(const FeatureModel& fm) {
    std::vector<Configuration> valid = valid_configurations(fm);
    if (valid.empty()) throw EmptySpace("feature model admits no configuration");
    std::size_t best_max = 0;
    std::size_t best_min = 0;
    for (std::size_t i = 1; i < valid.size(); ++i) {
        if (valid[i].enabled_count() > valid[best_max].enabled_count()) best_max = i;
        if (valid[i].enabled_count() < valid[best_min].enabled_count()) best_min = i;
    }
    SampleResult result;
    result.configs.push_back(valid[best_max]);
    if (best_min != best_max) result.configs.push_back(valid[best_min]);
    return result;
}

namespace detail {

// Value tuples for one option combination in canonical order (true first,
// leftmost position most significant).
inline std::vector<std::vector<bool>> value_tuples(std::size_t t) {
    std::vector<std::vector<bool>> out;
    const std::uint64_t total = std::uint64_t{1} << t;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<bool> vals(t);
        for (std::size_t k = 0; k < t; ++k) {
            vals[k] = ((code >> (t - 1 - k)) & 1u) == 0;
        }
        out.push_back(std::move(vals));
    }
    return out;
}

}  // namespace detail

// Greedy t-wise covering sample: the universe is every satisfiable value
// tuple over every size-t option combination; each round picks the valid
// configuration covering the most uncovered tuples.
inline SampleResult sample_t_wise(const FeatureModel& fm, std::size_t t) {
    std::vector<Configuration> valid = valid_configurations(fm);
    if (valid.empty()) throw EmptySpace("feature model admits no configuration");
    if (t > fm.options.size()) t = fm.options.size();
    SampleResult result;
    if (t == 0) return result;

    struct Tuple {
        std::vector<std::size_t> option_idx;
        std::vector<bool> values;
    };
    std::vector<Tuple> universe;
    std::vector<std::size_t> combo(t);
    for (std::size_t k = 0; k < t; ++k) combo[k] = k;
    auto tuple_matches = [](const Tuple& tup, const Configuration& c) {
        for (std::size_t k = 0; k < tup.option_idx.size(); ++k) {
            if (c.values[tup.option_idx[k]] != tup.values[k]) return false;
        }
        return true;
    };
    const auto patterns = detail::value_tuples(t);
    while (true) {
        for (const auto& vals : patterns) {
            Tuple tup{combo, vals};
            for (const auto& c : valid) {
                if (tuple_matches(tup, c)) {
                    universe.push_back(tup);
                    break;
                }
            }
        }
        // next lexicographic combination of option indices
        std::size_t k = t;
        while (k > 0) {
            --k;
            if (combo[k] + 1 <= fm.options.size() - (t - k)) {
                ++combo[k];
                for (std::size_t j = k + 1; j < t; ++j) combo[j] = combo[j - 1] + 1;
                break;
            }
            if (k == 0) {
                k = t + 1;  // signal exhaustion
                break;
            }
        }
        if (k == t + 1 || t == 0) break;
    }

    std::vector<bool> covered(universe.size(), false);
    std::size_t uncovered = universe.size();
    while (uncovered > 0) {
        std::size_t best = valid.size();
        std::size_t best_gain = 0;
        for (std::size_t i = 0; i < valid.size(); ++i) {
            std::size_t gain = 0;
            for (std::size_t u = 0; u < universe.size(); ++u) {
                if (!covered[u] && tuple_matches(universe[u], valid[i])) ++gain;
            }
            if (gain > best_gain) {
                best_gain = gain;
                best = i;
            }
        }
        if (best == valid.size()) break;
        for (std::size_t u = 0; u < universe.size(); ++u) {
            if (!covered[u] && tuple_matches(universe[u], valid[best])) {
                covered[u] = true;
                --uncovered;
            }
        }
        result.configs.push_back(valid[best]);
    }
    return result;
}

// Greedy set cover over conditional blocks: pick configurations until every
// live block's condition is satisfied by at least one of them. Blocks no
// valid configuration can activate are reported as dead.
inline SampleResult sample_statement_coverage(const FeatureModel& fm,
                                              const std::vector<ConditionPtr>& blocks) {
    std::vector<Configuration> valid = valid_configurations(fm);
    if (valid.empty()) throw EmptySpace("feature model admits no configuration");

    // Deduplicate blocks by rendered condition, first occurrence wins.
    std::vector<ConditionPtr> unique_blocks;
    std::set<std::string> seen;
    for (const auto& b : blocks) {
        if (seen.insert(to_string(b)).second) unique_blocks.push_back(b);
    }

    SampleResult result;
    std::vector<const ConditionPtr*> live;
    for (const auto& b : unique_blocks) {
        bool reachable = false;
        for (const auto& c : valid) {
            if (evaluate(b, c.as_map())) {
                reachable = true;
                break;
            }
        }
        if (reachable) {
            live.push_back(&b);
        } else {
            result.dead_blocks.push_back(b);
        }
    }

    std::vector<bool> covered(live.size(), false);
    std::size_t uncovered = live.size();
    while (uncovered > 0) {
        std::size_t best = valid.size();
        std::size_t best_gain = 0;
        for (std::size_t i = 0; i < valid.size(); ++i) {
            auto m = valid[i].as_map();
            std::size_t gain = 0;
            for (std::size_t u = 0; u < live.size(); ++u) {
                if (!covered[u] && evaluate(*live[u], m)) ++gain;
            }
            if (gain > best_gain) {
                best_gain = gain;
                best = i;
            }
        }
        if (best == valid.size()) break;
        auto m = valid[best].as_map();
        for (std::size_t u = 0; u < live.size(); ++u) {
            if (!covered[u] && evaluate(*live[u], m)) {
                covered[u] = true;
                --uncovered;
            }
        }
        result.configs.push_back(valid[best]);
    }
    return result;
}

}  // namespace varprio
