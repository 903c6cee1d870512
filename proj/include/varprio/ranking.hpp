#pragma once

// Prioritization strategies. Every strategy is a pure reordering of the
// input configurations with a per-configuration score; ties always keep
// input order, which makes all orders deterministic.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "varprio/configspace.hpp"
#include "varprio/errors.hpp"
#include "varprio/interactions.hpp"

namespace varprio {

struct RankedConfig {
    Configuration config;
    double score = 0.0;
    int rank = 0;           // 1-based position in the final order
    std::size_t input_index = 0;  // position in the input table
};

namespace detail {

inline std::vector<RankedConfig> wrap(const std::vector<Configuration>& configs) {
    std::vector<RankedConfig> out;
    out.reserve(configs.size());
    for (std::size_t i = 0; i < configs.size(); ++i) {
        RankedConfig rc;
        rc.config = configs[i];
        rc.input_index = i;
        out.push_back(std::move(rc));
    }
    return out;
}

inline void assign_ranks(std::vector<RankedConfig>& ranked) {
    for (std::size_t i = 0; i < ranked.size(); ++i) ranked[i].rank = static_cast<int>(i) + 1;
}

}  // namespace detail

// Interaction-count prioritization: score = number of suspicious selections
// contained in the configuration; sort by score descending, stable.
inline std::vector<RankedConfig> prioritize_by_selection_count(
    const std::vector<Configuration>& configs,
    const std::vector<SuspiciousSelection>& selections) {
    std::vector<RankedConfig> ranked = detail::wrap(configs);
    for (auto& rc : ranked) {
        rc.score = static_cast<double>(selection_score(rc.config, selections));
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const RankedConfig& a, const RankedConfig& b) {
                         return a.score > b.score;
                     });
    detail::assign_ranks(ranked);
    return ranked;
}

// Greedy "additional" variant: each round picks the configuration covering
// the most not-yet-covered selections. Once no candidate adds coverage, the
// remainder is appended by raw score (descending, input order on ties) with
// a reported score of zero.
inline std::vector<RankedConfig> prioritize_additional(
    const std::vector<Configuration>& configs,
    const std::vector<SuspiciousSelection>& selections) {
    std::vector<RankedConfig> pool = detail::wrap(configs);
    for (auto& rc : pool) {
        rc.score = static_cast<double>(selection_score(rc.config, selections));
    }
    std::vector<bool> covered(selections.size(), false);
    std::vector<bool> picked(pool.size(), false);
    std::vector<RankedConfig> ranked;
    ranked.reserve(pool.size());

    while (ranked.size() < pool.size()) {
        std::size_t best = pool.size();
        std::size_t best_gain = 0;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (picked[i]) continue;
            std::size_t gain = 0;
            for (std::size_t s = 0; s < selections.size(); ++s) {
                if (!covered[s] && contains(pool[i].config, selections[s].literals)) ++gain;
            }
            if (best == pool.size() || gain > best_gain) {
                best = i;
                best_gain = gain;
            }
        }
        if (best_gain == 0) break;
        picked[best] = true;
        for (std::size_t s = 0; s < selections.size(); ++s) {
            if (!covered[s] && contains(pool[best].config, selections[s].literals)) {
                covered[s] = true;
            }
        }
        RankedConfig rc = pool[best];
        rc.score = static_cast<double>(best_gain);
        ranked.push_back(std::move(rc));
    }

    std::vector<RankedConfig> rest;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (!picked[i]) rest.push_back(pool[i]);
    }
    std::stable_sort(rest.begin(), rest.end(),
                     [](const RankedConfig& a, const RankedConfig& b) {
                         return a.score > b.score;
                     });
    for (auto& rc : rest) {
        rc.score = 0.0;
        ranked.push_back(std::move(rc));
    }
    detail::assign_ranks(ranked);
    return ranked;
}

// Similarity-driven ordering: start from the configuration that best matches
// the per-option polarity (the value each option "actively" takes), then
// repeatedly add the configuration farthest from the already-picked set
// (maximum total Hamming distance to all picked configurations). Scores
// record the match count / distance at pick time.
inline std::vector<RankedConfig> prioritize_similarity(
    const std::vector<Configuration>& configs,
    const std::map<std::string, bool>& polarity) {
    std::vector<RankedConfig> pool = detail::wrap(configs);
    std::vector<bool> picked(pool.size(), false);
    std::vector<RankedConfig> ranked;
    ranked.reserve(pool.size());
    if (pool.empty()) return ranked;

    auto polarity_matches = [&](const Configuration& c) {
        std::size_t matches = 0;
        for (std::size_t i = 0; i < c.options.size(); ++i) {
            auto it = polarity.find(c.options[i]);
            bool preferred = it == polarity.end() ? true : it->second;
            if (c.values[i] == preferred) ++matches;
        }
        return matches;
    };

    std::size_t first = 0;
    std::size_t first_matches = polarity_matches(pool[0].config);
    for (std::size_t i = 1; i < pool.size(); ++i) {
        std::size_t m = polarity_matches(pool[i].config);
        if (m > first_matches) {
            first = i;
            first_matches = m;
        }
    }
    picked[first] = true;
    RankedConfig rc = pool[first];
    rc.score = static_cast<double>(first_matches);
    ranked.push_back(std::move(rc));

    while (ranked.size() < pool.size()) {
        std::size_t best = pool.size();
        std::size_t best_dist = 0;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (picked[i]) continue;
            std::size_t total_dist = 0;
            for (const auto& chosen : ranked) {
                total_dist += hamming_distance(pool[i].config, chosen.config);
            }
            if (best == pool.size() || total_dist > best_dist) {
                best = i;
                best_dist = total_dist;
            }
        }
        picked[best] = true;
        RankedConfig next = pool[best];
        next.score = static_cast<double>(best_dist);
        ranked.push_back(std::move(next));
    }
    detail::assign_ranks(ranked);
    return ranked;
}

namespace detail {

// Uniform draw in [0, bound) via rejection; pinned to mt19937's specified
// output sequence so results are identical on every platform.
inline std::uint32_t bounded_draw(std::mt19937& gen, std::uint32_t bound) {
    const std::uint32_t limit =
        static_cast<std::uint32_t>((std::uint64_t{1} << 32) -
                                   ((std::uint64_t{1} << 32) % bound));
    while (true) {
        std::uint32_t x = gen();
        if (x < limit || limit == 0) return x % bound;
    }
}

}  // namespace detail

// Seeded uniform shuffle (Fisher-Yates over mt19937); scores are zero.
inline std::vector<RankedConfig> prioritize_random(
    const std::vector<Configuration>& configs, std::uint32_t seed) {
    std::vector<RankedConfig> ranked = detail::wrap(configs);
    std::mt19937 gen(seed);
    for (std::size_t i = ranked.size(); i > 1; --i) {
        std::uint32_t j = detail::bounded_draw(gen, static_cast<std::uint32_t>(i));
        std::swap(ranked[i - 1], ranked[j]);
    }
    detail::assign_ranks(ranked);
    return ranked;
}

}  // namespace varprio
