#pragma once

// Convenience composition of the analysis stages plus the strategy registry
// shared by the command-line tool and the test suites.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "varprio/configspace.hpp"
#include "varprio/frontend.hpp"
#include "varprio/interactions.hpp"
#include "varprio/ranking.hpp"
#include "varprio/selection_tables.hpp"

namespace varprio {

struct AnalysisBundle {
    AnalysisResult front;
    SelectionTables tables;
    std::vector<SuspiciousSelection> selections;
};

inline AnalysisBundle run_analysis(const std::vector<std::string>& texts,
                                   const FrontendOptions& frontend_opts = {},
                                   const DetectorOptions& detector_opts = {}) {
    AnalysisResult front = analyze_sources(texts, frontend_opts);
    SelectionTables tables(front.records, front.options);
    std::vector<SuspiciousSelection> selections =
        detect_suspicious_selections(tables, detector_opts);
    return {std::move(front), std::move(tables), std::move(selections)};
}

enum class Strategy { SelectionCount, Additional, Similarity, Random };

inline std::optional<Strategy> parse_strategy(const std::string& name) {
    if (name == "copro") return Strategy::SelectionCount;
    if (name == "additional") return Strategy::Additional;
    if (name == "sp") return Strategy::Similarity;
    if (name == "random") return Strategy::Random;
    return std::nullopt;
}

inline std::vector<RankedConfig> apply_strategy(
    Strategy strategy, const std::vector<Configuration>& configs,
    const std::vector<SuspiciousSelection>& selections,
    const std::map<std::string, bool>& polarity, std::uint32_t seed) {
    switch (strategy) {
        case Strategy::SelectionCount:
            return prioritize_by_selection_count(configs, selections);
        case Strategy::Additional:
            return prioritize_additional(configs, selections);
        case Strategy::Similarity:
            return prioritize_similarity(configs, polarity);
        case Strategy::Random:
            return prioritize_random(configs, seed);
    }
    return {};
}

}  // namespace varprio
