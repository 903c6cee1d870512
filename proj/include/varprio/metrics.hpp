#pragma once

// Evaluation of an ordered configuration list against known bugs. A bug is a
// partial assignment (literal set); a configuration detects the bug when it
// contains all of its literals. APFD follows the standard definition
//   APFD = 1 - (sum of first-detection positions) / (n * m) + 1 / (2n)
// with undetected bugs charged position n + 1 and reported explicitly.

#include <map>
#include <string>
#include <vector>

#include "varprio/configspace.hpp"
#include "varprio/errors.hpp"

namespace varprio {

struct Bug {
    std::string id;
    std::vector<Literal> literals;
};

struct EvalReport {
    std::size_t configs_total = 0;  // n
    std::size_t bugs_total = 0;     // m
    double apfd = 0.0;
    double average_position = 0.0;
    std::map<std::string, int> first_detection;  // bug id -> 1-based position, n+1 if missed
    std::vector<std::string> undetected;         // ids charged n+1
    std::map<int, double> top_fraction;          // k in {1,3,5,10} -> detected fraction
};

inline EvalReport evaluate_ordering(const std::vector<Configuration>& ordered,
                                    const std::vector<Bug>& bugs) {
    if (bugs.empty()) throw NoBugs("evaluation requires at least one bug");
    if (ordered.empty()) throw EmptySpace("evaluation requires at least one configuration");

    EvalReport report;
    report.configs_total = ordered.size();
    report.bugs_total = bugs.size();
    const int n = static_cast<int>(ordered.size());

    long long position_sum = 0;
    for (const auto& bug : bugs) {
        int first = n + 1;
        for (int i = 0; i < n; ++i) {
            if (contains(ordered[static_cast<std::size_t>(i)], bug.literals)) {
                first = i + 1;
                break;
            }
        }
        report.first_detection[bug.id] = first;
        if (first == n + 1) report.undetected.push_back(bug.id);
        position_sum += first;
    }

    const double nd = static_cast<double>(n);
    const double md = static_cast<double>(bugs.size());
    report.apfd = 1.0 - static_cast<double>(position_sum) / (nd * md) + 1.0 / (2.0 * nd);
    report.average_position = static_cast<double>(position_sum) / md;

    for (int k : {1, 3, 5, 10}) {
        std::size_t hit = 0;
        for (const auto& [id, first] : report.first_detection) {
            if (first <= k && first <= n) ++hit;
        }
        report.top_fraction[k] = static_cast<double>(hit) / md;
    }
    return report;
}

}  // namespace varprio
