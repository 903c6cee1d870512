#include "doctest.h"

#include <set>
#include <string>
#include <vector>

#include "varprio/condition.hpp"
#include "varprio/configspace.hpp"
#include "varprio/errors.hpp"
#include "varprio/formats.hpp"
#include "varprio/frontend.hpp"
#include "varprio/sampling.hpp"

using namespace varprio;

namespace {

std::string row(const Configuration& c) {
    std::string out;
    for (bool v : c.values) out += v ? 'T' : 'F';
    return out;
}

std::vector<std::string> rows(const std::vector<Configuration>& configs) {
    std::vector<std::string> out;
    for (const auto& c : configs) out.push_back(row(c));
    return out;
}

// Exhaustively verifies t-wise coverage: every option combination and value
// tuple some valid configuration exhibits must appear in the sample.
bool covers_all_tuples(const FeatureModel& fm, std::size_t t,
                       const std::vector<Configuration>& sample) {
    std::vector<Configuration> valid = valid_configurations(fm);
    const std::size_t n = fm.options.size();
    std::vector<std::size_t> combo(t);
    for (std::size_t k = 0; k < t; ++k) combo[k] = k;
    while (true) {
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << t); ++code) {
            std::vector<bool> vals(t);
            for (std::size_t k = 0; k < t; ++k) vals[k] = ((code >> k) & 1u) != 0;
            auto matches = [&](const Configuration& c) {
                for (std::size_t k = 0; k < t; ++k) {
                    if (c.values[combo[k]] != vals[k]) return false;
                }
                return true;
            };
            bool possible = false;
            for (const auto& c : valid) {
                if (matches(c)) {
                    possible = true;
                    break;
                }
            }
            if (!possible) continue;
            bool sampled = false;
            for (const auto& c : sample) {
                if (matches(c)) {
                    sampled = true;
                    break;
                }
            }
            if (!sampled) return false;
        }
        std::size_t k = t;
        bool advanced = false;
        while (k > 0) {
            --k;
            if (combo[k] + 1 <= n - (t - k)) {
                ++combo[k];
                for (std::size_t j = k + 1; j < t; ++j) combo[j] = combo[j - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return true;
}

}  // namespace

TEST_SUITE("sampling") {

TEST_CASE("one-enabled and one-disabled bases, with model-rejected candidates reported") {
    FeatureModel fm = free_model({"A", "B", "C"});
    CHECK(rows(sample_one_enabled(fm).configs) ==
          std::vector<std::string>{"TFF", "FTF", "FFT"});
    CHECK(rows(sample_one_disabled(fm).configs) ==
          std::vector<std::string>{"FTT", "TFT", "TTF"});

    fm.constraints.push_back(parse_formula("A"));
    SampleResult constrained = sample_one_enabled(fm);
    CHECK(rows(constrained.configs) == std::vector<std::string>{"TFF"});
    CHECK(rows(constrained.dropped) == std::vector<std::string>{"FTF", "FFT"});
}

TEST_CASE("most-enabled/most-disabled picks extremes, earliest on ties") {
    FeatureModel fm = free_model({"A", "B", "C"});
    CHECK(rows(sample_most_enabled_disabled(fm).configs) ==
          std::vector<std::string>{"TTT", "FFF"});

    fm.constraints.push_back(parse_formula("!(A && B && C)"));
    // Several configurations tie at two enabled options; the enumeration-first
    // one (TTF) wins.
    CHECK(rows(sample_most_enabled_disabled(fm).configs) ==
          std::vector<std::string>{"TTF", "FFF"});

    FeatureModel pinned = free_model({"A", "B"});
    pinned.constraints.push_back(parse_formula("A && B"));
    // A single valid configuration is returned once, not twice.
    CHECK(rows(sample_most_enabled_disabled(pinned).configs) ==
          std::vector<std::string>{"TT"});

    FeatureModel empty = free_model({"A"});
    empty.constraints.push_back(parse_formula("A && !A"));
    CHECK_THROWS_AS(sample_most_enabled_disabled(empty), EmptySpace);
}

TEST_CASE("pairwise sampling covers every reachable pair with a greedy minimum") {
    FeatureModel fm = free_model({"A", "B", "C"});
    SampleResult s = sample_t_wise(fm, 2);
    CHECK(rows(s.configs) == std::vector<std::string>{"TTT", "TFF", "FTF", "FFT"});
    CHECK(covers_all_tuples(fm, 2, s.configs));
}

TEST_CASE("t-wise respects constraints and skips impossible tuples") {
    FeatureModel fm = free_model({"A", "B"});
    fm.constraints.push_back(parse_formula("A -> B"));
    SampleResult s = sample_t_wise(fm, 2);
    // (A=T, B=F) is unreachable; the three reachable pairs need all three
    // valid configurations.
    CHECK(rows(s.configs) == std::vector<std::string>{"TT", "FT", "FF"});
    CHECK(covers_all_tuples(fm, 2, s.configs));
}

TEST_CASE("t-wise edge strengths: singles, full strength, oversized t") {
    FeatureModel fm = free_model({"A", "B"});
    CHECK(rows(sample_t_wise(fm, 1).configs) == std::vector<std::string>{"TT", "FF"});
    CHECK(covers_all_tuples(fm, 1, sample_t_wise(fm, 1).configs));
    // t = option count enumerates every valid configuration.
    CHECK(rows(sample_t_wise(fm, 2).configs) ==
          std::vector<std::string>{"TT", "TF", "FT", "FF"});
    // t beyond the option count clamps down to it.
    CHECK(rows(sample_t_wise(fm, 5).configs) ==
          std::vector<std::string>{"TT", "TF", "FT", "FF"});
}

TEST_CASE("statement coverage activates every live block and reports dead ones") {
    FeatureModel fm = free_model({"A", "B"});
    std::vector<ConditionPtr> blocks = {
        cond_atom("A"),
        cond_and(cond_atom("A"), cond_atom("B")),
        cond_not(cond_atom("A")),
        cond_atom("A"),  // duplicate spelling, counted once
        cond_and(cond_atom("A"), cond_not(cond_atom("A"))),  // dead
    };
    SampleResult s = sample_statement_coverage(fm, blocks);
    CHECK(rows(s.configs) == std::vector<std::string>{"TT", "FT"});
    REQUIRE(s.dead_blocks.size() == 1);
    CHECK(to_string(s.dead_blocks[0]) == "A && !A");
    // Every live block is active under at least one sampled configuration.
    for (const auto& b : {blocks[0], blocks[1], blocks[2]}) {
        bool hit = false;
        for (const auto& c : s.configs) hit = hit || evaluate(b, c.as_map());
        CHECK(hit);
    }
}

TEST_CASE("statement coverage of the interrupt-domain fixture needs one configuration") {
    AnalysisResult res =
        analyze_source(read_file(std::string(VARPRIO_FIXTURE_DIR) + "/linux_twl.c"));
    FeatureModel fm = free_model(res.options);
    SampleResult s = sample_statement_coverage(fm, res.blocks);
    // Options in sorted order: IRQ_DOMAIN, OF_DEVICE, OF_IRQ, SPARC, TWL4030_CORE.
    // Everything on except SPARC reaches all five distinct guarded regions.
    CHECK(rows(s.configs) == std::vector<std::string>{"TTTFT"});
    CHECK(s.dead_blocks.empty());
}

TEST_CASE("sampling over an unsatisfiable model reports an empty space") {
    FeatureModel fm = free_model({"A", "B"});
    fm.constraints.push_back(parse_formula("A && !A"));
    CHECK_THROWS_AS(sample_t_wise(fm, 2), EmptySpace);
    CHECK_THROWS_AS(sample_statement_coverage(fm, {cond_atom("A")}), EmptySpace);
}

}  // TEST_SUITE
