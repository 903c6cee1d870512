#include "doctest.h"

#include <string>
#include <vector>

#include "varprio/condition.hpp"
#include "varprio/configspace.hpp"
#include "varprio/errors.hpp"

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

}  // namespace

TEST_SUITE("configspace") {

TEST_CASE("configuration lookup, enabled count, and option mismatch") {
    Configuration c{{"A", "B", "C"}, {true, false, true}};
    CHECK(c.value_of("A"));
    CHECK_FALSE(c.value_of("B"));
    CHECK(c.enabled_count() == 2);
    CHECK_THROWS_AS(c.value_of("MISSING"), OptionMismatch);
    auto m = c.as_map();
    CHECK(m.at("B") == false);
    CHECK(m.size() == 3);
}

TEST_CASE("containment of literal sets") {
    Configuration c{{"A", "B"}, {true, false}};
    CHECK(contains(c, {{"A", true}}));
    CHECK(contains(c, {{"A", true}, {"B", false}}));
    CHECK_FALSE(contains(c, {{"B", true}}));
    CHECK(contains(c, {}));
    CHECK_THROWS_AS(contains(c, {{"X", true}}), OptionMismatch);
    CHECK(to_string(Literal{"A", true}) == "A=T");
    CHECK(to_string(Literal{"B", false}) == "B=F");
}

TEST_CASE("enumeration is lexicographic with enabled before disabled") {
    FeatureModel fm = free_model({"A", "B"});
    CHECK(rows(valid_configurations(fm)) ==
          std::vector<std::string>{"TT", "TF", "FT", "FF"});
    FeatureModel fm3 = free_model({"A", "B", "C"});
    auto all = valid_configurations(fm3);
    REQUIRE(all.size() == 8);
    CHECK(row(all.front()) == "TTT");
    CHECK(row(all[1]) == "TTF");
    CHECK(row(all.back()) == "FFF");
    CHECK(all[0].options == std::vector<std::string>{"A", "B", "C"});
}

TEST_CASE("constraints filter the enumeration in place") {
    FeatureModel fm = free_model({"A", "B"});
    fm.constraints.push_back(parse_formula("A -> B"));
    CHECK(rows(valid_configurations(fm)) == std::vector<std::string>{"TT", "FT", "FF"});
    fm.constraints.push_back(parse_formula("B -> A"));
    CHECK(rows(valid_configurations(fm)) == std::vector<std::string>{"TT", "FF"});
    fm.constraints.push_back(parse_formula("A && !A"));
    CHECK(valid_configurations(fm).empty());
}

TEST_CASE("feature models reject configurations, not individual literals") {
    FeatureModel fm = free_model({"A", "B"});
    fm.constraints.push_back(parse_formula("!(A && B)"));
    CHECK(fm.allows(Configuration{{"A", "B"}, {true, false}}));
    CHECK_FALSE(fm.allows(Configuration{{"A", "B"}, {true, true}}));
}

TEST_CASE("hamming distance requires the same option universe") {
    Configuration a{{"A", "B", "C"}, {true, true, false}};
    Configuration b{{"A", "B", "C"}, {false, true, true}};
    CHECK(hamming_distance(a, b) == 2);
    CHECK(hamming_distance(a, a) == 0);
    Configuration other{{"A", "B"}, {true, true}};
    CHECK_THROWS_AS(hamming_distance(a, other), OptionMismatch);
}

TEST_CASE("enumeration refuses oversized option universes") {
    std::vector<std::string> opts;
    for (int i = 0; i < 25; ++i) opts.push_back("O" + std::to_string(i));
    CHECK_THROWS_AS(valid_configurations(free_model(opts)), TooManyOptions);
}

}  // TEST_SUITE
