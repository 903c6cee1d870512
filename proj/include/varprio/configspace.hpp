#pragma once

// Configurations and feature models. A configuration assigns every option a
// boolean value; a feature model is an option universe plus propositional
// constraints. Valid configurations are enumerated exhaustively (the tool
// targets small option sets; enumeration is capped at 24 options) in a fixed
// order: options in declared order, true before false, first option most
// significant. That order is part of the observable behavior — samplers and
// tie-breaks depend on it.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "varprio/condition.hpp"
#include "varprio/errors.hpp"

namespace varprio {

inline constexpr std::size_t kMaxOptions = 24;

struct Configuration {
    std::vector<std::string> options;  // shared declared order
    std::vector<bool> values;          // parallel to options

    bool value_of(const std::string& option) const {
        for (std::size_t i = 0; i < options.size(); ++i) {
            if (options[i] == option) return values[i];
        }
        throw OptionMismatch("configuration has no option named '" + option + "'");
    }

    bool has_option(const std::string& option) const {
        for (const auto& o : options) {
            if (o == option) return true;
        }
        return false;
    }

    std::map<std::string, bool> as_map() const {
        std::map<std::string, bool> m;
        for (std::size_t i = 0; i < options.size(); ++i) m[options[i]] = values[i];
        return m;
    }

    std::size_t enabled_count() const {
        std::size_t n = 0;
        for (bool v : values) {
            if (v) ++n;
        }
        return n;
    }

    bool operator==(const Configuration& other) const {
        return options == other.options && values == other.values;
    }
};

// One option pinned to a value; selections are sets of these.
struct Literal {
    std::string option;
    bool value = true;

    bool operator==(const Literal& other) const {
        return option == other.option && value == other.value;
    }
    bool operator<(const Literal& other) const {
        if (option != other.option) return option < other.option;
        return value < other.value;
    }
};

inline std::string to_string(const Literal& lit) {
    return lit.option + "=" + (lit.value ? "T" : "F");
}

// True when the configuration agrees with every literal.
inline bool contains(const Configuration& config, const std::vector<Literal>& literals) {
    for (const auto& lit : literals) {
        if (config.value_of(lit.option) != lit.value) return false;
    }
    return true;
}

struct FeatureModel {
    std::vector<std::string> options;      // declared order
    std::vector<ConditionPtr> constraints;  // all must hold

    bool allows(const Configuration& config) const {
        auto m = config.as_map();
        for (const auto& c : constraints) {
            if (!evaluate(c, m)) return false;
        }
        return true;
    }
};

// Unconstrained model over the given options.
inline FeatureModel free_model(const std::vector<std::string>& options) {
    FeatureModel fm;
    fm.options = options;
    return fm;
}

// All valid configurations in canonical enumeration order.
inline std::vector<Configuration> valid_configurations(const FeatureModel& fm) {
    if (fm.options.size() > kMaxOptions) {
        throw TooManyOptions("feature model has " + std::to_string(fm.options.size()) +
                             " options; enumeration is capped at " +
                             std::to_string(kMaxOptions));
    }
    std::vector<Configuration> result;
    const std::size_t n = fm.options.size();
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t code = 0; code < total; ++code) {
        Configuration config;
        config.options = fm.options;
        config.values.resize(n);
        // Bit 0 of `code` drives the first option; 0 means enabled so that
        // all-true comes first and the order is lexicographic with T < F.
        for (std::size_t i = 0; i < n; ++i) {
            config.values[i] = ((code >> (n - 1 - i)) & 1u) == 0;
        }
        if (fm.allows(config)) result.push_back(std::move(config));
    }
    return result;
}

// Hamming distance between two configurations over the same option order.
inline std::size_t hamming_distance(const Configuration& a, const Configuration& b) {
    if (a.options != b.options) {
        throw OptionMismatch("configurations use different option universes");
    }
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (a.values[i] != b.values[i]) ++d;
    }
    return d;
}

}  // namespace varprio
