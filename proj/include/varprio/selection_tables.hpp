#pragma once

// Selection tables: for every (option, value) choice, the sets of entities
// that are declared / assigned / used / destructed by code whose presence
// condition *forces* that choice (the condition must be satisfiable and
// entail the literal). Records with tautological conditions land in the
// core tables instead; records with unsatisfiable conditions are invisible.
// A parallel beta table tracks non-null assignments only.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "varprio/condition.hpp"
#include "varprio/records.hpp"

namespace varprio {

enum class SetKind { Alpha, Beta, Gamma, Delta };

inline SetKind set_kind_of(OpKind op) {
    switch (op) {
        case OpKind::Declare: return SetKind::Alpha;
        case OpKind::Assign: return SetKind::Beta;
        case OpKind::Use: return SetKind::Gamma;
        case OpKind::Destruct: return SetKind::Delta;
    }
    return SetKind::Gamma;
}

inline std::string to_string(SetKind k) {
    switch (k) {
        case SetKind::Alpha: return "ALPHA";
        case SetKind::Beta: return "BETA";
        case SetKind::Gamma: return "GAMMA";
        case SetKind::Delta: return "DELTA";
    }
    return "?";
}

class SelectionTables {
public:
    struct Cell {
        std::set<ProgramEntity> members;
        // entity -> indices into records(), ascending
        std::map<ProgramEntity, std::vector<std::size_t>> witnesses;

        bool contains(const ProgramEntity& e) const { return members.count(e) > 0; }
        void insert(const ProgramEntity& e, std::size_t record_index) {
            members.insert(e);
            witnesses[e].push_back(record_index);
        }
    };

    SelectionTables(RecordList records, std::vector<std::string> options)
        : records_(std::move(records)), options_(std::move(options)) {
        cells_.resize(options_.size() * 2 * 4);
        nonnull_cells_.resize(options_.size() * 2);
        build();
    }

    const std::vector<std::string>& options() const { return options_; }
    const RecordList& records() const { return records_; }

    const Cell& cell(SetKind set, std::size_t option, bool value) const {
        return cells_[cell_index(set, option, value)];
    }
    const Cell& core(SetKind set) const { return core_[static_cast<std::size_t>(set)]; }
    const Cell& nonnull_cell(std::size_t option, bool value) const {
        return nonnull_cells_[option * 2 + (value ? 0 : 1)];
    }
    const Cell& nonnull_core() const { return nonnull_core_; }

private:
    RecordList records_;
    std::vector<std::string> options_;
    std::vector<Cell> cells_;          // (option, value, set)
    Cell core_[4];
    std::vector<Cell> nonnull_cells_;  // beta restricted to non-null assigns
    Cell nonnull_core_;

    std::size_t cell_index(SetKind set, std::size_t option, bool value) const {
        return (option * 2 + (value ? 0 : 1)) * 4 + static_cast<std::size_t>(set);
    }

    void build() {
        for (std::size_t i = 0; i < records_.size(); ++i) {
            const OperationRecord& r = records_[i];
            if (!satisfiable(r.condition)) continue;
            SetKind set = set_kind_of(r.op);
            bool non_null_assign = r.op == OpKind::Assign && !r.null_assign;
            if (tautology(r.condition)) {
                core_[static_cast<std::size_t>(set)].insert(r.entity, i);
                if (non_null_assign) nonnull_core_.insert(r.entity, i);
                continue;
            }
            for (std::size_t o = 0; o < options_.size(); ++o) {
                for (bool value : {true, false}) {
                    if (entails_literal(r.condition, options_[o], value)) {
                        cells_[cell_index(set, o, value)].insert(r.entity, i);
                        if (non_null_assign) {
                            nonnull_cells_[o * 2 + (value ? 0 : 1)].insert(r.entity, i);
                        }
                    }
                }
            }
        }
    }
};

// Preferred value per option, inferred from which side of the tables is
// populated: if operations exist only under (o, v), the option's "active"
// polarity is v. Defaults to true when both or neither side appears.
inline std::map<std::string, bool> derive_polarity(const SelectionTables& tables) {
    std::map<std::string, bool> polarity;
    const auto& opts = tables.options();
    for (std::size_t o = 0; o < opts.size(); ++o) {
        bool has_true = false;
        bool has_false = false;
        for (SetKind set : {SetKind::Alpha, SetKind::Beta, SetKind::Gamma, SetKind::Delta}) {
            if (!tables.cell(set, o, true).members.empty()) has_true = true;
            if (!tables.cell(set, o, false).members.empty()) has_false = true;
        }
        polarity[opts[o]] = has_false && !has_true ? false : true;
    }
    return polarity;
}

}  // namespace varprio
