#pragma once

// Feature-interaction detection over selection tables.
//
// detect_interactions lists raw operation co-occurrences: entity e has an
// operation forced by selection s1 and another forced by selection s2. The
// core tables participate as a pseudo-selection that contributes no literal.
//
// detect_suspicious_selections applies the ten violation rules. Each rule
// intersects two operation sets, optionally flipping one side's value to
// describe the configuration in which the partner operation disappears, and
// emits the resulting partial configuration (a set of literals) as a
// suspicious selection. Emissions are filtered for realizability (the kept
// operations must still be possible under the emitted literals) and
// suppressed when the core already provides the allegedly missing operation.
// Selections with equal (rule, literals) merge; witnesses accumulate.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "varprio/condition.hpp"
#include "varprio/configspace.hpp"
#include "varprio/records.hpp"
#include "varprio/selection_tables.hpp"

namespace varprio {

// A side of an interaction: a concrete (option, value) choice, or core.
struct SelRef {
    bool is_core = false;
    std::size_t option = 0;
    bool value = true;

    static SelRef core() {
        SelRef s;
        s.is_core = true;
        return s;
    }
    static SelRef of(std::size_t option, bool value) {
        SelRef s;
        s.option = option;
        s.value = value;
        return s;
    }
    bool operator==(const SelRef& o) const {
        return is_core == o.is_core && (is_core || (option == o.option && value == o.value));
    }
};

inline std::string to_string(const SelRef& s, const std::vector<std::string>& options) {
    if (s.is_core) return "core";
    return options[s.option] + "=" + (s.value ? "T" : "F");
}

enum class InteractionKind {
    DeclareDeclare,
    DeclareAssign,
    DeclareUse,
    DeclareDestruct,
    AssignAssign,
    AssignUse,
    AssignDestruct,
    UseDestruct,
    DestructDestruct,
};

inline std::string to_string(InteractionKind k) {
    switch (k) {
        case InteractionKind::DeclareDeclare: return "declare-declare";
        case InteractionKind::DeclareAssign: return "declare-assign";
        case InteractionKind::DeclareUse: return "declare-use";
        case InteractionKind::DeclareDestruct: return "declare-destruct";
        case InteractionKind::AssignAssign: return "assign-assign";
        case InteractionKind::AssignUse: return "assign-use";
        case InteractionKind::AssignDestruct: return "assign-destruct";
        case InteractionKind::UseDestruct: return "use-destruct";
        case InteractionKind::DestructDestruct: return "destruct-destruct";
    }
    return "?";
}

struct Interaction {
    InteractionKind kind;
    ProgramEntity entity;
    SelRef first;
    SelRef second;
};

enum class Violation {
    DeclarationDuplication = 1,
    UseWithoutDeclaration,
    UnusedEntity,
    DestructionWithoutDeclaration,
    AssignmentWithoutDeclaration,
    UseWithoutAssignment,
    DestructionWithoutDefinition,
    MemoryLeak,
    DestructionDuplication,
    UseAfterDestruction,
};

inline std::string to_string(Violation v) {
    switch (v) {
        case Violation::DeclarationDuplication: return "DECLARATION_DUPLICATION";
        case Violation::UseWithoutDeclaration: return "USE_WITHOUT_DECLARATION";
        case Violation::UnusedEntity: return "UNUSED";
        case Violation::DestructionWithoutDeclaration: return "DESTRUCTION_WITHOUT_DECLARATION";
        case Violation::AssignmentWithoutDeclaration: return "ASSIGNMENT_WITHOUT_DECLARATION";
        case Violation::UseWithoutAssignment: return "USE_WITHOUT_ASSIGNMENT";
        case Violation::DestructionWithoutDefinition: return "DESTRUCTION_WITHOUT_DEFINITION";
        case Violation::MemoryLeak: return "MEMORY_LEAK";
        case Violation::DestructionDuplication: return "DESTRUCTION_DUPLICATION";
        case Violation::UseAfterDestruction: return "USE_AFTER_DESTRUCTION";
    }
    return "?";
}

inline std::optional<Violation> violation_from_string(const std::string& s) {
    for (int i = 1; i <= 10; ++i) {
        Violation v = static_cast<Violation>(i);
        if (to_string(v) == s) return v;
    }
    return std::nullopt;
}

struct SuspiciousSelection {
    int rule = 0;
    Violation violation = Violation::UseWithoutDeclaration;
    std::vector<Literal> literals;          // sorted by option name, deduplicated
    std::vector<ProgramEntity> witnesses;   // sorted, deduplicated
    bool null_only = false;  // rule 6 diagnostic: no non-null assignment survives

    const ProgramEntity& primary_witness() const { return witnesses.front(); }
};

struct DetectorOptions {
    bool emit_unused = false;  // rule 3 selections are computed but not emitted by default
};

namespace detail {

struct RuleSpec {
    int rule;
    SetKind first;
    SetKind second;
    bool flip_first;
    bool flip_second;
    Violation violation;
    // Suppress when the core set already holds the entity (the operation that
    // the rule claims missing is unconditionally present).
    std::optional<SetKind> suppress_core;
    bool suppress_uses_nonnull = false;
    bool symmetric = false;  // enumerate unordered pairs only
};

inline const std::vector<RuleSpec>& rule_specs() {
    static const std::vector<RuleSpec> specs = {
        {1, SetKind::Alpha, SetKind::Alpha, false, false,
         Violation::DeclarationDuplication, std::nullopt, false, true},
        {2, SetKind::Alpha, SetKind::Gamma, true, false,
         Violation::UseWithoutDeclaration, SetKind::Alpha, false, false},
        {3, SetKind::Alpha, SetKind::Gamma, false, true,
         Violation::UnusedEntity, SetKind::Gamma, false, false},
        {4, SetKind::Alpha, SetKind::Delta, true, false,
         Violation::DestructionWithoutDeclaration, SetKind::Alpha, false, false},
        {5, SetKind::Alpha, SetKind::Beta, true, false,
         Violation::AssignmentWithoutDeclaration, SetKind::Alpha, false, false},
        {6, SetKind::Beta, SetKind::Gamma, true, false,
         Violation::UseWithoutAssignment, SetKind::Beta, true, false},
        {7, SetKind::Beta, SetKind::Delta, true, false,
         Violation::DestructionWithoutDefinition, SetKind::Beta, false, false},
        {8, SetKind::Beta, SetKind::Delta, false, true,
         Violation::MemoryLeak, SetKind::Delta, false, false},
        {9, SetKind::Delta, SetKind::Delta, false, false,
         Violation::DestructionDuplication, std::nullopt, false, true},
        {10, SetKind::Delta, SetKind::Gamma, false, false,
         Violation::UseAfterDestruction, std::nullopt, false, false},
    };
    return specs;
}

inline std::vector<SelRef> enumerate_selections(const SelectionTables& tables) {
    std::vector<SelRef> sels;
    for (std::size_t o = 0; o < tables.options().size(); ++o) {
        sels.push_back(SelRef::of(o, true));
        sels.push_back(SelRef::of(o, false));
    }
    sels.push_back(SelRef::core());
    return sels;
}

inline const SelectionTables::Cell& side_cell(const SelectionTables& tables, SetKind set,
                                              const SelRef& sel) {
    return sel.is_core ? tables.core(set) : tables.cell(set, sel.option, sel.value);
}

// Builds the canonical literal list for a rule instance; nullopt when the
// two sides demand contradictory values for the same option.
inline std::optional<std::vector<Literal>> build_literals(
    const SelectionTables& tables, const RuleSpec& spec, const SelRef& s1,
    const SelRef& s2) {
    std::vector<Literal> lits;
    if (!s1.is_core) {
        lits.push_back({tables.options()[s1.option],
                        spec.flip_first ? !s1.value : s1.value});
    }
    if (!s2.is_core) {
        lits.push_back({tables.options()[s2.option],
                        spec.flip_second ? !s2.value : s2.value});
    }
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (std::size_t i = 1; i < lits.size(); ++i) {
        if (lits[i - 1].option == lits[i].option) return std::nullopt;
    }
    return lits;
}

inline ConditionPtr literals_condition(const std::vector<Literal>& lits) {
    ConditionPtr c = cond_true();
    for (const auto& lit : lits) c = cond_and(c, cond_literal(lit.option, lit.value));
    return c;
}

inline std::string literals_key(const std::vector<Literal>& lits) {
    std::string key;
    for (const auto& lit : lits) {
        key += to_string(lit);
        key += ',';
    }
    return key;
}

}  // namespace detail

// Raw pairwise operation co-occurrences across selections (core included).
inline std::vector<Interaction> detect_interactions(const SelectionTables& tables) {
    struct KindSpec {
        InteractionKind kind;
        SetKind first;
        SetKind second;
        bool symmetric;
    };
    static const std::vector<KindSpec> kinds = {
        {InteractionKind::DeclareDeclare, SetKind::Alpha, SetKind::Alpha, true},
        {InteractionKind::DeclareAssign, SetKind::Alpha, SetKind::Beta, false},
        {InteractionKind::DeclareUse, SetKind::Alpha, SetKind::Gamma, false},
        {InteractionKind::DeclareDestruct, SetKind::Alpha, SetKind::Delta, false},
        {InteractionKind::AssignAssign, SetKind::Beta, SetKind::Beta, true},
        {InteractionKind::AssignUse, SetKind::Beta, SetKind::Gamma, false},
        {InteractionKind::AssignDestruct, SetKind::Beta, SetKind::Delta, false},
        {InteractionKind::UseDestruct, SetKind::Gamma, SetKind::Delta, false},
        {InteractionKind::DestructDestruct, SetKind::Delta, SetKind::Delta, true},
    };

    std::vector<SelRef> sels = detail::enumerate_selections(tables);
    std::vector<Interaction> out;
    for (const auto& ks : kinds) {
        for (std::size_t i = 0; i < sels.size(); ++i) {
            for (std::size_t j = 0; j < sels.size(); ++j) {
                if (i == j) continue;
                if (ks.symmetric && j < i) continue;
                const SelRef& s1 = sels[i];
                const SelRef& s2 = sels[j];
                if (s1.is_core && s2.is_core) continue;
                const auto& c1 = detail::side_cell(tables, ks.first, s1);
                const auto& c2 = detail::side_cell(tables, ks.second, s2);
                for (const auto& e : c1.members) {
                    if (!c2.contains(e)) continue;
                    const auto& w1 = c1.witnesses.at(e);
                    const auto& w2 = c2.witnesses.at(e);
                    if (w1.size() == 1 && w2.size() == 1 && w1[0] == w2[0]) continue;
                    out.push_back({ks.kind, e, s1, s2});
                }
            }
        }
    }
    return out;
}

// The ten-rule detector; returns merged, canonically ordered selections.
inline std::vector<SuspiciousSelection> detect_suspicious_selections(
    const SelectionTables& tables, const DetectorOptions& opts = {}) {
    std::vector<SelRef> sels = detail::enumerate_selections(tables);
    const RecordList& records = tables.records();

    std::map<std::pair<int, std::string>, SuspiciousSelection> merged;

    for (const auto& spec : detail::rule_specs()) {
        if (spec.violation == Violation::UnusedEntity && !opts.emit_unused) continue;
        for (std::size_t i = 0; i < sels.size(); ++i) {
            for (std::size_t j = 0; j < sels.size(); ++j) {
                if (i == j) continue;
                if (spec.symmetric && j < i) continue;
                const SelRef& s1 = sels[i];
                const SelRef& s2 = sels[j];
                if (s1.is_core && s2.is_core) continue;
                // A flipped side describes the operation that goes missing;
                // core operations are always present and cannot be flipped away.
                if ((s1.is_core && spec.flip_first) || (s2.is_core && spec.flip_second)) {
                    continue;
                }
                auto lits = detail::build_literals(tables, spec, s1, s2);
                if (!lits) continue;

                const auto& c1 = detail::side_cell(tables, spec.first, s1);
                const auto& c2 = detail::side_cell(tables, spec.second, s2);
                ConditionPtr lit_cond = detail::literals_condition(*lits);

                for (const auto& e : c1.members) {
                    if (!c2.contains(e)) continue;
                    const auto& w1 = c1.witnesses.at(e);
                    const auto& w2 = c2.witnesses.at(e);
                    if (w1.size() == 1 && w2.size() == 1 && w1[0] == w2[0]) continue;

                    // Realizability: the operations the rule relies on must be
                    // possible in configurations matching the literals.
                    bool realizable = false;
                    if (!spec.flip_first && !spec.flip_second) {
                        for (std::size_t a : w1) {
                            for (std::size_t b : w2) {
                                if (a == b) continue;
                                ConditionPtr both = cond_and(records[a].condition,
                                                             records[b].condition);
                                if (satisfiable(cond_and(both, lit_cond))) {
                                    realizable = true;
                                    break;
                                }
                            }
                            if (realizable) break;
                        }
                    } else {
                        const auto& kept = spec.flip_first ? w2 : w1;
                        for (std::size_t a : kept) {
                            if (satisfiable(cond_and(records[a].condition, lit_cond))) {
                                realizable = true;
                                break;
                            }
                        }
                    }
                    if (!realizable) continue;

                    // Core suppression: the "missing" operation is actually
                    // unconditional, so no configuration lacks it.
                    if (spec.suppress_core) {
                        const auto& core = spec.suppress_uses_nonnull
                                               ? tables.nonnull_core()
                                               : tables.core(*spec.suppress_core);
                        if (core.contains(e)) continue;
                    }

                    bool null_only = false;
                    if (spec.violation == Violation::UseWithoutAssignment) {
                        null_only = true;
                        for (std::size_t r = 0; r < records.size(); ++r) {
                            if (records[r].op != OpKind::Assign || records[r].null_assign) {
                                continue;
                            }
                            if (!(records[r].entity == e)) continue;
                            if (satisfiable(cond_and(records[r].condition, lit_cond))) {
                                null_only = false;
                                break;
                            }
                        }
                    }

                    auto key = std::make_pair(spec.rule, detail::literals_key(*lits));
                    auto it = merged.find(key);
                    if (it == merged.end()) {
                        SuspiciousSelection sel;
                        sel.rule = spec.rule;
                        sel.violation = spec.violation;
                        sel.literals = *lits;
                        sel.witnesses.push_back(e);
                        sel.null_only = null_only;
                        merged.emplace(key, std::move(sel));
                    } else {
                        it->second.witnesses.push_back(e);
                        it->second.null_only = it->second.null_only && null_only;
                    }
                }
            }
        }
    }

    std::vector<SuspiciousSelection> out;
    out.reserve(merged.size());
    for (auto& [key, sel] : merged) {
        std::sort(sel.witnesses.begin(), sel.witnesses.end());
        sel.witnesses.erase(std::unique(sel.witnesses.begin(), sel.witnesses.end()),
                            sel.witnesses.end());
        out.push_back(std::move(sel));
    }
    std::sort(out.begin(), out.end(),
              [](const SuspiciousSelection& a, const SuspiciousSelection& b) {
                  if (a.rule != b.rule) return a.rule < b.rule;
                  if (!(a.primary_witness() == b.primary_witness())) {
                      return a.primary_witness() < b.primary_witness();
                  }
                  return detail::literals_key(a.literals) < detail::literals_key(b.literals);
              });
    return out;
}

// Number of suspicious selections fully contained in the configuration.
inline int selection_score(const Configuration& config,
                           const std::vector<SuspiciousSelection>& selections) {
    int score = 0;
    for (const auto& sel : selections) {
        if (contains(config, sel.literals)) ++score;
    }
    return score;
}

}  // namespace varprio
