#pragma once

// Brute-force single-variant checker, used as an independent cross-check of
// the interaction detector. Given one concrete configuration, it keeps the
// operation records whose conditions hold in that configuration and flags
// per-entity anomalies directly, with no interaction reasoning:
//   - used but never declared            -> USE_WITHOUT_DECLARATION
//   - destructed but never declared      -> DESTRUCTION_WITHOUT_DECLARATION
//   - assigned but never declared        -> ASSIGNMENT_WITHOUT_DECLARATION
//   - used, declared, and no active non-null assignment (variables only)
//                                        -> USE_WITHOUT_ASSIGNMENT
//   - destructed but never assigned      -> DESTRUCTION_WITHOUT_DEFINITION
//   - assigned, not destructed, and some destruct operation exists for the
//     entity in any configuration        -> MEMORY_LEAK
//   - two or more active declarations    -> DECLARATION_DUPLICATION
//   - two or more active destructions    -> DESTRUCTION_DUPLICATION
//   - declared but never used            -> UNUSED
//   - both used and destructed           -> USE_AFTER_DESTRUCTION

#include <algorithm>
#include <map>
#include <vector>

#include "varprio/configspace.hpp"
#include "varprio/interactions.hpp"
#include "varprio/records.hpp"

namespace varprio {

struct OracleFlag {
    Violation violation;
    ProgramEntity entity;

    bool operator==(const OracleFlag& o) const {
        return violation == o.violation && entity == o.entity;
    }
    bool operator<(const OracleFlag& o) const {
        if (violation != o.violation) return violation < o.violation;
        return entity < o.entity;
    }
};

inline std::vector<OracleFlag> check_variant(const RecordList& records,
                                             const Configuration& config) {
    struct Tally {
        int declares = 0;
        int assigns = 0;
        int nonnull_assigns = 0;
        int uses = 0;
        int destructs = 0;
        bool destruct_anywhere = false;
        EntityKind kind = EntityKind::Variable;
    };
    std::map<ProgramEntity, Tally> tallies;
    auto cfg = config.as_map();

    for (const auto& r : records) {
        Tally& t = tallies[r.entity];
        t.kind = r.entity.kind;
        if (r.op == OpKind::Destruct) t.destruct_anywhere = true;
        if (!evaluate(r.condition, cfg)) continue;
        switch (r.op) {
            case OpKind::Declare: ++t.declares; break;
            case OpKind::Assign:
                ++t.assigns;
                if (!r.null_assign) ++t.nonnull_assigns;
                break;
            case OpKind::Use: ++t.uses; break;
            case OpKind::Destruct: ++t.destructs; break;
        }
    }

    std::vector<OracleFlag> flags;
    for (const auto& [entity, t] : tallies) {
        bool declared = t.declares > 0;
        bool assigned = t.assigns > 0;
        bool used = t.uses > 0;
        bool destructed = t.destructs > 0;
        if (used && !declared) flags.push_back({Violation::UseWithoutDeclaration, entity});
        if (destructed && !declared) {
            flags.push_back({Violation::DestructionWithoutDeclaration, entity});
        }
        if (assigned && !declared) {
            flags.push_back({Violation::AssignmentWithoutDeclaration, entity});
        }
        if (used && declared && t.nonnull_assigns == 0 &&
            t.kind == EntityKind::Variable) {
            flags.push_back({Violation::UseWithoutAssignment, entity});
        }
        if (destructed && !assigned) {
            flags.push_back({Violation::DestructionWithoutDefinition, entity});
        }
        if (assigned && !destructed && t.destruct_anywhere) {
            flags.push_back({Violation::MemoryLeak, entity});
        }
        if (t.declares >= 2) flags.push_back({Violation::DeclarationDuplication, entity});
        if (t.destructs >= 2) flags.push_back({Violation::DestructionDuplication, entity});
        if (declared && !used) flags.push_back({Violation::UnusedEntity, entity});
        if (used && destructed) flags.push_back({Violation::UseAfterDestruction, entity});
    }
    std::sort(flags.begin(), flags.end());
    flags.erase(std::unique(flags.begin(), flags.end()), flags.end());
    return flags;
}

}  // namespace varprio
