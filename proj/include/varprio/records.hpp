#pragma once

// Program entities and the operation records the front end extracts from
// configurable source code. An entity is identified by (scope, name, kind):
// scope is the enclosing function name or "GLOBAL"; kind distinguishes the
// variable, function, and label namespaces. Each record is one operation on
// one entity guarded by the presence condition of the code that performs it.

#include <string>
#include <tuple>
#include <vector>

#include "varprio/condition.hpp"

namespace varprio {

inline const std::string kGlobalScope = "GLOBAL";

enum class EntityKind { Variable, Function, Label };

inline std::string to_string(EntityKind k) {
    switch (k) {
        case EntityKind::Variable: return "variable";
        case EntityKind::Function: return "function";
        case EntityKind::Label: return "label";
    }
    return "?";
}

struct ProgramEntity {
    std::string scope;
    std::string name;
    EntityKind kind = EntityKind::Variable;

    bool operator==(const ProgramEntity& other) const {
        return scope == other.scope && name == other.name && kind == other.kind;
    }
    bool operator<(const ProgramEntity& other) const {
        return std::tie(scope, name, kind) < std::tie(other.scope, other.name, other.kind);
    }
};

// Rendered as scope.name, e.g. "GLOBAL.buf" or "twl_probe.ops".
inline std::string to_string(const ProgramEntity& e) {
    return e.scope + "." + e.name;
}

enum class OpKind { Declare, Assign, Use, Destruct };

inline std::string to_string(OpKind k) {
    switch (k) {
        case OpKind::Declare: return "DECLARE";
        case OpKind::Assign: return "ASSIGN";
        case OpKind::Use: return "USE";
        case OpKind::Destruct: return "DESTRUCT";
    }
    return "?";
}

struct OperationRecord {
    OpKind op = OpKind::Use;
    ProgramEntity entity;
    ConditionPtr condition;   // presence condition of the performing code
    bool null_assign = false; // assignment of a literal NULL/0
    int line = 0;             // 1-based source line, diagnostic only
};

using RecordList = std::vector<OperationRecord>;

}  // namespace varprio
