#pragma once

// Presence conditions: propositional formulas over named boolean options.
// Construction applies constant folding only; no other simplification, so
// the printed form of a condition mirrors how it was built. Satisfiability
// and entailment are decided by truth-table enumeration, which is exact and
// deterministic for the desk-scale formulas this toolkit targets (capped at
// 24 distinct atoms).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "varprio/errors.hpp"

namespace varprio {

inline constexpr std::size_t kMaxAtoms = 24;

class Condition;
using ConditionPtr = std::shared_ptr<const Condition>;

class Condition {
public:
    enum class Kind { True, False, Atom, Not, And, Or };

    Kind kind() const { return kind_; }
    const std::string& atom_name() const { return atom_; }
    const ConditionPtr& lhs() const { return lhs_; }
    const ConditionPtr& rhs() const { return rhs_; }

    static ConditionPtr make_true() {
        static const ConditionPtr t = std::make_shared<Condition>(Kind::True);
        return t;
    }

    static ConditionPtr make_false() {
        static const ConditionPtr f = std::make_shared<Condition>(Kind::False);
        return f;
    }

    static ConditionPtr make_atom(const std::string& name) {
        auto c = std::make_shared<Condition>(Kind::Atom);
        c->atom_ = name;
        return c;
    }

    static ConditionPtr make_not(const ConditionPtr& a) {
        if (a->kind_ == Kind::True) return make_false();
        if (a->kind_ == Kind::False) return make_true();
        auto c = std::make_shared<Condition>(Kind::Not);
        c->lhs_ = a;
        return c;
    }

    static ConditionPtr make_and(const ConditionPtr& a, const ConditionPtr& b) {
        if (a->kind_ == Kind::False || b->kind_ == Kind::False) return make_false();
        if (a->kind_ == Kind::True) return b;
        if (b->kind_ == Kind::True) return a;
        auto c = std::make_shared<Condition>(Kind::And);
        c->lhs_ = a;
        c->rhs_ = b;
        return c;
    }

    static ConditionPtr make_or(const ConditionPtr& a, const ConditionPtr& b) {
        if (a->kind_ == Kind::True || b->kind_ == Kind::True) return make_true();
        if (a->kind_ == Kind::False) return b;
        if (b->kind_ == Kind::False) return a;
        auto c = std::make_shared<Condition>(Kind::Or);
        c->lhs_ = a;
        c->rhs_ = b;
        return c;
    }

    explicit Condition(Kind k) : kind_(k) {}

private:
    Kind kind_;
    std::string atom_;
    ConditionPtr lhs_;
    ConditionPtr rhs_;
};

// Convenience constructors used throughout.
inline ConditionPtr cond_true() { return Condition::make_true(); }
inline ConditionPtr cond_false() { return Condition::make_false(); }
inline ConditionPtr cond_atom(const std::string& n) { return Condition::make_atom(n); }
inline ConditionPtr cond_not(const ConditionPtr& a) { return Condition::make_not(a); }
inline ConditionPtr cond_and(const ConditionPtr& a, const ConditionPtr& b) {
    return Condition::make_and(a, b);
}
inline ConditionPtr cond_or(const ConditionPtr& a, const ConditionPtr& b) {
    return Condition::make_or(a, b);
}
// A literal: option set to a concrete value.
inline ConditionPtr cond_literal(const std::string& option, bool value) {
    return value ? cond_atom(option) : cond_not(cond_atom(option));
}

inline bool evaluate(const ConditionPtr& c,
                     const std::function<bool(const std::string&)>& assignment) {
    switch (c->kind()) {
        case Condition::Kind::True: return true;
        case Condition::Kind::False: return false;
        case Condition::Kind::Atom: return assignment(c->atom_name());
        case Condition::Kind::Not: return !evaluate(c->lhs(), assignment);
        case Condition::Kind::And:
            return evaluate(c->lhs(), assignment) && evaluate(c->rhs(), assignment);
        case Condition::Kind::Or:
            return evaluate(c->lhs(), assignment) || evaluate(c->rhs(), assignment);
    }
    return false;
}

inline bool evaluate(const ConditionPtr& c, const std::map<std::string, bool>& assignment) {
    return evaluate(c, [&](const std::string& name) {
        auto it = assignment.find(name);
        return it != assignment.end() && it->second;
    });
}

inline void collect_atoms(const ConditionPtr& c, std::set<std::string>& out) {
    switch (c->kind()) {
        case Condition::Kind::Atom: out.insert(c->atom_name()); break;
        case Condition::Kind::Not: collect_atoms(c->lhs(), out); break;
        case Condition::Kind::And:
        case Condition::Kind::Or:
            collect_atoms(c->lhs(), out);
            collect_atoms(c->rhs(), out);
            break;
        default: break;
    }
}

inline std::vector<std::string> atoms(const ConditionPtr& c) {
    std::set<std::string> s;
    collect_atoms(c, s);
    return {s.begin(), s.end()};
}

// Exhaustive satisfiability check over the atoms of the formula.
inline bool satisfiable(const ConditionPtr& c) {
    if (c->kind() == Condition::Kind::True) return true;
    if (c->kind() == Condition::Kind::False) return false;
    std::vector<std::string> vars = atoms(c);
    if (vars.size() > kMaxAtoms) {
        throw TooManyAtoms("formula has " + std::to_string(vars.size()) +
                           " atoms; enumeration is capped at " + std::to_string(kMaxAtoms));
    }
    const std::uint64_t total = std::uint64_t{1} << vars.size();
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        auto assignment = [&](const std::string& name) {
            auto it = std::lower_bound(vars.begin(), vars.end(), name);
            std::size_t idx = static_cast<std::size_t>(it - vars.begin());
            return ((bits >> idx) & 1u) != 0;
        };
        if (evaluate(c, assignment)) return true;
    }
    return false;
}

inline bool tautology(const ConditionPtr& c) { return !satisfiable(cond_not(c)); }

inline bool equivalent(const ConditionPtr& a, const ConditionPtr& b) {
    // a <-> b is a tautology iff !(a <-> b) = (a ^ b) is unsatisfiable.
    ConditionPtr differs = cond_or(cond_and(a, cond_not(b)), cond_and(cond_not(a), b));
    return !satisfiable(differs);
}

// True when every model of `c` sets `option` to `value`, and `c` has a model.
// This is the membership test behind all operation sets: an operation belongs
// to set(option, value) only if its presence condition forces that choice.
inline bool entails_literal(const ConditionPtr& c, const std::string& option, bool value) {
    if (!satisfiable(c)) return false;
    ConditionPtr counter = cond_and(c, cond_literal(option, !value));
    return !satisfiable(counter);
}

// Canonical rendering: `1`/`0` for constants, `!` binds tightest, then `&&`,
// then `||`; parentheses appear only where precedence demands them.
inline std::string to_string(const ConditionPtr& c) {
    auto prec = [](Condition::Kind k) {
        switch (k) {
            case Condition::Kind::Or: return 1;
            case Condition::Kind::And: return 2;
            default: return 3;
        }
    };
    std::function<std::string(const ConditionPtr&, int)> render =
        [&](const ConditionPtr& node, int parent_prec) -> std::string {
        std::string body;
        switch (node->kind()) {
            case Condition::Kind::True: return "1";
            case Condition::Kind::False: return "0";
            case Condition::Kind::Atom: return node->atom_name();
            case Condition::Kind::Not:
                body = "!" + render(node->lhs(), 3);
                break;
            case Condition::Kind::And:
                body = render(node->lhs(), 2) + " && " + render(node->rhs(), 2);
                break;
            case Condition::Kind::Or:
                body = render(node->lhs(), 1) + " || " + render(node->rhs(), 1);
                break;
        }
        if (prec(node->kind()) < parent_prec) return "(" + body + ")";
        return body;
    };
    return render(c, 0);
}

// --- Formula text parser -----------------------------------------------------
//
// Grammar (used by feature-model files and the facts file reader):
//   formula := iff
//   iff     := implies ( "<->" implies )*
//   implies := or ( "->" or )*          (right associative)
//   or      := and ( "||" and )*
//   and     := unary ( "&&" unary )*
//   unary   := "!" unary | "(" formula ")" | "1" | "0" | IDENT
// IDENT may contain comparison text such as `VER>=2` glued into one token by
// the caller's tokenizer; here an identifier is any run of characters that are
// not whitespace, parentheses, or part of a connective.

class FormulaParser {
public:
    explicit FormulaParser(const std::string& text) : text_(text) {}

    ConditionPtr parse() {
        ConditionPtr c = parse_iff();
        skip_ws();
        if (pos_ != text_.size()) {
            throw ParseError("trailing characters in formula: '" + text_.substr(pos_) + "'");
        }
        return c;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    bool consume(const std::string& tok) {
        skip_ws();
        if (text_.compare(pos_, tok.size(), tok) == 0) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    bool peek(const std::string& tok) {
        skip_ws();
        return text_.compare(pos_, tok.size(), tok) == 0;
    }

    ConditionPtr parse_iff() {
        ConditionPtr left = parse_implies();
        while (consume("<->")) {
            ConditionPtr right = parse_implies();
            left = cond_or(cond_and(left, right), cond_and(cond_not(left), cond_not(right)));
        }
        return left;
    }

    ConditionPtr parse_implies() {
        ConditionPtr left = parse_or();
        if (peek("->")) {
            consume("->");
            ConditionPtr right = parse_implies();
            return cond_or(cond_not(left), right);
        }
        return left;
    }

    ConditionPtr parse_or() {
        ConditionPtr left = parse_and();
        while (consume("||")) left = cond_or(left, parse_and());
        return left;
    }

    ConditionPtr parse_and() {
        ConditionPtr left = parse_unary();
        while (consume("&&")) left = cond_and(left, parse_unary());
        return left;
    }

    ConditionPtr parse_unary() {
        skip_ws();
        if (consume("!")) return cond_not(parse_unary());
        if (consume("(")) {
            ConditionPtr inner = parse_iff();
            if (!consume(")")) throw ParseError("missing ')' in formula: " + text_);
            return inner;
        }
        if (pos_ >= text_.size()) throw ParseError("formula ends unexpectedly: " + text_);
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            char ch = text_[pos_];
            if (ch == ' ' || ch == '\t' || ch == '(' || ch == ')') break;
            if (ch == '&' || ch == '|') break;
            if (ch == '!' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
                // part of a comparison token, keep going
            } else if (ch == '!') {
                break;
            }
            if (ch == '<' && text_.compare(pos_, 3, "<->") == 0) break;
            if (ch == '-' && text_.compare(pos_, 2, "->") == 0) break;
            ++pos_;
        }
        if (pos_ == start) throw ParseError("unexpected character in formula: " + text_);
        std::string tok = text_.substr(start, pos_ - start);
        if (tok == "1") return cond_true();
        if (tok == "0") return cond_false();
        return cond_atom(tok);
    }
};

inline ConditionPtr parse_formula(const std::string& text) {
    return FormulaParser(text).parse();
}

}  // namespace varprio
