#pragma once

// Front end for configurable C-style sources. Three stages:
//   1. lexing with preprocessor-conditional tracking: every token carries the
//      id of the conditional context (#if/#ifdef nest) it appears in;
//   2. recursive-descent parsing of a C subset (globals, prototypes, function
//      definitions, declarations, expression/if/return/goto/label statements);
//   3. extraction of operation records (declare / assign / use / destruct)
//      with name resolution across function and global scopes and separate
//      namespaces for variables, functions, and labels.
//
// Conditional directives are only legal at statement and declaration
// boundaries; a statement or brace pair that straddles contexts is rejected.
// Non-conditional directives (#include, #define, ...) are skipped.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "varprio/condition.hpp"
#include "varprio/errors.hpp"
#include "varprio/records.hpp"

namespace varprio {

struct FrontendOptions {
    std::string option_prefix = "CONFIG_";          // stripped from option names
    std::vector<std::string> destructors = {"free"};  // calls that destroy their first argument
};

struct Token {
    enum class Kind { Ident, Number, String, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 0;
    int ctx = 0;  // conditional context id
};

struct LexResult {
    std::vector<Token> tokens;               // ends with an End token
    std::vector<ConditionPtr> contexts;      // id -> presence condition; id 0 is true
    std::vector<ConditionPtr> branch_conditions;  // every conditional branch, source order
};

namespace detail {

inline std::string strip_prefix(const std::string& name, const std::string& prefix) {
    if (!prefix.empty() && name.size() > prefix.size() &&
        name.compare(0, prefix.size(), prefix) == 0) {
        return name.substr(prefix.size());
    }
    return name;
}

// Replaces comments with spaces, preserving newlines so line numbers survive.
inline std::string strip_comments(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    enum class State { Normal, Str, Chr, Line, Block } state = State::Normal;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        char next = i + 1 < text.size() ? text[i + 1] : '\0';
        switch (state) {
            case State::Normal:
                if (c == '/' && next == '/') {
                    state = State::Line;
                    out += "  ";
                    ++i;
                } else if (c == '/' && next == '*') {
                    state = State::Block;
                    out += "  ";
                    ++i;
                } else {
                    if (c == '"') state = State::Str;
                    if (c == '\'') state = State::Chr;
                    out += c;
                }
                break;
            case State::Str:
                if (c == '\\' && next != '\0') {
                    out += c;
                    out += next;
                    ++i;
                } else {
                    if (c == '"') state = State::Normal;
                    out += c;
                }
                break;
            case State::Chr:
                if (c == '\\' && next != '\0') {
                    out += c;
                    out += next;
                    ++i;
                } else {
                    if (c == '\'') state = State::Normal;
                    out += c;
                }
                break;
            case State::Line:
                if (c == '\n') {
                    state = State::Normal;
                    out += c;
                } else {
                    out += ' ';
                }
                break;
            case State::Block:
                if (c == '*' && next == '/') {
                    state = State::Normal;
                    out += "  ";
                    ++i;
                } else {
                    out += (c == '\n') ? '\n' : ' ';
                }
                break;
        }
    }
    return out;
}

inline bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
inline bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Tokenizes one comment-free line; used for code lines and directive tails.
inline void tokenize_line(const std::string& line, int line_no, int ctx,
                          std::vector<Token>& out) {
    static const char* kMulti[] = {"->", "&&", "||", "==", "!=", "<=", ">=", "<<", ">>",
                                   "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
                                   "++", "--"};
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        Token tok;
        tok.line = line_no;
        tok.ctx = ctx;
        if (is_ident_start(c)) {
            std::size_t j = i;
            while (j < line.size() && is_ident_char(line[j])) ++j;
            tok.kind = Token::Kind::Ident;
            tok.text = line.substr(i, j - i);
            i = j;
        } else if (is_digit(c)) {
            std::size_t j = i;
            while (j < line.size() && (is_ident_char(line[j]) || line[j] == '.')) ++j;
            tok.kind = Token::Kind::Number;
            tok.text = line.substr(i, j - i);
            i = j;
        } else if (c == '"' || c == '\'') {
            char quote = c;
            std::size_t j = i + 1;
            while (j < line.size() && line[j] != quote) {
                if (line[j] == '\\') ++j;
                ++j;
            }
            if (j >= line.size()) {
                throw ParseError("line " + std::to_string(line_no) + ": unterminated literal");
            }
            tok.kind = Token::Kind::String;
            tok.text = line.substr(i, j - i + 1);
            i = j + 1;
        } else {
            tok.kind = Token::Kind::Punct;
            for (const char* m : kMulti) {
                if (line.compare(i, 2, m) == 0) {
                    tok.text = m;
                    break;
                }
            }
            if (tok.text.empty()) tok.text = std::string(1, c);
            i += tok.text.size();
        }
        out.push_back(std::move(tok));
    }
}

// Parses the expression of an #if/#elif directive. Boolean structure
// (defined(X), !, &&, ||, parentheses, 0/1 constants) is interpreted;
// any other comparison or arithmetic chunk becomes a single opaque atom.
class DirectiveExprParser {
public:
    DirectiveExprParser(const std::vector<Token>& toks, const std::string& prefix, int line_no)
        : toks_(toks), prefix_(prefix), line_(line_no) {}

    ConditionPtr parse() {
        ConditionPtr c = parse_or();
        if (pos_ < toks_.size()) {
            throw ParseError("line " + std::to_string(line_) +
                             ": trailing tokens in conditional expression");
        }
        return c;
    }

private:
    const std::vector<Token>& toks_;
    std::string prefix_;
    int line_;
    std::size_t pos_ = 0;

    const Token* peek() const { return pos_ < toks_.size() ? &toks_[pos_] : nullptr; }
    bool peek_punct(const std::string& p) const {
        const Token* t = peek();
        return t && t->kind == Token::Kind::Punct && t->text == p;
    }
    bool consume_punct(const std::string& p) {
        if (peek_punct(p)) {
            ++pos_;
            return true;
        }
        return false;
    }

    ConditionPtr parse_or() {
        ConditionPtr left = parse_and();
        while (consume_punct("||")) left = cond_or(left, parse_and());
        return left;
    }

    ConditionPtr parse_and() {
        ConditionPtr left = parse_unary();
        while (consume_punct("&&")) left = cond_and(left, parse_unary());
        return left;
    }

    ConditionPtr parse_unary() {
        if (consume_punct("!")) return cond_not(parse_unary());
        if (consume_punct("(")) {
            ConditionPtr inner = parse_or();
            if (!consume_punct(")")) {
                throw ParseError("line " + std::to_string(line_) +
                                 ": missing ')' in conditional expression");
            }
            return inner;
        }
        const Token* t = peek();
        if (!t) {
            throw ParseError("line " + std::to_string(line_) +
                             ": conditional expression ends unexpectedly");
        }
        if (t->kind == Token::Kind::Ident && t->text == "defined") {
            ++pos_;
            if (consume_punct("(")) {
                const Token* name = peek();
                if (!name || name->kind != Token::Kind::Ident) {
                    throw ParseError("line " + std::to_string(line_) +
                                     ": defined() needs an identifier");
                }
                ++pos_;
                if (!consume_punct(")")) {
                    throw ParseError("line " + std::to_string(line_) +
                                     ": missing ')' after defined");
                }
                return cond_atom(strip_prefix(name->text, prefix_));
            }
            const Token* name = peek();
            if (!name || name->kind != Token::Kind::Ident) {
                throw ParseError("line " + std::to_string(line_) +
                                 ": defined needs an identifier");
            }
            ++pos_;
            return cond_atom(strip_prefix(name->text, prefix_));
        }
        return parse_chunk();
    }

    // A maximal run of tokens up to a top-level boolean connective. A lone
    // identifier is a defined-test; a lone number is a constant; anything
    // longer is glued into one opaque atom name.
    ConditionPtr parse_chunk() {
        std::vector<const Token*> chunk;
        int depth = 0;
        while (pos_ < toks_.size()) {
            const Token* t = &toks_[pos_];
            if (t->kind == Token::Kind::Punct && depth == 0 &&
                (t->text == "&&" || t->text == "||" || t->text == ")")) {
                break;
            }
            if (t->kind == Token::Kind::Punct && t->text == "(") ++depth;
            if (t->kind == Token::Kind::Punct && t->text == ")") --depth;
            chunk.push_back(t);
            ++pos_;
        }
        if (chunk.empty()) {
            throw ParseError("line " + std::to_string(line_) +
                             ": empty conditional expression");
        }
        if (chunk.size() == 1 && chunk[0]->kind == Token::Kind::Ident) {
            return cond_atom(strip_prefix(chunk[0]->text, prefix_));
        }
        if (chunk.size() == 1 && chunk[0]->kind == Token::Kind::Number) {
            return chunk[0]->text == "0" ? cond_false() : cond_true();
        }
        std::string glued;
        for (std::size_t i = 0; i < chunk.size(); ++i) {
            std::string piece = chunk[i]->text;
            if (i == 0 && chunk[i]->kind == Token::Kind::Ident) {
                piece = strip_prefix(piece, prefix_);
            }
            glued += piece;
        }
        return cond_atom(glued);
    }
};

class Lexer {
public:
    Lexer(const std::string& text, const FrontendOptions& opts)
        : text_(strip_comments(text)), opts_(opts) {}

    LexResult run() {
        result_.contexts.push_back(cond_true());
        std::size_t start = 0;
        int line_no = 1;
        while (start <= text_.size()) {
            std::size_t end = text_.find('\n', start);
            std::string line = (end == std::string::npos) ? text_.substr(start)
                                                          : text_.substr(start, end - start);
            process_line(line, line_no);
            if (end == std::string::npos) break;
            start = end + 1;
            ++line_no;
        }
        if (!stack_.empty()) {
            throw ParseError("missing #endif at end of file");
        }
        Token end_tok;
        end_tok.kind = Token::Kind::End;
        end_tok.line = line_no;
        end_tok.ctx = cur_ctx_;
        result_.tokens.push_back(end_tok);
        return std::move(result_);
    }

private:
    struct Frame {
        int parent_ctx;
        ConditionPtr negated;  // conjunction of negations of earlier branches
        ConditionPtr last;     // condition of the current branch
        bool in_else = false;
        int line;
    };

    std::string text_;
    FrontendOptions opts_;
    LexResult result_;
    std::vector<Frame> stack_;
    int cur_ctx_ = 0;

    int add_context(const ConditionPtr& pc) {
        result_.contexts.push_back(pc);
        result_.branch_conditions.push_back(pc);
        return static_cast<int>(result_.contexts.size()) - 1;
    }

    const ConditionPtr& pc_of(int ctx) const { return result_.contexts[ctx]; }

    void process_line(const std::string& line, int line_no) {
        std::size_t i = 0;
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i < line.size() && line[i] == '#') {
            process_directive(line.substr(i + 1), line_no);
            return;
        }
        tokenize_line(line, line_no, cur_ctx_, result_.tokens);
    }

    void process_directive(const std::string& tail, int line_no) {
        std::size_t i = 0;
        while (i < tail.size() && (tail[i] == ' ' || tail[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < tail.size() && is_ident_char(tail[j])) ++j;
        std::string name = tail.substr(i, j - i);
        std::string rest = tail.substr(j);

        if (name == "ifdef" || name == "ifndef") {
            std::vector<Token> toks;
            tokenize_line(rest, line_no, cur_ctx_, toks);
            if (toks.size() != 1 || toks[0].kind != Token::Kind::Ident) {
                throw ParseError("line " + std::to_string(line_no) + ": #" + name +
                                 " needs a single identifier");
            }
            ConditionPtr atom = cond_atom(strip_prefix(toks[0].text, opts_.option_prefix));
            push_if(name == "ifdef" ? atom : cond_not(atom), line_no);
        } else if (name == "if") {
            push_if(parse_condition(rest, line_no), line_no);
        } else if (name == "elif") {
            if (stack_.empty()) {
                throw ParseError("line " + std::to_string(line_no) + ": #elif without #if");
            }
            Frame& f = stack_.back();
            if (f.in_else) {
                throw ParseError("line " + std::to_string(line_no) + ": #elif after #else");
            }
            f.negated = cond_and(f.negated, cond_not(f.last));
            f.last = parse_condition(rest, line_no);
            cur_ctx_ = add_context(cond_and(pc_of(f.parent_ctx), cond_and(f.negated, f.last)));
        } else if (name == "else") {
            if (stack_.empty()) {
                throw ParseError("line " + std::to_string(line_no) + ": #else without #if");
            }
            Frame& f = stack_.back();
            if (f.in_else) {
                throw ParseError("line " + std::to_string(line_no) + ": duplicate #else");
            }
            f.negated = cond_and(f.negated, cond_not(f.last));
            f.in_else = true;
            cur_ctx_ = add_context(cond_and(pc_of(f.parent_ctx), f.negated));
        } else if (name == "endif") {
            if (stack_.empty()) {
                throw ParseError("line " + std::to_string(line_no) + ": #endif without #if");
            }
            cur_ctx_ = stack_.back().parent_ctx;
            stack_.pop_back();
        }
        // Any other directive (#include, #define, #pragma, ...) is skipped.
    }

    ConditionPtr parse_condition(const std::string& rest, int line_no) {
        std::vector<Token> toks;
        tokenize_line(rest, line_no, cur_ctx_, toks);
        return DirectiveExprParser(toks, opts_.option_prefix, line_no).parse();
    }

    void push_if(const ConditionPtr& cond, int line_no) {
        Frame f;
        f.parent_ctx = cur_ctx_;
        f.negated = cond_true();
        f.last = cond;
        f.line = line_no;
        stack_.push_back(f);
        cur_ctx_ = add_context(cond_and(pc_of(f.parent_ctx), cond));
    }
};

// --- Abstract syntax ---------------------------------------------------------

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

struct Expr {
    enum class Kind { Ident, Number, Literal, Call, Member, Index, Unary, Binary, Assign };
    Kind kind;
    std::string text;  // identifier name, operator, or member name
    bool arrow = false;
    int line = 0;
    std::vector<ExprPtr> kids;  // Call: callee then args; Assign: lhs, rhs
};

struct Declarator {
    std::string name;
    ExprPtr init;  // null when absent
    int line = 0;
};

struct Stmt;
using StmtPtr = std::shared_ptr<Stmt>;

struct Stmt {
    enum class Kind { Expression, Declaration, Return, Goto, Label, If, Block, Empty };
    Kind kind;
    int ctx = 0;
    int line = 0;
    ExprPtr expr;  // expression / return value / if condition
    std::string name;  // goto target or label name
    std::vector<Declarator> decls;
    std::vector<StmtPtr> body;  // block statements
    StmtPtr then_branch;
    StmtPtr else_branch;
};

struct Param {
    std::string name;  // empty for unnamed prototype parameters
};

struct TopItem {
    enum class Kind { VarDecl, Prototype, FunctionDef };
    Kind kind;
    int ctx = 0;
    int line = 0;
    std::vector<Declarator> decls;  // VarDecl
    std::string fn_name;
    std::vector<Param> params;
    std::vector<StmtPtr> body;  // FunctionDef
};

inline const std::set<std::string>& type_keywords() {
    static const std::set<std::string> kw = {
        "void", "char", "short", "int", "long", "float", "double", "signed",
        "unsigned", "struct", "union", "enum", "static", "extern", "const",
        "volatile", "register", "inline"};
    return kw;
}

class Parser {
public:
    explicit Parser(const LexResult& lex) : lex_(lex) {}

    std::vector<TopItem> parse() {
        std::vector<TopItem> items;
        while (!at_end()) items.push_back(parse_top_item());
        return items;
    }

private:
    const LexResult& lex_;
    std::size_t pos_ = 0;

    const Token& cur() const { return lex_.tokens[pos_]; }
    const Token& ahead(std::size_t n) const {
        std::size_t i = pos_ + n;
        if (i >= lex_.tokens.size()) i = lex_.tokens.size() - 1;
        return lex_.tokens[i];
    }
    bool at_end() const { return cur().kind == Token::Kind::End; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("line " + std::to_string(cur().line) + ": " + msg +
                         (at_end() ? " (at end of file)" : " (near '" + cur().text + "')"));
    }

    const Token& next() {
        if (at_end()) fail("unexpected end of file");
        return lex_.tokens[pos_++];
    }

    bool is_punct(const std::string& p) const {
        return cur().kind == Token::Kind::Punct && cur().text == p;
    }
    bool is_ident(const std::string& name) const {
        return cur().kind == Token::Kind::Ident && cur().text == name;
    }
    void expect_punct(const std::string& p) {
        if (!is_punct(p)) fail("expected '" + p + "'");
        ++pos_;
    }
    std::string expect_ident() {
        if (cur().kind != Token::Kind::Ident) fail("expected identifier");
        return next().text;
    }

    bool at_type_start() const {
        return cur().kind == Token::Kind::Ident && type_keywords().count(cur().text) > 0;
    }

    // Every token in [from, to) must live in conditional context `ctx`:
    // directives may not split a declaration, statement, or function header.
    void require_uniform(std::size_t from, std::size_t to, int ctx, const char* what) const {
        for (std::size_t i = from; i < to; ++i) {
            if (lex_.tokens[i].ctx != ctx) {
                throw ParseError("line " + std::to_string(lex_.tokens[i].line) +
                                 ": conditional directive splits a " + std::string(what));
            }
        }
    }

    void parse_type() {
        bool any = false;
        while (cur().kind == Token::Kind::Ident && type_keywords().count(cur().text) > 0) {
            std::string kw = next().text;
            any = true;
            if (kw == "struct" || kw == "union" || kw == "enum") {
                expect_ident();  // tag name
            }
        }
        if (!any) fail("expected type");
    }

    Declarator parse_declarator() {
        while (is_punct("*")) ++pos_;
        Declarator d;
        d.line = cur().line;
        d.name = expect_ident();
        while (is_punct("[")) {
            ++pos_;
            int depth = 1;
            while (depth > 0) {
                if (at_end()) fail("unterminated array declarator");
                if (is_punct("[")) ++depth;
                if (is_punct("]")) --depth;
                ++pos_;
            }
        }
        return d;
    }

    TopItem parse_top_item() {
        TopItem item;
        item.ctx = cur().ctx;
        item.line = cur().line;
        std::size_t start = pos_;
        if (!at_type_start()) fail("expected declaration");
        parse_type();
        Declarator first = parse_declarator();
        if (is_punct("(")) {
            item.fn_name = first.name;
            ++pos_;
            parse_params(item.params);
            expect_punct(")");
            if (is_punct(";")) {
                ++pos_;
                item.kind = TopItem::Kind::Prototype;
                require_uniform(start, pos_, item.ctx, "declaration");
                return item;
            }
            if (!is_punct("{")) fail("expected ';' or '{' after function header");
            require_uniform(start, pos_ + 1, item.ctx, "function header");
            item.kind = TopItem::Kind::FunctionDef;
            parse_block_body(item.ctx, item.body);
            return item;
        }
        item.kind = TopItem::Kind::VarDecl;
        if (is_punct("=")) {
            ++pos_;
            first.init = parse_assign_expr();
        }
        item.decls.push_back(std::move(first));
        while (is_punct(",")) {
            ++pos_;
            Declarator d = parse_declarator();
            if (is_punct("=")) {
                ++pos_;
                d.init = parse_assign_expr();
            }
            item.decls.push_back(std::move(d));
        }
        expect_punct(";");
        require_uniform(start, pos_, item.ctx, "declaration");
        return item;
    }

    void parse_params(std::vector<Param>& out) {
        if (is_punct(")")) return;
        if (is_ident("void") && ahead(1).kind == Token::Kind::Punct && ahead(1).text == ")") {
            ++pos_;
            return;
        }
        while (true) {
            parse_type();
            while (is_punct("*")) ++pos_;
            Param p;
            if (cur().kind == Token::Kind::Ident) p.name = next().text;
            while (is_punct("[")) {
                ++pos_;
                while (!is_punct("]")) {
                    if (at_end()) fail("unterminated array parameter");
                    ++pos_;
                }
                ++pos_;
            }
            out.push_back(std::move(p));
            if (!is_punct(",")) break;
            ++pos_;
        }
    }

    // Parses `{ ... }` where the braces live in `ctx`; inner statements may
    // sit in nested conditional contexts.
    void parse_block_body(int ctx, std::vector<StmtPtr>& out) {
        if (!is_punct("{") || cur().ctx != ctx) fail("expected '{'");
        ++pos_;
        while (!is_punct("}")) {
            if (at_end()) fail("unterminated block");
            out.push_back(parse_statement());
        }
        if (cur().ctx != ctx) {
            throw ParseError("line " + std::to_string(cur().line) +
                             ": closing '}' is in a different conditional context "
                             "than its opening brace");
        }
        ++pos_;
    }

    StmtPtr parse_statement() {
        auto stmt = std::make_shared<Stmt>();
        stmt->ctx = cur().ctx;
        stmt->line = cur().line;
        std::size_t start = pos_;

        if (is_punct("{")) {
            stmt->kind = Stmt::Kind::Block;
            parse_block_body(stmt->ctx, stmt->body);
            return stmt;
        }
        if (is_ident("if")) {
            stmt->kind = Stmt::Kind::If;
            ++pos_;
            expect_punct("(");
            stmt->expr = parse_expr();
            expect_punct(")");
            require_uniform(start, pos_, stmt->ctx, "statement");
            if (cur().ctx != stmt->ctx) {
                throw ParseError("line " + std::to_string(cur().line) +
                                 ": conditional directive splits an if statement");
            }
            stmt->then_branch = parse_statement();
            if (is_ident("else") && cur().ctx == stmt->ctx) {
                ++pos_;
                stmt->else_branch = parse_statement();
            }
            return stmt;
        }
        if (is_punct(";")) {
            stmt->kind = Stmt::Kind::Empty;
            ++pos_;
            return stmt;
        }
        if (is_ident("return")) {
            stmt->kind = Stmt::Kind::Return;
            ++pos_;
            if (!is_punct(";")) stmt->expr = parse_expr();
            expect_punct(";");
            require_uniform(start, pos_, stmt->ctx, "statement");
            return stmt;
        }
        if (is_ident("goto")) {
            stmt->kind = Stmt::Kind::Goto;
            ++pos_;
            stmt->name = expect_ident();
            expect_punct(";");
            require_uniform(start, pos_, stmt->ctx, "statement");
            return stmt;
        }
        if (at_type_start()) {
            stmt->kind = Stmt::Kind::Declaration;
            parse_type();
            while (true) {
                Declarator d = parse_declarator();
                if (is_punct("=")) {
                    ++pos_;
                    d.init = parse_assign_expr();
                }
                stmt->decls.push_back(std::move(d));
                if (!is_punct(",")) break;
                ++pos_;
            }
            expect_punct(";");
            require_uniform(start, pos_, stmt->ctx, "declaration");
            return stmt;
        }
        if (cur().kind == Token::Kind::Ident && ahead(1).kind == Token::Kind::Punct &&
            ahead(1).text == ":") {
            stmt->kind = Stmt::Kind::Label;
            stmt->name = next().text;
            ++pos_;  // ':'
            require_uniform(start, pos_, stmt->ctx, "statement");
            return stmt;
        }
        stmt->kind = Stmt::Kind::Expression;
        stmt->expr = parse_expr();
        expect_punct(";");
        require_uniform(start, pos_, stmt->ctx, "statement");
        return stmt;
    }

    // --- expressions ----------------------------------------------------

    ExprPtr make_expr(Expr::Kind k, const std::string& text) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->text = text;
        e->line = cur().line;
        return e;
    }

    ExprPtr parse_expr() { return parse_assign_expr(); }

    ExprPtr parse_assign_expr() {
        ExprPtr lhs = parse_binary(1);
        static const std::set<std::string> kAssignOps = {"=",  "+=", "-=", "*=", "/=",
                                                         "%=", "&=", "|=", "^="};
        if (cur().kind == Token::Kind::Punct && kAssignOps.count(cur().text) > 0) {
            std::string op = next().text;
            if (lhs->kind != Expr::Kind::Ident && lhs->kind != Expr::Kind::Member &&
                lhs->kind != Expr::Kind::Index &&
                !(lhs->kind == Expr::Kind::Unary && lhs->text == "*")) {
                fail("invalid assignment target");
            }
            auto e = make_expr(Expr::Kind::Assign, op);
            e->kids.push_back(lhs);
            e->kids.push_back(parse_assign_expr());
            return e;
        }
        return lhs;
    }

    static int binary_prec(const std::string& op) {
        if (op == "||") return 1;
        if (op == "&&") return 2;
        if (op == "|") return 3;
        if (op == "^") return 4;
        if (op == "&") return 5;
        if (op == "==" || op == "!=") return 6;
        if (op == "<" || op == ">" || op == "<=" || op == ">=") return 7;
        if (op == "<<" || op == ">>") return 8;
        if (op == "+" || op == "-") return 9;
        if (op == "*" || op == "/" || op == "%") return 10;
        return 0;
    }

    ExprPtr parse_binary(int min_prec) {
        ExprPtr left = parse_unary();
        while (cur().kind == Token::Kind::Punct) {
            int prec = binary_prec(cur().text);
            if (prec < min_prec || prec == 0) break;
            std::string op = next().text;
            ExprPtr right = parse_binary(prec + 1);
            auto e = make_expr(Expr::Kind::Binary, op);
            e->kids.push_back(left);
            e->kids.push_back(right);
            left = e;
        }
        return left;
    }

    ExprPtr parse_unary() {
        static const std::set<std::string> kUnary = {"!", "~", "-", "+", "*", "&", "++", "--"};
        if (cur().kind == Token::Kind::Punct && kUnary.count(cur().text) > 0) {
            std::string op = next().text;
            auto e = make_expr(Expr::Kind::Unary, op);
            e->kids.push_back(parse_unary());
            return e;
        }
        return parse_postfix();
    }

    ExprPtr parse_postfix() {
        ExprPtr e = parse_primary();
        while (true) {
            if (is_punct("(")) {
                ++pos_;
                auto call = make_expr(Expr::Kind::Call, "");
                call->kids.push_back(e);
                if (!is_punct(")")) {
                    while (true) {
                        call->kids.push_back(parse_assign_expr());
                        if (!is_punct(",")) break;
                        ++pos_;
                    }
                }
                expect_punct(")");
                e = call;
            } else if (is_punct(".") || is_punct("->")) {
                bool arrow = cur().text == "->";
                ++pos_;
                auto m = make_expr(Expr::Kind::Member, "");
                m->text = expect_ident();
                m->arrow = arrow;
                m->kids.push_back(e);
                e = m;
            } else if (is_punct("[")) {
                ++pos_;
                auto idx = make_expr(Expr::Kind::Index, "");
                idx->kids.push_back(e);
                idx->kids.push_back(parse_expr());
                expect_punct("]");
                e = idx;
            } else if (is_punct("++") || is_punct("--")) {
                auto u = make_expr(Expr::Kind::Unary, next().text);
                u->kids.push_back(e);
                e = u;
            } else {
                break;
            }
        }
        return e;
    }

    ExprPtr parse_primary() {
        if (cur().kind == Token::Kind::Ident) return make_ident();
        if (cur().kind == Token::Kind::Number) {
            auto e = make_expr(Expr::Kind::Number, cur().text);
            ++pos_;
            return e;
        }
        if (cur().kind == Token::Kind::String) {
            auto e = make_expr(Expr::Kind::Literal, cur().text);
            ++pos_;
            return e;
        }
        if (is_punct("(")) {
            ++pos_;
            ExprPtr inner = parse_expr();
            expect_punct(")");
            return inner;
        }
        fail("expected expression");
    }

    ExprPtr make_ident() {
        auto e = make_expr(Expr::Kind::Ident, cur().text);
        ++pos_;
        return e;
    }
};

// --- Record extraction -------------------------------------------------------

class Extractor {
public:
    Extractor(const std::vector<TopItem>& items, const LexResult& lex,
              const FrontendOptions& opts)
        : items_(items), lex_(lex) {
        for (const auto& d : opts.destructors) destructors_.insert(d);
    }

    RecordList run() {
        collect_names();
        for (const auto& item : items_) emit_item(item);
        return std::move(records_);
    }

private:
    const std::vector<TopItem>& items_;
    const LexResult& lex_;
    std::set<std::string> destructors_;
    std::map<std::string, EntityKind> globals_;
    std::map<std::string, std::set<std::string>> fn_locals_;
    RecordList records_;
    std::string cur_fn_;  // empty at file scope

    void collect_names() {
        for (const auto& item : items_) {
            switch (item.kind) {
                case TopItem::Kind::VarDecl:
                    for (const auto& d : item.decls) {
                        globals_.emplace(d.name, EntityKind::Variable);
                    }
                    break;
                case TopItem::Kind::Prototype:
                case TopItem::Kind::FunctionDef:
                    globals_[item.fn_name] = EntityKind::Function;
                    if (item.kind == TopItem::Kind::FunctionDef) {
                        auto& locals = fn_locals_[item.fn_name];
                        for (const auto& p : item.params) {
                            if (!p.name.empty()) locals.insert(p.name);
                        }
                        collect_locals(item.body, locals);
                    }
                    break;
            }
        }
    }

    void collect_locals(const std::vector<StmtPtr>& stmts, std::set<std::string>& out) {
        for (const auto& s : stmts) collect_locals(s, out);
    }

    void collect_locals(const StmtPtr& s, std::set<std::string>& out) {
        if (!s) return;
        if (s->kind == Stmt::Kind::Declaration) {
            for (const auto& d : s->decls) out.insert(d.name);
        }
        collect_locals(s->body, out);
        collect_locals(s->then_branch, out);
        collect_locals(s->else_branch, out);
    }

    const ConditionPtr& pc(int ctx) const { return lex_.contexts[ctx]; }

    void add(OpKind op, const ProgramEntity& e, int ctx, int line, bool null_assign = false) {
        OperationRecord r;
        r.op = op;
        r.entity = e;
        r.condition = pc(ctx);
        r.null_assign = null_assign;
        r.line = line;
        records_.push_back(std::move(r));
    }

    ProgramEntity resolve(const std::string& name) const {
        if (!cur_fn_.empty()) {
            auto it = fn_locals_.find(cur_fn_);
            if (it != fn_locals_.end() && it->second.count(name) > 0) {
                return {cur_fn_, name, EntityKind::Variable};
            }
        }
        auto g = globals_.find(name);
        if (g != globals_.end()) {
            return {kGlobalScope, name, g->second};
        }
        // Unknown name: a variable belonging to the innermost scope.
        return {cur_fn_.empty() ? kGlobalScope : cur_fn_, name, EntityKind::Variable};
    }

    ProgramEntity resolve_callee(const std::string& name) const {
        if (!cur_fn_.empty()) {
            auto it = fn_locals_.find(cur_fn_);
            if (it != fn_locals_.end() && it->second.count(name) > 0) {
                return {cur_fn_, name, EntityKind::Variable};  // call through a pointer
            }
        }
        auto g = globals_.find(name);
        if (g != globals_.end()) return {kGlobalScope, name, g->second};
        return {kGlobalScope, name, EntityKind::Function};
    }

    static bool is_null_expr(const ExprPtr& e) {
        return (e->kind == Expr::Kind::Ident && e->text == "NULL") ||
               (e->kind == Expr::Kind::Number && e->text == "0");
    }

    void emit_item(const TopItem& item) {
        switch (item.kind) {
            case TopItem::Kind::VarDecl:
                cur_fn_.clear();
                for (const auto& d : item.decls) {
                    add(OpKind::Declare, {kGlobalScope, d.name, EntityKind::Variable},
                        item.ctx, d.line);
                    if (d.init) {
                        scan_read(d.init, item.ctx);
                        add(OpKind::Assign, {kGlobalScope, d.name, EntityKind::Variable},
                            item.ctx, d.line, is_null_expr(d.init));
                    }
                }
                break;
            case TopItem::Kind::Prototype:
            case TopItem::Kind::FunctionDef:
                add(OpKind::Declare, {kGlobalScope, item.fn_name, EntityKind::Function},
                    item.ctx, item.line);
                for (const auto& p : item.params) {
                    if (!p.name.empty()) {
                        add(OpKind::Declare, {item.fn_name, p.name, EntityKind::Variable},
                            item.ctx, item.line);
                    }
                }
                if (item.kind == TopItem::Kind::FunctionDef) {
                    cur_fn_ = item.fn_name;
                    emit_stmts(item.body);
                    cur_fn_.clear();
                }
                break;
        }
    }

    void emit_stmts(const std::vector<StmtPtr>& stmts) {
        for (const auto& s : stmts) emit_stmt(s);
    }

    void emit_stmt(const StmtPtr& s) {
        if (!s) return;
        switch (s->kind) {
            case Stmt::Kind::Declaration:
                for (const auto& d : s->decls) {
                    add(OpKind::Declare, {cur_fn_, d.name, EntityKind::Variable}, s->ctx,
                        d.line);
                    if (d.init) {
                        scan_read(d.init, s->ctx);
                        add(OpKind::Assign, {cur_fn_, d.name, EntityKind::Variable}, s->ctx,
                            d.line, is_null_expr(d.init));
                    }
                }
                break;
            case Stmt::Kind::Expression:
                scan_read(s->expr, s->ctx);
                break;
            case Stmt::Kind::Return:
                if (s->expr) scan_read(s->expr, s->ctx);
                break;
            case Stmt::Kind::Goto:
                add(OpKind::Use, {cur_fn_, s->name, EntityKind::Label}, s->ctx, s->line);
                break;
            case Stmt::Kind::Label:
                add(OpKind::Declare, {cur_fn_, s->name, EntityKind::Label}, s->ctx, s->line);
                break;
            case Stmt::Kind::If:
                scan_read(s->expr, s->ctx);
                emit_stmt(s->then_branch);
                emit_stmt(s->else_branch);
                break;
            case Stmt::Kind::Block:
                emit_stmts(s->body);
                break;
            case Stmt::Kind::Empty:
                break;
        }
    }

    // Emits records for an expression evaluated for its value.
    void scan_read(const ExprPtr& e, int ctx) {
        switch (e->kind) {
            case Expr::Kind::Ident:
                if (e->text != "NULL") add(OpKind::Use, resolve(e->text), ctx, e->line);
                break;
            case Expr::Kind::Number:
            case Expr::Kind::Literal:
                break;
            case Expr::Kind::Call:
                scan_call(e, ctx);
                break;
            case Expr::Kind::Member:
                // a.b / a->b reads a; the member itself is not an entity.
                scan_read(e->kids[0], ctx);
                break;
            case Expr::Kind::Index:
                scan_read(e->kids[0], ctx);
                scan_read(e->kids[1], ctx);
                break;
            case Expr::Kind::Unary:
                if (e->text == "&" && e->kids[0]->kind == Expr::Kind::Ident) {
                    add(OpKind::Use, resolve(e->kids[0]->text), ctx, e->line);
                } else if ((e->text == "++" || e->text == "--") &&
                           e->kids[0]->kind == Expr::Kind::Ident) {
                    add(OpKind::Use, resolve(e->kids[0]->text), ctx, e->line);
                    emit_assign_target(e->kids[0], ctx, false);
                } else {
                    scan_read(e->kids[0], ctx);
                }
                break;
            case Expr::Kind::Binary:
                scan_read(e->kids[0], ctx);
                scan_read(e->kids[1], ctx);
                break;
            case Expr::Kind::Assign: {
                const ExprPtr& lhs = e->kids[0];
                const ExprPtr& rhs = e->kids[1];
                scan_read(rhs, ctx);
                if (e->text != "=") scan_read(lhs, ctx);  // compound assignment reads too
                emit_assign_target(lhs, ctx, e->text == "=" && is_null_expr(rhs));
                break;
            }
        }
    }

    void emit_assign_target(const ExprPtr& lhs, int ctx, bool null_assign) {
        switch (lhs->kind) {
            case Expr::Kind::Ident: {
                ProgramEntity e = resolve(lhs->text);
                if (e.kind == EntityKind::Function) {
                    throw ParseError("line " + std::to_string(lhs->line) +
                                     ": cannot assign to function '" + lhs->text + "'");
                }
                add(OpKind::Assign, e, ctx, lhs->line, null_assign);
                break;
            }
            case Expr::Kind::Member:
                // a.b = x / a->b = x reads a; no entity is assigned.
                scan_read(lhs->kids[0], ctx);
                break;
            case Expr::Kind::Index:
                scan_read(lhs->kids[0], ctx);
                scan_read(lhs->kids[1], ctx);
                break;
            case Expr::Kind::Unary:
                if (lhs->text == "*") {
                    scan_read(lhs->kids[0], ctx);
                    break;
                }
                [[fallthrough]];
            default:
                throw ParseError("line " + std::to_string(lhs->line) +
                                 ": invalid assignment target");
        }
    }

    void scan_call(const ExprPtr& call, int ctx) {
        const ExprPtr& callee = call->kids[0];
        if (callee->kind == Expr::Kind::Ident) {
            add(OpKind::Use, resolve_callee(callee->text), ctx, callee->line);
            std::size_t first_arg = 1;
            if (destructors_.count(callee->text) > 0 && call->kids.size() > 1 &&
                call->kids[1]->kind == Expr::Kind::Ident &&
                call->kids[1]->text != "NULL") {
                ProgramEntity target = resolve(call->kids[1]->text);
                if (target.kind == EntityKind::Variable) {
                    add(OpKind::Destruct, target, ctx, call->kids[1]->line);
                    first_arg = 2;
                }
            }
            for (std::size_t i = first_arg; i < call->kids.size(); ++i) {
                scan_read(call->kids[i], ctx);
            }
            return;
        }
        scan_read(callee, ctx);
        for (std::size_t i = 1; i < call->kids.size(); ++i) scan_read(call->kids[i], ctx);
    }
};

}  // namespace detail

struct AnalysisResult {
    RecordList records;
    std::vector<std::string> options;      // sorted option universe (post-prefix-strip)
    std::vector<ConditionPtr> blocks;      // conditional branch conditions, source order
};

inline AnalysisResult analyze_source(const std::string& text,
                                     const FrontendOptions& opts = {}) {
    detail::Lexer lexer(text, opts);
    LexResult lex = lexer.run();
    detail::Parser parser(lex);
    std::vector<detail::TopItem> items = parser.parse();
    detail::Extractor extractor(items, lex, opts);

    AnalysisResult result;
    result.records = extractor.run();
    result.blocks = lex.branch_conditions;
    std::set<std::string> option_names;
    for (const auto& c : lex.branch_conditions) collect_atoms(c, option_names);
    result.options.assign(option_names.begin(), option_names.end());
    return result;
}

inline AnalysisResult analyze_sources(const std::vector<std::string>& texts,
                                      const FrontendOptions& opts = {}) {
    AnalysisResult merged;
    std::set<std::string> option_names;
    for (const auto& text : texts) {
        AnalysisResult one = analyze_source(text, opts);
        for (auto& r : one.records) merged.records.push_back(std::move(r));
        for (auto& b : one.blocks) merged.blocks.push_back(std::move(b));
        option_names.insert(one.options.begin(), one.options.end());
    }
    merged.options.assign(option_names.begin(), option_names.end());
    return merged;
}

}  // namespace varprio
