#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include "varprio/condition.hpp"
#include "varprio/errors.hpp"
#include "varprio/formats.hpp"
#include "varprio/frontend.hpp"
#include "varprio/records.hpp"

using namespace varprio;

namespace {

std::string fixture(const std::string& name) {
    return read_file(std::string(VARPRIO_FIXTURE_DIR) + "/" + name);
}

// All records for (op, scope.name); asserts on these keep tests focused on
// behavior rather than record order.
std::vector<OperationRecord> records_of(const AnalysisResult& res, OpKind op,
                                        const std::string& scope, const std::string& name) {
    std::vector<OperationRecord> out;
    for (const auto& r : res.records) {
        if (r.op == op && r.entity.scope == scope && r.entity.name == name) out.push_back(r);
    }
    return out;
}

bool has_record(const AnalysisResult& res, OpKind op, const std::string& scope,
                const std::string& name) {
    return !records_of(res, op, scope, name).empty();
}

}  // namespace

TEST_SUITE("frontend") {

TEST_CASE("directive-free code yields unconditional records and no options") {
    AnalysisResult res = analyze_source(
        "int add(int a, int b) {\n"
        "    int sum;\n"
        "    sum = a + b;\n"
        "    return sum;\n"
        "}\n");
    CHECK(res.options.empty());
    CHECK(res.blocks.empty());
    CHECK(has_record(res, OpKind::Declare, "GLOBAL", "add"));
    CHECK(has_record(res, OpKind::Declare, "add", "a"));
    CHECK(has_record(res, OpKind::Declare, "add", "b"));
    CHECK(has_record(res, OpKind::Declare, "add", "sum"));
    CHECK(has_record(res, OpKind::Assign, "add", "sum"));
    CHECK(has_record(res, OpKind::Use, "add", "a"));
    CHECK(has_record(res, OpKind::Use, "add", "b"));
    CHECK(has_record(res, OpKind::Use, "add", "sum"));
    for (const auto& r : res.records) CHECK(tautology(r.condition));
}

TEST_CASE("comments and string literals never produce directives or records") {
    AnalysisResult res = analyze_source(
        "/* #ifdef CONFIG_A */\n"
        "// #ifdef CONFIG_B\n"
        "char* msg;\n"
        "void f(void) {\n"
        "    msg = \"#ifdef CONFIG_C\"; /* tricky = 1; */\n"
        "}\n");
    CHECK(res.options.empty());
    CHECK(has_record(res, OpKind::Assign, "GLOBAL", "msg"));
    CHECK_FALSE(has_record(res, OpKind::Assign, "f", "tricky"));
}

TEST_CASE("guards compose through ifdef, ifndef, nesting, else, and elif") {
    AnalysisResult res = analyze_source(
        "int w, x, y, z, q, e1, e2;\n"
        "void f(void) {\n"
        "#ifdef CONFIG_A\n"
        "    w = 1;\n"
        "#ifndef CONFIG_B\n"
        "    x = 1;\n"
        "#endif\n"
        "#else\n"
        "    y = 1;\n"
        "#endif\n"
        "#if defined(CONFIG_C) && !defined(CONFIG_D)\n"
        "    z = 1;\n"
        "#elif defined(CONFIG_E)\n"
        "    e1 = 1;\n"
        "#else\n"
        "    e2 = 1;\n"
        "#endif\n"
        "    q = 1;\n"
        "}\n");
    CHECK(res.options == std::vector<std::string>{"A", "B", "C", "D", "E"});
    auto pc_of = [&](const std::string& name) {
        auto recs = records_of(res, OpKind::Assign, "GLOBAL", name);
        REQUIRE(recs.size() == 1);
        return recs[0].condition;
    };
    ConditionPtr a = cond_atom("A");
    ConditionPtr b = cond_atom("B");
    ConditionPtr c = cond_atom("C");
    ConditionPtr d = cond_atom("D");
    ConditionPtr e = cond_atom("E");
    ConditionPtr first_branch = cond_and(c, cond_not(d));
    CHECK(equivalent(pc_of("w"), a));
    CHECK(equivalent(pc_of("x"), cond_and(a, cond_not(b))));
    CHECK(equivalent(pc_of("y"), cond_not(a)));
    CHECK(equivalent(pc_of("z"), first_branch));
    CHECK(equivalent(pc_of("e1"), cond_and(cond_not(first_branch), e)));
    CHECK(equivalent(pc_of("e2"), cond_and(cond_not(first_branch), cond_not(e))));
    CHECK(tautology(pc_of("q")));
    // One branch condition per conditional branch, in source order.
    REQUIRE(res.blocks.size() == 6);
    CHECK(equivalent(res.blocks[0], a));
    CHECK(equivalent(res.blocks[1], cond_and(a, cond_not(b))));
    CHECK(equivalent(res.blocks[2], cond_not(a)));
    CHECK(equivalent(res.blocks[3], first_branch));
}

TEST_CASE("initializers declare and assign; NULL and 0 count as null assignments") {
    AnalysisResult res = analyze_source(
        "void f(void) {\n"
        "    int a = 5;\n"
        "    char* p = NULL;\n"
        "    int z = 0;\n"
        "    int bare;\n"
        "}\n");
    auto a = records_of(res, OpKind::Assign, "f", "a");
    REQUIRE(a.size() == 1);
    CHECK_FALSE(a[0].null_assign);
    auto p = records_of(res, OpKind::Assign, "f", "p");
    REQUIRE(p.size() == 1);
    CHECK(p[0].null_assign);
    auto z = records_of(res, OpKind::Assign, "f", "z");
    REQUIRE(z.size() == 1);
    CHECK(z[0].null_assign);
    CHECK(has_record(res, OpKind::Declare, "f", "bare"));
    CHECK_FALSE(has_record(res, OpKind::Assign, "f", "bare"));
    // NULL itself is a built-in constant, not an entity.
    CHECK_FALSE(has_record(res, OpKind::Use, "f", "NULL"));
    CHECK_FALSE(has_record(res, OpKind::Use, "GLOBAL", "NULL"));
}

TEST_CASE("destructor calls destroy their first argument and use the callee") {
    AnalysisResult res = analyze_source(
        "void free(void*);\n"
        "void f(char* p, int n) {\n"
        "    free(p);\n"
        "    free(NULL);\n"
        "}\n");
    auto d = records_of(res, OpKind::Destruct, "f", "p");
    REQUIRE(d.size() == 1);
    CHECK(has_record(res, OpKind::Use, "GLOBAL", "free"));
    // free(NULL) destroys nothing.
    CHECK(records_of(res, OpKind::Destruct, "f", "p").size() == 1);

    FrontendOptions opts;
    opts.destructors = {"release"};
    AnalysisResult res2 = analyze_source(
        "void release(void*);\n"
        "void free(void*);\n"
        "void g(char* p, char* q) {\n"
        "    release(p);\n"
        "    free(q);\n"
        "}\n",
        opts);
    CHECK(has_record(res2, OpKind::Destruct, "g", "p"));
    // With a custom destructor list, plain free() is an ordinary call.
    CHECK_FALSE(has_record(res2, OpKind::Destruct, "g", "q"));
    CHECK(has_record(res2, OpKind::Use, "g", "q"));
}

TEST_CASE("labels and variables occupy separate namespaces") {
    AnalysisResult res = analyze_source(
        "void f(void) {\n"
        "    int out;\n"
        "    out = 1;\n"
        "    goto out;\n"
        "out:\n"
        "    return;\n"
        "}\n");
    auto label_decl = records_of(res, OpKind::Declare, "f", "out");
    bool saw_label = false;
    bool saw_var = false;
    for (const auto& r : label_decl) {
        if (r.entity.kind == EntityKind::Label) saw_label = true;
        if (r.entity.kind == EntityKind::Variable) saw_var = true;
    }
    CHECK(saw_label);
    CHECK(saw_var);
    auto uses = records_of(res, OpKind::Use, "f", "out");
    bool goto_use = std::any_of(uses.begin(), uses.end(), [](const OperationRecord& r) {
        return r.entity.kind == EntityKind::Label;
    });
    CHECK(goto_use);
}

TEST_CASE("address-of and member access read the named object") {
    AnalysisResult res = analyze_source(
        "void f(struct S* s, int x) {\n"
        "    int* p;\n"
        "    p = &x;\n"
        "    x = s->field;\n"
        "    x = (*s).field;\n"
        "}\n");
    CHECK(has_record(res, OpKind::Use, "f", "x"));
    CHECK(has_record(res, OpKind::Use, "f", "s"));
    // Member names are attributes of the base object, not entities.
    CHECK_FALSE(has_record(res, OpKind::Use, "f", "field"));
    CHECK_FALSE(has_record(res, OpKind::Use, "GLOBAL", "field"));
}

TEST_CASE("names resolve locals first, then globals, then fall back to the scope") {
    AnalysisResult res = analyze_source(
        "int shared;\n"
        "void f(void) {\n"
        "    int shared;\n"
        "    shared = 1;\n"
        "    mystery = 2;\n"
        "    helper();\n"
        "}\n");
    CHECK(has_record(res, OpKind::Assign, "f", "shared"));
    CHECK_FALSE(has_record(res, OpKind::Assign, "GLOBAL", "shared"));
    // Unknown variable names land in the enclosing function's scope.
    CHECK(has_record(res, OpKind::Assign, "f", "mystery"));
    // Unknown callees are global functions.
    auto calls = records_of(res, OpKind::Use, "GLOBAL", "helper");
    REQUIRE(calls.size() == 1);
    CHECK(calls[0].entity.kind == EntityKind::Function);
}

TEST_CASE("prototype parameters are declared in the named function's scope") {
    AnalysisResult res = analyze_source("int twice(int value);\n");
    CHECK(has_record(res, OpKind::Declare, "GLOBAL", "twice"));
    CHECK(has_record(res, OpKind::Declare, "twice", "value"));
    AnalysisResult anon = analyze_source("int twice(int);\nvoid noargs(void);\n");
    CHECK(has_record(anon, OpKind::Declare, "GLOBAL", "twice"));
    CHECK(has_record(anon, OpKind::Declare, "GLOBAL", "noargs"));
    CHECK(anon.records.size() == 2);
}

TEST_CASE("constructs straddling a conditional boundary are rejected") {
    CHECK_THROWS_AS(analyze_source("void f(void) {\n"
                                   "    int x =\n"
                                   "#ifdef CONFIG_A\n"
                                   "        1;\n"
                                   "#endif\n"
                                   "}\n"),
                    ParseError);
    CHECK_THROWS_AS(analyze_source("void f(void) {\n#ifdef CONFIG_A\n    int x;\n"),
                    ParseError);
    CHECK_THROWS_AS(analyze_source("#endif\nint x;\n"), ParseError);
}

TEST_CASE("option prefixes are stripped; other prefixes pass through") {
    AnalysisResult def = analyze_source("#ifdef CONFIG_FOO\nint a;\n#endif\n");
    CHECK(def.options == std::vector<std::string>{"FOO"});
    FrontendOptions opts;
    opts.option_prefix = "MY_";
    AnalysisResult custom =
        analyze_source("#ifdef MY_FOO\nint a;\n#endif\n#ifdef CONFIG_BAR\nint b;\n#endif\n",
                       opts);
    CHECK(custom.options == std::vector<std::string>{"CONFIG_BAR", "FOO"});
}

TEST_CASE("multiple sources merge records and unify the option universe") {
    AnalysisResult res = analyze_sources({
        "#ifdef CONFIG_A\nint a;\n#endif\n",
        "#ifdef CONFIG_B\nint b;\n#endif\n",
    });
    CHECK(res.options == std::vector<std::string>{"A", "B"});
    CHECK(has_record(res, OpKind::Declare, "GLOBAL", "a"));
    CHECK(has_record(res, OpKind::Declare, "GLOBAL", "b"));
}

TEST_CASE("interrupt-domain fixture: option universe and key records") {
    AnalysisResult res = analyze_source(fixture("linux_twl.c"));
    CHECK(res.options == std::vector<std::string>{"IRQ_DOMAIN", "OF_DEVICE", "OF_IRQ",
                                                  "SPARC", "TWL4030_CORE"});
    auto null_ops = records_of(res, OpKind::Assign, "twl_probe", "ops");
    REQUIRE(null_ops.size() == 2);
    int nulls = 0;
    for (const auto& r : null_ops) nulls += r.null_assign ? 1 : 0;
    CHECK(nulls == 1);
    CHECK(has_record(res, OpKind::Use, "GLOBAL", "irq_domain_add"));
    CHECK(has_record(res, OpKind::Declare, "GLOBAL", "irq_domain_add"));
    CHECK_FALSE(has_record(res, OpKind::Destruct, "twl_probe", "ops"));
}

}  // TEST_SUITE
