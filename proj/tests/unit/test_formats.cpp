#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "varprio/configspace.hpp"
#include "varprio/errors.hpp"
#include "varprio/formats.hpp"
#include "varprio/frontend.hpp"
#include "varprio/interactions.hpp"
#include "varprio/metrics.hpp"
#include "varprio/selection_tables.hpp"

using namespace varprio;

namespace {

std::string fixture(const std::string& name) {
    return read_file(std::string(VARPRIO_FIXTURE_DIR) + "/" + name);
}

}  // namespace

TEST_SUITE("formats") {

TEST_CASE("literal parsing accepts OPTION=T/F and rejects everything else") {
    Literal lit = parse_literal(" FOO=T ");
    CHECK(lit.option == "FOO");
    CHECK(lit.value);
    CHECK_FALSE(parse_literal("BAR=F").value);
    CHECK_THROWS_AS(parse_literal("FOO"), ParseError);
    CHECK_THROWS_AS(parse_literal("FOO=X"), ParseError);
    CHECK_THROWS_AS(parse_literal("=T"), ParseError);
    CHECK_THROWS_AS(parse_literal("FOO=TT"), ParseError);
    CHECK(render_literals({{"A", true}, {"B", false}}) == "A=T,B=F");
    CHECK(render_literals({}) == "");
}

TEST_CASE("score formatting: whole numbers plain, fractions at four digits") {
    CHECK(format_score(3.0) == "3");
    CHECK(format_score(0.0) == "0");
    CHECK(format_score(2.5) == "2.5000");
    CHECK(format_fixed(13.0 / 14.0) == "0.9286");
    CHECK(format_fixed(5.0 / 14.0) == "0.3571");
    CHECK(format_fixed(1.0) == "1.0000");
}

TEST_CASE("configuration tables round-trip and validate their shape") {
    std::vector<std::string> opts = {"A", "B"};
    std::vector<Configuration> configs = {{opts, {true, false}}, {opts, {false, true}}};
    std::string text = render_config_table(opts, configs);
    CHECK(text == "A\tB\nT\tF\nF\tT\n");
    ConfigTable back = read_config_table(text);
    CHECK(back.options == opts);
    REQUIRE(back.configs.size() == 2);
    CHECK(back.configs[0] == configs[0]);
    CHECK(back.configs[1] == configs[1]);

    CHECK_THROWS_AS(read_config_table(""), ParseError);
    CHECK_THROWS_AS(read_config_table("A\tB\nT\n"), ParseError);
    CHECK_THROWS_AS(read_config_table("A\tB\nT\tX\n"), ParseError);

    ConfigTable ref = read_config_table(fixture("sp_table.tsv"));
    CHECK(ref.options == std::vector<std::string>{"OF_IRQ", "IRQ_DOMAIN", "OF_DEVICE",
                                                  "TWL4030_CORE", "SPARC"});
    CHECK(ref.configs.size() == 7);
}

TEST_CASE("ranked tables round-trip ranks, scores, and values") {
    std::vector<std::string> opts = {"A", "B"};
    std::vector<RankedConfig> ranked(2);
    ranked[0].config = {opts, {true, true}};
    ranked[0].score = 3;
    ranked[0].rank = 1;
    ranked[1].config = {opts, {false, true}};
    ranked[1].score = 2.5;
    ranked[1].rank = 2;
    std::string text = render_ranked_table(ranked, opts);
    CHECK(text == "rank\tscore\tA\tB\n1\t3\tT\tT\n2\t2.5000\tF\tT\n");
    RankedTable back = read_ranked_table(text);
    CHECK(back.options == opts);
    REQUIRE(back.rows.size() == 2);
    CHECK(back.rows[0].rank == 1);
    CHECK(back.rows[0].score == 3.0);
    CHECK(back.rows[1].config.values == std::vector<bool>{false, true});
    CHECK_THROWS_AS(read_ranked_table("score\trank\tA\n"), ParseError);
    CHECK_THROWS_AS(read_ranked_table("rank\tscore\tA\nx\t1\tT\n"), ParseError);
}

TEST_CASE("feature model files: declared universe, mention order, diagnostics") {
    FeatureModel fm = read_feature_model(
        "# build constraints\n"
        "@options GAMMA ALPHA BETA\n"
        "\n"
        "ALPHA -> BETA\n"
        "!(GAMMA && ALPHA)\n");
    CHECK(fm.options == std::vector<std::string>{"GAMMA", "ALPHA", "BETA"});
    CHECK(fm.constraints.size() == 2);
    CHECK(valid_configurations(fm).size() == 5);

    FeatureModel inferred = read_feature_model("X -> Y\nZ\n");
    CHECK(inferred.options == std::vector<std::string>{"X", "Y", "Z"});

    CHECK_THROWS_AS(read_feature_model("@options A\nA -> B\n"), OptionMismatch);
    CHECK_THROWS_AS(read_feature_model("A &&\n"), ParseError);
}

TEST_CASE("bug files: ids, literal lists, comments") {
    std::vector<Bug> bugs = read_bugs(fixture("bugs_twl.txt"));
    REQUIRE(bugs.size() == 2);
    CHECK(bugs[0].id == "compile-time");
    CHECK(render_literals(bugs[0].literals) == "OF_DEVICE=T,SPARC=T,TWL4030_CORE=T");
    CHECK(bugs[1].id == "run-time");
    CHECK(render_literals(bugs[1].literals) == "OF_DEVICE=T,OF_IRQ=F,TWL4030_CORE=T");
    CHECK_THROWS_AS(read_bugs("no-colon-here\n"), ParseError);
    CHECK_THROWS_AS(read_bugs(": A=T\n"), ParseError);
    CHECK_THROWS_AS(read_bugs("id: A=Q\n"), ParseError);
}

TEST_CASE("facts rendering marks null assignments distinctly") {
    AnalysisResult res = analyze_source("int x = 0;\nint y = 2;\n");
    std::string text = render_facts(res.records);
    CHECK(text.find("ASSIGN_NULL\tGLOBAL.x\t1\n") != std::string::npos);
    CHECK(text.find("ASSIGN\tGLOBAL.y\t1\n") != std::string::npos);
    CHECK(text.find("DECLARE\tGLOBAL.x\t1\n") != std::string::npos);
}

TEST_CASE("table rendering and polarity recovery from the rendered file") {
    AnalysisResult res = analyze_source(fixture("linux_twl.c"));
    SelectionTables tables(res.records, res.options);
    std::string text = render_tables(tables);
    CHECK(text.find("ALPHA\tSPARC\tF\tGLOBAL.of_platform_populate\n") != std::string::npos);
    CHECK(text.find("GAMMA\tOF_DEVICE\tT\tGLOBAL.of_platform_populate\n") !=
          std::string::npos);
    std::map<std::string, bool> polarity = read_polarity(text);
    CHECK(polarity.at("SPARC") == false);
    CHECK(polarity.at("IRQ_DOMAIN") == true);
    CHECK(polarity.at("TWL4030_CORE") == true);

    // Core rows carry placeholder columns and do not disturb polarity.
    AnalysisResult core_res = analyze_source("int g;\nvoid f(void) {\n#ifdef CONFIG_A\n"
                                             "    g = 1;\n#endif\n}\n");
    SelectionTables core_tables(core_res.records, core_res.options);
    std::string core_text = render_tables(core_tables);
    CHECK(core_text.find("CORE_A\t-\t-\tGLOBAL.g\n") != std::string::npos);
    CHECK(read_polarity(core_text).at("A") == true);
}

TEST_CASE("selection rendering round-trips through the reader") {
    AnalysisResult res = analyze_source(fixture("linux_twl.c"));
    SelectionTables tables(res.records, res.options);
    auto sels = detect_suspicious_selections(tables);
    std::string text = render_selections(sels);
    auto back = read_selections(text);
    REQUIRE(back.size() == sels.size());
    for (std::size_t i = 0; i < sels.size(); ++i) {
        CHECK(back[i].rule == sels[i].rule);
        CHECK(back[i].violation == sels[i].violation);
        CHECK(back[i].literals == sels[i].literals);
        CHECK(to_string(back[i].primary_witness()) == to_string(sels[i].primary_witness()));
    }
    CHECK_THROWS_AS(read_selections("2\tNOT_A_VIOLATION\tx\tA=T\n"), ParseError);
    CHECK_THROWS_AS(read_selections("two\tMEMORY_LEAK\tx\tA=T\n"), ParseError);
}

TEST_CASE("evaluation reports print fixed-format key-value rows") {
    EvalReport r;
    r.configs_total = 7;
    r.bugs_total = 2;
    r.apfd = 13.0 / 14.0;
    r.average_position = 1.0;
    r.first_detection = {{"compile-time", 1}, {"run-time", 1}};
    r.top_fraction = {{1, 1.0}, {3, 1.0}, {5, 1.0}, {10, 1.0}};
    std::string kv = render_report_kv(r);
    CHECK(kv.find("n\t7\n") != std::string::npos);
    CHECK(kv.find("apfd\t0.9286\n") != std::string::npos);
    CHECK(kv.find("first_detection.compile-time\t1\n") != std::string::npos);
    CHECK(kv.find("undetected\t\n") != std::string::npos);

    r.undetected = {"ghost"};
    r.first_detection["ghost"] = 8;
    std::string text = render_report_text(r);
    CHECK(text.rfind("WARNING: undetected bugs (charged position n+1): ghost\n", 0) == 0);
    CHECK(text.find("bug ghost: first detected at position 8 (undetected)\n") !=
          std::string::npos);
}

TEST_CASE("atomic file writes land complete and are readable back") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "varprio_formats_test";
    fs::create_directories(dir);
    fs::path target = dir / "out.tsv";
    atomic_write_file(target.string(), "alpha\nbeta\n");
    CHECK(read_file(target.string()) == "alpha\nbeta\n");
    atomic_write_file(target.string(), "gamma\n");
    CHECK(read_file(target.string()) == "gamma\n");
    CHECK_FALSE(fs::exists(target.string() + ".tmp"));
    CHECK_THROWS_AS(read_file((dir / "missing.txt").string()), ParseError);
    fs::remove_all(dir);
}

}  // TEST_SUITE
