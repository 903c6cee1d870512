// varprio — feature-interaction-aware configuration analysis, sampling,
// prioritization, and evaluation for preprocessor-configurable C sources.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "varprio/condition.hpp"
#include "varprio/configspace.hpp"
#include "varprio/errors.hpp"
#include "varprio/formats.hpp"
#include "varprio/frontend.hpp"
#include "varprio/interactions.hpp"
#include "varprio/metrics.hpp"
#include "varprio/pipeline.hpp"
#include "varprio/ranking.hpp"
#include "varprio/sampling.hpp"
#include "varprio/selection_tables.hpp"
#include "varprio/variant_oracle.hpp"

namespace {

using namespace varprio;

struct CommonArgs {
    std::vector<std::string> sources;
    std::string options_prefix = "CONFIG_";
    std::string destructors = "free";
    bool emit_unused = false;
    std::size_t max_options = kMaxOptions;
};

FrontendOptions frontend_options(const CommonArgs& args) {
    FrontendOptions fo;
    fo.option_prefix = args.options_prefix;
    fo.destructors.clear();
    for (const auto& d : split(args.destructors, ',')) {
        std::string name = trim(d);
        if (!name.empty()) fo.destructors.push_back(name);
    }
    return fo;
}

std::vector<std::string> read_sources(const std::vector<std::string>& paths) {
    if (paths.empty()) throw ParseError("no source files given");
    std::vector<std::string> texts;
    for (const auto& p : paths) texts.push_back(read_file(p));
    return texts;
}

void check_max_options(const std::vector<std::string>& options, std::size_t max_options) {
    if (options.size() > max_options) {
        throw TooManyOptions("option universe has " + std::to_string(options.size()) +
                             " options, above the limit of " + std::to_string(max_options));
    }
}

std::string render_config_inline(const Configuration& c) {
    std::string out;
    for (std::size_t i = 0; i < c.options.size(); ++i) {
        if (i > 0) out += ',';
        out += c.options[i];
        out += '=';
        out += c.values[i] ? 'T' : 'F';
    }
    return out;
}

void write_or_print(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        atomic_write_file(out_path, content);
        std::cout << "wrote\t" << out_path << "\n";
    }
}

// --- analyze -----------------------------------------------------------------

struct AnalyzeArgs {
    CommonArgs common;
    std::string out_dir = ".";
};

int run_analyze(const AnalyzeArgs& args) {
    AnalysisBundle bundle =
        run_analysis(read_sources(args.common.sources), frontend_options(args.common),
                     {args.common.emit_unused});
    check_max_options(bundle.front.options, args.common.max_options);
    std::filesystem::path dir(args.out_dir);
    std::filesystem::create_directories(dir);
    atomic_write_file((dir / "facts.tsv").string(), render_facts(bundle.front.records));
    atomic_write_file((dir / "tables.tsv").string(), render_tables(bundle.tables));
    atomic_write_file((dir / "selections.tsv").string(),
                      render_selections(bundle.selections));
    std::cout << "records\t" << bundle.front.records.size() << "\n"
              << "options\t" << bundle.front.options.size() << "\n"
              << "selections\t" << bundle.selections.size() << "\n"
              << "wrote\t" << (dir / "facts.tsv").string() << "\n"
              << "wrote\t" << (dir / "tables.tsv").string() << "\n"
              << "wrote\t" << (dir / "selections.tsv").string() << "\n";
    return 0;
}

// --- sample ------------------------------------------------------------------

struct SampleArgs {
    CommonArgs common;
    std::string algo;
    std::size_t t = 2;
    std::string feature_model_path;
    std::string options_list;
    std::string out_path;
};

int run_sample(const SampleArgs& args) {
    FeatureModel fm;
    std::vector<ConditionPtr> blocks;
    bool have_sources = !args.common.sources.empty();
    if (have_sources) {
        AnalysisResult front =
            analyze_sources(read_sources(args.common.sources), frontend_options(args.common));
        blocks = front.blocks;
        fm = free_model(front.options);
    }
    if (!args.options_list.empty()) {
        std::vector<std::string> names;
        for (const auto& o : split(args.options_list, ',')) {
            std::string name = trim(o);
            if (!name.empty()) names.push_back(name);
        }
        fm = free_model(names);
    }
    if (!args.feature_model_path.empty()) {
        FeatureModel file_fm = read_feature_model(read_file(args.feature_model_path));
        if (file_fm.options.empty()) file_fm.options = fm.options;
        fm = std::move(file_fm);
    }
    if (fm.options.empty()) {
        throw ParseError("no option universe: give sources, --options, or --feature-model");
    }
    check_max_options(fm.options, args.common.max_options);

    SampleResult result;
    if (args.algo == "one-enabled") {
        result = sample_one_enabled(fm);
    } else if (args.algo == "one-disabled") {
        result = sample_one_disabled(fm);
    } else if (args.algo == "most-enabled-disabled") {
        result = sample_most_enabled_disabled(fm);
    } else if (args.algo == "t-wise") {
        result = sample_t_wise(fm, args.t);
    } else if (args.algo == "statement-coverage") {
        if (!have_sources) {
            throw ParseError("statement-coverage sampling needs source files");
        }
        result = sample_statement_coverage(fm, blocks);
    } else {
        throw ParseError("unknown sampling algorithm '" + args.algo + "'");
    }

    for (const auto& c : result.dropped) {
        std::cerr << "dropped candidate: " << render_config_inline(c) << "\n";
    }
    for (const auto& b : result.dead_blocks) {
        std::cerr << "dead block: " << to_string(b) << "\n";
    }
    write_or_print(args.out_path, render_config_table(fm.options, result.configs));
    return 0;
}

// --- prioritize --------------------------------------------------------------

struct PrioritizeArgs {
    std::string configs_path;
    std::string selections_path;
    std::string tables_path;
    std::string strategy = "copro";
    std::uint32_t seed = 0;
    std::string out_path;
};

int run_prioritize(const PrioritizeArgs& args) {
    ConfigTable table = read_config_table(read_file(args.configs_path));
    if (table.configs.empty()) throw EmptySpace("configuration table has no rows");

    auto strategy = parse_strategy(args.strategy);
    if (!strategy) throw ParseError("unknown strategy '" + args.strategy + "'");

    std::vector<SuspiciousSelection> selections;
    if (!args.selections_path.empty()) {
        selections = read_selections(read_file(args.selections_path));
    } else if (*strategy == Strategy::SelectionCount || *strategy == Strategy::Additional) {
        throw ParseError("--selections is required for strategy '" + args.strategy + "'");
    }
    for (const auto& sel : selections) {
        for (const auto& lit : sel.literals) {
            if (std::find(table.options.begin(), table.options.end(), lit.option) ==
                table.options.end()) {
                throw OptionMismatch("selection literal option '" + lit.option +
                                     "' is not in the configuration table");
            }
        }
    }

    std::map<std::string, bool> polarity;
    if (!args.tables_path.empty()) polarity = read_polarity(read_file(args.tables_path));

    std::vector<RankedConfig> ranked =
        apply_strategy(*strategy, table.configs, selections, polarity, args.seed);
    write_or_print(args.out_path, render_ranked_table(ranked, table.options));
    return 0;
}

// --- evaluate ----------------------------------------------------------------

struct EvaluateArgs {
    std::string ranked_path;
    std::string bugs_path;
    std::string out_path;
};

int run_evaluate(const EvaluateArgs& args) {
    RankedTable ranked = read_ranked_table(read_file(args.ranked_path));
    std::vector<Bug> bugs = read_bugs(read_file(args.bugs_path));
    for (const auto& bug : bugs) {
        for (const auto& lit : bug.literals) {
            if (std::find(ranked.options.begin(), ranked.options.end(), lit.option) ==
                ranked.options.end()) {
                throw OptionMismatch("bug '" + bug.id + "' mentions option '" + lit.option +
                                     "' missing from the ranked table");
            }
        }
    }
    std::vector<Configuration> ordered;
    for (const auto& row : ranked.rows) ordered.push_back(row.config);
    EvalReport report = evaluate_ordering(ordered, bugs);
    std::cout << render_report_text(report);
    if (!args.out_path.empty()) {
        atomic_write_file(args.out_path, render_report_kv(report));
        std::cout << "wrote\t" << args.out_path << "\n";
    }
    return 0;
}

// --- pipeline ----------------------------------------------------------------

struct PipelineArgs {
    CommonArgs common;
    std::string configs_path;
    std::string sample_algo;
    std::size_t t = 2;
    std::string feature_model_path;
    std::string strategy = "copro";
    std::uint32_t seed = 0;
    std::string bugs_path;
    std::string out_dir = ".";
};

int run_pipeline(const PipelineArgs& args) {
    AnalysisBundle bundle =
        run_analysis(read_sources(args.common.sources), frontend_options(args.common),
                     {args.common.emit_unused});
    check_max_options(bundle.front.options, args.common.max_options);

    std::filesystem::path dir(args.out_dir);
    std::filesystem::create_directories(dir);
    atomic_write_file((dir / "facts.tsv").string(), render_facts(bundle.front.records));
    atomic_write_file((dir / "tables.tsv").string(), render_tables(bundle.tables));
    atomic_write_file((dir / "selections.tsv").string(),
                      render_selections(bundle.selections));

    std::vector<std::string> universe;
    std::vector<Configuration> configs;
    if (!args.configs_path.empty()) {
        ConfigTable table = read_config_table(read_file(args.configs_path));
        universe = table.options;
        configs = std::move(table.configs);
    } else if (!args.sample_algo.empty()) {
        FeatureModel fm = free_model(bundle.front.options);
        if (!args.feature_model_path.empty()) {
            FeatureModel file_fm = read_feature_model(read_file(args.feature_model_path));
            if (file_fm.options.empty()) file_fm.options = fm.options;
            fm = std::move(file_fm);
        }
        check_max_options(fm.options, args.common.max_options);
        SampleResult sample;
        if (args.sample_algo == "one-enabled") {
            sample = sample_one_enabled(fm);
        } else if (args.sample_algo == "one-disabled") {
            sample = sample_one_disabled(fm);
        } else if (args.sample_algo == "most-enabled-disabled") {
            sample = sample_most_enabled_disabled(fm);
        } else if (args.sample_algo == "t-wise") {
            sample = sample_t_wise(fm, args.t);
        } else if (args.sample_algo == "statement-coverage") {
            sample = sample_statement_coverage(fm, bundle.front.blocks);
        } else {
            throw ParseError("unknown sampling algorithm '" + args.sample_algo + "'");
        }
        universe = fm.options;
        configs = std::move(sample.configs);
    } else {
        throw ParseError("pipeline needs --configs or --sample-algo");
    }
    if (configs.empty()) throw EmptySpace("no configurations to prioritize");

    auto strategy = parse_strategy(args.strategy);
    if (!strategy) throw ParseError("unknown strategy '" + args.strategy + "'");
    std::map<std::string, bool> polarity = derive_polarity(bundle.tables);
    std::vector<RankedConfig> ranked =
        apply_strategy(*strategy, configs, bundle.selections, polarity, args.seed);
    atomic_write_file((dir / "configs.tsv").string(),
                      render_config_table(universe, configs));
    atomic_write_file((dir / "ranked.tsv").string(),
                      render_ranked_table(ranked, universe));

    std::cout << "records\t" << bundle.front.records.size() << "\n"
              << "options\t" << bundle.front.options.size() << "\n"
              << "selections\t" << bundle.selections.size() << "\n"
              << "configurations\t" << configs.size() << "\n";

    if (!args.bugs_path.empty()) {
        std::vector<Bug> bugs = read_bugs(read_file(args.bugs_path));
        std::vector<Configuration> ordered;
        for (const auto& row : ranked) ordered.push_back(row.config);
        EvalReport report = evaluate_ordering(ordered, bugs);
        atomic_write_file((dir / "report.tsv").string(), render_report_kv(report));
        std::cout << render_report_text(report);
    }
    return 0;
}

// --- oracle ------------------------------------------------------------------

struct OracleArgs {
    CommonArgs common;
    std::string config_text;
};

int run_oracle(const OracleArgs& args) {
    AnalysisResult front =
        analyze_sources(read_sources(args.common.sources), frontend_options(args.common));
    std::map<std::string, bool> values;
    for (const auto& part : split(args.config_text, ',')) {
        Literal lit = parse_literal(part);
        values[lit.option] = lit.value;
    }
    Configuration config;
    for (const auto& o : front.options) {
        auto it = values.find(o);
        if (it == values.end()) {
            throw OptionMismatch("--config does not assign option '" + o + "'");
        }
        config.options.push_back(o);
        config.values.push_back(it->second);
    }
    for (const auto& flag : check_variant(front.records, config)) {
        std::cout << to_string(flag.violation) << "\t" << to_string(flag.entity) << "\n";
    }
    return 0;
}

void add_common(CLI::App* cmd, CommonArgs& args, bool with_sources = true) {
    if (with_sources) {
        cmd->add_option("sources", args.sources, "source files to analyze");
    }
    cmd->add_option("--options-prefix", args.options_prefix,
                    "prefix stripped from option names (default CONFIG_)");
    cmd->add_option("--destructors", args.destructors,
                    "comma-separated destructor function names (default free)");
    cmd->add_option("--max-options", args.max_options,
                    "upper bound on the option universe size");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"feature-interaction-aware configuration prioritization toolkit"};
    app.require_subcommand(1);

    AnalyzeArgs analyze_args;
    CLI::App* analyze = app.add_subcommand(
        "analyze", "extract operation facts, selection tables, and suspicious selections");
    add_common(analyze, analyze_args.common);
    analyze->add_flag("--emit-unused", analyze_args.common.emit_unused,
                      "also emit unused-entity selections (rule 3)");
    analyze->add_option("--out", analyze_args.out_dir, "output directory (default .)");

    SampleArgs sample_args;
    CLI::App* sample = app.add_subcommand("sample", "sample configurations");
    add_common(sample, sample_args.common);
    sample->add_option("--algo", sample_args.algo,
                       "one-enabled | one-disabled | most-enabled-disabled | t-wise | "
                       "statement-coverage")
        ->required();
    sample->add_option("--t", sample_args.t, "tuple size for t-wise (default 2)")
        ->check(CLI::Range(std::size_t{1}, std::size_t{24}));
    sample->add_option("--feature-model", sample_args.feature_model_path,
                       "feature model file");
    sample->add_option("--options", sample_args.options_list,
                       "comma-separated option universe");
    sample->add_option("--out", sample_args.out_path,
                       "output file (default: print to stdout)");

    PrioritizeArgs prioritize_args;
    CLI::App* prioritize =
        app.add_subcommand("prioritize", "order a configuration table by a strategy");
    prioritize->add_option("--configs", prioritize_args.configs_path,
                           "configuration table file")
        ->required();
    prioritize->add_option("--selections", prioritize_args.selections_path,
                           "suspicious selections file");
    prioritize->add_option("--tables", prioritize_args.tables_path,
                           "selection tables file (polarity source for sp)");
    prioritize->add_option("--strategy", prioritize_args.strategy,
                           "copro | additional | sp | random");
    prioritize->add_option("--seed", prioritize_args.seed, "seed for strategy random");
    prioritize->add_option("--out", prioritize_args.out_path,
                           "output file (default: print to stdout)");

    EvaluateArgs evaluate_args;
    CLI::App* evaluate =
        app.add_subcommand("evaluate", "score an ordered configuration table against bugs");
    evaluate->add_option("--ranked", evaluate_args.ranked_path, "ranked table file")
        ->required();
    evaluate->add_option("--bugs", evaluate_args.bugs_path, "bug specification file")
        ->required();
    evaluate->add_option("--out", evaluate_args.out_path, "machine-readable report file");

    PipelineArgs pipeline_args;
    CLI::App* pipeline = app.add_subcommand(
        "pipeline", "analyze, sample or load configurations, prioritize, evaluate");
    add_common(pipeline, pipeline_args.common);
    pipeline->add_flag("--emit-unused", pipeline_args.common.emit_unused,
                       "also emit unused-entity selections (rule 3)");
    pipeline->add_option("--configs", pipeline_args.configs_path,
                         "configuration table file to prioritize");
    pipeline->add_option("--sample-algo", pipeline_args.sample_algo,
                         "sampling algorithm when --configs is absent");
    pipeline->add_option("--t", pipeline_args.t, "tuple size for t-wise sampling")
        ->check(CLI::Range(std::size_t{1}, std::size_t{24}));
    pipeline->add_option("--feature-model", pipeline_args.feature_model_path,
                         "feature model file");
    pipeline->add_option("--strategy", pipeline_args.strategy,
                         "copro | additional | sp | random");
    pipeline->add_option("--seed", pipeline_args.seed, "seed for strategy random");
    pipeline->add_option("--bugs", pipeline_args.bugs_path, "bug specification file");
    pipeline->add_option("--out", pipeline_args.out_dir, "output directory (default .)");

    OracleArgs oracle_args;
    CLI::App* oracle = app.add_subcommand(
        "oracle", "brute-force single-variant check of one configuration");
    oracle->group("");  // hidden from help
    add_common(oracle, oracle_args.common);
    oracle->add_option("--config", oracle_args.config_text,
                       "full assignment, e.g. A=T,B=F")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*analyze) return run_analyze(analyze_args);
        if (*sample) return run_sample(sample_args);
        if (*prioritize) return run_prioritize(prioritize_args);
        if (*evaluate) return run_evaluate(evaluate_args);
        if (*pipeline) return run_pipeline(pipeline_args);
        if (*oracle) return run_oracle(oracle_args);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const EmptySpace& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const OptionMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const NoBugs& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
