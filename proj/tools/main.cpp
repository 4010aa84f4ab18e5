// Command-line front end: blend, search, enhance, evaluate, split-folds,
// validate. Exit codes: 0 success, 1 usage error, 2 data error (parse,
// validation, alignment, decode), 3 internal error.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "treeblend/blend.hpp"
#include "treeblend/conllu.hpp"
#include "treeblend/enhance.hpp"
#include "treeblend/evaluate.hpp"
#include "treeblend/search.hpp"

namespace {

using namespace treeblend;

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

void write_text(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error("failed to write '" + path + "'");
}

std::string format_percent(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", value);
    return buf;
}

// ---------------------------------------------------------------- blend ----

struct BlendArgs {
    std::vector<std::string> inputs;
    std::string output;
    BlendOptions options;
};

void run_blend(const BlendArgs& args) {
    std::vector<Treebank> inputs;
    inputs.reserve(args.inputs.size());
    for (const std::string& path : args.inputs) inputs.push_back(load_conllu(path));
    Treebank blended = blend_treebank(inputs, args.options);
    write_text(args.output, serialize_conllu(blended));
}

// ---------------------------------------------------------------- search ----

struct SearchArgs {
    std::vector<std::string> group_specs;  // name=file1,file2,...
    std::string dev_path;
    std::string report;
    std::string best_out;
    SearchOptions options;
};

std::vector<ParserGroup> load_groups(const std::vector<std::string>& specs) {
    std::vector<ParserGroup> groups;
    for (const std::string& spec : specs) {
        size_t eq = spec.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 >= spec.size())
            throw std::invalid_argument("group spec '" + spec +
                                        "' is not name=file1,file2,...");
        ParserGroup g;
        g.name = spec.substr(0, eq);
        for (const std::string& path : split_csv(spec.substr(eq + 1)))
            g.outputs.push_back(load_conllu(path));
        groups.push_back(std::move(g));
    }
    return groups;
}

void run_search(const SearchArgs& args) {
    std::vector<ParserGroup> groups = load_groups(args.group_specs);
    Treebank dev = load_conllu(args.dev_path);
    SearchResult result = search_best(groups, dev, args.options);

    std::ostringstream line;
    line << "best: las=" << format_percent(result.best.las())
         << " instances=" << result.best.combination.total_instances();
    for (size_t gi = 0; gi < groups.size(); ++gi)
        line << ' ' << groups[gi].name << '=' << result.best.combination.counts[gi];
    std::cout << line.str() << '\n';

    if (!args.report.empty()) {
        std::ofstream out(args.report, std::ios::binary);
        if (!out) throw Error("cannot open '" + args.report + "' for writing");
        write_ranking_tsv(out, groups, result);
        if (!out) throw Error("failed to write '" + args.report + "'");
    }
    if (!args.best_out.empty()) {
        Treebank blended =
            blend_treebank(realize(result.best.combination, groups), args.options.blend);
        write_text(args.best_out, serialize_conllu(blended));
    }
}

// --------------------------------------------------------------- enhance ----

struct EnhanceArgs {
    std::string input;
    std::string output;
    bool no_head = false;
    bool no_children = false;
    std::string filters = "labels,advmod1,obj";
    std::string allowed_labels;
    int jobs = 0;
};

void run_enhance(const EnhanceArgs& args) {
    ParseOptions parse_opts;
    parse_opts.require_tree = true;
    Treebank tb = load_conllu(args.input, parse_opts);

    RuleConfig cfg;
    cfg.enable_head = !args.no_head;
    cfg.enable_children = !args.no_children;
    cfg.enabled_filters = split_csv(args.filters);
    if (!args.allowed_labels.empty()) cfg.allowed_labels = split_csv(args.allowed_labels);

    Treebank enhanced = enhance_treebank(tb, cfg, FilterRegistry::builtin(), args.jobs);
    write_text(args.output, serialize_conllu(enhanced));
}

// -------------------------------------------------------------- evaluate ----

struct EvaluateArgs {
    std::string gold_path;
    std::string system_path;
    std::string metrics = "all";
    std::string json_path;
    std::string sem_label_key = "SemLabel";
    int jobs = 0;
};

std::vector<Metric> parse_metrics(const std::string& csv) {
    if (csv == "all") return all_metrics();
    std::vector<Metric> out;
    for (const std::string& name : split_csv(csv)) {
        auto m = metric_from_name(name);
        if (!m) throw std::invalid_argument("unknown metric '" + name + "'");
        out.push_back(*m);
    }
    if (out.empty()) throw std::invalid_argument("no metrics requested");
    return out;
}

void run_evaluate(const EvaluateArgs& args) {
    ParseOptions parse_opts;
    parse_opts.sem_label_key = args.sem_label_key;
    Treebank gold = load_conllu(args.gold_path, parse_opts);
    Treebank system = load_conllu(args.system_path, parse_opts);

    std::vector<Metric> metrics = parse_metrics(args.metrics);
    EvalReport report = evaluate(gold, system, metrics, args.jobs);

    std::cout << "Metric\tPrecision\tRecall\tF1\n";
    for (Metric m : metrics) {
        const MetricScore& s = report.at(m);
        std::cout << metric_name(m) << '\t' << format_percent(s.precision()) << '\t'
                  << format_percent(s.recall()) << '\t' << format_percent(s.f1()) << '\n';
    }

    if (!args.json_path.empty()) {
        nlohmann::ordered_json j;
        j["gold"] = args.gold_path;
        j["system"] = args.system_path;
        nlohmann::ordered_json metrics_json;
        for (Metric m : metrics) {
            const MetricScore& s = report.at(m);
            metrics_json[metric_name(m)] = {
                {"precision", s.precision()},   {"recall", s.recall()},
                {"f1", s.f1()},                 {"matched", s.matched},
                {"system_total", s.system_total}, {"gold_total", s.gold_total},
            };
        }
        j["metrics"] = std::move(metrics_json);
        write_text(args.json_path, j.dump(2) + "\n");
    }
}

// ----------------------------------------------------------- split-folds ----

struct SplitArgs {
    std::string input;
    int folds = 0;
    std::string output_dir = ".";
};

void run_split(const SplitArgs& args) {
    Treebank tb = load_conllu(args.input);
    std::vector<FoldPair> folds = split_folds(tb, args.folds);
    std::filesystem::create_directories(args.output_dir);
    for (size_t i = 0; i < folds.size(); ++i) {
        const std::string stem =
            args.output_dir + "/fold" + std::to_string(i + 1);
        save_conllu(folds[i].train, stem + "-train.conllu");
        save_conllu(folds[i].heldout, stem + "-heldout.conllu");
        std::cout << "fold " << (i + 1) << ": train=" << folds[i].train.size()
                  << " heldout=" << folds[i].heldout.size() << '\n';
    }
}

// -------------------------------------------------------------- validate ----

struct ValidateArgs {
    std::string input;
};

int run_validate(const ValidateArgs& args) {
    Treebank tb = load_conllu(args.input);
    long long bad_sentences = 0, total_violations = 0;
    for (int si = 0; si < tb.size(); ++si) {
        const Sentence& s = tb.sentences[si];
        std::vector<Violation> violations = validate_tree(s);
        if (violations.empty()) continue;
        ++bad_sentences;
        const std::string label =
            s.sent_id.empty() ? "sentence #" + std::to_string(si + 1) : s.sent_id;
        for (const Violation& v : violations) {
            ++total_violations;
            std::cout << label << '\t' << to_string(v.kind) << '\t' << v.message << '\n';
        }
    }
    if (bad_sentences == 0) {
        std::cout << "OK: " << tb.size() << " sentences, all valid trees\n";
        return 0;
    }
    std::cout << bad_sentences << " invalid sentences, " << total_violations
              << " violations\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Treebank toolkit: blend parser outputs into consensus trees, "
                 "search instance combinations, add enhanced dependencies, and "
                 "evaluate parsing metrics"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read option defaults from an INI file");
    app.set_version_flag("--version", "treeblend 1.0.0");

    int exit_code = 0;

    BlendArgs blend_args;
    CLI::App* blend = app.add_subcommand(
        "blend", "Blend several parsers' CoNLL-U outputs into consensus trees");
    blend->add_option("inputs", blend_args.inputs, "Prediction files, one per parser")
        ->required()
        ->expected(-1);
    blend->add_option("-o,--output", blend_args.output, "Output file (default: stdout)");
    blend->add_option("--donor", blend_args.options.donor,
                      "Input whose non-syntactic columns are kept (default 0)");
    blend->add_option("--root-fallback", blend_args.options.root_fallback,
                      "Deprel for re-attached extra roots (default parataxis)");
    blend->add_option("-j,--jobs", blend_args.options.jobs,
                      "Worker threads (0 = OpenMP default)");
    blend->callback([&] { run_blend(blend_args); });

    SearchArgs search_args;
    CLI::App* search = app.add_subcommand(
        "search", "Try every per-group instance count and rank combinations by dev LAS");
    search->add_option("-g,--group", search_args.group_specs,
                       "Group spec name=file1,file2,... (repeatable)")
        ->required();
    search->add_option("--dev", search_args.dev_path, "Gold dev set to score against")
        ->required();
    search->add_option("--report", search_args.report, "Write the full ranking TSV here");
    search->add_option("--best-out", search_args.best_out,
                       "Write the best combination's blended output here");
    search->add_option("--donor", search_args.options.blend.donor,
                       "Donor prediction for non-syntactic columns");
    search->add_option("--root-fallback", search_args.options.blend.root_fallback,
                       "Deprel for re-attached extra roots");
    search->add_option("-j,--jobs", search_args.options.jobs,
                       "Worker threads over combinations (0 = OpenMP default)");
    search->callback([&] { run_search(search_args); });

    EnhanceArgs enhance_args;
    CLI::App* enhance = app.add_subcommand(
        "enhance", "Rewrite DEPS with coordination rules and filters");
    enhance->add_option("input", enhance_args.input, "Treebank of valid basic trees")
        ->required();
    enhance->add_option("-o,--output", enhance_args.output, "Output file (default: stdout)");
    enhance->add_flag("--no-head", enhance_args.no_head,
                      "Disable the conjunct-to-grandparent rule");
    enhance->add_flag("--no-children", enhance_args.no_children,
                      "Disable the sibling-propagation rule");
    enhance->add_option("--filters", enhance_args.filters,
                        "Comma-separated filters (default labels,advmod1,obj; "
                        "empty = keep everything)");
    enhance->add_option("--allowed-labels", enhance_args.allowed_labels,
                        "Override the labels filter's allowed set");
    enhance->add_option("-j,--jobs", enhance_args.jobs,
                        "Worker threads (0 = OpenMP default)");
    enhance->callback([&] { run_enhance(enhance_args); });

    EvaluateArgs evaluate_args;
    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "Score a system treebank against gold (tagging, LAS, MLAS, "
                    "BLEX, ELAS, SLAS)");
    evaluate->add_option("gold", evaluate_args.gold_path, "Gold file")->required();
    evaluate->add_option("system", evaluate_args.system_path, "System file")->required();
    evaluate->add_option("--metrics", evaluate_args.metrics,
                         "Comma-separated metric names or 'all'");
    evaluate->add_option("--json", evaluate_args.json_path,
                         "Also write a JSON report to this path ('-' = stdout)");
    evaluate->add_option("--sem-label-key", evaluate_args.sem_label_key,
                         "MISC key holding the semantic label (default SemLabel)");
    evaluate->add_option("-j,--jobs", evaluate_args.jobs,
                         "Worker threads (0 = OpenMP default)");
    evaluate->callback([&] { run_evaluate(evaluate_args); });

    SplitArgs split_args;
    CLI::App* split = app.add_subcommand(
        "split-folds", "Split a treebank into contiguous cross-validation folds");
    split->add_option("input", split_args.input, "Treebank to split")->required();
    split->add_option("-k,--folds", split_args.folds, "Number of folds")->required();
    split->add_option("--output-dir", split_args.output_dir,
                      "Directory for foldN-{train,heldout}.conllu (default .)");
    split->callback([&] { run_split(split_args); });

    ValidateArgs validate_args;
    CLI::App* validate = app.add_subcommand(
        "validate", "Check that every sentence is a single rooted tree");
    validate->add_option("input", validate_args.input, "Treebank to check")->required();
    validate->callback([&] { exit_code = run_validate(validate_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
    return exit_code;
}
