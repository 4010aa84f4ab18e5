// Compares the OpenMP kernels against their serial reference implementations
// on synthetic data and verifies that both produce identical results.
//
// Usage: bench [sentences] [jobs]   (defaults: 400 sentences, OpenMP default)
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "support/synthetic.hpp"
#include "treeblend/blend.hpp"
#include "treeblend/enhance.hpp"
#include "treeblend/evaluate.hpp"
#include "treeblend/search.hpp"

using namespace treeblend;
using namespace treeblend::testing;

namespace {

double time_ms(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-10s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   %s\n",
                name, serial_ms, parallel_ms,
                parallel_ms > 0 ? serial_ms / parallel_ms : 0.0,
                identical ? "outputs identical" : "OUTPUTS DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
    const int sentences = argc > 1 ? std::atoi(argv[1]) : 400;
    const int jobs = argc > 2 ? std::atoi(argv[2]) : 0;
    if (sentences <= 0) {
        std::fprintf(stderr, "sentence count must be positive\n");
        return 1;
    }

    SynthConfig cfg;
    cfg.sentences = sentences;
    cfg.seed = 1234;
    Treebank gold = random_treebank(cfg);
    std::vector<Treebank> parsers{perturb_predictions(gold, 0.25, 1),
                                  perturb_predictions(gold, 0.25, 2),
                                  perturb_predictions(gold, 0.25, 3),
                                  perturb_predictions(gold, 0.25, 4),
                                  perturb_predictions(gold, 0.25, 5)};
    std::printf("%d sentences, %d parsers, jobs=%d (0 = OpenMP default)\n\n",
                sentences, static_cast<int>(parsers.size()), jobs);
    bool all_identical = true;

    {
        BlendOptions serial_opts;
        BlendOptions parallel_opts;
        parallel_opts.jobs = jobs;
        Treebank serial_out, parallel_out;
        double s = time_ms([&] { serial_out = serial::blend_treebank(parsers, serial_opts); });
        double p = time_ms([&] { parallel_out = blend_treebank(parsers, parallel_opts); });
        bool same = serialize_conllu(serial_out) == serialize_conllu(parallel_out);
        all_identical = all_identical && same;
        report("blend", s, p, same);
    }

    {
        RuleConfig rules;
        Treebank serial_out, parallel_out;
        double s = time_ms([&] { serial_out = serial::enhance_treebank(gold, rules); });
        double p = time_ms([&] {
            parallel_out = enhance_treebank(gold, rules, FilterRegistry::builtin(), jobs);
        });
        bool same = serialize_conllu(serial_out) == serialize_conllu(parallel_out);
        all_identical = all_identical && same;
        report("enhance", s, p, same);
    }

    {
        EvalReport serial_report, parallel_report;
        double s = time_ms(
            [&] { serial_report = serial::evaluate(gold, parsers[0], all_metrics()); });
        double p = time_ms(
            [&] { parallel_report = evaluate(gold, parsers[0], all_metrics(), jobs); });
        bool same = true;
        for (Metric m : all_metrics()) {
            same = same && serial_report.at(m).matched == parallel_report.at(m).matched &&
                   serial_report.at(m).system_total == parallel_report.at(m).system_total &&
                   serial_report.at(m).gold_total == parallel_report.at(m).gold_total;
        }
        all_identical = all_identical && same;
        report("evaluate", s, p, same);
    }

    {
        std::vector<ParserGroup> groupsvec{
            ParserGroup{"a", {parsers[0], parsers[1]}},
            ParserGroup{"b", {parsers[2], parsers[3]}},
            ParserGroup{"c", {parsers[4]}},
        };
        SearchOptions serial_opts;
        SearchOptions parallel_opts;
        parallel_opts.jobs = jobs;
        SearchResult serial_res, parallel_res;
        double s = time_ms([&] { serial_res = serial::search_best(groupsvec, gold, serial_opts); });
        double p = time_ms([&] { parallel_res = search_best(groupsvec, gold, parallel_opts); });
        bool same = serial_res.ranking.size() == parallel_res.ranking.size();
        for (size_t i = 0; same && i < serial_res.ranking.size(); ++i) {
            same = serial_res.ranking[i].combination.counts ==
                       parallel_res.ranking[i].combination.counts &&
                   serial_res.ranking[i].matched == parallel_res.ranking[i].matched;
        }
        all_identical = all_identical && same;
        report("search", s, p, same);
    }

    if (!all_identical) {
        std::fprintf(stderr, "\nerror: kernel outputs diverged from the serial reference\n");
        return 1;
    }
    return 0;
}
