#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "treeblend/conllu.hpp"

namespace treeblend {

enum class Metric { Lemma, Upos, Xpos, Ufeats, Las, Mlas, Blex, Elas, Slas };

const char* metric_name(Metric m);                           // display name, e.g. "UFeats"
std::optional<Metric> metric_from_name(std::string_view s);  // case-insensitive
std::vector<Metric> all_metrics();

struct MetricScore {
    long long matched = 0;
    long long system_total = 0;
    long long gold_total = 0;

    double precision() const;  // percent; 0 when system_total == 0
    double recall() const;     // percent; 0 when gold_total == 0
    double f1() const;         // 2*matched/(system+gold) as percent; 0 when both empty
};

using EvalReport = std::map<Metric, MetricScore>;

// Gold and system must have the same sentence count, token counts, and forms.
void check_alignment(const Treebank& gold, const Treebank& system);

// Computes the requested metrics in one pass. Conventions follow the CoNLL
// 2018 shared-task scorer for the dependency metrics: deprels are compared on
// their universal part (before ":") for LAS/MLAS/BLEX/SLAS; MLAS and BLEX
// score only content words and MLAS additionally requires matching UPOS,
// universal features, and attached functional satellites; BLEX treats a gold
// lemma of "_" as matching anything. ELAS compares the per-token DEPS arc
// sets verbatim. SLAS is the LAS match plus equality of the semantic label
// mirrored from MISC (absent matches absent).
EvalReport evaluate(const Treebank& gold, const Treebank& system,
                    const std::vector<Metric>& metrics, int jobs = 0);

namespace serial {
EvalReport evaluate(const Treebank& gold, const Treebank& system,
                    const std::vector<Metric>& metrics);
}  // namespace serial

MetricScore eval_tagging(const Treebank& gold, const Treebank& system, Metric field);
MetricScore eval_las(const Treebank& gold, const Treebank& system);
MetricScore eval_mlas(const Treebank& gold, const Treebank& system);
MetricScore eval_blex(const Treebank& gold, const Treebank& system);
MetricScore eval_elas(const Treebank& gold, const Treebank& system);
MetricScore eval_slas(const Treebank& gold, const Treebank& system);

// Shared-task vocabulary, exposed for tests.
bool is_content_deprel(std::string_view universal_deprel);
bool is_functional_deprel(std::string_view universal_deprel);
bool is_universal_feature(std::string_view key);
std::string universal_deprel(std::string_view deprel);  // part before the first ':'

}  // namespace treeblend
