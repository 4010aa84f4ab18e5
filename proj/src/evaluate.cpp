#include "treeblend/evaluate.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace treeblend {

namespace {

// Relation and feature inventories of the CoNLL 2018 shared-task scorer.
const std::set<std::string, std::less<>>& content_set() {
    static const std::set<std::string, std::less<>> s{
        "nsubj",    "obj",      "iobj",      "csubj",    "ccomp",     "xcomp",
        "obl",      "vocative", "expl",      "dislocated", "advcl",   "advmod",
        "discourse", "nmod",    "appos",     "nummod",   "acl",       "amod",
        "conj",     "fixed",    "flat",      "compound", "list",      "parataxis",
        "orphan",   "goeswith", "reparandum", "root",    "dep"};
    return s;
}

const std::set<std::string, std::less<>>& functional_set() {
    static const std::set<std::string, std::less<>> s{"aux",  "cop",  "mark", "det",
                                                      "clf",  "case", "cc"};
    return s;
}

const std::set<std::string, std::less<>>& universal_feature_set() {
    static const std::set<std::string, std::less<>> s{
        "PronType", "NumType", "Poss",     "Reflex",  "Foreign", "Abbr",   "Gender",
        "Animacy",  "Number",  "Case",     "Definite", "Degree", "VerbForm", "Mood",
        "Tense",    "Aspect",  "Voice",    "Evident", "Polarity", "Person", "Polite"};
    return s;
}

std::string filtered_feats(const Token& t) {
    std::string out;
    for (const std::string& f : t.feats) {
        size_t eq = f.find('=');
        std::string_view key = std::string_view(f).substr(0, eq);
        if (!is_universal_feature(key)) continue;
        if (!out.empty()) out += '|';
        out += f;
    }
    return out;
}

struct Counts {
    long long matched = 0;
    long long system_total = 0;
    long long gold_total = 0;

    Counts& operator+=(const Counts& o) {
        matched += o.matched;
        system_total += o.system_total;
        gold_total += o.gold_total;
        return *this;
    }
};

const std::string& tag_value(const Token& t, Metric field, std::string& scratch) {
    switch (field) {
        case Metric::Lemma: return t.lemma;
        case Metric::Upos: return t.upos;
        case Metric::Xpos: return t.xpos;
        case Metric::Ufeats:
            scratch = t.feats_string();
            return scratch;
        default: throw InternalError("not a tagging metric");
    }
}

Counts count_tagging(const Sentence& gold, const Sentence& sys, Metric field) {
    Counts c;
    std::string gs, ss;
    for (int i = 1; i <= gold.size(); ++i) {
        ++c.gold_total;
        ++c.system_total;
        // An unannotated gold lemma ("_") matches any system lemma.
        if (field == Metric::Lemma && gold.token(i).lemma == "_") {
            ++c.matched;
            continue;
        }
        if (tag_value(gold.token(i), field, gs) == tag_value(sys.token(i), field, ss))
            ++c.matched;
    }
    return c;
}

bool las_match(const Token& g, const Token& s) {
    return g.head == s.head && universal_deprel(g.deprel) == universal_deprel(s.deprel);
}

Counts count_las(const Sentence& gold, const Sentence& sys) {
    Counts c;
    for (int i = 1; i <= gold.size(); ++i) {
        ++c.gold_total;
        ++c.system_total;
        if (las_match(gold.token(i), sys.token(i))) ++c.matched;
    }
    return c;
}

Counts count_slas(const Sentence& gold, const Sentence& sys) {
    Counts c;
    for (int i = 1; i <= gold.size(); ++i) {
        ++c.gold_total;
        ++c.system_total;
        if (las_match(gold.token(i), sys.token(i)) &&
            gold.token(i).sem_label == sys.token(i).sem_label)
            ++c.matched;
    }
    return c;
}

// (child id, universal deprel, upos, universal feats) of each functional
// dependent, in id order.
using Satellite = std::tuple<int, std::string, std::string, std::string>;

std::vector<std::vector<Satellite>> functional_children(const Sentence& s) {
    std::vector<std::vector<Satellite>> out(static_cast<size_t>(s.size()) + 1);
    for (const Token& t : s.tokens) {
        std::string ud = universal_deprel(t.deprel);
        if (!is_functional_deprel(ud) || t.head < 1 || t.head > s.size()) continue;
        out[static_cast<size_t>(t.head)].emplace_back(t.id, std::move(ud), t.upos,
                                                      filtered_feats(t));
    }
    return out;
}

Counts count_mlas(const Sentence& gold, const Sentence& sys) {
    Counts c;
    std::vector<std::vector<Satellite>> gold_sat = functional_children(gold);
    std::vector<std::vector<Satellite>> sys_sat = functional_children(sys);
    for (int i = 1; i <= gold.size(); ++i) {
        const Token& g = gold.token(i);
        const Token& s = sys.token(i);
        std::string gd = universal_deprel(g.deprel);
        std::string sd = universal_deprel(s.deprel);
        bool g_content = is_content_deprel(gd);
        bool s_content = is_content_deprel(sd);
        if (g_content) ++c.gold_total;
        if (s_content) ++c.system_total;
        if (g_content && g.head == s.head && gd == sd && g.upos == s.upos &&
            filtered_feats(g) == filtered_feats(s) &&
            gold_sat[static_cast<size_t>(i)] == sys_sat[static_cast<size_t>(i)])
            ++c.matched;
    }
    return c;
}

Counts count_blex(const Sentence& gold, const Sentence& sys) {
    Counts c;
    for (int i = 1; i <= gold.size(); ++i) {
        const Token& g = gold.token(i);
        const Token& s = sys.token(i);
        std::string gd = universal_deprel(g.deprel);
        std::string sd = universal_deprel(s.deprel);
        if (is_content_deprel(gd)) ++c.gold_total;
        if (is_content_deprel(sd)) ++c.system_total;
        bool lemma_ok = g.lemma == "_" || g.lemma == s.lemma;
        if (is_content_deprel(gd) && g.head == s.head && gd == sd && lemma_ok) ++c.matched;
    }
    return c;
}

Counts count_elas(const Sentence& gold, const Sentence& sys) {
    Counts c;
    std::vector<EnhancedEdge> inter;
    for (int i = 1; i <= gold.size(); ++i) {
        const auto& ge = gold.token(i).enhanced;
        const auto& se = sys.token(i).enhanced;
        c.gold_total += static_cast<long long>(ge.size());
        c.system_total += static_cast<long long>(se.size());
        inter.clear();
        std::set_intersection(ge.begin(), ge.end(), se.begin(), se.end(),
                              std::back_inserter(inter));
        c.matched += static_cast<long long>(inter.size());
    }
    return c;
}

Counts count_metric(Metric m, const Sentence& gold, const Sentence& sys) {
    switch (m) {
        case Metric::Lemma:
        case Metric::Upos:
        case Metric::Xpos:
        case Metric::Ufeats: return count_tagging(gold, sys, m);
        case Metric::Las: return count_las(gold, sys);
        case Metric::Mlas: return count_mlas(gold, sys);
        case Metric::Blex: return count_blex(gold, sys);
        case Metric::Elas: return count_elas(gold, sys);
        case Metric::Slas: return count_slas(gold, sys);
    }
    throw InternalError("unhandled metric");
}

int resolve_jobs(int jobs) {
#ifdef _OPENMP
    return jobs > 0 ? jobs : omp_get_max_threads();
#else
    (void)jobs;
    return 1;
#endif
}

EvalReport evaluate_impl(const Treebank& gold, const Treebank& system,
                         const std::vector<Metric>& metrics, int jobs, bool parallel) {
    check_alignment(gold, system);
    const size_t n = gold.sentences.size();
    std::vector<std::vector<Counts>> per_sentence(n, std::vector<Counts>(metrics.size()));

    auto one = [&](size_t si) {
        for (size_t mi = 0; mi < metrics.size(); ++mi)
            per_sentence[si][mi] =
                count_metric(metrics[mi], gold.sentences[si], system.sentences[si]);
    };

    if (parallel) {
        const int n_jobs = resolve_jobs(jobs);
        (void)n_jobs;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(n_jobs)
#endif
        for (long long si = 0; si < static_cast<long long>(n); ++si)
            one(static_cast<size_t>(si));
    } else {
        for (size_t si = 0; si < n; ++si) one(si);
    }

    EvalReport report;
    for (size_t mi = 0; mi < metrics.size(); ++mi) {
        Counts total;
        for (size_t si = 0; si < n; ++si) total += per_sentence[si][mi];
        report[metrics[mi]] = MetricScore{total.matched, total.system_total, total.gold_total};
    }
    return report;
}

}  // namespace

const char* metric_name(Metric m) {
    switch (m) {
        case Metric::Lemma: return "Lemma";
        case Metric::Upos: return "UPOS";
        case Metric::Xpos: return "XPOS";
        case Metric::Ufeats: return "UFeats";
        case Metric::Las: return "LAS";
        case Metric::Mlas: return "MLAS";
        case Metric::Blex: return "BLEX";
        case Metric::Elas: return "ELAS";
        case Metric::Slas: return "SLAS";
    }
    return "unknown";
}

std::optional<Metric> metric_from_name(std::string_view s) {
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "lemma") return Metric::Lemma;
    if (lower == "upos") return Metric::Upos;
    if (lower == "xpos") return Metric::Xpos;
    if (lower == "ufeats") return Metric::Ufeats;
    if (lower == "las") return Metric::Las;
    if (lower == "mlas") return Metric::Mlas;
    if (lower == "blex") return Metric::Blex;
    if (lower == "elas") return Metric::Elas;
    if (lower == "slas") return Metric::Slas;
    return std::nullopt;
}

std::vector<Metric> all_metrics() {
    return {Metric::Lemma, Metric::Upos, Metric::Xpos, Metric::Ufeats, Metric::Las,
            Metric::Mlas,  Metric::Blex, Metric::Elas, Metric::Slas};
}

double MetricScore::precision() const {
    return system_total > 0 ? 100.0 * static_cast<double>(matched) /
                                  static_cast<double>(system_total)
                            : 0.0;
}

double MetricScore::recall() const {
    return gold_total > 0
               ? 100.0 * static_cast<double>(matched) / static_cast<double>(gold_total)
               : 0.0;
}

double MetricScore::f1() const {
    long long denom = system_total + gold_total;
    return denom > 0 ? 200.0 * static_cast<double>(matched) / static_cast<double>(denom) : 0.0;
}

void check_alignment(const Treebank& gold, const Treebank& system) {
    if (gold.size() != system.size())
        throw AlignmentError("system has " + std::to_string(system.size()) +
                             " sentences, gold has " + std::to_string(gold.size()));
    for (int si = 0; si < gold.size(); ++si) {
        const Sentence& gs = gold.sentences[static_cast<size_t>(si)];
        const Sentence& ss = system.sentences[static_cast<size_t>(si)];
        if (gs.size() != ss.size())
            throw AlignmentError("sentence " + std::to_string(si) + ": system has " +
                                 std::to_string(ss.size()) + " tokens, gold has " +
                                 std::to_string(gs.size()));
        for (int t = 1; t <= gs.size(); ++t) {
            if (gs.token(t).form != ss.token(t).form)
                throw AlignmentError("sentence " + std::to_string(si) + ", token " +
                                     std::to_string(t) + ": form '" + ss.token(t).form +
                                     "' differs from gold '" + gs.token(t).form + "'");
        }
    }
}

EvalReport evaluate(const Treebank& gold, const Treebank& system,
                    const std::vector<Metric>& metrics, int jobs) {
    return evaluate_impl(gold, system, metrics, jobs, /*parallel=*/true);
}

namespace serial {
EvalReport evaluate(const Treebank& gold, const Treebank& system,
                    const std::vector<Metric>& metrics) {
    return evaluate_impl(gold, system, metrics, 1, /*parallel=*/false);
}
}  // namespace serial

MetricScore eval_tagging(const Treebank& gold, const Treebank& system, Metric field) {
    if (field != Metric::Lemma && field != Metric::Upos && field != Metric::Xpos &&
        field != Metric::Ufeats)
        throw std::invalid_argument("eval_tagging expects a tagging metric");
    return serial::evaluate(gold, system, {field}).at(field);
}

MetricScore eval_las(const Treebank& gold, const Treebank& system) {
    return serial::evaluate(gold, system, {Metric::Las}).at(Metric::Las);
}

MetricScore eval_mlas(const Treebank& gold, const Treebank& system) {
    return serial::evaluate(gold, system, {Metric::Mlas}).at(Metric::Mlas);
}

MetricScore eval_blex(const Treebank& gold, const Treebank& system) {
    return serial::evaluate(gold, system, {Metric::Blex}).at(Metric::Blex);
}

MetricScore eval_elas(const Treebank& gold, const Treebank& system) {
    return serial::evaluate(gold, system, {Metric::Elas}).at(Metric::Elas);
}

MetricScore eval_slas(const Treebank& gold, const Treebank& system) {
    return serial::evaluate(gold, system, {Metric::Slas}).at(Metric::Slas);
}

bool is_content_deprel(std::string_view universal) {
    return content_set().count(universal) > 0;
}

bool is_functional_deprel(std::string_view universal) {
    return functional_set().count(universal) > 0;
}

bool is_universal_feature(std::string_view key) {
    return universal_feature_set().count(key) > 0;
}

std::string universal_deprel(std::string_view deprel) {
    size_t colon = deprel.find(':');
    return std::string(deprel.substr(0, colon));
}

}  // namespace treeblend
