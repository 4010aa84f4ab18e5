#include "treeblend/search.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

#include "treeblend/evaluate.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace treeblend {

namespace {

constexpr long long kMaxCombinations = 10'000'000;

void check_groups(const std::vector<ParserGroup>& groups) {
    if (groups.empty()) throw std::invalid_argument("at least one parser group is required");
    std::set<std::string> seen;
    for (const ParserGroup& g : groups) {
        if (g.name.empty()) throw std::invalid_argument("parser group with an empty name");
        if (!seen.insert(g.name).second)
            throw std::invalid_argument("duplicate parser group name '" + g.name + "'");
        if (g.outputs.empty())
            throw std::invalid_argument("parser group '" + g.name + "' has no instances");
    }
}

// Counts of tokens whose head and deprel (universal part) match gold.
void las_counts(const Treebank& gold, const Treebank& sys, long long& matched,
                long long& total) {
    matched = 0;
    total = 0;
    for (int si = 0; si < gold.size(); ++si) {
        const Sentence& gs = gold.sentences[static_cast<size_t>(si)];
        const Sentence& ss = sys.sentences[static_cast<size_t>(si)];
        for (int t = 1; t <= gs.size(); ++t) {
            ++total;
            const Token& gt = gs.token(t);
            const Token& st = ss.token(t);
            if (gt.head == st.head &&
                universal_deprel(gt.deprel) == universal_deprel(st.deprel))
                ++matched;
        }
    }
}

int resolve_jobs(int jobs) {
#ifdef _OPENMP
    return jobs > 0 ? jobs : omp_get_max_threads();
#else
    (void)jobs;
    return 1;
#endif
}

SearchResult search_best_impl(const std::vector<ParserGroup>& groups, const Treebank& dev_gold,
                              const SearchOptions& opts, bool parallel) {
    check_groups(groups);
    for (const ParserGroup& g : groups) {
        for (size_t i = 0; i < g.outputs.size(); ++i) {
            try {
                check_alignment(dev_gold, g.outputs[i]);
            } catch (const AlignmentError& e) {
                throw AlignmentError("group '" + g.name + "' instance " + std::to_string(i) +
                                     ": " + e.what());
            }
        }
    }

    std::vector<BlendCombination> combos = enumerate_combinations(groups);
    std::vector<CombinationScore> scores(combos.size());
    std::vector<std::string> failures(combos.size());

    auto score_one = [&](size_t ci) {
        try {
            std::vector<const Treebank*> inputs = realize(combos[ci], groups);
            BlendOptions blend_opts = opts.blend;
            blend_opts.jobs = 1;  // parallelism lives at the combination level
            Treebank blended = serial::blend_treebank(inputs, blend_opts);
            CombinationScore s;
            s.combination = combos[ci];
            las_counts(dev_gold, blended, s.matched, s.total);
            scores[ci] = std::move(s);
        } catch (const std::exception& e) {
            failures[ci] = e.what();
        }
    };

    if (parallel) {
        const int jobs = resolve_jobs(opts.jobs);
        (void)jobs;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
#endif
        for (long long ci = 0; ci < static_cast<long long>(combos.size()); ++ci)
            score_one(static_cast<size_t>(ci));
    } else {
        for (size_t ci = 0; ci < combos.size(); ++ci) score_one(ci);
    }

    for (size_t ci = 0; ci < combos.size(); ++ci)
        if (!failures[ci].empty())
            throw Error("combination " + std::to_string(ci) + ": " + failures[ci]);

    // Higher LAS first; ties prefer fewer instances, then the smaller counts
    // vector. LAS comparison is exact (matched counts share one denominator).
    std::vector<size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        const CombinationScore& x = scores[a];
        const CombinationScore& y = scores[b];
        if (x.matched != y.matched) return x.matched > y.matched;
        int xi = x.combination.total_instances();
        int yi = y.combination.total_instances();
        if (xi != yi) return xi < yi;
        return x.combination.counts < y.combination.counts;
    });

    SearchResult result;
    result.ranking.reserve(scores.size());
    for (size_t idx : order) result.ranking.push_back(scores[idx]);
    result.best = result.ranking.front();
    return result;
}

}  // namespace

int BlendCombination::total_instances() const {
    int total = 0;
    for (int c : counts) total += c;
    return total;
}

double CombinationScore::las() const {
    return total > 0 ? 100.0 * static_cast<double>(matched) / static_cast<double>(total) : 0.0;
}

std::vector<BlendCombination> enumerate_combinations(const std::vector<ParserGroup>& groups) {
    check_groups(groups);
    long long total = 1;
    for (const ParserGroup& g : groups) {
        total *= static_cast<long long>(g.outputs.size()) + 1;
        if (total > kMaxCombinations)
            throw std::invalid_argument("combination space exceeds " +
                                        std::to_string(kMaxCombinations));
    }
    std::vector<BlendCombination> out;
    out.reserve(static_cast<size_t>(total - 1));
    std::vector<int> counts(groups.size(), 0);
    // Odometer with the last group spinning fastest: ascending lexicographic
    // order with the first group most significant. The initial all-zero
    // vector is skipped.
    while (true) {
        int i = static_cast<int>(groups.size()) - 1;
        while (i >= 0 && counts[static_cast<size_t>(i)] ==
                             static_cast<int>(groups[static_cast<size_t>(i)].outputs.size())) {
            counts[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++counts[static_cast<size_t>(i)];
        out.push_back(BlendCombination{counts});
    }
    return out;
}

std::vector<const Treebank*> realize(const BlendCombination& comb,
                                     const std::vector<ParserGroup>& groups) {
    if (comb.counts.size() != groups.size())
        throw std::invalid_argument("combination has " + std::to_string(comb.counts.size()) +
                                    " counts for " + std::to_string(groups.size()) + " groups");
    std::vector<const Treebank*> out;
    for (size_t gi = 0; gi < groups.size(); ++gi) {
        int c = comb.counts[gi];
        if (c < 0 || c > static_cast<int>(groups[gi].outputs.size()))
            throw std::invalid_argument("count " + std::to_string(c) + " outside 0.." +
                                        std::to_string(groups[gi].outputs.size()) +
                                        " for group '" + groups[gi].name + "'");
        for (int i = 0; i < c; ++i) out.push_back(&groups[gi].outputs[static_cast<size_t>(i)]);
    }
    if (out.empty()) throw std::invalid_argument("combination selects no instances");
    return out;
}

SearchResult search_best(const std::vector<ParserGroup>& groups, const Treebank& dev_gold,
                         const SearchOptions& opts) {
    return search_best_impl(groups, dev_gold, opts, /*parallel=*/true);
}

namespace serial {
SearchResult search_best(const std::vector<ParserGroup>& groups, const Treebank& dev_gold,
                         const SearchOptions& opts) {
    return search_best_impl(groups, dev_gold, opts, /*parallel=*/false);
}
}  // namespace serial

void write_ranking_tsv(std::ostream& out, const std::vector<ParserGroup>& groups,
                       const SearchResult& result) {
    out << "rank\tlas\tinstances";
    for (const ParserGroup& g : groups) out << '\t' << g.name;
    out << '\n';
    char las[32];
    for (size_t i = 0; i < result.ranking.size(); ++i) {
        const CombinationScore& s = result.ranking[i];
        std::snprintf(las, sizeof las, "%.2f", s.las());
        out << (i + 1) << '\t' << las << '\t' << s.combination.total_instances();
        for (int c : s.combination.counts) out << '\t' << c;
        out << '\n';
    }
}

}  // namespace treeblend
