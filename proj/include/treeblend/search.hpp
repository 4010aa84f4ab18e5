#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "treeblend/blend.hpp"

namespace treeblend {

// A family of equally-trained parser instances whose outputs are
// interchangeable, e.g. the same parser trained on different folds.
struct ParserGroup {
    std::string name;
    std::vector<Treebank> outputs;  // one parsed copy of the dev set per instance
};

// How many instances to take from each group, parallel to the group list.
struct BlendCombination {
    std::vector<int> counts;

    int total_instances() const;
};

// Every counts vector with 0 <= counts[i] <= groups[i].outputs.size(), in
// ascending lexicographic order (first group most significant), excluding the
// all-zero vector: prod(size_i + 1) - 1 combinations.
std::vector<BlendCombination> enumerate_combinations(const std::vector<ParserGroup>& groups);

// The first counts[i] instances of each group, groups in the given order.
std::vector<const Treebank*> realize(const BlendCombination& comb,
                                     const std::vector<ParserGroup>& groups);

struct CombinationScore {
    BlendCombination combination;
    long long matched = 0;  // tokens whose blended head and deprel equal gold
    long long total = 0;

    double las() const;  // percent
};

struct SearchResult {
    CombinationScore best;
    std::vector<CombinationScore> ranking;  // best first
};

struct SearchOptions {
    BlendOptions blend;  // per-combination blending settings (jobs unused here)
    int jobs = 0;        // worker threads over combinations; 0 = OpenMP default
};

// Blends every combination, scores it against the gold dev set by LAS, and
// returns the full ranking. Ties are broken toward fewer total instances,
// then toward the lexicographically smaller counts vector.
SearchResult search_best(const std::vector<ParserGroup>& groups, const Treebank& dev_gold,
                         const SearchOptions& opts = {});

namespace serial {
SearchResult search_best(const std::vector<ParserGroup>& groups, const Treebank& dev_gold,
                         const SearchOptions& opts = {});
}  // namespace serial

// Ranking report. Columns: rank, las, instances, then one column per group
// (header = group name) holding that group's instance count.
void write_ranking_tsv(std::ostream& out, const std::vector<ParserGroup>& groups,
                       const SearchResult& result);

}  // namespace treeblend
