#pragma once

#include <string>
#include <vector>

#include "treeblend/arborescence.hpp"
#include "treeblend/conllu.hpp"

namespace treeblend {

struct BlendOptions {
    // Index of the prediction whose non-syntactic columns (form, lemma, upos,
    // xpos, feats, misc) and comments are carried into the blended output.
    int donor = 0;
    // Deprel given to excess root dependents after they are re-attached.
    std::string root_fallback = "parataxis";
    // Worker threads for the treebank-level kernels; 0 = OpenMP default.
    int jobs = 0;
};

// One vote per prediction arc: weight(h, d) = number of predictions with
// head(d) = h, with the predicted deprel tallied on the arc. All predictions
// must have the same token count and forms, and in-range heads.
WeightedArcGraph build_vote_graph(const std::vector<Sentence>& predictions);
WeightedArcGraph build_vote_graph(const std::vector<const Sentence*>& predictions);

// Most frequent label of each selected arc; ties pick the lexicographically
// smallest label. Result is indexed by dependent (index 0 unused).
std::vector<std::string> vote_labels(const WeightedArcGraph& g, const HeadAssignment& heads);

// Keeps the first (lowest-id) head-0 token as the root and re-attaches every
// subsequent head-0 token, in id order, to the previous former root. A
// re-attached token whose deprel is "root" is relabeled with `fallback`.
Sentence fix_roots(Sentence s, const std::string& fallback = "parataxis");

Sentence blend_sentence(const std::vector<Sentence>& predictions, const BlendOptions& opts = {});
Sentence blend_sentence(const std::vector<const Sentence*>& predictions, const BlendOptions& opts = {});

Treebank blend_treebank(const std::vector<const Treebank*>& inputs, const BlendOptions& opts = {});
Treebank blend_treebank(const std::vector<Treebank>& inputs, const BlendOptions& opts = {});

namespace serial {
// Plain single-threaded reference for the OpenMP kernel above; kept for
// equivalence testing and benchmarking.
Treebank blend_treebank(const std::vector<const Treebank*>& inputs, const BlendOptions& opts = {});
Treebank blend_treebank(const std::vector<Treebank>& inputs, const BlendOptions& opts = {});
}  // namespace serial

}  // namespace treeblend
