#pragma once

#include <cstdint>
#include <random>

#include "treeblend/conllu.hpp"
#include "treeblend/enhance.hpp"

namespace treeblend::testing {

struct SynthConfig {
    int sentences = 40;
    int min_len = 5;
    int max_len = 14;
    std::uint32_t seed = 1;
};

// Random single-rooted treebank with coordination: conj tokens, siblings with
// a mix of propagatable and filterable labels, advmod and obj patterns that
// exercise the enhanced-dependency filters.
Treebank random_treebank(const SynthConfig& cfg);

// A noisy copy of `gold` acting as one parser's output: with probability
// `noise` a token is rewired to a different (still in-range, acyclic) head
// and with the same probability its deprel is replaced.
Treebank perturb_predictions(const Treebank& gold, double noise, std::uint32_t seed);

// Turns `trees` into a gold enhanced corpus: DEPS is what the rules with all
// three filters produce, with `drop` of the non-basic arcs removed and, per
// sentence, a spurious arc added with probability `add` (the controlled
// noise).
Treebank gold_enhanced_corpus(const Treebank& trees, double drop, double add,
                              std::uint32_t seed);

}  // namespace treeblend::testing
