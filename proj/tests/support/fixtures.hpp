#pragma once

#include <string>
#include <vector>

#include "treeblend/conllu.hpp"

namespace treeblend::testing {

struct TokenSpec {
    std::string form;
    int head = 0;
    std::string deprel;
    std::string upos = "X";
    std::string lemma;  // defaults to form when empty
};

// Builds a sentence with ids 1..n from (form, head, deprel) triples.
Sentence make_sentence(const std::vector<TokenSpec>& specs, const std::string& sent_id = "");

// Coordination fixtures mirroring the four rule scenarios:
//  - head_rule_fixture: a conj token attached to the root verb, so the rule
//    adds an enhanced 0:root arc to the conjunct ("pracują").
//  - children_rule_fixture: an adverb modifying the first conjunct that the
//    rule also attaches to the second conjunct ("zawsze").
//  - advmod_filter_fixture: the second conjunct has its own advmod, so the
//    propagated sibling advmod must be filtered out ("obok" vs "znowu").
//  - obj_filter_fixture: an object that precedes the second conjunct, whose
//    propagated obj arc must be filtered out ("ręce").
//  - obj_keep_fixture: an object after both conjuncts, whose propagated obj
//    arc must be kept ("ją").
Sentence head_rule_fixture();
Sentence children_rule_fixture();
Sentence advmod_filter_fixture();
Sentence obj_filter_fixture();
Sentence obj_keep_fixture();

}  // namespace treeblend::testing
