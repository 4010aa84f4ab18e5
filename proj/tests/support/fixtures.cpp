#include "support/fixtures.hpp"

namespace treeblend::testing {

Sentence make_sentence(const std::vector<TokenSpec>& specs, const std::string& sent_id) {
    Sentence s;
    s.sent_id = sent_id;
    if (!sent_id.empty()) s.comments.push_back("# sent_id = " + sent_id);
    int id = 0;
    for (const TokenSpec& spec : specs) {
        Token t;
        t.id = ++id;
        t.form = spec.form;
        t.lemma = spec.lemma.empty() ? spec.form : spec.lemma;
        t.upos = spec.upos;
        t.head = spec.head;
        t.deprel = spec.deprel;
        s.tokens.push_back(std::move(t));
    }
    return s;
}

Sentence head_rule_fixture() {
    return make_sentence({{"Śpią", 0, "root", "VERB"},
                          {"i", 3, "cc", "CCONJ"},
                          {"pracują", 1, "conj", "VERB"},
                          {".", 1, "punct", "PUNCT"}},
                         "fix-head");
}

Sentence children_rule_fixture() {
    return make_sentence({{"Zawsze", 2, "advmod", "ADV"},
                          {"dziwiły", 0, "root", "VERB"},
                          {"i", 4, "cc", "CCONJ"},
                          {"przerażały", 2, "conj", "VERB"},
                          {".", 2, "punct", "PUNCT"}},
                         "fix-children");
}

Sentence advmod_filter_fixture() {
    return make_sentence({{"Kot", 2, "nsubj", "NOUN"},
                          {"siedział", 0, "root", "VERB"},
                          {"obok", 2, "advmod", "ADV"},
                          {"i", 6, "cc", "CCONJ"},
                          {"znowu", 6, "advmod", "ADV"},
                          {"miauknął", 2, "conj", "VERB"},
                          {".", 2, "punct", "PUNCT"}},
                         "fix-advmod1");
}

Sentence obj_filter_fixture() {
    return make_sentence({{"Podnoszą", 0, "root", "VERB"},
                          {"ręce", 1, "obj", "NOUN"},
                          {"i", 4, "cc", "CCONJ"},
                          {"śpiewają", 1, "conj", "VERB"},
                          {".", 1, "punct", "PUNCT"}},
                         "fix-obj-before");
}

Sentence obj_keep_fixture() {
    return make_sentence({{"Podziwiali", 0, "root", "VERB"},
                          {"i", 3, "cc", "CCONJ"},
                          {"doceniali", 1, "conj", "VERB"},
                          {"ją", 1, "obj", "PRON"},
                          {".", 1, "punct", "PUNCT"}},
                         "fix-obj-after");
}

}  // namespace treeblend::testing
