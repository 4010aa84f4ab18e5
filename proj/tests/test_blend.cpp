#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "support/fixtures.hpp"
#include "support/synthetic.hpp"
#include "treeblend/blend.hpp"

using namespace treeblend;
using treeblend::testing::make_sentence;

namespace {

std::vector<int> heads_of(const Sentence& s) {
    std::vector<int> out;
    for (const Token& t : s.tokens) out.push_back(t.head);
    return out;
}

std::vector<std::string> deprels_of(const Sentence& s) {
    std::vector<std::string> out;
    for (const Token& t : s.tokens) out.push_back(t.deprel);
    return out;
}

}  // namespace

TEST_CASE("vote graph counts one vote per prediction arc") {
    Sentence a = make_sentence({{"w1", 0, "root"}, {"w2", 1, "obj"}});
    Sentence b = make_sentence({{"w1", 0, "root"}, {"w2", 1, "obl"}});
    Sentence c = make_sentence({{"w1", 2, "dep"}, {"w2", 0, "root"}});

    WeightedArcGraph g = build_vote_graph({a, b, c});
    CHECK(g.weight(0, 1) == 2);
    CHECK(g.weight(2, 1) == 1);
    CHECK(g.weight(1, 2) == 2);
    CHECK(g.weight(0, 2) == 1);
    const auto* arc = g.find_arc(1, 2);
    REQUIRE(arc != nullptr);
    CHECK(arc->labels.at("obj") == 1);
    CHECK(arc->labels.at("obl") == 1);
}

TEST_CASE("vote graph rejects misaligned or empty predictions") {
    Sentence a = make_sentence({{"w1", 0, "root"}, {"w2", 1, "obj"}});
    Sentence shorter = make_sentence({{"w1", 0, "root"}});
    Sentence renamed = make_sentence({{"w1", 0, "root"}, {"other", 1, "obj"}});
    CHECK_THROWS_AS(build_vote_graph({a, shorter}), AlignmentError);
    CHECK_THROWS_AS(build_vote_graph({a, renamed}), AlignmentError);
    CHECK_THROWS_AS(build_vote_graph(std::vector<Sentence>{}), std::invalid_argument);

    Sentence out_of_range = a;
    out_of_range.token(2).head = 9;
    CHECK_THROWS_AS(build_vote_graph({a, out_of_range}), ValidationError);
}

TEST_CASE("label vote picks the majority and breaks ties alphabetically") {
    Sentence a = make_sentence({{"w1", 0, "root"}, {"w2", 1, "obj"}});
    Sentence b = make_sentence({{"w1", 0, "root"}, {"w2", 1, "obj"}});
    Sentence c = make_sentence({{"w1", 0, "root"}, {"w2", 1, "iobj"}});
    WeightedArcGraph g = build_vote_graph({a, b, c});
    HeadAssignment heads{-1, 0, 1};
    CHECK(vote_labels(g, heads) == std::vector<std::string>{"", "root", "obj"});

    // 1-1 tie between "iobj" and "obj": the alphabetically smaller one wins.
    WeightedArcGraph tie = build_vote_graph({a, c});
    CHECK(vote_labels(tie, heads)[2] == "iobj");
}

TEST_CASE("fix_roots chains excess roots onto the first one") {
    SUBCASE("two roots") {
        Sentence s = make_sentence({{"a", 0, "root"}, {"b", 2, "obj"}, {"c", 0, "root"}});
        Sentence r = fix_roots(s);
        CHECK(heads_of(r) == std::vector<int>{0, 2, 1});
        CHECK(deprels_of(r) == std::vector<std::string>{"root", "obj", "parataxis"});
    }
    SUBCASE("four roots chain in id order") {
        Sentence s = make_sentence(
            {{"a", 0, "root"}, {"b", 0, "root"}, {"c", 0, "root"}, {"d", 0, "root"}});
        Sentence r = fix_roots(s);
        CHECK(heads_of(r) == std::vector<int>{0, 1, 2, 3});
        CHECK(deprels_of(r) ==
              std::vector<std::string>{"root", "parataxis", "parataxis", "parataxis"});
    }
    SUBCASE("non-root deprel of an excess root is preserved") {
        Sentence s = make_sentence({{"a", 0, "root"}, {"b", 0, "ccomp"}});
        Sentence r = fix_roots(s);
        CHECK(heads_of(r) == std::vector<int>{0, 1});
        CHECK(deprels_of(r) == std::vector<std::string>{"root", "ccomp"});
    }
    SUBCASE("custom fallback label") {
        Sentence s = make_sentence({{"a", 0, "root"}, {"b", 0, "root"}});
        CHECK(deprels_of(fix_roots(s, "conj"))[1] == "conj");
    }
    SUBCASE("rootless input is rejected") {
        Sentence s = make_sentence({{"a", 2, "dep"}, {"b", 1, "dep"}});
        CHECK_THROWS_AS(fix_roots(s), ValidationError);
    }
}

TEST_CASE("majority head wins a three-parser vote") {
    Sentence a = make_sentence({{"w1", 0, "root"}, {"w2", 1, "obj"}, {"w3", 2, "amod"}});
    Sentence b = make_sentence({{"w1", 0, "root"}, {"w2", 1, "obj"}, {"w3", 1, "obl"}});
    Sentence c = make_sentence({{"w1", 0, "root"}, {"w2", 1, "iobj"}, {"w3", 2, "amod"}});
    Sentence blended = blend_sentence({a, b, c});
    CHECK(heads_of(blended) == std::vector<int>{0, 1, 2});
    CHECK(deprels_of(blended) == std::vector<std::string>{"root", "obj", "amod"});
    CHECK(is_valid_tree(blended));
}

TEST_CASE("unanimous predictions come back unchanged") {
    testing::SynthConfig cfg;
    cfg.sentences = 12;
    cfg.seed = 7;
    Treebank gold = testing::random_treebank(cfg);
    Treebank blended = blend_treebank({gold, gold, gold});
    REQUIRE(blended.size() == gold.size());
    for (int i = 0; i < gold.size(); ++i) {
        CHECK(heads_of(blended.sentences[i]) == heads_of(gold.sentences[i]));
        CHECK(deprels_of(blended.sentences[i]) == deprels_of(gold.sentences[i]));
    }
}

TEST_CASE("donor supplies the non-syntactic layers") {
    Sentence a = make_sentence({{"w1", 0, "root"}, {"w2", 1, "obj"}}, "id-a");
    a.token(1).misc = "SemLabel=Agent";
    a.token(1).lemma = "lemma-a";
    a.token(1).add_enhanced(2, "nsubj");  // must not leak into the blend
    Sentence b = a;
    b.sent_id = "id-b";
    b.comments = {"# sent_id = id-b"};
    b.token(1).misc = "SemLabel=Other";
    b.token(1).lemma = "lemma-b";

    BlendOptions opts;
    opts.donor = 1;
    Sentence blended = blend_sentence({a, b}, opts);
    CHECK(blended.sent_id == "id-b");
    CHECK(blended.token(1).misc == "SemLabel=Other");
    CHECK(blended.token(1).lemma == "lemma-b");
    CHECK(blended.token(1).enhanced.empty());  // enhanced layer is cleared

    BlendOptions bad;
    bad.donor = 5;
    CHECK_THROWS_AS(blend_sentence({a, b}, bad), std::invalid_argument);
}

TEST_CASE("blending is invariant under permuting the parsers") {
    testing::SynthConfig cfg;
    cfg.sentences = 10;
    cfg.seed = 21;
    Treebank gold = testing::random_treebank(cfg);
    std::vector<Treebank> parsers{testing::perturb_predictions(gold, 0.3, 100),
                                  testing::perturb_predictions(gold, 0.3, 200),
                                  testing::perturb_predictions(gold, 0.3, 300)};

    Treebank base = blend_treebank(parsers);
    std::vector<int> order{0, 1, 2};
    while (std::next_permutation(order.begin(), order.end())) {
        std::vector<Treebank> shuffled{parsers[static_cast<size_t>(order[0])],
                                       parsers[static_cast<size_t>(order[1])],
                                       parsers[static_cast<size_t>(order[2])]};
        Treebank other = blend_treebank(shuffled);
        for (int i = 0; i < base.size(); ++i) {
            CAPTURE(i);
            CHECK(heads_of(other.sentences[i]) == heads_of(base.sentences[i]));
            CHECK(deprels_of(other.sentences[i]) == deprels_of(base.sentences[i]));
        }
    }
}

TEST_CASE("blended output is always a valid tree, whatever the inputs") {
    testing::SynthConfig cfg;
    cfg.sentences = 25;
    cfg.seed = 5;
    Treebank gold = testing::random_treebank(cfg);
    // Heavy disagreement and extra roots in every parser.
    std::vector<Treebank> parsers{testing::perturb_predictions(gold, 0.6, 11),
                                  testing::perturb_predictions(gold, 0.6, 22),
                                  testing::perturb_predictions(gold, 0.6, 33)};
    Treebank blended = blend_treebank(parsers);
    for (const Sentence& s : blended.sentences) {
        CAPTURE(s.sent_id);
        CHECK(is_valid_tree(s));
    }
}

TEST_CASE("parallel and serial blends agree for any job count") {
    testing::SynthConfig cfg;
    cfg.sentences = 16;
    cfg.seed = 3;
    Treebank gold = testing::random_treebank(cfg);
    std::vector<Treebank> parsers{testing::perturb_predictions(gold, 0.4, 41),
                                  testing::perturb_predictions(gold, 0.4, 42),
                                  testing::perturb_predictions(gold, 0.4, 43)};

    BlendOptions serial_opts;
    Treebank reference = serial::blend_treebank(parsers, serial_opts);
    for (int jobs = 1; jobs <= 8; ++jobs) {
        BlendOptions opts;
        opts.jobs = jobs;
        Treebank parallel = blend_treebank(parsers, opts);
        CHECK(serialize_conllu(parallel) == serialize_conllu(reference));
    }
}

TEST_CASE("misaligned treebanks are rejected with the sentence index") {
    testing::SynthConfig cfg;
    cfg.sentences = 4;
    cfg.seed = 9;
    Treebank a = testing::random_treebank(cfg);
    Treebank b = a;
    b.sentences.pop_back();
    CHECK_THROWS_AS(blend_treebank({a, b}), AlignmentError);

    Treebank c = a;
    c.sentences[2].tokens.pop_back();
    try {
        blend_treebank({a, c});
        FAIL("expected AlignmentError");
    } catch (const AlignmentError& e) {
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
}
