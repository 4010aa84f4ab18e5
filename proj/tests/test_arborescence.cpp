#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "treeblend/arborescence.hpp"
#include "treeblend/graph.hpp"

using namespace treeblend;

namespace {

WeightedArcGraph graph_from(int n, const std::vector<std::tuple<int, int, int>>& arcs) {
    WeightedArcGraph g(n);
    for (auto [head, dep, w] : arcs) g.add_votes(head, dep, "dep", w);
    return g;
}

}  // namespace

TEST_CASE("two equally heavy trees resolve to the smaller head vector") {
    // Both spanning trees weigh 4; heads (0,1) beat (2,0) lexicographically.
    WeightedArcGraph g = graph_from(2, {{0, 1, 1}, {0, 2, 1}, {1, 2, 3}, {2, 1, 3}});
    HeadAssignment heads = chu_liu_edmonds(g);
    CHECK(heads == HeadAssignment{-1, 0, 1});
    CHECK(assignment_weight(g, heads) == 4);
    CHECK(brute_force_arborescence(g) == heads);
}

TEST_CASE("all-equal weights on a complete graph give the root star") {
    const int n = 4;
    WeightedArcGraph g(n);
    for (int d = 1; d <= n; ++d)
        for (int h = 0; h <= n; ++h)
            if (h != d) g.add_vote(h, d, "dep");
    HeadAssignment heads = chu_liu_edmonds(g);
    CHECK(heads == HeadAssignment{-1, 0, 0, 0, 0});
    CHECK(brute_force_arborescence(g) == heads);
}

TEST_CASE("cycle heavier than the root arcs still gets broken optimally") {
    // 1 and 2 prefer each other (weight 5); the best tree keeps one cycle arc.
    WeightedArcGraph g = graph_from(2, {{0, 1, 1}, {0, 2, 2}, {1, 2, 5}, {2, 1, 5}});
    HeadAssignment heads = chu_liu_edmonds(g);
    CHECK(heads == HeadAssignment{-1, 2, 0});  // weight 7 beats weight 6
    CHECK(assignment_weight(g, heads) == 7);
    CHECK(brute_force_arborescence(g) == heads);
}

TEST_CASE("nested contraction: three-cycle with an expensive exit") {
    WeightedArcGraph g = graph_from(3, {{0, 1, 1},
                                        {1, 2, 10},
                                        {2, 3, 10},
                                        {3, 1, 10},
                                        {0, 3, 8}});
    HeadAssignment heads = chu_liu_edmonds(g);
    CHECK(assignment_weight(g, heads) ==
          assignment_weight(g, brute_force_arborescence(g)));
    CHECK(heads == brute_force_arborescence(g));
}

TEST_CASE("scaling all weights leaves the decoded tree unchanged") {
    WeightedArcGraph a = graph_from(3, {{0, 1, 2}, {1, 2, 3}, {2, 3, 1}, {0, 3, 2}, {3, 1, 1}});
    WeightedArcGraph b = graph_from(3, {{0, 1, 14}, {1, 2, 21}, {2, 3, 7}, {0, 3, 14}, {3, 1, 7}});
    CHECK(chu_liu_edmonds(a) == chu_liu_edmonds(b));
}

TEST_CASE("label tallies accumulate alongside weights") {
    WeightedArcGraph g(2);
    g.add_vote(0, 1, "root");
    g.add_vote(0, 1, "root");
    g.add_vote(0, 1, "parataxis");
    g.add_vote(1, 2, "obj");
    CHECK(g.weight(0, 1) == 3);
    const auto* arc = g.find_arc(0, 1);
    REQUIRE(arc != nullptr);
    CHECK(arc->labels.at("root") == 2);
    CHECK(arc->labels.at("parataxis") == 1);
    CHECK(g.arc_count() == 2);
    auto incoming = g.incoming(1);
    REQUIRE(incoming.size() == 1);
    CHECK(incoming.begin()->first == 0);
}

TEST_CASE("vote graph rejects out-of-range arcs") {
    WeightedArcGraph g(3);
    CHECK_THROWS_AS(g.add_vote(0, 0, "x"), std::invalid_argument);   // dep 0
    CHECK_THROWS_AS(g.add_vote(0, 4, "x"), std::invalid_argument);   // dep > n
    CHECK_THROWS_AS(g.add_vote(-1, 1, "x"), std::invalid_argument);  // head < 0
    CHECK_THROWS_AS(g.add_vote(4, 1, "x"), std::invalid_argument);   // head > n
    CHECK_THROWS_AS(g.add_vote(2, 2, "x"), std::invalid_argument);   // self-loop
    CHECK_THROWS_AS(g.add_votes(0, 1, "x", 0), std::invalid_argument);
    CHECK_THROWS_AS(WeightedArcGraph(0), std::invalid_argument);
}

TEST_CASE("infeasible graphs raise DecodeError") {
    WeightedArcGraph g(2);
    g.add_vote(0, 1, "dep");  // node 2 has no incoming arc at all
    CHECK_THROWS_AS(chu_liu_edmonds(g), DecodeError);
    CHECK_THROWS_AS(brute_force_arborescence(g), DecodeError);

    // Reachable-but-rootless: 2 and 3 only point at each other.
    WeightedArcGraph h = graph_from(3, {{0, 1, 1}, {2, 3, 5}, {3, 2, 5}});
    CHECK_THROWS_AS(chu_liu_edmonds(h), DecodeError);
    CHECK_THROWS_AS(brute_force_arborescence(h), DecodeError);
}

TEST_CASE("brute force is limited to small graphs") {
    WeightedArcGraph g(9);
    for (int d = 1; d <= 9; ++d) g.add_vote(0, d, "dep");
    CHECK_THROWS_AS(brute_force_arborescence(g), std::invalid_argument);
}

TEST_CASE("decoder agrees with exhaustive enumeration on random graphs") {
    std::mt19937 rng(20260825);
    auto pick = [&rng](int k) { return static_cast<int>(rng() % static_cast<unsigned>(k)); };

    for (int iter = 0; iter < 1500; ++iter) {
        const int n = 2 + pick(5);  // 2..6 words
        WeightedArcGraph g(n);
        std::set<std::pair<int, int>> present;
        // Random skeleton tree keeps every instance feasible.
        for (int d = 1; d <= n; ++d) {
            int h = pick(d);  // 0..d-1
            g.add_votes(h, d, "dep", 1 + pick(5));
            present.insert({h, d});
        }
        const int extras = pick(2 * n + 1);
        for (int e = 0; e < extras; ++e) {
            int d = 1 + pick(n);
            int h = pick(n + 1);
            if (h == d || present.count({h, d})) continue;
            present.insert({h, d});
            g.add_votes(h, d, "dep", 1 + pick(5));
        }

        HeadAssignment fast = chu_liu_edmonds(g);
        HeadAssignment exact = brute_force_arborescence(g);
        CAPTURE(iter);
        CHECK(assignment_weight(g, fast) == assignment_weight(g, exact));
        CHECK(fast == exact);
    }
}
