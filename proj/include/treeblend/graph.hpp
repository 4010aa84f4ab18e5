#pragma once

#include <map>
#include <string>
#include <vector>

#include "treeblend/errors.hpp"

namespace treeblend {

// Directed graph over nodes 0..n (0 is the artificial root) with integer arc
// weights and a per-arc label tally. Weights are vote counts: add_vote bumps
// the arc weight by one and records the label that voter assigned, so the
// label counts of an arc always sum to its weight. Arcs into node 0 and
// self-loops are rejected.
class WeightedArcGraph {
public:
    struct Arc {
        long long weight = 0;
        std::map<std::string, int> labels;  // label -> count
    };

    explicit WeightedArcGraph(int word_count);

    int word_count() const { return n_; }
    void add_vote(int head, int dep, const std::string& label);
    void add_votes(int head, int dep, const std::string& label, int count);
    long long weight(int head, int dep) const;     // 0 when the arc is absent
    const Arc* find_arc(int head, int dep) const;  // nullptr when absent
    // Incoming arcs of a dependent, keyed by head in ascending order.
    const std::map<int, Arc>& incoming(int dep) const;
    long long arc_count() const;

private:
    int n_;
    std::vector<std::map<int, Arc>> incoming_;  // index = dependent (1..n)
};

}  // namespace treeblend
