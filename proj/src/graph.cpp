#include "treeblend/graph.hpp"

namespace treeblend {

WeightedArcGraph::WeightedArcGraph(int word_count) : n_(word_count) {
    if (word_count < 1)
        throw std::invalid_argument("graph needs at least one word node");
    incoming_.resize(static_cast<size_t>(word_count) + 1);
}

void WeightedArcGraph::add_vote(int head, int dep, const std::string& label) {
    add_votes(head, dep, label, 1);
}

void WeightedArcGraph::add_votes(int head, int dep, const std::string& label, int count) {
    if (dep < 1 || dep > n_)
        throw std::invalid_argument("dependent " + std::to_string(dep) + " outside 1.." +
                                    std::to_string(n_));
    if (head < 0 || head > n_)
        throw std::invalid_argument("head " + std::to_string(head) + " outside 0.." +
                                    std::to_string(n_));
    if (head == dep)
        throw std::invalid_argument("self-loop on node " + std::to_string(dep));
    if (count < 1) throw std::invalid_argument("vote count must be positive");
    Arc& arc = incoming_[static_cast<size_t>(dep)][head];
    arc.weight += count;
    arc.labels[label] += count;
}

long long WeightedArcGraph::weight(int head, int dep) const {
    const Arc* arc = find_arc(head, dep);
    return arc ? arc->weight : 0;
}

const WeightedArcGraph::Arc* WeightedArcGraph::find_arc(int head, int dep) const {
    if (dep < 1 || dep > n_) return nullptr;
    const auto& in = incoming_[static_cast<size_t>(dep)];
    auto it = in.find(head);
    return it == in.end() ? nullptr : &it->second;
}

const std::map<int, WeightedArcGraph::Arc>& WeightedArcGraph::incoming(int dep) const {
    if (dep < 1 || dep > n_)
        throw std::invalid_argument("dependent " + std::to_string(dep) + " outside 1.." +
                                    std::to_string(n_));
    return incoming_[static_cast<size_t>(dep)];
}

long long WeightedArcGraph::arc_count() const {
    long long total = 0;
    for (int d = 1; d <= n_; ++d)
        total += static_cast<long long>(incoming_[static_cast<size_t>(d)].size());
    return total;
}

}  // namespace treeblend
