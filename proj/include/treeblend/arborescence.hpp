#pragma once

#include <vector>

#include "treeblend/graph.hpp"

namespace treeblend {

// heads[d] is the chosen head of dependent d for d in 1..n; heads[0] == -1.
using HeadAssignment = std::vector<int>;

// Maximum-weight spanning arborescence rooted at node 0, found with
// Chu-Liu-Edmonds cycle contraction. Deterministic: among equal-weight optima
// it returns the one whose head vector (head(1), ..., head(n)) is
// lexicographically smallest; every greedy selection along the way prefers
// the lower head index, then the lower dependent index. Throws DecodeError
// when no spanning arborescence exists (the message names a node that cannot
// be reached).
HeadAssignment chu_liu_edmonds(const WeightedArcGraph& g);

// Exhaustive oracle for small graphs (word_count <= 8): enumerates head
// assignments over the existing arcs in ascending lexicographic order and
// keeps the first maximum-weight arborescence, i.e. exactly the canonical
// tree chu_liu_edmonds returns. Throws std::invalid_argument beyond the size
// bound and DecodeError when no arborescence exists.
HeadAssignment brute_force_arborescence(const WeightedArcGraph& g);

// Total weight of an assignment; throws InternalError if an arc is missing.
long long assignment_weight(const WeightedArcGraph& g, const HeadAssignment& heads);

}  // namespace treeblend
