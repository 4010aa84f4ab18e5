#include "treeblend/arborescence.hpp"

#include <algorithm>
#include <stdexcept>

namespace treeblend {

namespace {

// One arc at some contraction level. (u, v) are current-level node ids,
// (ou, ov) the original endpoints, prov the index of the arc this one was
// derived from in the parent level's arc list.
struct LevelArc {
    int u = 0, v = 0;
    long long w = 0;
    int ou = 0, ov = 0;
    int prov = -1;
};

struct LevelResult {
    bool feasible = false;
    int bad_node = -1;   // original node that cannot be entered, when infeasible
    bool tie_seen = false;
    std::vector<int> chosen;  // per current-level node: index into this level's arcs
};

// When weights tie, prefer the arc whose original (head, dependent) pair is
// smaller. This keeps every greedy selection deterministic; global
// canonicality is restored by the refinement pass in chu_liu_edmonds.
bool preferred(const LevelArc& a, const LevelArc& b) {
    if (a.ou != b.ou) return a.ou < b.ou;
    return a.ov < b.ov;
}

// Greedy selection + cycle contraction for one level. `reps` maps each
// current-level node to the smallest original node it contains.
LevelResult solve_level(int node_count, const std::vector<LevelArc>& arcs,
                        const std::vector<int>& reps) {
    LevelResult out;
    std::vector<int> best(static_cast<size_t>(node_count), -1);
    std::vector<char> tie_at(static_cast<size_t>(node_count), 0);

    for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
        const LevelArc& a = arcs[static_cast<size_t>(i)];
        int& b = best[static_cast<size_t>(a.v)];
        if (b < 0) {
            b = i;
            continue;
        }
        const LevelArc& cur = arcs[static_cast<size_t>(b)];
        if (a.w > cur.w) {
            b = i;
            tie_at[static_cast<size_t>(a.v)] = 0;
        } else if (a.w == cur.w) {
            tie_at[static_cast<size_t>(a.v)] = 1;
            if (preferred(a, cur)) b = i;
        }
    }

    for (int v = 1; v < node_count; ++v) {
        if (best[static_cast<size_t>(v)] < 0) {
            out.bad_node = reps[static_cast<size_t>(v)];
            return out;  // infeasible
        }
        if (tie_at[static_cast<size_t>(v)]) out.tie_seen = true;
    }

    // Find a cycle in the selected-arc graph, if any.
    std::vector<int> state(static_cast<size_t>(node_count), 0);  // 0 new, 1 on path, 2 done
    state[0] = 2;
    std::vector<int> cycle;
    for (int start = 1; start < node_count && cycle.empty(); ++start) {
        std::vector<int> path;
        int x = start;
        while (x != 0 && state[static_cast<size_t>(x)] == 0) {
            state[static_cast<size_t>(x)] = 1;
            path.push_back(x);
            x = arcs[static_cast<size_t>(best[static_cast<size_t>(x)])].u;
        }
        if (x != 0 && state[static_cast<size_t>(x)] == 1) {
            auto it = std::find(path.begin(), path.end(), x);
            cycle.assign(it, path.end());
        }
        for (int v : path) state[static_cast<size_t>(v)] = 2;
    }

    if (cycle.empty()) {
        out.feasible = true;
        out.chosen = std::move(best);
        return out;
    }

    // Contract the cycle into a single node appended after the survivors.
    std::vector<char> in_cycle(static_cast<size_t>(node_count), 0);
    for (int v : cycle) in_cycle[static_cast<size_t>(v)] = 1;

    std::vector<int> remap(static_cast<size_t>(node_count), -1);
    std::vector<int> next_reps;
    next_reps.push_back(reps[0]);
    remap[0] = 0;
    int next_id = 1;
    for (int v = 1; v < node_count; ++v) {
        if (!in_cycle[static_cast<size_t>(v)]) {
            remap[static_cast<size_t>(v)] = next_id++;
            next_reps.push_back(reps[static_cast<size_t>(v)]);
        }
    }
    const int super = next_id;
    int super_rep = reps[static_cast<size_t>(cycle[0])];
    for (int v : cycle) super_rep = std::min(super_rep, reps[static_cast<size_t>(v)]);
    next_reps.push_back(super_rep);
    for (int v : cycle) remap[static_cast<size_t>(v)] = super;

    std::vector<LevelArc> next_arcs;
    next_arcs.reserve(arcs.size());
    for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
        const LevelArc& a = arcs[static_cast<size_t>(i)];
        int u2 = remap[static_cast<size_t>(a.u)];
        int v2 = remap[static_cast<size_t>(a.v)];
        if (u2 == v2) continue;  // internal to the cycle (or parallel inside it)
        LevelArc b;
        b.u = u2;
        b.v = v2;
        b.ou = a.ou;
        b.ov = a.ov;
        b.prov = i;
        // Entering the cycle at member a.v displaces the cycle arc into a.v.
        b.w = (v2 == super)
                  ? a.w - arcs[static_cast<size_t>(best[static_cast<size_t>(a.v)])].w
                  : a.w;
        next_arcs.push_back(b);
    }

    LevelResult sub = solve_level(next_id + 1, next_arcs, next_reps);
    if (!sub.feasible) {
        out.bad_node = sub.bad_node;
        out.tie_seen = out.tie_seen || sub.tie_seen;
        return out;
    }

    out.feasible = true;
    out.tie_seen = out.tie_seen || sub.tie_seen;
    out.chosen.assign(static_cast<size_t>(node_count), -1);
    for (int v2 = 1; v2 <= next_id; ++v2) {
        const LevelArc& picked = next_arcs[static_cast<size_t>(sub.chosen[static_cast<size_t>(v2)])];
        if (v2 == super) {
            // The entering arc replaces the cycle arc into its target member;
            // every other member keeps its in-cycle selection.
            int member = arcs[static_cast<size_t>(picked.prov)].v;
            out.chosen[static_cast<size_t>(member)] = picked.prov;
            for (int v : cycle)
                if (v != member)
                    out.chosen[static_cast<size_t>(v)] = best[static_cast<size_t>(v)];
        } else {
            out.chosen[static_cast<size_t>(arcs[static_cast<size_t>(picked.prov)].v)] =
                picked.prov;
        }
    }
    return out;
}

struct GreedyRun {
    bool feasible = false;
    int bad_node = -1;
    bool tie_seen = false;
    long long weight = 0;
    HeadAssignment heads;
};

// pins[d] >= 0 restricts dependent d to that single head.
GreedyRun greedy_cle(const WeightedArcGraph& g, const std::vector<int>* pins) {
    const int n = g.word_count();
    std::vector<LevelArc> arcs;
    for (int d = 1; d <= n; ++d) {
        int pin = pins ? (*pins)[static_cast<size_t>(d)] : -1;
        for (const auto& [h, arc] : g.incoming(d)) {
            if (pin >= 0 && h != pin) continue;
            arcs.push_back({h, d, arc.weight, h, d, -1});
        }
    }
    std::vector<int> reps(static_cast<size_t>(n) + 1);
    for (int v = 0; v <= n; ++v) reps[static_cast<size_t>(v)] = v;

    GreedyRun run;
    LevelResult top = solve_level(n + 1, arcs, reps);
    run.tie_seen = top.tie_seen;
    if (!top.feasible) {
        run.bad_node = top.bad_node;
        return run;
    }
    run.feasible = true;
    run.heads.assign(static_cast<size_t>(n) + 1, -1);
    for (int d = 1; d <= n; ++d) {
        const LevelArc& a = arcs[static_cast<size_t>(top.chosen[static_cast<size_t>(d)])];
        run.heads[static_cast<size_t>(d)] = a.u;
        run.weight += a.w;
    }
    return run;
}

}  // namespace

HeadAssignment chu_liu_edmonds(const WeightedArcGraph& g) {
    const int n = g.word_count();
    GreedyRun first = greedy_cle(g, nullptr);
    if (!first.feasible)
        throw DecodeError("no spanning arborescence: node " + std::to_string(first.bad_node) +
                          " cannot be reached");
    if (!first.tie_seen) return first.heads;  // strict selections => unique optimum

    // Weight ties occurred somewhere, so equal-weight optima may exist. Fix
    // heads dependent by dependent, always taking the smallest head that
    // still admits an optimal-weight arborescence: the lexicographically
    // smallest optimal head vector.
    const long long best_weight = first.weight;
    std::vector<int> pins(static_cast<size_t>(n) + 1, -1);
    HeadAssignment incumbent = std::move(first.heads);
    for (int d = 1; d <= n; ++d) {
        for (const auto& [h, arc] : g.incoming(d)) {
            (void)arc;
            if (h >= incumbent[static_cast<size_t>(d)]) break;
            pins[static_cast<size_t>(d)] = h;
            GreedyRun run = greedy_cle(g, &pins);
            if (run.feasible && run.weight == best_weight) {
                incumbent = std::move(run.heads);
                break;
            }
        }
        pins[static_cast<size_t>(d)] = incumbent[static_cast<size_t>(d)];
    }
    return incumbent;
}

HeadAssignment brute_force_arborescence(const WeightedArcGraph& g) {
    const int n = g.word_count();
    if (n > 8)
        throw std::invalid_argument("brute-force arborescence search is limited to 8 words");

    std::vector<std::vector<std::pair<int, long long>>> cands(static_cast<size_t>(n) + 1);
    for (int d = 1; d <= n; ++d) {
        for (const auto& [h, arc] : g.incoming(d))
            cands[static_cast<size_t>(d)].emplace_back(h, arc.weight);
        if (cands[static_cast<size_t>(d)].empty())
            throw DecodeError("no spanning arborescence: node " + std::to_string(d) +
                              " cannot be reached");
    }

    HeadAssignment heads(static_cast<size_t>(n) + 1, -1);
    HeadAssignment best;
    long long best_weight = 0;
    long long weight = 0;

    // Depth-first enumeration in ascending head order per dependent: the
    // first maximum encountered has the lexicographically smallest head
    // vector. Assignments that close a head cycle are pruned immediately.
    auto closes_cycle = [&](int d, int h) {
        int x = h;
        while (x != 0) {
            if (x == d) return true;
            if (x > d || heads[static_cast<size_t>(x)] < 0) return false;  // not yet assigned
            x = heads[static_cast<size_t>(x)];
        }
        return false;
    };

    std::vector<size_t> cursor(static_cast<size_t>(n) + 1, 0);
    int d = 1;
    while (d >= 1) {
        if (d > n) {
            if (best.empty() || weight > best_weight) {
                best = heads;
                best_weight = weight;
            }
            --d;
            if (d >= 1) {
                weight -= cands[static_cast<size_t>(d)][cursor[static_cast<size_t>(d)]].second;
                heads[static_cast<size_t>(d)] = -1;
                ++cursor[static_cast<size_t>(d)];
            }
            continue;
        }
        bool advanced = false;
        while (cursor[static_cast<size_t>(d)] < cands[static_cast<size_t>(d)].size()) {
            auto [h, w] = cands[static_cast<size_t>(d)][cursor[static_cast<size_t>(d)]];
            if (closes_cycle(d, h)) {
                ++cursor[static_cast<size_t>(d)];
                continue;
            }
            heads[static_cast<size_t>(d)] = h;
            weight += w;
            ++d;
            advanced = true;
            break;
        }
        if (!advanced) {
            cursor[static_cast<size_t>(d)] = 0;
            --d;
            if (d >= 1) {
                weight -= cands[static_cast<size_t>(d)][cursor[static_cast<size_t>(d)]].second;
                heads[static_cast<size_t>(d)] = -1;
                ++cursor[static_cast<size_t>(d)];
            }
        }
    }

    if (best.empty())
        throw DecodeError("no spanning arborescence exists for this graph");
    return best;
}

long long assignment_weight(const WeightedArcGraph& g, const HeadAssignment& heads) {
    if (static_cast<int>(heads.size()) != g.word_count() + 1)
        throw InternalError("head assignment size does not match the graph");
    long long total = 0;
    for (int d = 1; d <= g.word_count(); ++d) {
        const WeightedArcGraph::Arc* arc = g.find_arc(heads[static_cast<size_t>(d)], d);
        if (!arc)
            throw InternalError("assignment uses the missing arc " +
                                std::to_string(heads[static_cast<size_t>(d)]) + " -> " +
                                std::to_string(d));
        total += arc->weight;
    }
    return total;
}

}  // namespace treeblend
