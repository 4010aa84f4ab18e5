#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "treeblend/conllu.hpp"

namespace treeblend {

enum class ArcOrigin { Basic, HeadRule, ChildrenRule };

struct EnhancedArc {
    int dependent = 0;
    int head = 0;
    std::string label;
    ArcOrigin origin = ArcOrigin::Basic;
};

struct RuleConfig {
    // Every token whose deprel is "conj" also receives its grandparent as an
    // enhanced head, labeled with its parent's deprel ("root" when the parent
    // is the root token).
    bool enable_head = true;
    // Every non-"conj" sibling of a "conj" token also becomes its enhanced
    // dependent, keeping the sibling's deprel.
    bool enable_children = true;
    // Filters applied to ChildrenRule arcs, in this order. Names must be
    // registered (built-ins: "labels", "advmod1", "obj").
    std::vector<std::string> enabled_filters{"labels", "advmod1", "obj"};
    // Labels the "labels" filter lets through.
    std::vector<std::string> allowed_labels{"case", "nsubj",  "mark", "obl",
                                            "advmod", "amod", "cop",  "obj",
                                            "discourse:comment", "advcl"};
};

// Returns true when the arc should be removed. Filters only ever see
// ChildrenRule arcs; basic and HeadRule arcs are exempt.
using FilterPredicate =
    std::function<bool(const Sentence&, const EnhancedArc&, const RuleConfig&)>;

class FilterRegistry {
public:
    FilterRegistry();  // starts with the built-in filters registered

    // Makes the filter usable from RuleConfig::enabled_filters. Throws
    // std::invalid_argument on a duplicate name.
    void register_filter(const std::string& name, FilterPredicate pred);
    bool contains(const std::string& name) const;
    std::vector<std::string> names() const;  // registration order
    const FilterPredicate& at(const std::string& name) const;

    // Shared default instance holding only the built-ins.
    static const FilterRegistry& builtin();

private:
    std::vector<std::string> order_;
    std::map<std::string, FilterPredicate> filters_;
};

// The two rules, applied to the basic tree of s. Both require a valid tree;
// enhance_sentence checks that precondition.
std::vector<EnhancedArc> apply_head_rule(const Sentence& s);
std::vector<EnhancedArc> apply_children_rule(const Sentence& s);

// Removes the ChildrenRule arcs the named filter rejects; other arcs pass
// through untouched. The result is always a subset of `arcs`.
std::vector<EnhancedArc> apply_filter(const FilterRegistry& reg, const std::string& name,
                                      const Sentence& s, std::vector<EnhancedArc> arcs,
                                      const RuleConfig& cfg);

// Basic arcs of every token plus the enabled rules' arcs, after filtering.
std::vector<EnhancedArc> collect_enhanced_arcs(
    const Sentence& s, const RuleConfig& cfg,
    const FilterRegistry& reg = FilterRegistry::builtin());

// Rewrites DEPS from scratch: the basic arc of every token, HeadRule arcs,
// and surviving ChildrenRule arcs, duplicates collapsed. Idempotent. Throws
// ValidationError when s is not a valid tree.
Sentence enhance_sentence(const Sentence& s, const RuleConfig& cfg,
                          const FilterRegistry& reg = FilterRegistry::builtin());

Treebank enhance_treebank(const Treebank& tb, const RuleConfig& cfg,
                          const FilterRegistry& reg = FilterRegistry::builtin(), int jobs = 0);

namespace serial {
Treebank enhance_treebank(const Treebank& tb, const RuleConfig& cfg,
                          const FilterRegistry& reg = FilterRegistry::builtin());
}  // namespace serial

}  // namespace treeblend
