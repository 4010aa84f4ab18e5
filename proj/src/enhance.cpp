#include "treeblend/enhance.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace treeblend {

namespace {

bool label_allowed(const std::string& label, const std::vector<std::string>& allowed) {
    return std::find(allowed.begin(), allowed.end(), label) != allowed.end();
}

// Does the conj token heading this arc have a basic advmod dependent of its own?
bool head_has_own_advmod(const Sentence& s, int head_id) {
    for (const Token& t : s.tokens)
        if (t.head == head_id && t.deprel == "advmod") return true;
    return false;
}

int resolve_jobs(int jobs) {
#ifdef _OPENMP
    return jobs > 0 ? jobs : omp_get_max_threads();
#else
    (void)jobs;
    return 1;
#endif
}

Treebank enhance_treebank_impl(const Treebank& tb, const RuleConfig& cfg,
                               const FilterRegistry& reg, int jobs, bool parallel) {
    for (const std::string& name : cfg.enabled_filters)
        if (!reg.contains(name))
            throw std::invalid_argument("unknown filter '" + name + "'");

    Treebank out;
    out.sentences.resize(tb.sentences.size());
    std::vector<std::string> failures(tb.sentences.size());

    auto one = [&](size_t si) {
        try {
            out.sentences[si] = enhance_sentence(tb.sentences[si], cfg, reg);
        } catch (const std::exception& e) {
            failures[si] = e.what();
        }
    };

    if (parallel) {
        const int n_jobs = resolve_jobs(jobs);
        (void)n_jobs;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(n_jobs)
#endif
        for (long long si = 0; si < static_cast<long long>(tb.sentences.size()); ++si)
            one(static_cast<size_t>(si));
    } else {
        for (size_t si = 0; si < tb.sentences.size(); ++si) one(si);
    }

    for (size_t si = 0; si < tb.sentences.size(); ++si)
        if (!failures[si].empty())
            throw ValidationError("sentence " + std::to_string(si) + ": " + failures[si]);
    return out;
}

}  // namespace

FilterRegistry::FilterRegistry() {
    register_filter("labels", [](const Sentence&, const EnhancedArc& arc, const RuleConfig& cfg) {
        return !label_allowed(arc.label, cfg.allowed_labels);
    });
    register_filter("advmod1", [](const Sentence& s, const EnhancedArc& arc, const RuleConfig&) {
        return arc.label == "advmod" && head_has_own_advmod(s, arc.head);
    });
    register_filter("obj", [](const Sentence&, const EnhancedArc& arc, const RuleConfig&) {
        return arc.label == "obj" && arc.dependent < arc.head;
    });
}

void FilterRegistry::register_filter(const std::string& name, FilterPredicate pred) {
    if (name.empty()) throw std::invalid_argument("filter name must not be empty");
    if (!pred) throw std::invalid_argument("filter '" + name + "' has no predicate");
    if (filters_.count(name)) throw std::invalid_argument("duplicate filter name '" + name + "'");
    order_.push_back(name);
    filters_.emplace(name, std::move(pred));
}

bool FilterRegistry::contains(const std::string& name) const { return filters_.count(name) > 0; }

std::vector<std::string> FilterRegistry::names() const { return order_; }

const FilterPredicate& FilterRegistry::at(const std::string& name) const {
    auto it = filters_.find(name);
    if (it == filters_.end()) throw std::invalid_argument("unknown filter '" + name + "'");
    return it->second;
}

const FilterRegistry& FilterRegistry::builtin() {
    static const FilterRegistry instance;
    return instance;
}

std::vector<EnhancedArc> apply_head_rule(const Sentence& s) {
    std::vector<EnhancedArc> out;
    for (const Token& t : s.tokens) {
        if (t.deprel != "conj" || t.head < 1) continue;
        const Token& parent = s.token(t.head);
        EnhancedArc arc;
        arc.dependent = t.id;
        arc.head = parent.head;
        arc.label = parent.head == 0 ? "root" : parent.deprel;
        arc.origin = ArcOrigin::HeadRule;
        out.push_back(std::move(arc));
    }
    return out;
}

std::vector<EnhancedArc> apply_children_rule(const Sentence& s) {
    std::vector<EnhancedArc> out;
    for (const Token& t : s.tokens) {
        if (t.deprel != "conj" || t.head < 1) continue;
        for (const Token& sibling : s.tokens) {
            if (sibling.head != t.head || sibling.id == t.id || sibling.deprel == "conj")
                continue;
            EnhancedArc arc;
            arc.dependent = sibling.id;
            arc.head = t.id;
            arc.label = sibling.deprel;
            arc.origin = ArcOrigin::ChildrenRule;
            out.push_back(std::move(arc));
        }
    }
    return out;
}

std::vector<EnhancedArc> apply_filter(const FilterRegistry& reg, const std::string& name,
                                      const Sentence& s, std::vector<EnhancedArc> arcs,
                                      const RuleConfig& cfg) {
    const FilterPredicate& pred = reg.at(name);
    std::vector<EnhancedArc> out;
    out.reserve(arcs.size());
    for (EnhancedArc& arc : arcs) {
        if (arc.origin == ArcOrigin::ChildrenRule && pred(s, arc, cfg)) continue;
        out.push_back(std::move(arc));
    }
    return out;
}

std::vector<EnhancedArc> collect_enhanced_arcs(const Sentence& s, const RuleConfig& cfg,
                                               const FilterRegistry& reg) {
    std::vector<Violation> violations = validate_tree(s);
    if (!violations.empty()) {
        std::string msg = "sentence '" + s.sent_id + "' is not a valid tree:";
        for (const Violation& v : violations) msg += " [" + v.message + "]";
        throw ValidationError(msg);
    }

    std::vector<EnhancedArc> arcs;
    for (const Token& t : s.tokens)
        arcs.push_back({t.id, t.head, t.deprel, ArcOrigin::Basic});
    if (cfg.enable_head) {
        std::vector<EnhancedArc> extra = apply_head_rule(s);
        arcs.insert(arcs.end(), std::make_move_iterator(extra.begin()),
                    std::make_move_iterator(extra.end()));
    }
    if (cfg.enable_children) {
        std::vector<EnhancedArc> extra = apply_children_rule(s);
        arcs.insert(arcs.end(), std::make_move_iterator(extra.begin()),
                    std::make_move_iterator(extra.end()));
    }
    for (const std::string& name : cfg.enabled_filters)
        arcs = apply_filter(reg, name, s, std::move(arcs), cfg);
    return arcs;
}

Sentence enhance_sentence(const Sentence& s, const RuleConfig& cfg, const FilterRegistry& reg) {
    std::vector<EnhancedArc> arcs = collect_enhanced_arcs(s, cfg, reg);
    Sentence out = s;
    for (Token& t : out.tokens) t.enhanced.clear();
    for (EnhancedArc& arc : arcs)
        out.token(arc.dependent).add_enhanced(arc.head, std::move(arc.label));
    return out;
}

Treebank enhance_treebank(const Treebank& tb, const RuleConfig& cfg, const FilterRegistry& reg,
                          int jobs) {
    return enhance_treebank_impl(tb, cfg, reg, jobs, /*parallel=*/true);
}

namespace serial {
Treebank enhance_treebank(const Treebank& tb, const RuleConfig& cfg, const FilterRegistry& reg) {
    return enhance_treebank_impl(tb, cfg, reg, 1, /*parallel=*/false);
}
}  // namespace serial

}  // namespace treeblend
