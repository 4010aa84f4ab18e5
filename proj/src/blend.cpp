#include "treeblend/blend.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace treeblend {

namespace {

std::vector<const Sentence*> as_pointers(const std::vector<Sentence>& v) {
    std::vector<const Sentence*> out;
    out.reserve(v.size());
    for (const Sentence& s : v) out.push_back(&s);
    return out;
}

std::vector<const Treebank*> as_pointers(const std::vector<Treebank>& v) {
    std::vector<const Treebank*> out;
    out.reserve(v.size());
    for (const Treebank& t : v) out.push_back(&t);
    return out;
}

void check_sentence_alignment(const std::vector<const Sentence*>& predictions) {
    const Sentence& first = *predictions[0];
    const int n = first.size();
    for (size_t i = 1; i < predictions.size(); ++i) {
        const Sentence& p = *predictions[i];
        if (p.size() != n)
            throw AlignmentError("prediction " + std::to_string(i) + " has " +
                                 std::to_string(p.size()) + " tokens, expected " +
                                 std::to_string(n));
        for (int t = 1; t <= n; ++t) {
            if (p.token(t).form != first.token(t).form)
                throw AlignmentError("prediction " + std::to_string(i) + " token " +
                                     std::to_string(t) + " form '" + p.token(t).form +
                                     "' differs from '" + first.token(t).form + "'");
        }
    }
}

int resolve_jobs(int jobs) {
#ifdef _OPENMP
    return jobs > 0 ? jobs : omp_get_max_threads();
#else
    (void)jobs;
    return 1;
#endif
}

Treebank blend_treebank_impl(const std::vector<const Treebank*>& inputs,
                             const BlendOptions& opts, bool parallel) {
    if (inputs.empty()) throw std::invalid_argument("blend needs at least one input");
    for (const Treebank* tb : inputs)
        if (!tb) throw std::invalid_argument("null input treebank");
    const int n_sentences = inputs[0]->size();
    for (size_t i = 1; i < inputs.size(); ++i) {
        if (inputs[i]->size() != n_sentences)
            throw AlignmentError("input " + std::to_string(i) + " has " +
                                 std::to_string(inputs[i]->size()) + " sentences, expected " +
                                 std::to_string(n_sentences));
    }

    // Validate alignment up front so the parallel loop below cannot throw for
    // misaligned data; remaining per-sentence failures are collected and the
    // one with the lowest sentence index is reported.
    for (int si = 0; si < n_sentences; ++si) {
        std::vector<const Sentence*> preds;
        preds.reserve(inputs.size());
        for (const Treebank* tb : inputs)
            preds.push_back(&tb->sentences[static_cast<size_t>(si)]);
        try {
            check_sentence_alignment(preds);
        } catch (const AlignmentError& e) {
            throw AlignmentError("sentence " + std::to_string(si) + ": " + e.what());
        }
    }

    Treebank out;
    out.sentences.resize(static_cast<size_t>(n_sentences));
    std::vector<std::string> failures(static_cast<size_t>(n_sentences));

    if (parallel) {
        const int jobs = resolve_jobs(opts.jobs);
        (void)jobs;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
#endif
        for (int si = 0; si < n_sentences; ++si) {
            std::vector<const Sentence*> preds;
            preds.reserve(inputs.size());
            for (const Treebank* tb : inputs)
                preds.push_back(&tb->sentences[static_cast<size_t>(si)]);
            try {
                out.sentences[static_cast<size_t>(si)] = blend_sentence(preds, opts);
            } catch (const std::exception& e) {
                failures[static_cast<size_t>(si)] = e.what();
            }
        }
    } else {
        for (int si = 0; si < n_sentences; ++si) {
            std::vector<const Sentence*> preds;
            preds.reserve(inputs.size());
            for (const Treebank* tb : inputs)
                preds.push_back(&tb->sentences[static_cast<size_t>(si)]);
            try {
                out.sentences[static_cast<size_t>(si)] = blend_sentence(preds, opts);
            } catch (const std::exception& e) {
                failures[static_cast<size_t>(si)] = e.what();
            }
        }
    }

    for (int si = 0; si < n_sentences; ++si) {
        if (!failures[static_cast<size_t>(si)].empty())
            throw Error("sentence " + std::to_string(si) + ": " +
                        failures[static_cast<size_t>(si)]);
    }
    return out;
}

}  // namespace

WeightedArcGraph build_vote_graph(const std::vector<const Sentence*>& predictions) {
    if (predictions.empty())
        throw std::invalid_argument("vote graph needs at least one prediction");
    check_sentence_alignment(predictions);
    const int n = predictions[0]->size();
    if (n == 0) throw std::invalid_argument("cannot blend an empty sentence");
    WeightedArcGraph g(n);
    for (size_t i = 0; i < predictions.size(); ++i) {
        const Sentence& p = *predictions[i];
        for (const Token& t : p.tokens) {
            if (t.head < 0 || t.head > n)
                throw ValidationError("prediction " + std::to_string(i) + " token " +
                                      std::to_string(t.id) + " has head " +
                                      std::to_string(t.head) + " outside 0.." +
                                      std::to_string(n));
            g.add_vote(t.head, t.id, t.deprel);
        }
    }
    return g;
}

WeightedArcGraph build_vote_graph(const std::vector<Sentence>& predictions) {
    return build_vote_graph(as_pointers(predictions));
}

std::vector<std::string> vote_labels(const WeightedArcGraph& g, const HeadAssignment& heads) {
    if (static_cast<int>(heads.size()) != g.word_count() + 1)
        throw InternalError("head assignment size does not match the graph");
    std::vector<std::string> labels(static_cast<size_t>(g.word_count()) + 1);
    for (int d = 1; d <= g.word_count(); ++d) {
        const WeightedArcGraph::Arc* arc = g.find_arc(heads[static_cast<size_t>(d)], d);
        if (!arc || arc->labels.empty())
            throw InternalError("no labels recorded for arc " +
                                std::to_string(heads[static_cast<size_t>(d)]) + " -> " +
                                std::to_string(d));
        // Ascending label order: the first maximum is the lexicographically
        // smallest among the most frequent.
        const std::string* best = nullptr;
        int best_count = 0;
        for (const auto& [label, count] : arc->labels) {
            if (count > best_count) {
                best = &label;
                best_count = count;
            }
        }
        labels[static_cast<size_t>(d)] = *best;
    }
    return labels;
}

Sentence fix_roots(Sentence s, const std::string& fallback) {
    std::vector<int> roots;
    for (const Token& t : s.tokens)
        if (t.head == 0) roots.push_back(t.id);
    if (roots.empty())
        throw ValidationError("sentence '" + s.sent_id + "' has no token attached to the root");
    for (size_t i = 1; i < roots.size(); ++i) {
        Token& t = s.token(roots[i]);
        t.head = roots[i - 1];
        if (t.deprel == "root") t.deprel = fallback;
    }
    return s;
}

Sentence blend_sentence(const std::vector<const Sentence*>& predictions,
                        const BlendOptions& opts) {
    if (predictions.empty())
        throw std::invalid_argument("blend needs at least one prediction");
    if (opts.donor < 0 || opts.donor >= static_cast<int>(predictions.size()))
        throw std::invalid_argument("donor index " + std::to_string(opts.donor) +
                                    " outside 0.." + std::to_string(predictions.size() - 1));
    WeightedArcGraph g = build_vote_graph(predictions);
    HeadAssignment heads = chu_liu_edmonds(g);
    std::vector<std::string> labels = vote_labels(g, heads);

    Sentence out = *predictions[static_cast<size_t>(opts.donor)];
    for (int d = 1; d <= out.size(); ++d) {
        Token& t = out.token(d);
        t.head = heads[static_cast<size_t>(d)];
        t.deprel = labels[static_cast<size_t>(d)];
        t.enhanced.clear();
    }
    return fix_roots(std::move(out), opts.root_fallback);
}

Sentence blend_sentence(const std::vector<Sentence>& predictions, const BlendOptions& opts) {
    return blend_sentence(as_pointers(predictions), opts);
}

Treebank blend_treebank(const std::vector<const Treebank*>& inputs, const BlendOptions& opts) {
    return blend_treebank_impl(inputs, opts, /*parallel=*/true);
}

Treebank blend_treebank(const std::vector<Treebank>& inputs, const BlendOptions& opts) {
    return blend_treebank_impl(as_pointers(inputs), opts, /*parallel=*/true);
}

namespace serial {

Treebank blend_treebank(const std::vector<const Treebank*>& inputs, const BlendOptions& opts) {
    return blend_treebank_impl(inputs, opts, /*parallel=*/false);
}

Treebank blend_treebank(const std::vector<Treebank>& inputs, const BlendOptions& opts) {
    return blend_treebank_impl(as_pointers(inputs), opts, /*parallel=*/false);
}

}  // namespace serial

}  // namespace treeblend
