#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "treeblend/errors.hpp"

namespace treeblend {

// One arc of the enhanced-dependency graph as stored in the DEPS column.
struct EnhancedEdge {
    int head = 0;
    std::string label;

    friend bool operator==(const EnhancedEdge&, const EnhancedEdge&) = default;
    friend auto operator<=>(const EnhancedEdge&, const EnhancedEdge&) = default;
};

struct Token {
    int id = 0;  // 1-based position within the sentence
    std::string form = "_";
    std::string lemma = "_";
    std::string upos = "_";
    std::string xpos = "_";
    std::vector<std::string> feats;  // "Key=Value" entries, kept sorted
    int head = 0;                    // 0 = artificial root
    std::string deprel = "_";
    std::vector<EnhancedEdge> enhanced;  // sorted by (head, label), no duplicates
    std::string misc = "_";
    // Mirrors the value of the configured MISC key (default "SemLabel"), if any.
    std::optional<std::string> sem_label;

    std::string feats_string() const;  // canonical FEATS column ("_" when empty)
    std::string deps_string() const;   // canonical DEPS column ("_" when empty)
    bool has_enhanced(int head, std::string_view label) const;
    // Inserts keeping (head, label) order; duplicates are ignored.
    void add_enhanced(int head, std::string label);
};

// A multiword-token range line ("3-4 del ..."), preserved verbatim and never
// interpreted beyond its range.
struct MwtLine {
    int start = 0;
    int end = 0;
    std::string raw;  // full line without the trailing newline
};

struct Sentence {
    std::string sent_id;                // from "# sent_id = ..." when present
    std::vector<std::string> comments;  // verbatim, including the leading '#'
    std::vector<Token> tokens;
    std::vector<MwtLine> mwt_lines;

    int size() const { return static_cast<int>(tokens.size()); }
    Token& token(int id);  // 1-based; throws InternalError when out of range
    const Token& token(int id) const;
};

struct Treebank {
    std::vector<Sentence> sentences;

    int size() const { return static_cast<int>(sentences.size()); }
};

struct ParseOptions {
    // Reject sentences that do not form a single rooted tree.
    bool require_tree = false;
    // MISC key mirrored into Token::sem_label.
    std::string sem_label_key = "SemLabel";
};

Treebank parse_conllu(std::string_view text, const ParseOptions& opts = {});
Treebank load_conllu(const std::string& path, const ParseOptions& opts = {});

std::string serialize_sentence(const Sentence& s);
std::string serialize_conllu(const Treebank& tb);
void save_conllu(const Treebank& tb, const std::string& path);

enum class ViolationKind {
    HeadOutOfRange,
    Cycle,
    MultipleRoots,
    RootDeprelOnNonRoot,
    Unreachable,
};

const char* to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    int token_id;  // representative token; message carries the full detail
    std::string message;
};

// Empty result exactly when the head function forms a single arborescence
// rooted at 0 with exactly one head-0 token.
std::vector<Violation> validate_tree(const Sentence& s);
bool is_valid_tree(const Sentence& s);

struct FoldPair {
    Treebank train;    // every sentence outside the held-out fold, in order
    Treebank heldout;  // the fold itself
};

// Splits into k contiguous folds of near-equal size; the first (n mod k)
// folds take one extra sentence. Requires 2 <= k <= number of sentences.
std::vector<FoldPair> split_folds(const Treebank& tb, int k);

}  // namespace treeblend
