#include "treeblend/conllu.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace treeblend {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

bool parse_uint(std::string_view s, int& out) {
    if (s.empty()) return false;
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || value < 0) return false;
    out = value;
    return true;
}

struct LineContext {
    int line_no = 0;
    int sentence_no = 0;  // 1-based ordinal of the sentence being read
    std::string sent_id;

    std::string where() const {
        std::string s = "line " + std::to_string(line_no) + " (sentence " +
                        std::to_string(sentence_no);
        if (!sent_id.empty()) s += ", sent_id " + sent_id;
        s += ")";
        return s;
    }
};

[[noreturn]] void fail(const LineContext& ctx, const std::string& what) {
    throw ParseError(ctx.where() + ": " + what);
}

constexpr std::string_view kSentIdPrefix = "# sent_id = ";

void finish_sentence(Sentence& s, const LineContext& ctx, const ParseOptions& opts) {
    const int n = s.size();
    if (n == 0) fail(ctx, "sentence block has no token lines");
    for (const Token& t : s.tokens) {
        if (t.head > n)
            fail(ctx, "token " + std::to_string(t.id) + " has head " + std::to_string(t.head) +
                          " beyond the last token (" + std::to_string(n) + ")");
        for (const EnhancedEdge& e : t.enhanced) {
            if (e.head > n)
                fail(ctx, "token " + std::to_string(t.id) + " has enhanced head " +
                              std::to_string(e.head) + " beyond the last token");
        }
    }
    for (const MwtLine& m : s.mwt_lines) {
        if (m.start < 1 || m.end > n)
            fail(ctx, "multiword token range " + std::to_string(m.start) + "-" +
                          std::to_string(m.end) + " is out of bounds");
    }
    if (opts.require_tree) {
        std::vector<Violation> violations = validate_tree(s);
        if (!violations.empty()) {
            std::string msg = ctx.where() + ": sentence is not a valid tree:";
            for (const Violation& v : violations) msg += " [" + v.message + "]";
            throw ValidationError(msg);
        }
    }
}

Token parse_token_line(std::string_view line, const std::vector<std::string_view>& cols,
                       int expected_id, const LineContext& ctx, const ParseOptions& opts) {
    (void)line;
    Token t;
    if (!parse_uint(cols[0], t.id)) fail(ctx, "token id is not a plain integer");
    if (t.id != expected_id)
        fail(ctx, "token id " + std::string(cols[0]) + " out of sequence (expected " +
                      std::to_string(expected_id) + ")");
    t.form = std::string(cols[1]);
    t.lemma = std::string(cols[2]);
    t.upos = std::string(cols[3]);
    t.xpos = std::string(cols[4]);
    if (cols[5] != "_") {
        for (std::string_view item : split(cols[5], '|')) {
            if (item.empty()) fail(ctx, "empty FEATS entry");
            t.feats.emplace_back(item);
        }
        std::sort(t.feats.begin(), t.feats.end());
    }
    if (!parse_uint(cols[6], t.head)) fail(ctx, "HEAD is not a non-negative integer");
    if (t.head == t.id) fail(ctx, "token " + std::to_string(t.id) + " is its own head");
    t.deprel = std::string(cols[7]);
    if (cols[8] != "_") {
        for (std::string_view item : split(cols[8], '|')) {
            size_t colon = item.find(':');
            if (colon == std::string_view::npos || colon == 0 || colon + 1 == item.size())
                fail(ctx, "malformed DEPS entry '" + std::string(item) + "'");
            EnhancedEdge e;
            if (!parse_uint(item.substr(0, colon), e.head))
                fail(ctx, "DEPS head in '" + std::string(item) + "' is not an integer");
            if (e.head == t.id)
                fail(ctx, "token " + std::to_string(t.id) + " has an enhanced self-loop");
            e.label = std::string(item.substr(colon + 1));
            t.enhanced.push_back(std::move(e));
        }
        std::sort(t.enhanced.begin(), t.enhanced.end());
        auto dup = std::adjacent_find(t.enhanced.begin(), t.enhanced.end());
        if (dup != t.enhanced.end())
            fail(ctx, "duplicate DEPS entry '" + std::to_string(dup->head) + ":" + dup->label + "'");
    }
    t.misc = std::string(cols[9]);
    if (t.misc != "_" && !opts.sem_label_key.empty()) {
        const std::string prefix = opts.sem_label_key + "=";
        for (std::string_view item : split(t.misc, '|')) {
            if (item.substr(0, prefix.size()) == prefix)
                t.sem_label = std::string(item.substr(prefix.size()));
        }
    }
    return t;
}

}  // namespace

std::string Token::feats_string() const {
    if (feats.empty()) return "_";
    std::string out;
    for (size_t i = 0; i < feats.size(); ++i) {
        if (i) out += '|';
        out += feats[i];
    }
    return out;
}

std::string Token::deps_string() const {
    if (enhanced.empty()) return "_";
    std::string out;
    for (size_t i = 0; i < enhanced.size(); ++i) {
        if (i) out += '|';
        out += std::to_string(enhanced[i].head);
        out += ':';
        out += enhanced[i].label;
    }
    return out;
}

bool Token::has_enhanced(int h, std::string_view label) const {
    for (const EnhancedEdge& e : enhanced)
        if (e.head == h && e.label == label) return true;
    return false;
}

void Token::add_enhanced(int h, std::string label) {
    if (h == id) throw InternalError("enhanced self-loop on token " + std::to_string(id));
    EnhancedEdge e{h, std::move(label)};
    auto pos = std::lower_bound(enhanced.begin(), enhanced.end(), e);
    if (pos != enhanced.end() && *pos == e) return;
    enhanced.insert(pos, std::move(e));
}

Token& Sentence::token(int id) {
    if (id < 1 || id > size())
        throw InternalError("token id " + std::to_string(id) + " out of range 1.." +
                            std::to_string(size()));
    return tokens[static_cast<size_t>(id) - 1];
}

const Token& Sentence::token(int id) const {
    return const_cast<Sentence*>(this)->token(id);
}

Treebank parse_conllu(std::string_view text, const ParseOptions& opts) {
    Treebank tb;
    Sentence current;
    bool in_sentence = false;
    bool tokens_started = false;
    LineContext ctx;
    ctx.sentence_no = 1;

    size_t offset = 0;
    while (offset <= text.size()) {
        if (offset == text.size()) break;
        size_t eol = text.find('\n', offset);
        std::string_view line = (eol == std::string_view::npos)
                                    ? text.substr(offset)
                                    : text.substr(offset, eol - offset);
        offset = (eol == std::string_view::npos) ? text.size() : eol + 1;
        ++ctx.line_no;

        if (line.find('\r') != std::string_view::npos)
            fail(ctx, "carriage return found; only LF line endings are supported");

        if (line.empty()) {
            if (in_sentence) {
                finish_sentence(current, ctx, opts);
                tb.sentences.push_back(std::move(current));
                current = Sentence{};
                in_sentence = false;
                tokens_started = false;
                ++ctx.sentence_no;
                ctx.sent_id.clear();
            }
            continue;
        }

        in_sentence = true;
        if (line[0] == '#') {
            if (tokens_started) fail(ctx, "comment line after the first token line");
            if (line.substr(0, kSentIdPrefix.size()) == kSentIdPrefix) {
                current.sent_id = std::string(line.substr(kSentIdPrefix.size()));
                ctx.sent_id = current.sent_id;
            }
            current.comments.emplace_back(line);
            continue;
        }

        std::vector<std::string_view> cols = split(line, '\t');
        if (cols.size() != 10)
            fail(ctx, "expected 10 tab-separated columns, found " + std::to_string(cols.size()));

        if (cols[0].find('.') != std::string_view::npos)
            fail(ctx, "empty-node id '" + std::string(cols[0]) + "' is not supported");

        size_t dash = cols[0].find('-');
        if (dash != std::string_view::npos) {
            MwtLine m;
            if (!parse_uint(cols[0].substr(0, dash), m.start) ||
                !parse_uint(cols[0].substr(dash + 1), m.end) || m.start > m.end)
                fail(ctx, "malformed multiword token range '" + std::string(cols[0]) + "'");
            if (m.start != current.size() + 1)
                fail(ctx, "multiword token range '" + std::string(cols[0]) +
                              "' does not start at the next token");
            m.raw = std::string(line);
            current.mwt_lines.push_back(std::move(m));
            tokens_started = true;
            continue;
        }

        current.tokens.push_back(
            parse_token_line(line, cols, current.size() + 1, ctx, opts));
        tokens_started = true;
    }

    if (in_sentence) {
        finish_sentence(current, ctx, opts);
        tb.sentences.push_back(std::move(current));
    }
    return tb;
}

Treebank load_conllu(const std::string& path, const ParseOptions& opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_conllu(buf.str(), opts);
    } catch (const Error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string serialize_sentence(const Sentence& s) {
    const int n = s.size();
    for (int i = 0; i < n; ++i) {
        if (s.tokens[static_cast<size_t>(i)].id != i + 1)
            throw InternalError("token ids are not 1..n in sentence '" + s.sent_id + "'");
        if (s.tokens[static_cast<size_t>(i)].head < 0 ||
            s.tokens[static_cast<size_t>(i)].head > n)
            throw InternalError("head out of range in sentence '" + s.sent_id + "'");
    }
    std::string out;
    for (const std::string& c : s.comments) {
        out += c;
        out += '\n';
    }
    std::vector<const MwtLine*> mwt(static_cast<size_t>(n) + 1, nullptr);
    for (const MwtLine& m : s.mwt_lines) {
        if (m.start < 1 || m.start > n)
            throw InternalError("multiword token range out of bounds in sentence '" + s.sent_id +
                                "'");
        mwt[static_cast<size_t>(m.start)] = &m;
    }
    for (const Token& t : s.tokens) {
        if (const MwtLine* m = mwt[static_cast<size_t>(t.id)]) {
            out += m->raw;
            out += '\n';
        }
        out += std::to_string(t.id);
        out += '\t';
        out += t.form;
        out += '\t';
        out += t.lemma;
        out += '\t';
        out += t.upos;
        out += '\t';
        out += t.xpos;
        out += '\t';
        out += t.feats_string();
        out += '\t';
        out += std::to_string(t.head);
        out += '\t';
        out += t.deprel;
        out += '\t';
        out += t.deps_string();
        out += '\t';
        out += t.misc;
        out += '\n';
    }
    return out;
}

std::string serialize_conllu(const Treebank& tb) {
    std::string out;
    for (const Sentence& s : tb.sentences) {
        out += serialize_sentence(s);
        out += '\n';  // every sentence block ends with exactly one blank line
    }
    return out;
}

void save_conllu(const Treebank& tb, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << serialize_conllu(tb);
    if (!out) throw Error("failed to write '" + path + "'");
}

const char* to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::HeadOutOfRange: return "head-out-of-range";
        case ViolationKind::Cycle: return "cycle";
        case ViolationKind::MultipleRoots: return "multiple-roots";
        case ViolationKind::RootDeprelOnNonRoot: return "root-deprel-on-non-root";
        case ViolationKind::Unreachable: return "unreachable";
    }
    return "unknown";
}

std::vector<Violation> validate_tree(const Sentence& s) {
    std::vector<Violation> out;
    const int n = s.size();

    auto in_range = [n](int head) { return head >= 0 && head <= n; };

    for (const Token& t : s.tokens) {
        if (!in_range(t.head))
            out.push_back({ViolationKind::HeadOutOfRange, t.id,
                           "token " + std::to_string(t.id) + " has head " +
                               std::to_string(t.head) + " outside 0.." + std::to_string(n)});
    }

    std::vector<int> roots;
    for (const Token& t : s.tokens)
        if (t.head == 0) roots.push_back(t.id);
    if (roots.size() > 1) {
        std::string ids;
        for (size_t i = 0; i < roots.size(); ++i)
            ids += (i ? ", " : "") + std::to_string(roots[i]);
        out.push_back({ViolationKind::MultipleRoots, roots[1],
                       std::to_string(roots.size()) + " tokens attach to the root: " + ids});
    }

    for (const Token& t : s.tokens) {
        if (t.deprel == "root" && t.head != 0)
            out.push_back({ViolationKind::RootDeprelOnNonRoot, t.id,
                           "token " + std::to_string(t.id) + " has deprel 'root' but head " +
                               std::to_string(t.head)});
    }

    // Cycle scan over the head function. Heads outside 1..n end a walk.
    std::vector<int> state(static_cast<size_t>(n) + 1, 0);  // 0 new, 1 on path, 2 done
    for (int start = 1; start <= n; ++start) {
        if (state[static_cast<size_t>(start)] != 0) continue;
        std::vector<int> path;
        int x = start;
        while (x >= 1 && x <= n && state[static_cast<size_t>(x)] == 0) {
            state[static_cast<size_t>(x)] = 1;
            path.push_back(x);
            x = s.token(x).head;
        }
        if (x >= 1 && x <= n && state[static_cast<size_t>(x)] == 1) {
            std::vector<int> cycle;
            for (auto it = std::find(path.begin(), path.end(), x); it != path.end(); ++it)
                cycle.push_back(*it);
            int rep = *std::min_element(cycle.begin(), cycle.end());
            std::string ids;
            for (size_t i = 0; i < cycle.size(); ++i)
                ids += (i ? " -> " : "") + std::to_string(cycle[i]);
            ids += " -> " + std::to_string(cycle[0]);
            out.push_back({ViolationKind::Cycle, rep, "head cycle " + ids});
        }
        for (int v : path) state[static_cast<size_t>(v)] = 2;
    }

    // Reachability from the artificial root along head arcs.
    std::vector<std::vector<int>> children(static_cast<size_t>(n) + 1);
    for (const Token& t : s.tokens)
        if (in_range(t.head)) children[static_cast<size_t>(t.head)].push_back(t.id);
    std::vector<bool> reached(static_cast<size_t>(n) + 1, false);
    std::vector<int> stack{0};
    reached[0] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int c : children[static_cast<size_t>(v)]) {
            if (!reached[static_cast<size_t>(c)]) {
                reached[static_cast<size_t>(c)] = true;
                stack.push_back(c);
            }
        }
    }
    std::vector<int> unreachable;
    for (int v = 1; v <= n; ++v)
        if (!reached[static_cast<size_t>(v)]) unreachable.push_back(v);
    if (!unreachable.empty()) {
        std::string ids;
        for (size_t i = 0; i < unreachable.size(); ++i)
            ids += (i ? ", " : "") + std::to_string(unreachable[i]);
        out.push_back({ViolationKind::Unreachable, unreachable[0],
                       "tokens not reachable from the root: " + ids});
    }
    return out;
}

bool is_valid_tree(const Sentence& s) { return validate_tree(s).empty(); }

std::vector<FoldPair> split_folds(const Treebank& tb, int k) {
    const int n = tb.size();
    if (k < 2 || k > n)
        throw ValidationError("fold count " + std::to_string(k) + " outside 2.." +
                              std::to_string(n));
    std::vector<std::pair<int, int>> bounds;  // [begin, end) per fold
    int base = n / k;
    int extra = n % k;
    int begin = 0;
    for (int i = 0; i < k; ++i) {
        int size = base + (i < extra ? 1 : 0);
        bounds.emplace_back(begin, begin + size);
        begin += size;
    }
    std::vector<FoldPair> out;
    out.reserve(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        FoldPair pair;
        for (int si = 0; si < n; ++si) {
            const Sentence& s = tb.sentences[static_cast<size_t>(si)];
            if (si >= bounds[static_cast<size_t>(i)].first &&
                si < bounds[static_cast<size_t>(i)].second)
                pair.heldout.sentences.push_back(s);
            else
                pair.train.sentences.push_back(s);
        }
        out.push_back(std::move(pair));
    }
    return out;
}

}  // namespace treeblend
