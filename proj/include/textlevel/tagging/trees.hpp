#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "textlevel/util/error.hpp"
#include "textlevel/util/strings.hpp"

namespace textlevel {

// Labeled ordered tree stored as a node array. Leaves carry a word and no
// children; every other node has at least one child.
struct ParseTree {
    struct Node {
        std::string label;
        std::string word;  // leaves only
        std::vector<int> children;
        int parent = -1;
        std::size_t begin = 0, end = 0;  // leaf span, end exclusive
        bool leaf() const { return children.empty(); }
    };

    std::vector<Node> nodes;
    int root = -1;

    std::vector<std::string> leaves() const {
        std::vector<std::string> out;
        collect(root, [&](const Node& n) { out.push_back(n.word); });
        return out;
    }

    // Preterminal labels in leaf order.
    std::vector<std::string> tags() const {
        std::vector<std::string> out;
        collect(root, [&](const Node& n) { out.push_back(n.parent >= 0 ? nodes[n.parent].label : ""); });
        return out;
    }

    bool preterminal(int id) const {
        const auto& n = nodes[id];
        return n.children.size() == 1 && nodes[n.children[0]].leaf();
    }

    std::size_t leaf_count() const { return root < 0 ? 0 : nodes[root].end - nodes[root].begin; }

private:
    template <typename F>
    void collect(int id, F&& f) const {
        if (id < 0) return;
        const auto& n = nodes[id];
        if (n.leaf()) {
            f(n);
            return;
        }
        for (int c : n.children) collect(c, f);
    }
};

namespace detail {

inline std::string strip_function_tags(const std::string& label) {
    if (label.empty() || label.front() == '-') return label;  // -LRB-, -NONE-
    std::string out = label;
    const auto cut = out.find_first_of("-=");
    if (cut != std::string::npos && cut > 0) out.resize(cut);
    return out;
}

inline std::string unescape_leaf(const std::string& w) {
    static const std::map<std::string, std::string> esc = {
        {"-LRB-", "("}, {"-RRB-", ")"}, {"-LCB-", "{"}, {"-RCB-", "}"}, {"-LSB-", "["}, {"-RSB-", "]"},
        {"``", "\""},   {"''", "\""}};
    auto it = esc.find(w);
    return it == esc.end() ? w : it->second;
}

class TreeParser {
public:
    explicit TreeParser(std::string_view src) : s_(src) {}

    bool at_end() {
        skip_ws();
        return pos_ >= s_.size();
    }

    ParseTree parse_one() {
        ParseTree t;
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != '(') throw ParseError(pos_, "expected '('");
        t.root = parse_node(t, -1);
        prune_empty(t);
        std::size_t leaf = 0;
        assign_spans(t, t.root, leaf);
        if (leaf == 0) throw ParseError(pos_, "tree has no leaves");
        return t;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && str::is_space(s_[pos_])) ++pos_;
    }

    std::string atom() {
        const std::size_t b = pos_;
        while (pos_ < s_.size() && !str::is_space(s_[pos_]) && s_[pos_] != '(' && s_[pos_] != ')') ++pos_;
        return std::string(s_.substr(b, pos_ - b));
    }

    int parse_node(ParseTree& t, int parent) {
        const std::size_t open = pos_;
        ++pos_;  // '('
        skip_ws();
        std::string label;
        if (pos_ < s_.size() && s_[pos_] != '(' && s_[pos_] != ')') label = atom();
        const int id = static_cast<int>(t.nodes.size());
        t.nodes.push_back({});
        t.nodes[id].label = label.empty() ? std::string("ROOT") : strip_function_tags(label);
        t.nodes[id].parent = parent;
        while (true) {
            skip_ws();
            if (pos_ >= s_.size()) throw ParseError(open, "unbalanced parentheses: node is never closed");
            if (s_[pos_] == ')') {
                ++pos_;
                break;
            }
            if (s_[pos_] == '(') {
                const int c = parse_node(t, id);
                t.nodes[id].children.push_back(c);
            } else {
                const std::size_t at = pos_;
                std::string w = atom();
                if (!t.nodes[id].children.empty() && !t.nodes[t.nodes[id].children.back()].leaf())
                    throw ParseError(at, "word mixed with subtrees");
                const int c = static_cast<int>(t.nodes.size());
                t.nodes.push_back({});
                t.nodes[c].label = w;
                t.nodes[c].word = unescape_leaf(w);
                t.nodes[c].parent = id;
                t.nodes[id].children.push_back(c);
            }
        }
        if (t.nodes[id].children.empty()) throw ParseError(open, "node '" + label + "' has no children");
        return id;
    }

    // Drops empty elements (-NONE-) and any ancestors left without children.
    static void prune_empty(ParseTree& t) {
        std::vector<bool> dead(t.nodes.size(), false);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < t.nodes.size(); ++i) {
                if (dead[i]) continue;
                auto& n = t.nodes[i];
                if (n.label == "-NONE-") {
                    dead[i] = changed = true;
                    continue;
                }
                if (!n.children.empty()) {
                    auto& ch = n.children;
                    const auto before = ch.size();
                    ch.erase(std::remove_if(ch.begin(), ch.end(), [&](int c) { return dead[c]; }), ch.end());
                    if (ch.empty() && before > 0) dead[i] = changed = true;
                }
            }
        }
        if (t.root >= 0 && dead[t.root]) t.root = -1;
    }

    static void assign_spans(ParseTree& t, int id, std::size_t& leaf) {
        if (id < 0) return;
        auto& n = t.nodes[id];
        n.begin = leaf;
        if (n.leaf()) {
            ++leaf;
        } else {
            for (int c : n.children) assign_spans(t, c, leaf);
        }
        t.nodes[id].end = leaf;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline std::vector<ParseTree> parse_bracketed_trees(std::string_view text) {
    std::vector<ParseTree> out;
    detail::TreeParser p(text);
    while (!p.at_end()) out.push_back(p.parse_one());
    return out;
}

inline std::vector<ParseTree> read_bracketed_trees(const std::string& path) {
    const std::string text = str::read_file(path);
    try {
        return parse_bracketed_trees(text);
    } catch (const ParseError& e) {
        throw ParseError(e.offset(), path + ": " + std::string(e.what()));
    }
}

// Leaf-by-leaf comparison of trees with token sequences (one tree per sentence).
inline void align_trees(const std::vector<ParseTree>& trees, const std::vector<std::vector<std::string>>& sentences) {
    const std::size_t n = std::min(trees.size(), sentences.size());
    for (std::size_t s = 0; s < n; ++s) {
        const auto leaves = trees[s].leaves();
        const auto& toks = sentences[s];
        if (leaves.size() != toks.size())
            throw AlignmentError(s, "tree has " + std::to_string(leaves.size()) + " leaves but sentence has " +
                                        std::to_string(toks.size()) + " tokens");
        for (std::size_t i = 0; i < toks.size(); ++i) {
            if (leaves[i] != detail::unescape_leaf(toks[i]))
                throw AlignmentError(s, "leaf " + std::to_string(i) + " '" + leaves[i] + "' does not match token '" +
                                            toks[i] + "'");
        }
    }
    if (trees.size() != sentences.size())
        throw AlignmentError(n, std::to_string(trees.size()) + " trees for " + std::to_string(sentences.size()) +
                                    " sentences");
}

inline bool is_clause_label(const std::string& l) {
    return l == "S" || l == "SINV" || l == "SQ" || l == "SBARQ";
}

struct TreeStats {
    int height = 0;
    std::map<std::string, int> phrase_counts;          // NP, VP, ...
    std::map<std::string, std::vector<int>> phrase_lengths;
    int xp_total = 0;
    std::vector<int> xp_lengths;

    struct TUnit {
        int length = 0;
        int np = 0, vp = 0, pp = 0;
        bool complex = false;
    };
    std::vector<TUnit> tunits;
    int complex_tunits = 0;

    std::vector<int> subordinate_lengths;  // SBAR
    std::vector<int> sinv_lengths;
    std::vector<int> sq_lengths;  // SQ outside SBARQ
    std::vector<int> sbarq_lengths;
    std::vector<int> coord_s_lengths;
    std::vector<int> coord_phrase_lengths;
};

namespace detail {

inline int tree_height(const ParseTree& t, int id) {
    const auto& n = t.nodes[id];
    if (n.leaf()) return 0;
    int h = 0;
    for (int c : n.children) h = std::max(h, tree_height(t, c));
    return h + 1;
}

inline bool is_phrase_node(const ParseTree& t, int id) {
    const auto& n = t.nodes[id];
    return !n.leaf() && !t.preterminal(id) && id != t.root && !is_clause_label(n.label) && n.label != "SBAR" &&
           n.label != "ROOT" && n.label != "TOP";
}

inline bool coordinated(const ParseTree& t, int id, bool clauses) {
    const auto& n = t.nodes[id];
    bool cc = false;
    std::map<std::string, int> same;
    for (int c : n.children) {
        const auto& ch = t.nodes[c];
        if (ch.label == "CC" || ch.label == "CONJP") cc = true;
        else if (!t.preterminal(c) && !ch.leaf() && (clauses ? is_clause_label(ch.label) : true)) ++same[ch.label];
    }
    if (!cc) return false;
    for (const auto& [label, k] : same)
        if (k >= 2 && (!clauses || is_clause_label(label))) return true;
    return false;
}

inline bool contains_label(const ParseTree& t, int id, const std::string& label) {
    for (int c : t.nodes[id].children) {
        if (t.nodes[c].label == label && !t.nodes[c].leaf()) return true;
        if (contains_label(t, c, label)) return true;
    }
    return false;
}

inline void count_in(const ParseTree& t, int id, TreeStats::TUnit& u) {
    for (int c : t.nodes[id].children) {
        if (is_phrase_node(t, c)) {
            const auto& l = t.nodes[c].label;
            if (l == "NP") ++u.np;
            else if (l == "VP") ++u.vp;
            else if (l == "PP") ++u.pp;
        }
        count_in(t, c, u);
    }
}

inline void find_tunits(const ParseTree& t, int id, TreeStats& st) {
    const auto& n = t.nodes[id];
    if (n.leaf() || t.preterminal(id)) return;
    if (is_clause_label(n.label)) {
        if (coordinated(t, id, true)) {
            for (int c : n.children)
                if (is_clause_label(t.nodes[c].label)) find_tunits(t, c, st);
            return;
        }
        TreeStats::TUnit u;
        u.length = static_cast<int>(n.end - n.begin);
        count_in(t, id, u);
        u.complex = contains_label(t, id, "SBAR");
        st.complex_tunits += u.complex ? 1 : 0;
        st.tunits.push_back(u);
        return;
    }
    for (int c : n.children) find_tunits(t, c, st);
}

}  // namespace detail

inline TreeStats tree_stats(const ParseTree& t) {
    TreeStats st;
    if (t.root < 0) return st;
    st.height = detail::tree_height(t, t.root);
    for (int id = 0; id < static_cast<int>(t.nodes.size()); ++id) {
        const auto& n = t.nodes[id];
        if (n.leaf()) continue;
        // nodes pruned away are unreachable; check ancestry to the root
        int a = id;
        while (t.nodes[a].parent >= 0) a = t.nodes[a].parent;
        if (a != t.root) continue;
        bool live = true;
        for (int c = id; c != t.root && live; c = t.nodes[c].parent) {
            const auto& sib = t.nodes[t.nodes[c].parent].children;
            live = std::find(sib.begin(), sib.end(), c) != sib.end();
        }
        if (!live) continue;
        const int len = static_cast<int>(n.end - n.begin);
        if (detail::is_phrase_node(t, id)) {
            ++st.xp_total;
            st.xp_lengths.push_back(len);
            ++st.phrase_counts[n.label];
            st.phrase_lengths[n.label].push_back(len);
            if (detail::coordinated(t, id, false)) st.coord_phrase_lengths.push_back(len);
        }
        if (n.label == "SBAR") st.subordinate_lengths.push_back(len);
        if (n.label == "SINV") st.sinv_lengths.push_back(len);
        if (n.label == "SBARQ") st.sbarq_lengths.push_back(len);
        if (n.label == "SQ" && !(n.parent >= 0 && t.nodes[n.parent].label == "SBARQ")) st.sq_lengths.push_back(len);
        if (is_clause_label(n.label) && detail::coordinated(t, id, true)) st.coord_s_lengths.push_back(len);
    }
    detail::find_tunits(t, t.root, st);
    return st;
}

}  // namespace textlevel
