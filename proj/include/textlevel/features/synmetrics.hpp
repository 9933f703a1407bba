#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "textlevel/document.hpp"
#include "textlevel/tagging/trees.hpp"
#include "textlevel/util/error.hpp"

namespace textlevel {

// Per-sentence structural statistics, from a parse tree (exact) or from
// chunks and tag heuristics (approximate).
struct SentenceSyntax {
    int height = 0;
    std::vector<std::pair<std::string, int>> phrases;  // label, length in tokens
    int tunits = 0, complex_tunits = 0;
    int tunit_np = 0, tunit_vp = 0, tunit_pp = 0, tunit_tokens = 0;
    std::vector<int> subordinate, sinv, sq, sbarq, coord_s, coord_xp;
    bool approximate = false;
};

inline SentenceSyntax syntax_from_tree(const ParseTree& tree) {
    SentenceSyntax s;
    const auto st = tree_stats(tree);
    s.height = st.height;
    for (const auto& [label, lens] : st.phrase_lengths)
        for (int len : lens) s.phrases.emplace_back(label, len);
    s.tunits = static_cast<int>(st.tunits.size());
    s.complex_tunits = st.complex_tunits;
    for (const auto& u : st.tunits) {
        s.tunit_np += u.np;
        s.tunit_vp += u.vp;
        s.tunit_pp += u.pp;
        s.tunit_tokens += u.length;
    }
    s.subordinate = st.subordinate_lengths;
    s.sinv = st.sinv_lengths;
    s.sq = st.sq_lengths;
    s.sbarq = st.sbarq_lengths;
    s.coord_s = st.coord_s_lengths;
    s.coord_xp = st.coord_phrase_lengths;
    return s;
}

inline const std::unordered_set<std::string>& subordinators() {
    static const std::unordered_set<std::string> words = {
        "after", "although", "as", "because", "before", "if", "once", "since", "than", "that", "though",
        "till", "unless", "until", "when", "whenever", "where", "whereas", "wherever", "whether", "while",
        "whilst", "lest", "so"};
    return words;
}

namespace detail {

inline bool aux_lemma(const Token& t) {
    return (t.pos == "MD") ||
           (t.pos.rfind("VB", 0) == 0 && (t.lemma == "be" || t.lemma == "have" || t.lemma == "do"));
}

inline bool subject_pronoun(const std::string& lower) {
    return lower == "i" || lower == "he" || lower == "she" || lower == "we" || lower == "they";
}

inline bool has_chunk(const std::vector<Chunk>& chunks, const std::string& label, std::size_t b, std::size_t e) {
    for (const auto& c : chunks)
        if (c.label == label && c.begin >= b && c.end <= e) return true;
    return false;
}

}  // namespace detail

// Heuristic counterpart of syntax_from_tree for sentences without a parse.
inline SentenceSyntax syntax_from_chunks(const AnalyzedSentence& s) {
    SentenceSyntax out;
    out.approximate = true;
    const auto& toks = s.tokens;
    const std::size_t n = toks.size();
    for (const auto& c : s.chunks) out.phrases.emplace_back(c.label, static_cast<int>(c.length()));
    if (n == 0) return out;

    std::size_t first = 0;
    while (first < n && !toks[first].is_word) ++first;
    const bool question = toks.back().surface == "?";
    const int len = static_cast<int>(n);
    if (question && first < n) {
        const auto& t0 = toks[first];
        if (t0.pos == "WDT" || t0.pos == "WP" || t0.pos == "WP$" || t0.pos == "WRB") out.sbarq.push_back(len);
        else if (detail::aux_lemma(t0)) out.sq.push_back(len);
    }
    if (!question) {
        for (std::size_t i = first + 1; i + 1 < n; ++i) {
            if (detail::aux_lemma(toks[i]) && detail::subject_pronoun(toks[i + 1].lower) &&
                toks[i - 1].pos[0] != 'W' && toks[i - 1].pos != "CC" && toks[i - 1].pos != ",") {
                out.sinv.push_back(len);
                break;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto& t = toks[i];
        const bool sub = (t.pos == "IN" && subordinators().count(t.lower)) ||
                         (i > first && (t.pos == "WDT" || t.pos == "WP" || t.pos == "WP$" || t.pos == "WRB"));
        if (!sub || i + 1 >= n) continue;
        std::size_t e = i + 1;
        while (e < n && toks[e].surface != "," && toks[e].surface != ";" && toks[e].pos != ".") ++e;
        out.subordinate.push_back(static_cast<int>(e - i));
    }
    // coordination around CC tokens
    std::vector<std::size_t> ccs;
    for (std::size_t i = 0; i < n; ++i)
        if (toks[i].pos == "CC") ccs.push_back(i);
    for (std::size_t k = 0; k < ccs.size(); ++k) {
        const std::size_t c = ccs[k];
        const std::size_t lb = k ? ccs[k - 1] + 1 : 0;
        const std::size_t re = k + 1 < ccs.size() ? ccs[k + 1] : n;
        bool right_subject = false;
        for (const auto& ch : s.chunks) {
            if (ch.begin <= c || ch.end > re) continue;
            if (ch.label == "VP") break;
            if (ch.label == "NP") {
                right_subject = true;
                break;
            }
        }
        if (detail::has_chunk(s.chunks, "VP", lb, c) && detail::has_chunk(s.chunks, "VP", c + 1, re) && right_subject) {
            out.coord_s.push_back(static_cast<int>(re - lb));
            continue;
        }
        const Chunk* before = nullptr;
        const Chunk* after = nullptr;
        for (const auto& ch : s.chunks) {
            if (ch.end == c && (!before || ch.length() > before->length())) before = &ch;
            if (ch.begin == c + 1 && (!after || ch.length() > after->length())) after = &ch;
        }
        if (before && after && before->label == after->label)
            out.coord_xp.push_back(static_cast<int>(after->end - before->begin));
    }
    out.tunits = 1 + static_cast<int>(out.coord_s.size());
    out.complex_tunits = out.subordinate.empty() ? 0 : 1;
    for (const auto& c : s.chunks) {
        out.tunit_np += c.label == "NP";
        out.tunit_vp += c.label == "VP";
        out.tunit_pp += c.label == "PP";
    }
    out.tunit_tokens = len;
    bool pp = false;
    for (const auto& c : s.chunks) pp = pp || c.label == "PP";
    out.height = 4 + (pp ? 1 : 0) + 2 * std::min<int>(3, static_cast<int>(out.subordinate.size()));
    return out;
}

inline std::vector<SentenceSyntax> sentence_syntax(const AnalyzedDoc& doc) {
    std::vector<SentenceSyntax> out;
    out.reserve(doc.sentences.size());
    for (std::size_t i = 0; i < doc.sentences.size(); ++i)
        out.push_back(doc.tree_mode() ? syntax_from_tree(doc.trees[i]) : syntax_from_chunks(doc.sentences[i]));
    return out;
}

inline const std::array<const char*, 5>& phrase_labels() {
    static const std::array<const char*, 5> labels = {"NP", "VP", "PP", "ADVP", "ADJP"};
    return labels;
}

struct SyntaxFeatures {
    double xp_total = 0;
    std::array<double, 5> ratio{};     // NP VP PP ADVP ADJP
    double nb_xp = 0;
    std::array<double, 5> nb{};
    double len_xp = 0;
    std::array<double, 5> len{};
    double tu_np = 0, tu_vp = 0, tu_pp = 0, tu_complex_ratio = 0, tu_len = 0;
    double mean_len_s = 0, tree_height = 0;
    double subord = 0, len_subord = 0, inv_dec_s = 0, len_inv_dec_s = 0, inv_qst = 0, len_inv_qst = 0;
    double wh_qst = 0, len_wh_qst = 0, sent_coord = 0, len_sent_coord = 0, xp_coord = 0, len_xp_coord = 0;
    bool no_phrases = false;
    bool no_tunits = false;
    bool approximate = false;
};

inline SyntaxFeatures syntax_features(const AnalyzedDoc& doc) {
    SyntaxFeatures f;
    const auto sents = sentence_syntax(doc);
    const double ns = static_cast<double>(sents.size());
    if (sents.empty()) throw EmptyInputError("empty document");
    std::array<double, 5> count{}, length{};
    double xp_len = 0;
    int tunits = 0, complex = 0, tnp = 0, tvp = 0, tpp = 0, ttok = 0;
    double height = 0;
    std::vector<int> subord, sinv, sq, sbarq, cs, cx;
    auto append = [](std::vector<int>& dst, const std::vector<int>& src) { dst.insert(dst.end(), src.begin(), src.end()); };
    for (const auto& s : sents) {
        f.approximate = f.approximate || s.approximate;
        for (const auto& [label, len] : s.phrases) {
            f.xp_total += 1;
            xp_len += len;
            for (std::size_t k = 0; k < 5; ++k)
                if (label == phrase_labels()[k]) count[k] += 1, length[k] += len;
        }
        tunits += s.tunits;
        complex += s.complex_tunits;
        tnp += s.tunit_np;
        tvp += s.tunit_vp;
        tpp += s.tunit_pp;
        ttok += s.tunit_tokens;
        height += s.height;
        append(subord, s.subordinate);
        append(sinv, s.sinv);
        append(sq, s.sq);
        append(sbarq, s.sbarq);
        append(cs, s.coord_s);
        append(cx, s.coord_xp);
    }
    f.no_phrases = f.xp_total == 0;
    for (std::size_t k = 0; k < 5; ++k) {
        f.ratio[k] = f.xp_total > 0 ? count[k] / f.xp_total : 0.0;
        f.nb[k] = count[k] / ns;
        f.len[k] = count[k] > 0 ? length[k] / count[k] : 0.0;
    }
    f.nb_xp = f.xp_total / ns;
    f.len_xp = f.xp_total > 0 ? xp_len / f.xp_total : 0.0;
    f.no_tunits = tunits == 0;
    if (tunits > 0) {
        f.tu_np = static_cast<double>(tnp) / tunits;
        f.tu_vp = static_cast<double>(tvp) / tunits;
        f.tu_pp = static_cast<double>(tpp) / tunits;
        f.tu_complex_ratio = static_cast<double>(complex) / tunits;
        f.tu_len = static_cast<double>(ttok) / tunits;
    }
    f.mean_len_s = static_cast<double>(doc.word_count()) / ns;
    f.tree_height = height / ns;
    auto rate_len = [&](const std::vector<int>& v, double& rate, double& mean_len) {
        rate = static_cast<double>(v.size()) / ns;
        double s = 0;
        for (int x : v) s += x;
        mean_len = v.empty() ? 0.0 : s / static_cast<double>(v.size());
    };
    rate_len(subord, f.subord, f.len_subord);
    rate_len(sinv, f.inv_dec_s, f.len_inv_dec_s);
    rate_len(sq, f.inv_qst, f.len_inv_qst);
    rate_len(sbarq, f.wh_qst, f.len_wh_qst);
    rate_len(cs, f.sent_coord, f.len_sent_coord);
    rate_len(cx, f.xp_coord, f.len_xp_coord);
    return f;
}

// Tag n-gram counts of orders 2, 3 and 4; n-grams never cross sentences.
struct NgramCounts {
    std::array<std::map<std::string, long>, 3> by_order;  // index = order - 2

    const std::map<std::string, long>& order(int n) const { return by_order.at(static_cast<std::size_t>(n - 2)); }
    std::map<std::string, long>& order(int n) { return by_order.at(static_cast<std::size_t>(n - 2)); }

    nlohmann::json to_json() const {
        nlohmann::json j = nlohmann::json::object();
        for (int n = 2; n <= 4; ++n) j[std::to_string(n)] = order(n);
        return j;
    }
    static NgramCounts from_json(const nlohmann::json& j) {
        NgramCounts c;
        for (int n = 2; n <= 4; ++n) c.order(n) = j.at(std::to_string(n)).get<std::map<std::string, long>>();
        return c;
    }
};

inline NgramCounts tag_ngrams(const AnalyzedDoc& doc) {
    NgramCounts c;
    for (const auto& s : doc.sentences) {
        const auto tags = s.tags();
        for (int n = 2; n <= 4; ++n) {
            for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tags.size(); ++i) {
                std::string key = tags[i];
                for (int k = 1; k < n; ++k) key += " " + tags[i + static_cast<std::size_t>(k)];
                ++c.order(n)[key];
            }
        }
    }
    return c;
}

struct NgramDiversity {
    std::array<double, 3> per_word{};      // orders 2, 3, 4
    std::array<double, 3> per_sentence{};
};

inline NgramDiversity ngram_diversity(const AnalyzedDoc& doc, const NgramCounts& counts) {
    NgramDiversity d;
    const double words = static_cast<double>(doc.word_count());
    const double sents = static_cast<double>(doc.sentences.size());
    for (int n = 2; n <= 4; ++n) {
        const double types = static_cast<double>(counts.order(n).size());
        d.per_word[static_cast<std::size_t>(n - 2)] = words > 0 ? types / words : 0.0;
        d.per_sentence[static_cast<std::size_t>(n - 2)] = sents > 0 ? types / sents : 0.0;
    }
    return d;
}

// Rank-ordered n-gram list: rank 1 is the most frequent, ties broken by the
// n-gram string.
struct NgramProfile {
    int order = 2;
    std::map<std::string, long> ranks;

    std::size_t size() const { return ranks.size(); }

    nlohmann::json to_json() const {
        std::vector<std::pair<long, std::string>> ordered;
        for (const auto& [g, r] : ranks) ordered.emplace_back(r, g);
        std::sort(ordered.begin(), ordered.end());
        nlohmann::json list = nlohmann::json::array();
        for (const auto& [r, g] : ordered) list.push_back(g);
        return {{"order", order}, {"ranked", list}};
    }
    static NgramProfile from_json(const nlohmann::json& j) {
        NgramProfile p;
        p.order = j.at("order").get<int>();
        long r = 0;
        for (const auto& g : j.at("ranked")) p.ranks[g.get<std::string>()] = ++r;
        return p;
    }
};

inline NgramProfile make_profile(int order, const std::map<std::string, long>& counts, std::size_t top_k = 300) {
    std::vector<std::pair<long, std::string>> items;
    items.reserve(counts.size());
    for (const auto& [g, c] : counts) items.emplace_back(-c, g);
    std::sort(items.begin(), items.end());
    NgramProfile p;
    p.order = order;
    for (std::size_t i = 0; i < items.size() && i < top_k; ++i) p.ranks[items[i].second] = static_cast<long>(i + 1);
    return p;
}

inline NgramProfile build_level_profile(const std::vector<const NgramCounts*>& docs, int order,
                                        std::size_t top_k = 300) {
    if (docs.empty()) throw ValidationError("level profile needs at least one document");
    std::map<std::string, long> total;
    for (const auto* d : docs)
        for (const auto& [g, c] : d->order(order)) total[g] += c;
    return make_profile(order, total, top_k);
}

inline long profile_distance(const NgramProfile& text, const NgramProfile& level) {
    if (text.order != level.order)
        throw ValidationError("profile orders differ: " + std::to_string(text.order) + " vs " +
                              std::to_string(level.order));
    const long penalty = static_cast<long>(level.size()) + 1;
    long d = 0;
    for (const auto& [g, r] : text.ranks) {
        auto it = level.ranks.find(g);
        d += std::labs(r - (it == level.ranks.end() ? penalty : it->second));
    }
    return d;
}

// Level profiles for levels 1..3 and orders 2..4.
struct LevelProfiles {
    std::map<int, std::array<NgramProfile, 3>> levels;
    std::size_t top_k = 300;

    bool has(int level) const { return levels.count(level) != 0; }

    static LevelProfiles build(const std::vector<const NgramCounts*>& docs, const std::vector<int>& labels,
                               std::size_t top_k = 300) {
        LevelProfiles lp;
        lp.top_k = top_k;
        std::map<int, std::vector<const NgramCounts*>> by_level;
        for (std::size_t i = 0; i < docs.size(); ++i)
            if (labels[i] > 0) by_level[labels[i]].push_back(docs[i]);
        for (const auto& [level, ds] : by_level)
            for (int n = 2; n <= 4; ++n) lp.levels[level][static_cast<std::size_t>(n - 2)] = build_level_profile(ds, n, top_k);
        return lp;
    }

    // prof{n}_l{level} distances for n = 2..4, level = 1..3; absent when the
    // level has no profile.
    std::array<std::optional<double>, 9> distances(const NgramCounts& doc) const {
        std::array<std::optional<double>, 9> out;
        for (int n = 2; n <= 4; ++n) {
            const auto text = make_profile(n, doc.order(n), top_k);
            for (int level = 1; level <= 3; ++level) {
                auto it = levels.find(level);
                if (it == levels.end()) continue;
                out[static_cast<std::size_t>((n - 2) * 3 + (level - 1))] =
                    static_cast<double>(profile_distance(text, it->second[static_cast<std::size_t>(n - 2)]));
            }
        }
        return out;
    }

    nlohmann::json to_json() const {
        nlohmann::json j = {{"top_k", top_k}, {"levels", nlohmann::json::object()}};
        for (const auto& [level, ps] : levels) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& p : ps) arr.push_back(p.to_json());
            j["levels"][std::to_string(level)] = arr;
        }
        return j;
    }
    static LevelProfiles from_json(const nlohmann::json& j) {
        LevelProfiles lp;
        lp.top_k = j.at("top_k").get<std::size_t>();
        for (const auto& [level, arr] : j.at("levels").items())
            for (std::size_t k = 0; k < 3; ++k) lp.levels[std::stoi(level)][k] = NgramProfile::from_json(arr.at(k));
        return lp;
    }
};

}  // namespace textlevel
