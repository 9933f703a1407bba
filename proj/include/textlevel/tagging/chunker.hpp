#pragma once

#include <string>
#include <vector>

#include "textlevel/util/strings.hpp"

namespace textlevel {

struct Chunk {
    std::string label;  // NP, VP, PP, ADJP, ADVP
    std::size_t begin = 0;
    std::size_t end = 0;  // exclusive

    std::size_t length() const { return end - begin; }
    bool operator==(const Chunk& o) const { return label == o.label && begin == o.begin && end == o.end; }
};

namespace detail {

inline bool is_noun_tag(const std::string& t) { return t == "NN" || t == "NNS" || t == "NNP" || t == "NNPS"; }
inline bool is_adj_tag(const std::string& t) { return t == "JJ" || t == "JJR" || t == "JJS"; }
inline bool is_adv_tag(const std::string& t) { return t == "RB" || t == "RBR" || t == "RBS"; }
inline bool is_verb_tag(const std::string& t) { return t.size() >= 2 && t[0] == 'V' && t[1] == 'B'; }

// NP := PRP | WP | EX
//     | PDT? (DT|PRP$|WP$|WDT)? CD* (RB* JJ | VBN | VBG)* noun+ (POS (JJ)* noun+)*
//     | PDT? (DT|PRP$) CD* JJ+     (nominalized adjective: "the rich")
//     | DT | CD                     (standalone)
inline std::size_t match_np(const std::vector<std::string>& t, std::size_t i) {
    const std::size_t n = t.size();
    if (i >= n) return 0;
    if (t[i] == "PRP" || t[i] == "WP" || t[i] == "EX") return 1;
    std::size_t j = i;
    if (t[j] == "PDT") ++j;
    bool det = false;
    if (j < n && (t[j] == "DT" || t[j] == "PRP$" || t[j] == "WP$" || t[j] == "WDT")) ++j, det = true;
    std::size_t cds = 0;
    while (j < n && t[j] == "CD") ++j, ++cds;
    const std::size_t mods_start = j;
    std::size_t last_adj_end = j;
    while (j < n) {
        std::size_t k = j;
        while (k < n && is_adv_tag(t[k])) ++k;
        if (k < n && (is_adj_tag(t[k]) || ((t[k] == "VBN" || t[k] == "VBG") && k == j))) {
            j = k + 1;
            last_adj_end = j;
            continue;
        }
        break;
    }
    j = last_adj_end;
    std::size_t nouns = 0;
    while (j < n && is_noun_tag(t[j])) ++j, ++nouns;
    if (nouns > 0) {
        while (j + 1 < n && t[j] == "POS") {
            std::size_t k = j + 1;
            while (k < n && is_adj_tag(t[k])) ++k;
            std::size_t more = 0;
            while (k < n && is_noun_tag(t[k])) ++k, ++more;
            if (!more) break;
            j = k;
        }
        return j - i;
    }
    // no head noun: nominalized adjectives only after a determiner, else bare DT/CD
    std::size_t adj_only = mods_start;
    while (adj_only < n && is_adj_tag(t[adj_only])) ++adj_only;
    if (det && adj_only > mods_start) return adj_only - i;
    if (det || cds) {
        const std::size_t end = mods_start;
        // a bare determiner followed by an adjective is left to ADJP ("this is" vs "that tall")
        return end - i;
    }
    return 0;
}

inline std::size_t match_vp(const std::vector<std::string>& t, const std::vector<std::string>& lower,
                            std::size_t i) {
    const std::size_t n = t.size();
    std::size_t j = i;
    bool verb = false;
    if (t[j] == "TO") {
        if (j + 1 < n && t[j + 1] == "VB") ++j;
        else return 0;
    }
    if (t[j] == "MD") ++j, verb = true;
    while (j < n) {
        std::size_t k = j;
        while (k < n && (is_adv_tag(t[k]) || lower[k] == "not" || lower[k] == "n't") && k - j < 2) ++k;
        if (k < n && is_verb_tag(t[k])) {
            j = k + 1;
            verb = true;
            continue;
        }
        break;
    }
    if (!verb) return 0;
    while (j < n && t[j] == "RP") ++j;
    return j - i;
}

inline std::size_t match_adjp(const std::vector<std::string>& t, std::size_t i) {
    std::size_t j = i;
    while (j < t.size() && is_adv_tag(t[j])) ++j;
    std::size_t adj = 0;
    while (j < t.size() && is_adj_tag(t[j])) ++j, ++adj;
    return adj ? j - i : 0;
}

inline std::size_t match_advp(const std::vector<std::string>& t, std::size_t i) {
    std::size_t j = i;
    while (j < t.size() && (is_adv_tag(t[j]) || t[j] == "WRB")) ++j;
    return j - i;
}

}  // namespace detail

// Deterministic regular chunk grammar over Penn tags, scanned left to right
// with the first matching rule taking the longest span. PP chunks contain
// their NP chunk, which is reported as well; otherwise chunks are disjoint.
inline std::vector<Chunk> chunk(const std::vector<std::string>& words, const std::vector<std::string>& tags) {
    std::vector<std::string> lower;
    lower.reserve(words.size());
    for (const auto& w : words) lower.push_back(str::to_lower(w));
    std::vector<Chunk> out;
    const std::size_t n = tags.size();
    std::size_t i = 0;
    while (i < n) {
        const auto& t = tags[i];
        if (t == "IN" || (t == "TO" && !(i + 1 < n && tags[i + 1] == "VB"))) {
            if (const std::size_t np = detail::match_np(tags, i + 1)) {
                out.push_back({"PP", i, i + 1 + np});
                out.push_back({"NP", i + 1, i + 1 + np});
                i += 1 + np;
                continue;
            }
            ++i;
            continue;
        }
        if (std::size_t len = detail::match_np(tags, i)) {
            out.push_back({"NP", i, i + len});
            i += len;
            continue;
        }
        if (std::size_t len = detail::match_vp(tags, lower, i)) {
            out.push_back({"VP", i, i + len});
            i += len;
            continue;
        }
        if (std::size_t len = detail::match_adjp(tags, i)) {
            out.push_back({"ADJP", i, i + len});
            i += len;
            continue;
        }
        if (std::size_t len = detail::match_advp(tags, i)) {
            out.push_back({"ADVP", i, i + len});
            i += len;
            continue;
        }
        ++i;
    }
    return out;
}

}  // namespace textlevel
