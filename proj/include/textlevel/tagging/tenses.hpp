#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "textlevel/tagging/perceptron.hpp"
#include "textlevel/util/strings.hpp"

namespace textlevel {

enum class Tense {
    simple_present,
    simple_past,
    present_perfect,
    present_participle,
    present_continuous,
    simple_future,
    future_perfect,
    future_continuous,
    past_continuous,
    present_perfect_continuous,
    future_perfect_continuous,
    past_perfect,
    infinitive,
};

constexpr std::size_t tense_count = 13;

inline const std::array<const char*, tense_count>& tense_names() {
    static const std::array<const char*, tense_count> names = {
        "simple_present",     "simple_past",       "present_perfect",
        "present_participle", "present_continuous", "simple_future",
        "future_perfect",     "future_continuous", "past_continuous",
        "present_perfect_continuous", "future_perfect_continuous", "past_perfect",
        "infinitive"};
    return names;
}

struct TenseProfile {
    std::array<int, tense_count> counts{};

    int& operator[](Tense t) { return counts[static_cast<std::size_t>(t)]; }
    int operator[](Tense t) const { return counts[static_cast<std::size_t>(t)]; }
    int total() const {
        int s = 0;
        for (int c : counts) s += c;
        return s;
    }
    TenseProfile& operator+=(const TenseProfile& o) {
        for (std::size_t i = 0; i < tense_count; ++i) counts[i] += o.counts[i];
        return *this;
    }
};

namespace detail {

struct TenseCtx {
    const std::vector<std::string>& lower;
    const std::vector<std::string>& tags;
    std::size_t size() const { return tags.size(); }
};

using TokPred = std::function<bool(const TenseCtx&, std::size_t)>;

inline bool tag_is(const TenseCtx& c, std::size_t i, const char* t) { return c.tags[i] == t; }

inline bool is_adverb_gap(const TenseCtx& c, std::size_t i) {
    return c.tags[i] == "RB" || c.tags[i] == "RBR" || c.lower[i] == "not" || c.lower[i] == "n't" ||
           c.lower[i] == "never";
}

inline bool is_subject_token(const TenseCtx& c, std::size_t i) {
    const auto& t = c.tags[i];
    return t == "PRP" || t == "EX" || t == "NN" || t == "NNS" || t == "NNP" || t == "NNPS" || t == "DT" ||
           t == "PRP$" || t == "JJ" || t == "CD";
}

inline bool verb_tag(const std::string& t) { return t.size() >= 2 && t[0] == 'V' && t[1] == 'B'; }

// 's and 'd are ambiguous; look ahead (over adverbs) at the next verb form.
inline std::string next_verb_tag(const TenseCtx& c, std::size_t i) {
    for (std::size_t j = i + 1, gaps = 0; j < c.size() && gaps <= 2; ++j) {
        if (is_adverb_gap(c, j)) {
            ++gaps;
            continue;
        }
        return verb_tag(c.tags[j]) ? c.tags[j] : std::string();
    }
    return {};
}

inline bool will_aux(const TenseCtx& c, std::size_t i) {
    const auto& w = c.lower[i];
    return c.tags[i] == "MD" && (w == "will" || w == "'ll" || w == "shall" || w == "wo" || w == "ll");
}

inline bool have_pres(const TenseCtx& c, std::size_t i) {
    const auto& w = c.lower[i];
    if (w == "'s") return c.tags[i] == "VBZ" && next_verb_tag(c, i) == "VBN";
    return (w == "have" || w == "has" || w == "'ve") && (c.tags[i] == "VBP" || c.tags[i] == "VBZ");
}

inline bool had_aux(const TenseCtx& c, std::size_t i) {
    const auto& w = c.lower[i];
    if (w == "'d") return next_verb_tag(c, i) == "VBN";
    return w == "had" && c.tags[i] == "VBD";
}

inline bool be_pres(const TenseCtx& c, std::size_t i) {
    const auto& w = c.lower[i];
    if (w == "'s") return c.tags[i] == "VBZ" && next_verb_tag(c, i) != "VBN";
    return (w == "am" || w == "is" || w == "are" || w == "'m" || w == "'re") &&
           (c.tags[i] == "VBP" || c.tags[i] == "VBZ");
}

inline bool be_past(const TenseCtx& c, std::size_t i) {
    return (c.lower[i] == "was" || c.lower[i] == "were") && c.tags[i] == "VBD";
}

inline bool word_tag(const TenseCtx& c, std::size_t i, const char* w, const char* t) {
    return c.lower[i] == w && c.tags[i] == t;
}

struct TensePattern {
    Tense tense;
    std::vector<TokPred> elems;
};

inline const std::vector<TensePattern>& tense_patterns() {
    auto tag = [](const char* t) { return TokPred([t](const TenseCtx& c, std::size_t i) { return tag_is(c, i, t); }); };
    auto word = [](const char* w, const char* t) {
        return TokPred([w, t](const TenseCtx& c, std::size_t i) { return word_tag(c, i, w, t); });
    };
    const TokPred will = will_aux, hv = have_pres, had = had_aux, bp = be_pres, bpast = be_past;
    const TokPred been = word("been", "VBN");
    const TokPred have_base = word("have", "VB");
    const TokPred be_base = word("be", "VB");
    // longest patterns first
    static const std::vector<TensePattern> table = {
        {Tense::future_perfect_continuous, {will, have_base, been, tag("VBG")}},
        {Tense::future_perfect, {will, have_base, tag("VBN")}},
        {Tense::future_continuous, {will, be_base, tag("VBG")}},
        {Tense::present_perfect_continuous, {hv, been, tag("VBG")}},
        {Tense::past_perfect, {had, been, tag("VBG")}},
        {Tense::simple_future, {will, tag("VB")}},
        {Tense::present_perfect, {hv, tag("VBN")}},
        {Tense::past_perfect, {had, tag("VBN")}},
        {Tense::present_continuous, {bp, tag("VBG")}},
        {Tense::past_continuous, {bpast, tag("VBG")}},
        {Tense::infinitive, {tag("TO"), tag("VB")}},
        {Tense::simple_past, {tag("VBD")}},
        {Tense::simple_present, {tag("VBP")}},
        {Tense::simple_present, {tag("VBZ")}},
        {Tense::present_participle, {tag("VBG")}},
    };
    return table;
}

// Tries to match `p` starting at `start`; fills the token positions used.
inline bool match_pattern(const TenseCtx& c, const TensePattern& p, std::size_t start,
                          const std::vector<bool>& used, std::vector<std::size_t>& pos) {
    pos.clear();
    if (used[start] || !p.elems[0](c, start)) return false;
    pos.push_back(start);
    // subject-auxiliary inversion ("will you go", "has the train left")
    const bool inverted_ok = start == 0 || c.tags[start - 1][0] == 'W' || c.tags[start - 1] == ",";
    std::size_t cur = start;
    for (std::size_t k = 1; k < p.elems.size(); ++k) {
        std::size_t j = cur + 1;
        std::size_t gaps = 0;
        bool found = false;
        while (j < c.size()) {
            if (!used[j] && p.elems[k](c, j)) {
                found = true;
                break;
            }
            if (is_adverb_gap(c, j) && gaps < 2) {
                ++gaps;
                ++j;
                continue;
            }
            break;
        }
        if (!found && k == 1 && inverted_ok) {
            j = cur + 1;
            std::size_t subj = 0;
            while (j < c.size() && subj < 4 && is_subject_token(c, j)) ++subj, ++j;
            gaps = 0;
            while (j < c.size() && gaps < 2 && is_adverb_gap(c, j)) ++gaps, ++j;
            found = subj > 0 && j < c.size() && !used[j] && p.elems[k](c, j);
        }
        if (!found) return false;
        pos.push_back(j);
        cur = j;
    }
    return true;
}

}  // namespace detail

// Counts verb forms in one tagged sentence. Patterns are tried longest first
// at each position; tokens consumed by a match are not reused.
inline TenseProfile detect_tenses(const std::vector<std::string>& words, const std::vector<std::string>& tags) {
    TenseProfile prof;
    std::vector<std::string> lower;
    lower.reserve(words.size());
    for (const auto& w : words) lower.push_back(str::to_lower(w));
    const detail::TenseCtx ctx{lower, tags};
    std::vector<bool> used(tags.size(), false);
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < tags.size(); ++i) {
        if (used[i]) continue;
        for (const auto& p : detail::tense_patterns()) {
            if (detail::match_pattern(ctx, p, i, used, pos)) {
                ++prof[p.tense];
                for (std::size_t q : pos) used[q] = true;
                break;
            }
        }
    }
    return prof;
}

inline TenseProfile detect_tenses(const TaggedSentence& ts) { return detect_tenses(ts.words, ts.tags); }

}  // namespace textlevel
