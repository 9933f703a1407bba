#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "textlevel/analysis/stats.hpp"
#include "textlevel/document.hpp"
#include "textlevel/resources.hpp"
#include "textlevel/util/csv.hpp"
#include "textlevel/util/error.hpp"
#include "textlevel/util/strings.hpp"

namespace textlevel {

// Raw counts behind the whole-text formulas.
struct ReadabilityCounts {
    double words = 0, sentences = 0, syllables = 0, letters = 0, complex_words = 0;
    double unfamiliar_spache = 0, difficult_dale_chall = 0;
};

inline ReadabilityCounts readability_counts(const AnalyzedDoc& doc, const WordLists& lists) {
    ReadabilityCounts c;
    c.sentences = static_cast<double>(doc.sentences.size());
    doc.for_each_word([&](const Token& t) {
        c.words += 1;
        c.syllables += t.syllables;
        c.letters += static_cast<double>(str::count_alpha(t.surface));
        if (t.syllables >= 3) c.complex_words += 1;
        if (!lists.spache_familiar_word(t.lower)) c.unfamiliar_spache += 1;
        if (!lists.dale_chall_familiar_word(t.lower)) c.difficult_dale_chall += 1;
    });
    if (c.words == 0 || c.sentences == 0) throw EmptyInputError("empty document");
    return c;
}

namespace formula {

inline double fog(double words_per_sentence, double complex_ratio) {
    return 0.4 * (words_per_sentence + 100.0 * complex_ratio);
}
inline double flesch_kincaid(double words_per_sentence, double syllables_per_word) {
    return 206.835 - 1.015 * words_per_sentence - 84.6 * syllables_per_word;
}
inline double ari(double letters_per_word, double words_per_sentence) {
    return 4.71 * letters_per_word + 0.5 * words_per_sentence - 21.43;
}
inline double dale_chall(double difficult_pct, double words_per_sentence) {
    double v = 0.1579 * difficult_pct + 0.0496 * words_per_sentence;
    if (difficult_pct > 5.0) v += 3.6365;
    return v;
}
// Default variant: unfamiliar words enter as a ratio with a negative weight.
inline double spache(double words_per_sentence, double unfamiliar_ratio) {
    return 0.121 * words_per_sentence - 0.082 * unfamiliar_ratio + 0.659;
}
// Revised Spache: unfamiliar words as a percentage with a positive weight.
inline double spache_canonical(double words_per_sentence, double unfamiliar_ratio) {
    return 0.141 * words_per_sentence + 0.086 * (100.0 * unfamiliar_ratio) + 0.839;
}
inline double coleman_liau(double letters_per_100, double sentences_per_100) {
    return 0.0588 * letters_per_100 - 0.296 * sentences_per_100 - 15.8;
}
inline double forcast(double monosyllables, std::size_t window) {
    const double divisor = std::max(1.0, std::round(static_cast<double>(window) / 15.0));
    return 20.0 - monosyllables / divisor;
}

}  // namespace formula

struct WholeTextScores {
    double fog = 0, flesch_kincaid = 0, ari = 0, dale_chall = 0, spache = 0;
};

inline WholeTextScores whole_text_formulas(const AnalyzedDoc& doc, const WordLists& lists,
                                           bool canonical_spache = false) {
    const auto c = readability_counts(doc, lists);
    const double wps = c.words / c.sentences;
    WholeTextScores s;
    s.fog = formula::fog(wps, c.complex_words / c.words);
    s.flesch_kincaid = formula::flesch_kincaid(wps, c.syllables / c.words);
    s.ari = formula::ari(c.letters / c.words, wps);
    s.dale_chall = formula::dale_chall(100.0 * c.difficult_dale_chall / c.words, wps);
    s.spache = canonical_spache ? formula::spache_canonical(wps, c.unfamiliar_spache / c.words)
                                : formula::spache(wps, c.unfamiliar_spache / c.words);
    return s;
}

struct SampledScores {
    std::optional<double> coleman_liau, forcast;
    std::size_t windows = 0;
};

// Consecutive non-overlapping windows of `window` words; the remainder is
// dropped. A window's sentence count is the sum over its words of
// 1 / (length of the word's sentence).
inline SampledScores sampled_formulas(const AnalyzedDoc& doc, std::size_t window = 27) {
    if (window < 1) throw ValidationError("window must be at least 1");
    struct W {
        double letters;
        int syllables;
        double sentence_share;
    };
    std::vector<W> words;
    for (const auto& s : doc.sentences) {
        const double len = static_cast<double>(s.word_count());
        for (const auto& t : s.tokens)
            if (t.is_word)
                words.push_back({static_cast<double>(str::count_alpha(t.surface)), t.syllables, 1.0 / len});
    }
    SampledScores out;
    out.windows = words.size() / window;
    if (!out.windows) return out;
    double cl = 0, fc = 0;
    for (std::size_t w = 0; w < out.windows; ++w) {
        double letters = 0, sents = 0, mono = 0;
        for (std::size_t i = w * window; i < (w + 1) * window; ++i) {
            letters += words[i].letters;
            sents += words[i].sentence_share;
            mono += words[i].syllables == 1 ? 1 : 0;
        }
        const double per100 = 100.0 / static_cast<double>(window);
        cl += formula::coleman_liau(letters * per100, sents * per100);
        fc += formula::forcast(mono, window);
    }
    out.coleman_liau = cl / static_cast<double>(out.windows);
    out.forcast = fc / static_cast<double>(out.windows);
    return out;
}

inline const std::array<const char*, 7>& readability_names() {
    static const std::array<const char*, 7> names = {"fog", "flesch_kincaid", "coleman_liau", "spache",
                                                      "dale_chall", "ari", "forcast"};
    return names;
}

struct ReadabilityScores {
    double fog = 0, flesch_kincaid = 0, spache = 0, dale_chall = 0, ari = 0;
    std::optional<double> coleman_liau, forcast;
    std::size_t window = 27;

    // Catalog order; absent sampled values as nullopt.
    std::array<std::optional<double>, 7> values() const {
        return {fog, flesch_kincaid, coleman_liau, spache, dale_chall, ari, forcast};
    }
};

inline ReadabilityScores readability_scores(const AnalyzedDoc& doc, const WordLists& lists, std::size_t window = 27,
                                            bool canonical_spache = false) {
    const auto w = whole_text_formulas(doc, lists, canonical_spache);
    const auto s = sampled_formulas(doc, window);
    ReadabilityScores r;
    r.fog = w.fog;
    r.flesch_kincaid = w.flesch_kincaid;
    r.spache = w.spache;
    r.dale_chall = w.dale_chall;
    r.ari = w.ari;
    r.coleman_liau = s.coleman_liau;
    r.forcast = s.forcast;
    r.window = window;
    return r;
}

// Pairwise Pearson matrix over the seven formulas. Documents lacking a
// sampled value are left out of the pairs involving that formula.
struct CorrelationMatrix {
    std::array<std::array<std::optional<double>, 7>, 7> r;

    std::string to_csv() const {
        std::string out = "formula";
        for (const char* n : readability_names()) out += std::string(",") + n;
        out += "\n";
        for (std::size_t i = 0; i < 7; ++i) {
            out += readability_names()[i];
            for (std::size_t j = 0; j < 7; ++j) out += "," + (r[i][j] ? str::fmt(*r[i][j]) : std::string("NA"));
            out += "\n";
        }
        return out;
    }
};

inline CorrelationMatrix correlation_matrix(const std::vector<std::array<std::optional<double>, 7>>& rows) {
    if (rows.size() < 3) throw ValidationError("correlation report needs at least 3 documents");
    CorrelationMatrix m;
    for (std::size_t i = 0; i < 7; ++i) {
        for (std::size_t j = i; j < 7; ++j) {
            std::vector<double> x, y;
            for (const auto& row : rows)
                if (row[i] && row[j]) x.push_back(*row[i]), y.push_back(*row[j]);
            std::optional<double> r;
            if (x.size() >= 3) r = pearson(x, y);
            if (r && i == j) r = 1.0;
            m.r[i][j] = m.r[j][i] = r;
        }
    }
    return m;
}

inline CorrelationMatrix formula_correlation_report(const std::vector<ReadabilityScores>& scores) {
    std::vector<std::array<std::optional<double>, 7>> rows;
    for (const auto& s : scores) rows.push_back(s.values());
    return correlation_matrix(rows);
}

}  // namespace textlevel
