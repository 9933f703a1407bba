#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "textlevel/document.hpp"
#include "textlevel/resources.hpp"
#include "textlevel/util/error.hpp"

namespace textlevel {

namespace detail {

inline void require_words(std::size_t n) {
    if (n == 0) throw EmptyInputError("empty document");
}

inline bool starts(const std::string& tag, const char* p) { return tag.rfind(p, 0) == 0; }

}  // namespace detail

struct PhonologicalFeatures {
    double mean_graphemes = 0, mean_phonemes = 0, mean_syllables = 0;
};

inline PhonologicalFeatures phonological_features(const AnalyzedDoc& doc) {
    PhonologicalFeatures f;
    std::size_t n = 0;
    double g = 0, p = 0, s = 0;
    doc.for_each_word([&](const Token& t) {
        ++n;
        g += t.graphemes;
        p += t.phonemes;
        s += t.syllables;
    });
    detail::require_words(n);
    f.mean_graphemes = g / static_cast<double>(n);
    f.mean_phonemes = p / static_cast<double>(n);
    f.mean_syllables = s / static_cast<double>(n);
    return f;
}

inline double stem_diversity(const AnalyzedDoc& doc) {
    std::unordered_set<std::string> distinct;
    std::size_t n = 0;
    doc.for_each_word([&](const Token& t) {
        ++n;
        distinct.insert(t.lemma);
    });
    detail::require_words(n);
    return static_cast<double>(distinct.size()) / static_cast<double>(n);
}

struct AffixCount {
    int prefixes = 0;
    int suffixes = 0;
};

// Repeatedly strips the longest matching prefix, then the longest matching
// suffix, as long as at least three letters remain.
inline AffixCount count_affixes(const std::string& lower, const WordList& prefixes, const WordList& suffixes) {
    AffixCount c;
    std::string rest = lower;
    constexpr std::size_t min_residual = 3;
    while (true) {
        std::size_t best = 0;
        for (std::size_t len = std::min(rest.size(), std::size_t{12}); len >= 1; --len) {
            if (rest.size() - len < min_residual) continue;
            if (prefixes.contains(rest.substr(0, len))) {
                best = len;
                break;
            }
        }
        if (!best) break;
        rest.erase(0, best);
        ++c.prefixes;
    }
    while (true) {
        std::size_t best = 0;
        for (std::size_t len = std::min(rest.size(), std::size_t{12}); len >= 1; --len) {
            if (rest.size() - len < min_residual) continue;
            if (suffixes.contains(rest.substr(rest.size() - len))) {
                best = len;
                break;
            }
        }
        if (!best) break;
        rest.resize(rest.size() - best);
        ++c.suffixes;
    }
    return c;
}

struct AffixMeans {
    double prefixes = 0, suffixes = 0;
};

inline AffixMeans affix_means(const AnalyzedDoc& doc, const WordLists& lists) {
    std::size_t n = 0;
    double p = 0, s = 0;
    doc.for_each_word([&](const Token& t) {
        ++n;
        const auto c = count_affixes(t.lower, lists.prefixes, lists.suffixes);
        p += c.prefixes;
        s += c.suffixes;
    });
    detail::require_words(n);
    return {p / static_cast<double>(n), s / static_cast<double>(n)};
}

// Mean grapheme length per coarse category; absent when the category does
// not occur.
struct PosLengthMeans {
    std::optional<double> noun, adj, verb, adv;
};

inline PosLengthMeans pos_length_means(const AnalyzedDoc& doc) {
    double sum[4] = {0, 0, 0, 0};
    int cnt[4] = {0, 0, 0, 0};
    doc.for_each_word([&](const Token& t) {
        int k = -1;
        if (detail::starts(t.pos, "NN")) k = 0;
        else if (detail::starts(t.pos, "JJ")) k = 1;
        else if (detail::starts(t.pos, "VB")) k = 2;
        else if (detail::starts(t.pos, "RB")) k = 3;
        if (k < 0) return;
        sum[k] += t.graphemes;
        ++cnt[k];
    });
    auto mean = [&](int k) -> std::optional<double> {
        if (!cnt[k]) return std::nullopt;
        return sum[k] / cnt[k];
    };
    return {mean(0), mean(1), mean(2), mean(3)};
}

inline std::array<double, tense_count> tense_features(const AnalyzedDoc& doc) {
    std::array<double, tense_count> out{};
    if (doc.sentences.empty()) return out;
    TenseProfile total;
    for (const auto& s : doc.sentences) total += s.tenses;
    for (std::size_t k = 0; k < tense_count; ++k)
        out[k] = total.counts[k] / static_cast<double>(doc.sentences.size());
    return out;
}

// Adverbs that share their form with an adjective ("a fast car", "runs fast").
inline const std::unordered_set<std::string>& adjective_homograph_adverbs() {
    static const std::unordered_set<std::string> words = {
        "fast", "hard", "late", "early", "high", "low", "long", "far", "near", "close", "straight", "wide",
        "deep", "right", "wrong", "daily", "weekly", "monthly", "yearly", "likely", "kindly", "free", "direct",
        "clean", "loud", "quick", "slow", "tight", "short", "sharp", "fair", "fine", "flat", "light",
        "pretty", "still", "just", "even", "enough", "most", "more", "less", "least", "little", "much",
        "better", "best", "well", "further"};
    return words;
}

namespace detail {

inline bool lexical_v1(const Token& t) {
    return starts(t.pos, "NN") || starts(t.pos, "VB") || t.pos == "MD" || starts(t.pos, "JJ") ||
           starts(t.pos, "RB");
}

inline bool lexical_v2(const Token& t) {
    if (starts(t.pos, "NN") || starts(t.pos, "JJ")) return true;
    if (starts(t.pos, "VB")) return t.lemma != "be" && t.lemma != "have";
    if (t.pos == "RB" || t.pos == "RBR" || t.pos == "RBS") {
        if (t.lower.size() > 2 && str::ends_with(t.lower, "ly")) return true;
        const auto& h = adjective_homograph_adverbs();
        return h.count(t.lower) != 0 || h.count(lemmatize(t.lower, CoarsePos::adj)) != 0;
    }
    return false;
}

}  // namespace detail

struct LexicalDensity {
    double v1 = 0, v2 = 0;
};

inline LexicalDensity lexical_density(const AnalyzedDoc& doc) {
    std::size_t n = 0, a = 0, b = 0;
    doc.for_each_word([&](const Token& t) {
        ++n;
        a += detail::lexical_v1(t) ? 1 : 0;
        b += detail::lexical_v2(t) ? 1 : 0;
    });
    detail::require_words(n);
    return {static_cast<double>(a) / static_cast<double>(n), static_cast<double>(b) / static_cast<double>(n)};
}

struct LexicalSophistication {
    double lexsph = 0;
    double cls = 0;
    std::optional<double> vsm, vsm_sq;
};

inline LexicalSophistication lexical_sophistication(const AnalyzedDoc& doc, const FrequencyTable& ft,
                                                    const WordLists& lists, long rank_cutoff = 3000) {
    LexicalSophistication f;
    std::size_t n = 0, lexical = 0, rare = 0, content = 0, verbs = 0, soph = 0;
    double freq_sum = 0;
    doc.for_each_word([&](const Token& t) {
        ++n;
        if (detail::lexical_v2(t)) {
            ++lexical;
            const auto r = ft.rank_of(t.stem);
            if (!r || *r > rank_cutoff) ++rare;
        }
        if (!lists.stopwords.contains(t.lower)) {
            ++content;
            freq_sum += ft.frequency_of(t.stem);
        }
        if (detail::starts(t.pos, "VB")) {
            ++verbs;
            if (!lists.frequent_verbs.contains(t.lemma)) ++soph;
        }
    });
    detail::require_words(n);
    f.lexsph = lexical ? static_cast<double>(rare) / static_cast<double>(lexical) : 0.0;
    f.cls = content ? freq_sum / static_cast<double>(content) : 0.0;
    if (verbs) {
        f.vsm = static_cast<double>(soph) / static_cast<double>(verbs);
        f.vsm_sq = static_cast<double>(soph) / std::sqrt(2.0 * static_cast<double>(verbs));
    }
    return f;
}

struct DiversityBasic {
    double ndw = 0, ttr = 0, gttr = 0, cttr = 0;
};

inline std::vector<std::string> diversity_tokens(const AnalyzedDoc& doc) {
    std::vector<std::string> out;
    doc.for_each_word([&](const Token& t) { out.push_back(t.lower); });
    return out;
}

inline DiversityBasic diversity_basic(const std::vector<std::string>& tokens) {
    detail::require_words(tokens.size());
    const std::unordered_set<std::string> types(tokens.begin(), tokens.end());
    const double n = static_cast<double>(tokens.size());
    const double ndw = static_cast<double>(types.size());
    return {ndw, ndw / n * 100.0, ndw / std::sqrt(n) * 100.0, ndw / std::sqrt(2.0 * n) * 100.0};
}

namespace detail {

inline double mtld_pass(const std::vector<std::string>& tokens, double threshold, bool reverse) {
    const std::size_t n = tokens.size();
    double factors = 0;
    std::unordered_set<std::string> types;
    std::size_t count = 0;
    double ttr = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& tok = reverse ? tokens[n - 1 - k] : tokens[k];
        types.insert(tok);
        ++count;
        ttr = static_cast<double>(types.size()) / static_cast<double>(count);
        if (ttr <= threshold) {
            factors += 1.0;
            types.clear();
            count = 0;
            ttr = 1.0;
        }
    }
    if (count > 0) factors += (1.0 - ttr) / (1.0 - threshold);
    if (factors <= 0) return static_cast<double>(n);
    return static_cast<double>(n) / factors;
}

}  // namespace detail

inline std::optional<double> mtld(const std::vector<std::string>& tokens, double threshold = 0.72,
                                  std::size_t min_tokens = 30) {
    if (tokens.size() < min_tokens || tokens.empty()) return std::nullopt;
    return (detail::mtld_pass(tokens, threshold, false) + detail::mtld_pass(tokens, threshold, true)) / 2.0;
}

// Probability that none of `c` marked items appear in `s` draws without
// replacement from `n`.
inline double hypergeom_none(std::size_t n, std::size_t c, std::size_t s) {
    if (c + s > n) return 0.0;
    double p = 1.0;
    for (std::size_t i = 0; i < s; ++i) p *= static_cast<double>(n - c - i) / static_cast<double>(n - i);
    return p;
}

inline std::optional<double> hdd(const std::vector<std::string>& tokens, std::size_t sample_size = 42) {
    if (sample_size == 0 || tokens.size() < sample_size) return std::nullopt;
    std::map<std::string, std::size_t> counts;
    for (const auto& t : tokens) ++counts[t];
    double sum = 0;
    for (const auto& [_, c] : counts)
        sum += (1.0 - hypergeom_none(tokens.size(), c, sample_size)) / static_cast<double>(sample_size);
    return sum;
}

}  // namespace textlevel
