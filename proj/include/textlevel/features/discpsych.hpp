#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "textlevel/document.hpp"
#include "textlevel/resources.hpp"
#include "textlevel/util/error.hpp"

namespace textlevel {

// Longest-first matches of list entries over the word tokens of one sentence.
inline std::size_t count_list_matches(const std::vector<std::string>& lowers, const WordList& list) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < lowers.size();) {
        std::size_t matched = 0;
        for (std::size_t len = std::min(list.longest, lowers.size() - i); len >= 1; --len) {
            std::string key = lowers[i];
            for (std::size_t k = 1; k < len; ++k) key += " " + lowers[i + k];
            if (list.contains(key)) {
                matched = len;
                break;
            }
        }
        if (matched) {
            ++count;
            i += matched;
        } else {
            ++i;
        }
    }
    return count;
}

struct CohesionFeatures {
    double conn_per_word = 0, conn_per_sent = 0, argconn_per_word = 0, argconn_per_sent = 0;
};

inline CohesionFeatures cohesion_features(const AnalyzedDoc& doc, const WordLists& lists) {
    const double words = static_cast<double>(doc.word_count());
    const double sents = static_cast<double>(doc.sentences.size());
    if (words == 0 || sents == 0) throw EmptyInputError("empty document");
    std::size_t conn = 0, arg = 0;
    for (const auto& s : doc.sentences) {
        std::vector<std::string> lowers;
        for (const auto& t : s.tokens)
            if (t.is_word) lowers.push_back(t.lower);
        conn += count_list_matches(lowers, lists.discourse_connectors);
        arg += count_list_matches(lowers, lists.argumentative_connectors);
    }
    CohesionFeatures f;
    f.conn_per_word = static_cast<double>(conn) / words;
    f.conn_per_sent = static_cast<double>(conn) / sents;
    f.argconn_per_word = static_cast<double>(arg) / words;
    f.argconn_per_sent = static_cast<double>(arg) / sents;
    return f;
}

namespace detail {

inline double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    return dot / std::sqrt(na * nb);
}

inline bool nonzero(const std::vector<double>& v) {
    for (double x : v)
        if (x != 0) return true;
    return false;
}

}  // namespace detail

// Mean similarity between contiguous sentences: each eligible word of the
// following sentence is scored by its mean cosine against the eligible words
// of the preceding one. Eligible = non-stopword (or noun-tagged when
// nouns_only) with a non-zero vector.
inline std::optional<double> coherence(const AnalyzedDoc& doc, const EmbeddingTable& emb, const WordLists& lists,
                                       bool nouns_only) {
    if (doc.sentences.size() < 2) return std::nullopt;
    std::vector<std::vector<const std::vector<double>*>> vecs;
    for (const auto& s : doc.sentences) {
        std::vector<const std::vector<double>*> v;
        for (const auto& t : s.tokens) {
            if (!t.is_word) continue;
            if (nouns_only ? t.pos.rfind("NN", 0) != 0 : lists.stopwords.contains(t.lower)) continue;
            const auto* e = emb.find(t.surface);
            if (e && detail::nonzero(*e)) v.push_back(e);
        }
        vecs.push_back(std::move(v));
    }
    double total = 0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i + 1 < vecs.size(); ++i) {
        const auto& prev = vecs[i];
        const auto& next = vecs[i + 1];
        if (prev.empty() || next.empty()) continue;
        double pair = 0;
        for (const auto* w : next) {
            double sim = 0;
            for (const auto* u : prev) sim += detail::cosine(*w, *u);
            pair += sim / static_cast<double>(prev.size());
        }
        total += pair / static_cast<double>(next.size());
        ++pairs;
    }
    if (!pairs) return std::nullopt;
    return total / static_cast<double>(pairs);
}

struct CoherenceFeatures {
    std::array<std::optional<double>, 4> all_words, nouns_only;  // per embedding slot
};

inline CoherenceFeatures coherence_features(const AnalyzedDoc& doc, const ResourceBundle& bundle) {
    CoherenceFeatures f;
    for (std::size_t k = 0; k < bundle.embeddings.size(); ++k) {
        if (!bundle.embeddings[k]) continue;
        f.all_words[k] = coherence(doc, *bundle.embeddings[k], bundle.lists, false);
        f.nouns_only[k] = coherence(doc, *bundle.embeddings[k], bundle.lists, true);
    }
    return f;
}

struct PsychFeatures {
    std::array<std::optional<double>, PsychDatabase::norm_count> norms;
    double coverage = 0;
};

inline PsychFeatures psych_features(const AnalyzedDoc& doc, const PsychDatabase* db) {
    PsychFeatures f;
    if (!db) return f;
    std::array<double, PsychDatabase::norm_count> sum{};
    std::array<std::size_t, PsychDatabase::norm_count> cnt{};
    std::size_t nouns = 0, covered = 0;
    doc.for_each_word([&](const Token& t) {
        if (t.pos.rfind("NN", 0) != 0) return;
        ++nouns;
        const auto* rec = db->find(t.lower);
        if (!rec) rec = db->find(t.lemma);
        if (!rec) return;
        ++covered;
        for (std::size_t k = 0; k < PsychDatabase::norm_count; ++k)
            if ((*rec)[k]) sum[k] += *(*rec)[k], ++cnt[k];
    });
    if (!nouns) return f;
    f.coverage = static_cast<double>(covered) / static_cast<double>(nouns);
    for (std::size_t k = 0; k < PsychDatabase::norm_count; ++k)
        if (cnt[k]) f.norms[k] = sum[k] / static_cast<double>(cnt[k]);
    return f;
}

}  // namespace textlevel
