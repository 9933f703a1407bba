#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "textlevel/resources.hpp"
#include "textlevel/tagging/chunker.hpp"
#include "textlevel/tagging/perceptron.hpp"
#include "textlevel/tagging/tenses.hpp"
#include "textlevel/tagging/trees.hpp"
#include "textlevel/textpipe/lemmatizer.hpp"
#include "textlevel/textpipe/textpipe.hpp"

namespace textlevel {

struct AnalyzedSentence {
    std::string raw;
    std::vector<Token> tokens;
    TaggedSentence::Source source = TaggedSentence::Source::tagged_by_model;
    TenseProfile tenses;
    std::vector<Chunk> chunks;

    std::vector<std::string> words() const {
        std::vector<std::string> out;
        out.reserve(tokens.size());
        for (const auto& t : tokens) out.push_back(t.surface);
        return out;
    }
    std::vector<std::string> tags() const {
        std::vector<std::string> out;
        out.reserve(tokens.size());
        for (const auto& t : tokens) out.push_back(t.pos);
        return out;
    }
    std::size_t word_count() const {
        std::size_t n = 0;
        for (const auto& t : tokens) n += t.is_word ? 1 : 0;
        return n;
    }
};

struct AnalyzedDoc {
    std::vector<AnalyzedSentence> sentences;
    std::vector<ParseTree> trees;  // one per sentence in tree mode, else empty
    std::size_t replaced_bytes = 0;

    bool tree_mode() const { return !trees.empty(); }

    std::size_t word_count() const {
        std::size_t n = 0;
        for (const auto& s : sentences) n += s.word_count();
        return n;
    }

    template <typename F>
    void for_each_word(F&& f) const {
        for (const auto& s : sentences)
            for (const auto& t : s.tokens)
                if (t.is_word) f(t);
    }
};

inline AnalyzedSentence finish_sentence(std::string raw, std::vector<Token> tokens,
                                        const std::vector<std::string>& tags, TaggedSentence::Source source) {
    AnalyzedSentence s;
    s.raw = std::move(raw);
    s.tokens = std::move(tokens);
    s.source = source;
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
        auto& t = s.tokens[i];
        t.pos = tags[i];
        if (t.is_word) t.lemma = lemmatize_tagged(t.lower, t.pos);
    }
    const auto words = s.words();
    s.tenses = detect_tenses(words, tags);
    s.chunks = chunk(words, tags);
    return s;
}

// Full per-document pipeline: UTF-8 repair, normalization, sentence
// splitting, tokenization, tagging (or tree ingestion), lemmas, tenses and
// chunks. When `trees` is given, tags come from the trees' preterminals.
inline AnalyzedDoc analyze(std::string text, const ResourceBundle& bundle, const TaggerModel* tagger = nullptr,
                           const std::vector<ParseTree>* trees = nullptr) {
    AnalyzedDoc doc;
    doc.replaced_bytes = str::sanitize_utf8(text);
    const std::string norm = normalize_text(text);
    const auto raws = split_sentences(norm);
    std::vector<std::vector<Token>> toks;
    std::vector<std::vector<std::string>> surfaces;
    for (const auto& r : raws) {
        auto t = tokenize(r, bundle);
        std::vector<std::string> words;
        for (const auto& tok : t) words.push_back(tok.surface);
        toks.push_back(std::move(t));
        surfaces.push_back(std::move(words));
    }
    if (trees && !trees->empty()) {
        align_trees(*trees, surfaces);
        doc.trees = *trees;
        for (std::size_t i = 0; i < raws.size(); ++i)
            doc.sentences.push_back(
                finish_sentence(raws[i], std::move(toks[i]), (*trees)[i].tags(), TaggedSentence::Source::ingested));
        return doc;
    }
    if (!tagger) tagger = bundle.tagger ? &*bundle.tagger : nullptr;
    if (!tagger) throw ValidationError("no tagger model available (add a 'tagger' resource or supply trees)");
    for (std::size_t i = 0; i < raws.size(); ++i) {
        const auto tags = tagger->tag(surfaces[i]);
        doc.sentences.push_back(
            finish_sentence(raws[i], std::move(toks[i]), tags, TaggedSentence::Source::tagged_by_model));
    }
    return doc;
}

}  // namespace textlevel
