#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "textlevel/corpus/builtin.hpp"
#include "textlevel/tagging/perceptron.hpp"
#include "textlevel/textpipe/porter.hpp"
#include "textlevel/util/error.hpp"
#include "textlevel/util/rng.hpp"
#include "textlevel/util/strings.hpp"

// Seeded generator for a three-level demo corpus plus a matching resource
// directory (pronunciations, frequency ranks, word lists, norms, vectors and
// a tagger trained on generator output).
namespace textlevel::synth {

struct Token {
    std::string word;
    std::string tag;
};
using Sentence = std::vector<Token>;

// Letter-to-phoneme approximation good enough for syllable counts.
inline std::vector<std::string> pronounce(const std::string& word) {
    const std::string w = str::to_lower(word);
    const std::size_t n = w.size();
    auto vowel_at = [&](std::size_t i) {
        const char c = w[i];
        return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || (c == 'y' && i > 0);
    };
    std::size_t groups = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (vowel_at(i) && (i == 0 || !vowel_at(i - 1))) ++groups;
    auto silent = [&](std::size_t i) {
        if (groups < 2 || w[i] != 'e' || (i > 0 && vowel_at(i - 1))) return false;
        if (i + 1 == n) return n > 2;
        if (i + 2 == n && w[i + 1] == 'd') return i > 0 && w[i - 1] != 't' && w[i - 1] != 'd';
        if (i + 2 == n && w[i + 1] == 's')
            return i > 0 && w[i - 1] != 's' && w[i - 1] != 'x' && w[i - 1] != 'z' && w[i - 1] != 'h';
        return false;
    };
    static const std::map<std::string, std::string> digraph = {{"th", "TH"}, {"sh", "SH"}, {"ch", "CH"}, {"ng", "NG"},
                                                                 {"ph", "F"},  {"ck", "K"},  {"wh", "W"}};
    static const std::map<std::string, std::string> vowel_pair = {{"ee", "IY"}, {"ea", "IY"}, {"oo", "UW"}, {"ou", "AW"},
                                                                    {"ai", "EY"}, {"ay", "EY"}, {"oa", "OW"}, {"oi", "OY"}};
    static const std::map<char, std::string> single = {{'b', "B"}, {'d', "D"}, {'f', "F"}, {'g', "G"}, {'h', "HH"},
                                                       {'j', "JH"}, {'k', "K"}, {'l', "L"}, {'m', "M"}, {'n', "N"},
                                                       {'p', "P"}, {'q', "K"}, {'r', "R"}, {'s', "S"}, {'t', "T"},
                                                       {'v', "V"}, {'w', "W"}, {'z', "Z"}, {'y', "Y"}};
    std::vector<std::string> out;
    bool stressed = false;
    for (std::size_t i = 0; i < n;) {
        if (vowel_at(i)) {
            std::size_t j = i;
            while (j < n && vowel_at(j)) ++j;
            if (j - i == 1 && silent(i)) {
                i = j;
                continue;
            }
            std::string ph;
            if (j - i >= 2) {
                const auto it = vowel_pair.find(w.substr(i, 2));
                if (it != vowel_pair.end()) ph = it->second;
            }
            if (ph.empty()) {
                switch (w[i]) {
                    case 'a': ph = "AE"; break;
                    case 'e': ph = "EH"; break;
                    case 'i': ph = "IH"; break;
                    case 'o': ph = "AA"; break;
                    case 'u': ph = "AH"; break;
                    default: ph = "IY";
                }
            }
            out.push_back(ph + (stressed ? "0" : "1"));
            stressed = true;
            i = j;
            continue;
        }
        if (i + 1 < n) {
            const auto it = digraph.find(w.substr(i, 2));
            if (it != digraph.end()) {
                out.push_back(it->second);
                i += 2;
                continue;
            }
        }
        if (i > 0 && w[i] == w[i - 1]) {
            ++i;
            continue;
        }
        if (w[i] == 'x') {
            out.push_back("K");
            out.push_back("S");
        } else if (w[i] == 'c') {
            out.push_back(i + 1 < n && (w[i + 1] == 'e' || w[i + 1] == 'i') ? "S" : "K");
        } else if (auto it = single.find(w[i]); it != single.end()) {
            out.push_back(it->second);
        }
        ++i;
    }
    if (!stressed) out.push_back("AH1");
    return out;
}

struct Lemma {
    std::string base;
    char pos = 'N';  // N noun, V verb, J adjective, R adverb
    bool rare = false;
    int topic = 0;
    long rank = 0;
};

inline std::string verb_form(const std::string& base, const std::string& tag) {
    if (tag == "VBZ") return base + "s";
    if (tag == "VBD" || tag == "VBN") return base + "ed";
    if (tag == "VBG") return base + "ing";
    return base;
}

struct FunctionWords {
    std::vector<std::string> det_sg = {"the", "a", "this", "that", "every"};
    std::vector<std::string> det_pl = {"the", "these", "those", "some"};
    std::vector<std::string> pron_sg = {"he", "she", "it"};
    std::vector<std::string> pron_pl = {"they", "we"};
    std::vector<std::string> poss = {"his", "her", "their", "our", "its"};
    std::vector<std::string> prep = {"in", "on", "at", "with", "from", "under", "over", "near", "after",
                                     "before", "during", "without", "about", "into", "through", "behind", "across"};
    std::vector<std::string> subord = {"because", "although", "while", "if", "since", "whereas", "unless", "though", "until"};
    std::vector<std::string> modal = {"can", "should", "might", "must", "could"};
    std::vector<std::string> connectors = {"however", "therefore", "moreover", "hence", "thus", "consequently",
                                           "furthermore", "meanwhile", "nevertheless", "also", "then", "finally",
                                           "indeed", "besides", "instead"};
    std::vector<Sentence> multi_connectors = {{{"in", "IN"}, {"addition", "NN"}},
                                              {{"for", "IN"}, {"example", "NN"}},
                                              {{"as", "IN"}, {"a", "DT"}, {"result", "NN"}},
                                              {{"in", "IN"}, {"fact", "NN"}}};
    std::vector<std::string> extra = {"and", "but", "or", "will", "is", "are", "was", "were", "has", "have", "had",
                                      "been", "did", "does", "do", "to", "which", "who", "when", "not", "by", "be"};

    std::vector<std::string> all() const {
        std::set<std::string> s;
        for (const auto* v : {&det_sg, &det_pl, &pron_sg, &pron_pl, &poss, &prep, &subord, &modal, &connectors, &extra})
            s.insert(v->begin(), v->end());
        for (const auto& m : multi_connectors)
            for (const auto& t : m) s.insert(t.word);
        return {s.begin(), s.end()};
    }
};

struct LevelParams {
    double mean_length;
    double rare_rate;     // share of tokens drawn beyond the rare rank
    double subordinator;  // weight of subordinate-clause extensions
    double connector;     // chance a sentence opens with a connector
    double adjective;
    std::array<double, 10> tenses;  // see Grammar::TenseKind
};

inline const std::array<LevelParams, 3>& level_params() {
    static const std::array<LevelParams, 3> p = {{
        {6, 0.02, 0.05, 0.05, 0.10, {0.55, 0.20, 0.15, 0.00, 0.00, 0.00, 0.10, 0.00, 0.00, 0.00}},
        {12, 0.10, 0.30, 0.15, 0.25, {0.30, 0.30, 0.08, 0.07, 0.10, 0.00, 0.07, 0.04, 0.02, 0.02}},
        {20, 0.25, 0.55, 0.30, 0.40, {0.15, 0.20, 0.03, 0.07, 0.15, 0.10, 0.05, 0.10, 0.08, 0.07}},
    }};
    return p;
}

class Grammar {
public:
    enum TenseKind {
        present,
        past,
        present_prog,
        past_prog,
        present_perfect,
        past_perfect,
        future,
        modal,
        passive_present,
        passive_past
    };

    static constexpr int topics = 6;
    static constexpr long rare_rank = 3000;

    Grammar() { build_lexicon(); }

    const std::vector<Lemma>& lemmas() const { return lemmas_; }
    const FunctionWords& function_words() const { return fw_; }

    // Surface forms of a lemma with their tags.
    static std::vector<Token> forms(const Lemma& l) {
        switch (l.pos) {
            case 'N': return {{l.base, "NN"}, {l.base + "s", "NNS"}};
            case 'V':
                return {{l.base, "VB"}, {l.base + "s", "VBZ"}, {l.base + "ed", "VBD"}, {l.base + "ing", "VBG"}};
            case 'J': return {{l.base, "JJ"}};
            default: return {{l.base, "RB"}};
        }
    }

    Sentence sentence(int level, int topic, Rng& rng) const {
        const auto& lp = level_params()[static_cast<std::size_t>(level - 1)];
        const double target = std::max(3.0, std::round(rng.normal(lp.mean_length, lp.mean_length * 0.25)));
        Sentence s;
        if (rng.uniform() < 0.04) {
            question(s, lp, topic, rng);
            s.push_back({"?", "."});
            return capitalize(s);
        }
        if (rng.uniform() < lp.connector) {
            if (rng.uniform() < 0.3) {
                const auto& m = fw_.multi_connectors[rng.index(fw_.multi_connectors.size())];
                s.insert(s.end(), m.begin(), m.end());
            } else {
                s.push_back({rng.pick(fw_.connectors), "RB"});
            }
            s.push_back({",", ","});
        }
        Sentence body;
        clause(body, lp, topic, rng);
        while (static_cast<double>(words(s) + words(body)) < target) extend(body, lp, topic, rng);
        s.insert(s.end(), body.begin(), body.end());
        s.push_back({".", "."});
        return capitalize(s);
    }

    static std::size_t words(const Sentence& s) {
        std::size_t n = 0;
        for (const auto& t : s) n += std::isalpha(static_cast<unsigned char>(t.word[0])) ? 1 : 0;
        return n;
    }

    static std::string render(const std::vector<Sentence>& sentences) {
        std::string out;
        for (std::size_t i = 0; i < sentences.size(); ++i) {
            if (i) out += (i % 5 == 0) ? "\n\n" : " ";
            std::string line;
            for (const auto& t : sentences[i]) {
                const bool punct = !std::isalnum(static_cast<unsigned char>(t.word[0]));
                if (!line.empty() && !punct) line += ' ';
                line += t.word;
            }
            out += line;
        }
        return out + "\n";
    }

private:
    std::vector<Lemma> lemmas_;
    // [rare][topic] for nouns; [rare] for the rest
    std::array<std::array<std::vector<std::size_t>, topics>, 2> nouns_;
    std::array<std::vector<std::size_t>, 2> verbs_, adjs_, advs_;
    FunctionWords fw_;

    static Sentence capitalize(Sentence s) {
        if (!s.empty() && !s[0].word.empty()) s[0].word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0].word[0])));
        return s;
    }

    void build_lexicon() {
        static const std::vector<std::string> onsets = {"b",  "d",  "f",  "g",  "k",  "l",  "m",  "n",  "p",
                                                        "r",  "s",  "t",  "v",  "z",  "br", "dr", "fl", "gr",
                                                        "pl", "pr", "sk", "sl", "sp", "st", "tr", "kl", "bl"};
        static const std::vector<std::string> vowels = {"a", "e", "i", "o", "u"};
        static const std::vector<std::string> codas = {"", "", "", "n", "r", "l", "m", "t", "k", "nd", "mp"};
        static const std::vector<std::string> final_codas = {"n", "r", "l", "m", "t", "k", "nd", "mp", "nt", "lk"};
        Rng rng(0x5eed5eedULL);
        std::set<std::string> taken, stems;
        for (const auto& w : fw_.all()) taken.insert(w), stems.insert(porter_stem(w));
        for (const auto& w : builtin::stopwords()) taken.insert(w), stems.insert(porter_stem(w));
        auto root = [&](int syllables) {
            std::string w;
            for (int k = 0; k < syllables; ++k) {
                w += rng.pick(onsets) + rng.pick(vowels);
                w += k + 1 == syllables ? rng.pick(final_codas) : rng.pick(codas);
            }
            return w;
        };
        static const std::vector<std::string> noun_suffix = {"ment", "ity", "ness", "ism", "ance"};
        static const std::vector<std::string> adj_suffix = {"ous", "ive", "al", "ic", "able"};
        static const std::vector<std::string> verb_prefix = {"re", "pre", "dis", "con", "inter", "sub"};
        auto fresh = [&](char pos, bool rare) {
            for (;;) {
                std::string w;
                if (!rare) {
                    w = root(1 + static_cast<int>(rng.index(2)));
                } else if (pos == 'N') {
                    w = root(2) + rng.pick(noun_suffix);
                } else if (pos == 'J') {
                    w = root(2) + rng.pick(adj_suffix);
                } else {
                    w = rng.pick(verb_prefix) + root(2);
                }
                if (taken.count(w)) continue;
                std::vector<std::string> surfaces;
                Lemma probe{w, pos};
                for (const auto& f : forms(probe)) surfaces.push_back(f.word);
                if (pos == 'J') surfaces.push_back(w + "ly");
                bool clash = false;
                // Abbreviations such as "sen" would swallow a sentence-final period.
                for (const auto& s : surfaces) clash = clash || taken.count(s) || abbreviations().count(s);
                const std::string stem = porter_stem(w);
                if (clash || stems.count(stem)) continue;
                for (const auto& s : surfaces) taken.insert(s);
                stems.insert(stem);
                if (pos == 'J') stems.insert(porter_stem(w + "ly"));
                return w;
            }
        };
        auto add = [&](const std::string& base, char pos, bool rare, int topic) {
            lemmas_.push_back({base, pos, rare, topic, 0});
            const std::size_t id = lemmas_.size() - 1;
            const int r = rare ? 1 : 0;
            if (pos == 'N') nouns_[static_cast<std::size_t>(r)][static_cast<std::size_t>(topic)].push_back(id);
            else if (pos == 'V') verbs_[static_cast<std::size_t>(r)].push_back(id);
            else if (pos == 'J') adjs_[static_cast<std::size_t>(r)].push_back(id);
            else advs_[static_cast<std::size_t>(r)].push_back(id);
        };
        for (int rare = 0; rare < 2; ++rare) {
            for (int t = 0; t < topics; ++t)
                for (int k = 0; k < 40; ++k) add(fresh('N', rare), 'N', rare, t);
            for (int k = 0; k < 80; ++k) add(fresh('V', rare), 'V', rare, static_cast<int>(rng.index(topics)));
            for (int k = 0; k < 70; ++k) {
                const auto a = fresh('J', rare);
                add(a, 'J', rare, static_cast<int>(rng.index(topics)));
                if (k < 20) add(a + "ly", 'R', rare, static_cast<int>(rng.index(topics)));
            }
        }
        // ranks: function words first, then common content words below the
        // rare cutoff, then rare words beyond it
        const long nfw = static_cast<long>(fw_.all().size());
        std::vector<std::size_t> common, rare;
        for (std::size_t i = 0; i < lemmas_.size(); ++i) (lemmas_[i].rare ? rare : common).push_back(i);
        rng.shuffle(common);
        rng.shuffle(rare);
        const double span = static_cast<double>(rare_rank - nfw - 1);
        for (std::size_t k = 0; k < common.size(); ++k)
            lemmas_[common[k]].rank =
                nfw + 1 + static_cast<long>(std::floor(span * static_cast<double>(k) / static_cast<double>(common.size())));
        for (std::size_t k = 0; k < rare.size(); ++k) lemmas_[rare[k]].rank = rare_rank + 1 + static_cast<long>(k) * 5;
    }

    const Lemma& content(const std::array<std::vector<std::size_t>, 2>& pool, const LevelParams& lp, Rng& rng) const {
        // content words are roughly half the tokens
        const bool rare = rng.uniform() < std::min(1.0, lp.rare_rate * 2.0);
        return lemmas_[rng.pick(pool[rare ? 1 : 0])];
    }

    const Lemma& noun(const LevelParams& lp, int topic, Rng& rng) const {
        const bool rare = rng.uniform() < std::min(1.0, lp.rare_rate * 2.0);
        const int t = rng.uniform() < 0.75 ? topic : static_cast<int>(rng.index(topics));
        return lemmas_[rng.pick(nouns_[rare ? 1 : 0][static_cast<std::size_t>(t)])];
    }

    // Appends a noun phrase; returns true when plural.
    bool noun_phrase(Sentence& s, const LevelParams& lp, int topic, Rng& rng, bool allow_pronoun) const {
        const bool plural = rng.uniform() < 0.35;
        if (allow_pronoun && rng.uniform() < 0.25) {
            s.push_back({rng.pick(plural ? fw_.pron_pl : fw_.pron_sg), "PRP"});
            return plural;
        }
        if (rng.uniform() < 0.15)
            s.push_back({rng.pick(fw_.poss), "PRP$"});
        else
            s.push_back({rng.pick(plural ? fw_.det_pl : fw_.det_sg), "DT"});
        int adjectives = 0;
        while (adjectives < 2 && rng.uniform() < lp.adjective) {
            s.push_back({content(adjs_, lp, rng).base, "JJ"});
            ++adjectives;
        }
        const auto& n = noun(lp, topic, rng);
        s.push_back(plural ? Token{n.base + "s", "NNS"} : Token{n.base, "NN"});
        return plural;
    }

    TenseKind pick_tense(const LevelParams& lp, Rng& rng) const {
        double u = rng.uniform(), acc = 0;
        for (std::size_t k = 0; k < lp.tenses.size(); ++k) {
            acc += lp.tenses[k];
            if (u < acc) return static_cast<TenseKind>(k);
        }
        return present;
    }

    void verb_phrase(Sentence& s, bool plural, const LevelParams& lp, int topic, Rng& rng) const {
        const auto& v = content(verbs_, lp, rng);
        const TenseKind t = pick_tense(lp, rng);
        const std::string be_now = plural ? "are" : "is", be_then = plural ? "were" : "was";
        const std::string be_now_tag = plural ? "VBP" : "VBZ";
        bool passive = false;
        switch (t) {
            case present: s.push_back({verb_form(v.base, plural ? "VBP" : "VBZ"), plural ? "VBP" : "VBZ"}); break;
            case past: s.push_back({verb_form(v.base, "VBD"), "VBD"}); break;
            case present_prog:
                s.push_back({be_now, be_now_tag});
                s.push_back({verb_form(v.base, "VBG"), "VBG"});
                break;
            case past_prog:
                s.push_back({be_then, "VBD"});
                s.push_back({verb_form(v.base, "VBG"), "VBG"});
                break;
            case present_perfect:
                s.push_back({plural ? "have" : "has", be_now_tag});
                s.push_back({verb_form(v.base, "VBN"), "VBN"});
                break;
            case past_perfect:
                s.push_back({"had", "VBD"});
                s.push_back({verb_form(v.base, "VBN"), "VBN"});
                break;
            case future:
                s.push_back({"will", "MD"});
                s.push_back({v.base, "VB"});
                break;
            case modal:
                s.push_back({rng.pick(fw_.modal), "MD"});
                s.push_back({v.base, "VB"});
                break;
            case passive_present:
            case passive_past:
                s.push_back({t == passive_present ? be_now : be_then, t == passive_present ? be_now_tag : "VBD"});
                s.push_back({verb_form(v.base, "VBN"), "VBN"});
                passive = true;
                break;
        }
        if (passive) {
            if (rng.uniform() < 0.4) {
                s.push_back({"by", "IN"});
                noun_phrase(s, lp, topic, rng, false);
            }
        } else if (rng.uniform() < 0.85) {
            noun_phrase(s, lp, topic, rng, false);
        }
        if (rng.uniform() < lp.adjective * 0.3) s.push_back({content(advs_, lp, rng).base, "RB"});
    }

    void clause(Sentence& s, const LevelParams& lp, int topic, Rng& rng) const {
        const bool plural = noun_phrase(s, lp, topic, rng, true);
        verb_phrase(s, plural, lp, topic, rng);
    }

    void question(Sentence& s, const LevelParams& lp, int topic, Rng& rng) const {
        const bool past_q = rng.uniform() < 0.5;
        Sentence subj;
        const bool plural = noun_phrase(subj, lp, topic, rng, true);
        if (past_q) s.push_back({"did", "VBD"});
        else s.push_back({plural ? "do" : "does", plural ? "VBP" : "VBZ"});
        s.insert(s.end(), subj.begin(), subj.end());
        s.push_back({content(verbs_, lp, rng).base, "VB"});
        noun_phrase(s, lp, topic, rng, false);
    }

    void extend(Sentence& s, const LevelParams& lp, int topic, Rng& rng) const {
        const double w_sub = lp.subordinator, w_pp = 0.35, w_coord = 0.2, w_rel = 0.15, w_inf = 0.1;
        const double total = w_sub + w_pp + w_coord + w_rel + w_inf;
        double u = rng.uniform() * total;
        if ((u -= w_sub) < 0) {
            Sentence sub;
            const std::string sb = rng.pick(fw_.subord);
            sub.push_back({sb, "IN"});
            clause(sub, lp, topic, rng);
            if (rng.uniform() < 0.3) {
                sub.push_back({",", ","});
                s.insert(s.begin(), sub.begin(), sub.end());
            } else {
                s.insert(s.end(), sub.begin(), sub.end());
            }
        } else if ((u -= w_pp) < 0) {
            s.push_back({rng.pick(fw_.prep), "IN"});
            noun_phrase(s, lp, topic, rng, false);
        } else if ((u -= w_coord) < 0) {
            s.push_back({rng.uniform() < 0.7 ? "and" : "but", "CC"});
            clause(s, lp, topic, rng);
        } else if ((u -= w_rel) < 0) {
            s.push_back({"which", "WDT"});
            const auto& v = content(verbs_, lp, rng);
            s.push_back({verb_form(v.base, "VBZ"), "VBZ"});
            noun_phrase(s, lp, topic, rng, false);
        } else {
            s.push_back({"to", "TO"});
            s.push_back({content(verbs_, lp, rng).base, "VB"});
            noun_phrase(s, lp, topic, rng, false);
        }
    }
};

struct Document {
    int level = 1;
    std::string id;
    std::vector<Sentence> sentences;
    std::string text() const { return Grammar::render(sentences); }
};

inline Document generate_document(const Grammar& g, int level, std::size_t index, Rng rng) {
    Document d;
    d.level = level;
    char buf[32];
    std::snprintf(buf, sizeof buf, "l%d-doc%04zu", level, index + 1);
    d.id = buf;
    const int topic = static_cast<int>(rng.index(Grammar::topics));
    const double target = 120 + rng.uniform() * 100;
    std::size_t words = 0;
    while (static_cast<double>(words) < target) {
        d.sentences.push_back(g.sentence(level, topic, rng));
        words += Grammar::words(d.sentences.back());
    }
    return d;
}

// Corpus documents for every level; stream per (level, index).
inline std::vector<Document> generate_documents(const Grammar& g, std::uint64_t seed, std::size_t per_level) {
    std::vector<Document> docs;
    const Rng master(seed);
    for (int level = 1; level <= 3; ++level)
        for (std::size_t i = 0; i < per_level; ++i)
            docs.push_back(generate_document(g, level, i, master.derive(static_cast<std::uint64_t>(level) * 1000003ULL + i)));
    return docs;
}

inline std::vector<TaggedSentence> tagger_training_set(const Grammar& g, std::size_t per_level) {
    std::vector<TaggedSentence> out;
    Rng rng(0x7a66e5ULL);
    for (int level = 1; level <= 3; ++level)
        for (std::size_t i = 0; i < per_level; ++i) {
            const auto s = g.sentence(level, static_cast<int>(rng.index(Grammar::topics)), rng);
            TaggedSentence ts;
            ts.source = TaggedSentence::Source::ingested;
            for (const auto& t : s) {
                ts.words.push_back(t.word);
                ts.tags.push_back(t.tag);
            }
            out.push_back(std::move(ts));
        }
    return out;
}

namespace detail {

inline std::string fixed(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline std::string join_lines(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) out += s + "\n";
    return out;
}

}  // namespace detail

// Writes the resource directory used to extract the synthetic corpus.
inline void write_resources(const Grammar& g, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto put = [&](const std::string& name, const std::string& content) {
        str::write_file((fs::path(dir) / name).string(), content);
    };
    const auto& lemmas = g.lemmas();
    const auto fws = g.function_words().all();

    // pronunciations for every surface form
    std::set<std::string> surfaces(fws.begin(), fws.end());
    for (const auto& w : builtin::stopwords()) surfaces.insert(w);
    for (const auto& w : builtin::discourse_connectors())
        for (const auto& part : str::split_ws(w)) surfaces.insert(part);
    for (const auto& l : lemmas)
        for (const auto& f : Grammar::forms(l)) surfaces.insert(f.word);
    std::string cmu = ";;; synthetic pronunciation lexicon\n";
    for (const auto& w : surfaces) {
        cmu += str::to_upper(w) + " ";
        for (const auto& ph : pronounce(w)) cmu += " " + ph;
        cmu += "\n";
    }
    put("cmudict.txt", cmu);

    // frequency ranks: function words, then lemmas by rank
    std::vector<std::pair<long, std::string>> ranked;
    long r = 0;
    for (const auto& w : fws) ranked.emplace_back(++r, w);
    for (const auto& l : lemmas) ranked.emplace_back(l.rank, l.base);
    std::sort(ranked.begin(), ranked.end());
    std::string freq = "rank,word,frequency\n";
    for (const auto& [rank, w] : ranked)
        freq += std::to_string(rank) + "," + w + "," + std::to_string(static_cast<long>(5.0e7 / static_cast<double>(rank))) + "\n";
    put("frequency.csv", freq);

    std::vector<std::string> frequent_verbs = {"be", "have", "do", "will", "can", "say", "make", "go", "take", "get"};
    std::vector<std::string> spache(fws.begin(), fws.end()), dale(fws.begin(), fws.end());
    std::vector<const Lemma*> by_rank;
    for (const auto& l : lemmas) by_rank.push_back(&l);
    std::sort(by_rank.begin(), by_rank.end(), [](const Lemma* a, const Lemma* b) { return a->rank < b->rank; });
    std::size_t verbs = 0;
    for (const auto* l : by_rank) {
        if (l->rare) continue;
        dale.push_back(l->base);
        if (l->rank < 1500) spache.push_back(l->base);
        if (l->pos == 'V' && verbs < 30) frequent_verbs.push_back(l->base), ++verbs;
    }
    put("stopwords.txt", "# default stopword list\n" + detail::join_lines(builtin::stopwords()));
    put("frequent_verbs.txt", detail::join_lines(frequent_verbs));
    put("spache.txt", detail::join_lines(spache));
    put("dale_chall.txt", detail::join_lines(dale));
    put("connectors.txt", detail::join_lines(builtin::discourse_connectors()));
    put("argumentative.txt", detail::join_lines(builtin::argumentative_connectors()));
    put("prefixes.txt", detail::join_lines(builtin::prefixes()));
    put("suffixes.txt", detail::join_lines(builtin::suffixes()));

    // noun norms; rare nouns are covered less often
    Rng prng(0x9517ULL);
    std::string psych = "word,kfwf,kfncat,kfns,tl_freq,brown_freq,fam,conc,imag,meanc,meanp,aoa\n";
    for (const auto& l : lemmas) {
        if (l.pos != 'N') continue;
        if (prng.uniform() > (l.rare ? 0.5 : 0.95)) continue;
        const double lr = std::log10(static_cast<double>(l.rank));
        const double conc = 300 + prng.uniform() * 350;
        std::vector<double> v = {std::round(2000 / std::sqrt(static_cast<double>(l.rank))),
                                 static_cast<double>(1 + l.rank % 15),
                                 static_cast<double>(1 + l.rank % 300),
                                 std::round(8000 / std::sqrt(static_cast<double>(l.rank))),
                                 std::round(500 / std::sqrt(static_cast<double>(l.rank))),
                                 std::round(650 - 80 * lr + prng.normal(0, 15)),
                                 std::round(conc),
                                 std::round(conc + prng.normal(0, 40)),
                                 std::round(400 + prng.uniform() * 200),
                                 3 + prng.uniform() * 4,
                                 std::round(150 + 90 * lr + prng.normal(0, 20))};
        std::string row = l.base;
        for (double x : v) row += "," + (prng.uniform() < 0.08 ? std::string() : detail::fixed(std::max(0.0, x), 2));
        psych += row + "\n";
    }
    put("psych.csv", psych);

    // four vector tables; words of a topic share a centroid
    const std::size_t dims[] = {8, 12, 16, 24};
    const char* files[] = {"vectors1.txt", "vectors2.txt", "vectors3.txt", "vectors4.txt"};
    for (std::size_t e = 0; e < 4; ++e) {
        Rng erng = Rng(0xe3b0ULL).derive(e);
        std::vector<std::vector<double>> centroid(Grammar::topics);
        for (auto& c : centroid)
            for (std::size_t k = 0; k < dims[e]; ++k) c.push_back(erng.normal(0, 1));
        std::size_t rows = 0;
        std::string body;
        for (const auto& l : lemmas) {
            std::vector<double> v;
            for (std::size_t k = 0; k < dims[e]; ++k)
                v.push_back(centroid[static_cast<std::size_t>(l.topic)][k] + erng.normal(0, l.pos == 'N' ? 0.6 : 1.2));
            for (const auto& f : Grammar::forms(l)) {
                body += f.word;
                for (double x : v) body += " " + detail::fixed(x, 5);
                body += "\n";
                ++rows;
            }
        }
        put(files[e], std::to_string(rows) + " " + std::to_string(dims[e]) + "\n" + body);
    }

    TaggerModel::TrainOptions opt;
    opt.epochs = 5;
    const auto tagger = TaggerModel::train(tagger_training_set(g, 700), opt);
    put("tagger.json", tagger.to_json().dump() + "\n");

    nlohmann::json manifest = {
        {"resources",
         {{"pronunciation", {{"file", "cmudict.txt"}, {"format", "cmudict"}}},
          {"frequency", {{"file", "frequency.csv"}, {"format", "rank-csv"}}},
          {"stopwords", {{"file", "stopwords.txt"}, {"format", "wordlist"}}},
          {"frequent_verbs", {{"file", "frequent_verbs.txt"}, {"format", "wordlist"}}},
          {"spache_familiar", {{"file", "spache.txt"}, {"format", "wordlist"}}},
          {"dale_chall_familiar", {{"file", "dale_chall.txt"}, {"format", "wordlist"}}},
          {"discourse_connectors", {{"file", "connectors.txt"}, {"format", "wordlist"}}},
          {"argumentative_connectors", {{"file", "argumentative.txt"}, {"format", "wordlist"}}},
          {"prefixes", {{"file", "prefixes.txt"}, {"format", "wordlist"}}},
          {"suffixes", {{"file", "suffixes.txt"}, {"format", "wordlist"}}},
          {"psych", {{"file", "psych.csv"}, {"format", "mrc-csv"}}},
          {"embeddings", {{"file", "vectors1.txt"}, {"format", "word-vectors"}}},
          {"embeddings2", {{"file", "vectors2.txt"}, {"format", "word-vectors"}}},
          {"embeddings3", {{"file", "vectors3.txt"}, {"format", "word-vectors"}}},
          {"embeddings4", {{"file", "vectors4.txt"}, {"format", "word-vectors"}}},
          {"tagger", {{"file", "tagger.json"}, {"format", "perceptron-json"}}}}}};
    put("manifest.json", manifest.dump(2) + "\n");
}

struct SynthSummary {
    std::string corpus_dir, resources_dir;
    std::size_t documents = 0;
};

// <out>/corpus/level{1,2,3}/docNNNN.txt and <out>/resources/.
inline SynthSummary generate_synthetic_corpus(std::uint64_t seed, std::size_t per_level, const std::string& out) {
    namespace fs = std::filesystem;
    if (per_level < 10) throw ValidationError("per_level must be >= 10");
    const Grammar g;
    SynthSummary s;
    s.corpus_dir = (fs::path(out) / "corpus").string();
    s.resources_dir = (fs::path(out) / "resources").string();
    for (const auto& d : generate_documents(g, seed, per_level)) {
        const auto dir = fs::path(s.corpus_dir) / ("level" + std::to_string(d.level));
        fs::create_directories(dir);
        str::write_file((dir / (d.id + ".txt")).string(), d.text());
        ++s.documents;
    }
    write_resources(g, s.resources_dir);
    return s;
}

}  // namespace textlevel::synth
