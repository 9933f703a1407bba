#pragma once

#include <string>
#include <string_view>
#include <unordered_map>

#include "textlevel/util/strings.hpp"

namespace textlevel {

enum class CoarsePos { noun, verb, adj, adv, other };

inline CoarsePos coarse_pos(std::string_view penn_tag) {
    if (str::starts_with(penn_tag, "NN")) return CoarsePos::noun;
    if (str::starts_with(penn_tag, "VB") || penn_tag == "MD") return CoarsePos::verb;
    if (str::starts_with(penn_tag, "JJ")) return CoarsePos::adj;
    if (str::starts_with(penn_tag, "RB")) return CoarsePos::adv;
    return CoarsePos::other;
}

namespace detail {

struct LemmaTables {
    std::unordered_map<std::string, std::string> verb, noun, adj;

    LemmaTables() {
        // base form followed by its irregular inflections
        static const char* const verbs[] = {
            "be am is are was were been being 're 'm art",
            "have has had having 've",
            "do does did done doing",
            "go goes went gone",
            "arise arose arisen", "awake awoke awoken", "bear bore borne born",
            "beat beaten", "become became", "begin began begun", "bend bent",
            "bind bound", "bite bit bitten", "bleed bled", "blow blew blown",
            "break broke broken", "breed bred", "bring brought", "build built",
            "burn burnt", "buy bought", "catch caught", "choose chose chosen",
            "cling clung", "come came", "creep crept", "deal dealt", "dig dug",
            "draw drew drawn", "dream dreamt", "drink drank drunk", "drive drove driven",
            "eat ate eaten", "fall fell fallen", "feed fed", "feel felt", "fight fought",
            "find found", "flee fled", "fly flew flown flies", "forbid forbade forbidden",
            "forget forgot forgotten", "forgive forgave forgiven", "freeze froze frozen",
            "get got gotten", "give gave given", "grind ground", "grow grew grown",
            "hang hung", "hear heard", "hide hid hidden", "hold held", "keep kept",
            "kneel knelt", "know knew known", "lay laid", "lead led", "lean leant",
            "leap leapt", "learn learnt", "leave left", "lend lent", "lie lain",
            "light lit", "lose lost", "make made", "mean meant", "meet met",
            "pay paid", "ride rode ridden", "ring rang rung", "rise rose risen",
            "run ran", "say said says", "see saw seen", "seek sought", "sell sold",
            "send sent", "shake shook shaken", "shine shone", "shoot shot",
            "show shown", "shrink shrank shrunk", "sing sang sung", "sink sank sunk",
            "sit sat", "sleep slept", "slide slid", "speak spoke spoken", "spend spent",
            "spin spun", "stand stood", "steal stole stolen", "stick stuck",
            "sting stung", "stink stank stunk", "strike struck", "swear swore sworn",
            "sweep swept", "swim swam swum", "swing swung", "take took taken",
            "teach taught", "tear tore torn", "tell told", "think thought",
            "throw threw thrown", "understand understood", "undertake undertook undertaken",
            "wake woke woken", "wear wore worn", "weep wept", "win won", "wind wound",
            "withdraw withdrew withdrawn", "write wrote written", "overcome overcame",
            "mistake mistook mistaken", "use used using", "foresee foresaw foreseen", "rebuild rebuilt",
            "will 'll wo", "shall sha", "can ca", "would 'd",
        };
        static const char* const nouns[] = {
            "man men", "woman women", "child children", "foot feet", "tooth teeth",
            "goose geese", "mouse mice", "person people", "ox oxen", "life lives",
            "wife wives", "knife knives", "leaf leaves", "half halves", "wolf wolves",
            "shelf shelves", "self selves", "thief thieves", "loaf loaves", "calf calves",
            "criterion criteria", "phenomenon phenomena", "analysis analyses",
            "crisis crises", "thesis theses", "hypothesis hypotheses", "basis bases",
            "index indices", "matrix matrices", "cactus cacti", "fungus fungi",
            "alumnus alumni", "stimulus stimuli", "nucleus nuclei", "radius radii",
            "datum data", "medium media", "bacterium bacteria", "curriculum curricula",
        };
        static const char* const adjs[] = {
            "good better best", "bad worse worst", "far further farther furthest farthest",
            "old elder eldest", "little less least", "many more most",
        };
        fill(verb, verbs);
        fill(noun, nouns);
        fill(adj, adjs);
    }

    template <std::size_t N>
    static void fill(std::unordered_map<std::string, std::string>& table, const char* const (&rows)[N]) {
        for (const char* row : rows) {
            auto parts = str::split_ws(row);
            for (std::size_t i = 1; i < parts.size(); ++i) table.emplace(parts[i], parts[0]);
        }
    }
};

inline const LemmaTables& lemma_tables() {
    static const LemmaTables tables;
    return tables;
}

inline bool is_vowel_letter(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// Undo consonant doubling ("runn" -> "run") and restore a dropped final e on
// one-syllable consonant-vowel-consonant stems ("mak" -> "make").
inline std::string repair_stem(std::string s) {
    const std::size_t n = s.size();
    if (n >= 3 && s[n - 1] == s[n - 2] && !is_vowel_letter(s[n - 1]) && s[n - 1] != 'l' &&
        s[n - 1] != 's' && s[n - 1] != 'z') {
        s.pop_back();
        return s;
    }
    if (n >= 3 && !is_vowel_letter(s[n - 1]) && s[n - 1] != 'w' && s[n - 1] != 'x' && s[n - 1] != 'y' &&
        is_vowel_letter(s[n - 2]) && !is_vowel_letter(s[n - 3])) {
        int vowel_groups = 0;
        bool prev = false;
        for (char c : s) {
            const bool v = is_vowel_letter(c);
            if (v && !prev) ++vowel_groups;
            prev = v;
        }
        if (vowel_groups == 1) s += 'e';
    }
    return s;
}

inline std::string noun_rules(const std::string& w) {
    const std::size_t n = w.size();
    if (n > 4 && str::ends_with(w, "ies")) return w.substr(0, n - 3) + "y";
    for (const char* sfx : {"sses", "shes", "ches", "xes", "zes"}) {
        if (str::ends_with(w, sfx)) return w.substr(0, n - 2);
    }
    if (n > 3 && str::ends_with(w, "men")) return w.substr(0, n - 3) + "man";
    if (n > 2 && w.back() == 's' && !str::ends_with(w, "ss") && !str::ends_with(w, "us") &&
        !str::ends_with(w, "is"))
        return w.substr(0, n - 1);
    return w;
}

inline std::string verb_rules(const std::string& w) {
    const std::size_t n = w.size();
    if (n > 4 && str::ends_with(w, "ies")) return w.substr(0, n - 3) + "y";
    for (const char* sfx : {"sses", "shes", "ches", "xes", "zes", "oes"}) {
        if (str::ends_with(w, sfx)) return w.substr(0, n - 2);
    }
    if (n > 4 && str::ends_with(w, "ied")) return w.substr(0, n - 3) + "y";
    if (n > 4 && str::ends_with(w, "ing")) return repair_stem(w.substr(0, n - 3));
    if (n > 3 && str::ends_with(w, "eed")) return w.substr(0, n - 1);
    if (n > 3 && str::ends_with(w, "ed")) return repair_stem(w.substr(0, n - 2));
    if (n > 2 && w.back() == 's' && !str::ends_with(w, "ss") && !str::ends_with(w, "us") &&
        !str::ends_with(w, "is"))
        return w.substr(0, n - 1);
    return w;
}

inline std::string adj_rules(const std::string& w) {
    const std::size_t n = w.size();
    if (n > 5 && str::ends_with(w, "iest")) return w.substr(0, n - 4) + "y";
    if (n > 4 && str::ends_with(w, "ier")) return w.substr(0, n - 3) + "y";
    if (n > 5 && str::ends_with(w, "est")) return repair_stem(w.substr(0, n - 3));
    if (n > 4 && str::ends_with(w, "er")) return repair_stem(w.substr(0, n - 2));
    return w;
}

}  // namespace detail

// Exception table hit wins; otherwise the suffix rules of the part of speech
// apply, longest suffix first; otherwise the word is its own lemma.
inline std::string lemmatize(std::string_view word, CoarsePos pos) {
    const std::string w = str::to_lower(word);
    const auto& t = detail::lemma_tables();
    switch (pos) {
        case CoarsePos::verb:
            if (auto it = t.verb.find(w); it != t.verb.end()) return it->second;
            return detail::verb_rules(w);
        case CoarsePos::noun:
            if (auto it = t.noun.find(w); it != t.noun.end()) return it->second;
            return detail::noun_rules(w);
        case CoarsePos::adj:
            if (auto it = t.adj.find(w); it != t.adj.end()) return it->second;
            return detail::adj_rules(w);
        case CoarsePos::adv:
        case CoarsePos::other:
            return w;
    }
    return w;
}

// Tag-aware variant: base-form tags (NN, NNP, VB, VBP, JJ) only consult the
// exception table, so "news" or "clever" are not stripped.
inline std::string lemmatize_tagged(std::string_view word, std::string_view penn_tag) {
    const CoarsePos pos = coarse_pos(penn_tag);
    const bool inflected = penn_tag == "NNS" || penn_tag == "NNPS" || penn_tag == "VBD" ||
                           penn_tag == "VBG" || penn_tag == "VBN" || penn_tag == "VBZ" ||
                           penn_tag == "JJR" || penn_tag == "JJS";
    if (inflected || pos == CoarsePos::adv || pos == CoarsePos::other) return lemmatize(word, pos);
    const std::string w = str::to_lower(word);
    const auto& t = detail::lemma_tables();
    const auto* table = pos == CoarsePos::verb ? &t.verb : pos == CoarsePos::noun ? &t.noun : &t.adj;
    if (auto it = table->find(w); it != table->end()) return it->second;
    return w;
}

}  // namespace textlevel
