#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "textlevel/resources.hpp"
#include "textlevel/textpipe/lemmatizer.hpp"
#include "textlevel/textpipe/porter.hpp"
#include "textlevel/util/strings.hpp"

namespace textlevel {

struct Token {
    std::string surface;
    std::string lower;
    std::string stem;
    std::string lemma;
    std::string pos;
    int graphemes = 0;
    int phonemes = 0;
    int syllables = 0;
    bool is_word = false;
    bool in_lexicon = false;
};

struct SentenceSpan {
    std::vector<Token> tokens;
    std::string raw;
};

// Abbreviations that do not end a sentence. "no" and "etc" are left out on
// purpose: both commonly close a sentence.
inline const std::unordered_set<std::string>& abbreviations() {
    static const std::unordered_set<std::string> list = {
        "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "mt", "vs", "e.g", "i.e", "inc", "ltd", "co",
        "corp", "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept", "oct", "nov", "dec",
        "vol", "fig", "gen", "col", "capt", "lt", "sgt", "rev", "gov", "sen", "rep", "u.s", "u.k", "a.m",
        "p.m", "approx", "dept", "est", "cf", "al", "ed", "eds", "pp", "ca", "messrs", "mme"};
    return list;
}

namespace detail {

inline bool is_closing(char c) { return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}'; }
inline bool is_opening(char c) { return c == '"' || c == '\'' || c == '(' || c == '['; }

// Word ending at position `dot` (exclusive), without leading punctuation.
inline std::string word_before(std::string_view text, std::size_t dot) {
    std::size_t b = dot;
    while (b > 0 && !str::is_space(text[b - 1])) --b;
    std::string w(text.substr(b, dot - b));
    while (!w.empty() && !str::is_alpha(w.front()) && !str::is_digit(w.front())) w.erase(w.begin());
    return str::to_lower(w);
}

inline bool is_abbreviation_word(const std::string& lower) {
    if (lower.empty()) return false;
    if (abbreviations().count(lower)) return true;
    // initials, except the words "a" and "i"
    if (lower.size() == 1 && str::is_alpha(lower[0])) return lower != "a" && lower != "i";
    // dotted acronyms such as "u.s" or "p.h.d"
    if (lower.find('.') != std::string::npos) {
        bool ok = true;
        for (std::size_t i = 0; i < lower.size(); ++i)
            ok = ok && (i % 2 == 0 ? str::is_alpha(lower[i]) : lower[i] == '.');
        if (ok) return true;
    }
    return false;
}

inline void push_span(std::vector<std::string>& out, std::string_view text, std::size_t b, std::size_t e) {
    auto t = str::trim(text.substr(b, e - b));
    if (!t.empty()) out.emplace_back(t);
}

}  // namespace detail

// Splits after . ? ! (plus closing quotes or brackets) when followed by
// whitespace and an uppercase letter, and at blank lines.
inline std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    const std::size_t n = text.size();
    std::size_t i = 0;
    while (i < n) {
        const char c = text[i];
        if (c == '\n') {
            std::size_t j = i + 1;
            while (j < n && (text[j] == ' ' || text[j] == '\t' || text[j] == '\r')) ++j;
            if (j < n && text[j] == '\n') {
                detail::push_span(out, text, start, i);
                while (j < n && str::is_space(text[j])) ++j;
                start = i = j;
                continue;
            }
            ++i;
            continue;
        }
        if (c != '.' && c != '?' && c != '!') {
            ++i;
            continue;
        }
        std::size_t end = i + 1;
        while (end < n && (text[end] == '.' || text[end] == '?' || text[end] == '!')) ++end;
        while (end < n && detail::is_closing(text[end])) ++end;
        if (end >= n) break;
        if (!str::is_space(text[end])) {
            i = end;
            continue;
        }
        std::size_t next = end;
        while (next < n && str::is_space(text[next])) ++next;
        if (next >= n) break;
        std::size_t probe = next;
        while (probe < n && detail::is_opening(text[probe])) ++probe;
        const bool capital = probe < n && str::is_upper(text[probe]);
        bool guarded = false;
        if (c == '.' && end == i + 1) guarded = detail::is_abbreviation_word(detail::word_before(text, i));
        if (capital && !guarded) {
            detail::push_span(out, text, start, end);
            start = next;
        }
        i = end;
    }
    detail::push_span(out, text, start, n);
    return out;
}

namespace detail {

inline bool is_clitic(const std::string& lower) {
    return lower == "'s" || lower == "'re" || lower == "'ve" || lower == "'ll" || lower == "'d" || lower == "'m";
}

inline bool numeric_like(std::string_view s) {
    return !s.empty() && str::is_digit(s.back()) && std::all_of(s.begin(), s.end(), [](char c) {
               return str::is_digit(c) || c == '.' || c == ',' || c == '-' || c == '/' || c == ':' || c == '%';
           });
}

inline bool leading_punct(char c) {
    return c == '"' || c == '(' || c == '[' || c == '{' || c == '`' || c == '\'';
}

inline bool trailing_punct(char c) {
    return c == '"' || c == ')' || c == ']' || c == '}' || c == ',' || c == ';' || c == ':' || c == '!' ||
           c == '?' || c == '.' || c == '\'';
}

inline void split_core(const std::string& core, std::vector<std::string>& out) {
    const std::string lower = str::to_lower(core);
    if (lower.size() > 3 && str::ends_with(lower, "n't")) {
        out.push_back(core.substr(0, core.size() - 3));
        out.push_back(core.substr(core.size() - 3));
        return;
    }
    if (const auto ap = lower.rfind('\''); ap != std::string::npos && ap > 0) {
        if (is_clitic(lower.substr(ap))) {
            out.push_back(core.substr(0, ap));
            out.push_back(core.substr(ap));
            return;
        }
    }
    out.push_back(core);
}

}  // namespace detail

// Replaces typographic quotes and dashes with ASCII equivalents.
inline std::string normalize_text(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
            static_cast<unsigned char>(text[i + 1]) == 0x80) {
            const unsigned char c = static_cast<unsigned char>(text[i + 2]);
            const char* rep = nullptr;
            if (c == 0x98 || c == 0x99) rep = "'";
            else if (c == 0x9C || c == 0x9D) rep = "\"";
            else if (c == 0x93 || c == 0x94) rep = " - ";
            else if (c == 0xA6) rep = "...";
            if (rep) {
                out += rep;
                i += 2;
                continue;
            }
        }
        out += text[i];
    }
    return out;
}

// Surface tokens of one sentence: whitespace split, then leading/trailing
// punctuation and clitics detached. Abbreviations keep their period and
// numbers keep internal separators.
inline std::vector<std::string> tokenize_words(std::string_view sentence) {
    std::vector<std::string> out;
    for (const auto& chunk : str::split_ws(sentence)) {
        std::string core = chunk;
        while (core.size() > 1 && detail::leading_punct(core.front())) {
            if (core.front() == '\'' && detail::is_clitic(str::to_lower(core))) break;
            if (core.front() == '`' && core.size() > 1 && core[1] == '`') {
                out.emplace_back("``");
                core.erase(0, 2);
                continue;
            }
            out.emplace_back(1, core.front());
            core.erase(core.begin());
        }
        std::vector<std::string> tail;
        while (core.size() > 1 && detail::trailing_punct(core.back())) {
            if (core.back() == '.') {
                std::size_t dots = 0;
                while (dots < core.size() && core[core.size() - 1 - dots] == '.') ++dots;
                if (dots >= 2) {
                    tail.push_back(core.substr(core.size() - dots));
                    core.resize(core.size() - dots);
                    continue;
                }
                const std::string lower = str::to_lower(core.substr(0, core.size() - 1));
                if (detail::is_abbreviation_word(lower) && !lower.empty()) break;
            }
            tail.emplace_back(1, core.back());
            core.pop_back();
        }
        if (!core.empty()) {
            if (detail::numeric_like(core) || !str::has_alpha(core)) out.push_back(core);
            else detail::split_core(core, out);
        }
        for (auto it = tail.rbegin(); it != tail.rend(); ++it) out.push_back(*it);
    }
    return out;
}

inline bool is_word_token(std::string_view s) { return str::has_alpha(s) && !str::has_digit(s); }

// Vowel-group syllable estimate for words missing from the lexicon.
inline int estimate_syllables(std::string_view word) {
    std::string w;
    for (char c : word)
        if (str::is_alpha(c) || c == '-') w += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    int total = 0;
    for (const auto& part : str::split(w, '-')) {
        if (part.empty()) continue;
        auto vowel = [&](std::size_t i) {
            const char c = part[i];
            if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return true;
            return c == 'y' && i > 0;
        };
        int count = 0;
        bool prev = false;
        for (std::size_t i = 0; i < part.size(); ++i) {
            const bool v = vowel(i);
            if (v && !prev) ++count;
            prev = v;
        }
        const std::size_t n = part.size();
        auto cons_at = [&](std::size_t i) { return !vowel(i); };
        if (count > 1 && n >= 3) {
            if (part[n - 1] == 'e' && cons_at(n - 2) && !(part[n - 2] == 'l' && cons_at(n - 3))) --count;
            else if (str::ends_with(part, "ed") && part[n - 3] != 't' && part[n - 3] != 'd' && cons_at(n - 3))
                --count;
            else if (str::ends_with(part, "es") && cons_at(n - 3) && !str::ends_with(part, "ses") &&
                     !str::ends_with(part, "xes") && !str::ends_with(part, "zes") &&
                     !str::ends_with(part, "ches") && !str::ends_with(part, "shes") &&
                     !str::ends_with(part, "ges") && !str::ends_with(part, "ces"))
                --count;
        }
        // hiatus: two adjacent vowel letters pronounced separately
        for (std::size_t i = 1; i < n; ++i) {
            const char a = part[i - 1], b = part[i];
            const char before = i >= 2 ? part[i - 2] : '\0';
            const bool soft = before == 'c' || before == 't' || before == 's' || before == 'g' || before == 'x';
            if ((a == 'i' && b == 'a' && !soft) || (a == 'i' && b == 'o' && !soft) ||
                (a == 'u' && b == 'a' && before != 'q' && before != 'g') || (a == 'i' && b == 'u') ||
                (a == 'u' && b == 'o' && before != 'q'))
                ++count;
        }
        total += std::max(count, 1);
    }
    const int letters = static_cast<int>(str::count_alpha(word));
    return std::clamp(total, 1, std::max(letters, 1));
}

struct PhonologicalProfile {
    int graphemes = 0;
    int phonemes = 0;
    int syllables = 0;
    bool in_lexicon = false;
};

inline PhonologicalProfile phonological_profile(std::string_view word, const ResourceBundle& bundle) {
    PhonologicalProfile p;
    p.graphemes = static_cast<int>(str::count_alpha(word));
    if (const auto* ph = bundle.pronunciation.lookup(word)) {
        p.in_lexicon = true;
        p.phonemes = static_cast<int>(ph->size());
        p.syllables = static_cast<int>(std::count_if(ph->begin(), ph->end(), PronLexicon::is_vowel_phoneme));
    } else {
        p.phonemes = p.graphemes;
        p.syllables = p.graphemes > 0 ? estimate_syllables(word) : 0;
    }
    if (p.graphemes > 0) p.syllables = std::clamp(p.syllables, 1, p.graphemes);
    return p;
}

inline Token make_token(const std::string& surface, const ResourceBundle& bundle) {
    Token t;
    t.surface = surface;
    t.lower = str::to_lower(surface);
    t.is_word = is_word_token(surface);
    t.stem = t.is_word ? porter_stem(t.lower) : t.lower;
    t.lemma = t.lower;
    if (t.is_word) {
        const auto p = phonological_profile(surface, bundle);
        t.graphemes = p.graphemes;
        t.phonemes = p.phonemes;
        t.syllables = p.syllables;
        t.in_lexicon = p.in_lexicon;
    } else {
        t.graphemes = static_cast<int>(str::count_alpha(surface));
        t.phonemes = t.graphemes;
    }
    return t;
}

inline std::vector<Token> tokenize(std::string_view sentence_raw, const ResourceBundle& bundle) {
    std::vector<Token> out;
    for (const auto& s : tokenize_words(sentence_raw)) out.push_back(make_token(s, bundle));
    return out;
}

}  // namespace textlevel
