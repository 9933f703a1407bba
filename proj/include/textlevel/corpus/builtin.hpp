#pragma once

#include <string>
#include <vector>

// Curated default word lists. They are written out by `synth` and can be
// used as a starting point for real resource directories.
namespace textlevel::builtin {

inline const std::vector<std::string>& prefixes() {
    static const std::vector<std::string> v = {
        "a",     "ab",    "ad",     "af",    "ante",  "anti",  "arch",  "auto",  "be",    "bi",    "bio",
        "circum", "co",   "col",    "com",   "con",   "contra", "counter", "de",  "di",    "dis",   "dys",
        "em",    "en",    "ex",     "extra", "fore",  "hetero", "homo", "hyper", "hypo",  "il",    "im",
        "in",    "infra", "inter",  "intra", "ir",    "macro", "mal",   "micro", "mid",   "mini",  "mis",
        "mono",  "multi", "neo",    "non",   "ob",    "omni",  "out",   "over",  "pan",   "para",  "per",
        "post",  "pre",   "pro",    "proto", "pseudo", "re",   "retro", "semi",  "sub",   "super", "sur",
        "sym",   "syn",   "tele",   "trans", "tri",   "ultra", "un",    "under", "uni",   "up"};
    return v;
}

inline const std::vector<std::string>& suffixes() {
    static const std::vector<std::string> v = {
        "able",  "ably",  "ac",    "aceous", "acious", "acy",   "ade",   "age",   "al",    "ally",  "an",
        "ance",  "ancy",  "ant",   "ar",     "ard",    "ary",   "ate",   "ation", "ative", "ator",  "atory",
        "cide",  "cracy", "crat",  "cy",     "dom",    "ed",    "ee",    "eer",   "en",    "ence",  "ency",
        "ent",   "er",    "ern",   "ery",    "es",     "ese",   "esque", "ess",   "est",   "ette",  "ful",
        "fully", "fy",    "hood",  "ial",    "ian",    "ible",  "ibly",  "ic",    "ical",  "ically", "ice",
        "ician", "ics",   "id",    "ide",    "ier",    "ify",   "ile",   "ine",   "ing",   "ion",   "ious",
        "ise",   "ish",   "ism",   "ist",    "istic",  "ite",   "itis",  "ity",   "ive",   "ively", "ivity",
        "ization", "ize", "izer",  "less",   "lessly", "let",   "like",  "ling",  "log",   "logy",  "ly",
        "ment",  "mental", "most", "ness",   "nomy",   "oid",   "or",    "ory",   "ose",   "osis",  "ous",
        "ously", "phile", "phobia", "phone", "ry",     "s",     "ship",  "sion",  "some",  "ster",  "th",
        "tion",  "tude",  "ty",    "ual",    "ule",    "ure",   "ward",  "wards", "ware",  "ways",  "wise",
        "worthy", "y",    "ography", "ology", "ular",  "ulent", "uous"};
    return v;
}

inline const std::vector<std::string>& stopwords() {
    static const std::vector<std::string> v = {
        "a",       "about",  "above",  "after",  "again",   "against", "all",    "am",     "an",     "and",
        "any",     "are",    "as",     "at",     "be",      "because", "been",   "before", "being",  "below",
        "between", "both",   "but",    "by",     "can",     "could",   "did",    "do",     "does",   "doing",
        "down",    "during", "each",   "every",  "few",     "for",     "from",   "further", "had",   "has",
        "have",    "having", "he",     "her",    "here",    "hers",    "herself", "him",   "himself", "his",
        "how",     "i",      "if",     "in",     "into",    "is",      "it",     "its",    "itself", "just",
        "me",      "might",  "more",   "most",   "must",    "my",      "myself", "near",   "no",     "nor",
        "not",     "now",    "of",     "off",    "on",      "once",    "only",   "or",     "other",  "our",
        "ours",    "ourselves", "out", "over",   "own",     "same",    "she",    "should", "so",     "some",
        "such",    "than",   "that",   "the",    "their",   "theirs",  "them",   "themselves", "then", "there",
        "these",   "they",   "this",   "those",  "through", "to",      "too",    "under",  "until",  "up",
        "very",    "was",    "we",     "were",   "what",    "when",    "where",  "which",  "while",  "who",
        "whom",    "why",    "will",   "with",   "would",   "you",     "your",   "yours",  "yourself"};
    return v;
}

inline const std::vector<std::string>& discourse_connectors() {
    static const std::vector<std::string> v = {
        "accordingly", "additionally", "afterwards", "also",        "although",    "as a result",
        "because",     "besides",      "but",        "consequently", "conversely", "finally",
        "first",       "firstly",      "for example", "for instance", "furthermore", "hence",
        "however",     "in addition",  "in contrast", "in fact",     "indeed",      "instead",
        "likewise",    "meanwhile",    "moreover",   "namely",      "nevertheless", "nonetheless",
        "on the other hand", "otherwise", "secondly", "similarly",   "since",       "so",
        "still",       "subsequently", "then",       "therefore",   "though",      "thus",
        "unless",      "whereas",      "while",      "yet"};
    return v;
}

inline const std::vector<std::string>& argumentative_connectors() {
    static const std::vector<std::string> v = {
        "accordingly", "as a result", "because",     "consequently", "conversely",  "hence",
        "however",     "in contrast", "nevertheless", "nonetheless", "on the other hand", "since",
        "therefore",   "thus",        "whereas"};
    return v;
}

}  // namespace textlevel::builtin
