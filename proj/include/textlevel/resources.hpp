#pragma once

#include <array>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "textlevel/tagging/perceptron.hpp"
#include "textlevel/textpipe/porter.hpp"
#include "textlevel/util/csv.hpp"
#include "textlevel/util/error.hpp"
#include "textlevel/util/strings.hpp"

namespace textlevel {

struct PronLexicon {
    std::unordered_map<std::string, std::vector<std::string>> entries;  // uppercase word -> phonemes
    std::size_t skipped_without_vowel = 0;

    static bool is_vowel_phoneme(const std::string& ph) { return !ph.empty() && str::is_digit(ph.back()); }

    const std::vector<std::string>* lookup(std::string_view word) const {
        if (word.empty()) return nullptr;
        auto it = entries.find(str::to_upper(word));
        return it == entries.end() ? nullptr : &it->second;
    }
};

struct FrequencyTable {
    std::unordered_map<std::string, long> rank;   // Porter stem -> rank
    std::unordered_map<std::string, double> freq;  // Porter stem -> count
    long max_rank = 0;
    double min_freq = 1.0;

    std::optional<long> rank_of(const std::string& stem) const {
        auto it = rank.find(stem);
        if (it == rank.end()) return std::nullopt;
        return it->second;
    }

    double fallback_frequency() const { return min_freq * 0.5; }

    double frequency_of(const std::string& stem) const {
        auto it = freq.find(stem);
        return it == freq.end() ? fallback_frequency() : it->second;
    }
};

// Case-folded set; entries with spaces are kept as token sequences for
// longest-match phrase lookup.
struct WordList {
    std::unordered_set<std::string> words;
    std::vector<std::vector<std::string>> phrases;
    std::size_t longest = 1;

    bool contains(const std::string& lower) const { return words.count(lower) != 0; }
    std::size_t size() const { return words.size(); }

    void add(const std::string& entry) {
        const std::string lower = str::to_lower(str::trim(entry));
        if (lower.empty() || !words.insert(lower).second) return;
        auto parts = str::split_ws(lower);
        longest = std::max(longest, parts.size());
        if (parts.size() > 1) phrases.push_back(std::move(parts));
    }
};

struct WordLists {
    WordList stopwords, frequent_verbs, spache_familiar, dale_chall_familiar, discourse_connectors,
        argumentative_connectors, prefixes, suffixes;
    std::unordered_set<std::string> spache_stems, dale_chall_stems;

    static bool familiar(const WordList& list, const std::unordered_set<std::string>& stems,
                         const std::string& lower) {
        return list.contains(lower) || stems.count(porter_stem(lower)) != 0;
    }
    bool spache_familiar_word(const std::string& lower) const {
        return familiar(spache_familiar, spache_stems, lower);
    }
    bool dale_chall_familiar_word(const std::string& lower) const {
        return familiar(dale_chall_familiar, dale_chall_stems, lower);
    }
};

struct PsychDatabase {
    static constexpr std::size_t norm_count = 11;
    using Record = std::array<std::optional<double>, norm_count>;

    static const std::array<const char*, norm_count>& columns() {
        static const std::array<const char*, norm_count> names = {
            "kfwf", "kfncat", "kfns", "tl_freq", "brown_freq", "fam", "conc", "imag", "meanc", "meanp", "aoa"};
        return names;
    }

    std::unordered_map<std::string, Record> records;

    const Record* find(const std::string& lower) const {
        auto it = records.find(lower);
        return it == records.end() ? nullptr : &it->second;
    }
};

struct EmbeddingTable {
    std::size_t dim = 0;
    std::unordered_map<std::string, std::vector<double>> vectors;

    const std::vector<double>* find(const std::string& surface) const {
        auto it = vectors.find(surface);
        if (it != vectors.end()) return &it->second;
        it = vectors.find(str::to_lower(surface));
        return it == vectors.end() ? nullptr : &it->second;
    }
};

struct ResourceManifest {
    struct Entry {
        std::string file;
        std::string format;
    };
    std::map<std::string, Entry> entries;

    static constexpr std::array<const char*, 4> embedding_roles = {"embeddings", "embeddings2", "embeddings3",
                                                                    "embeddings4"};

    static const std::map<std::string, std::string>& known_roles() {
        static const std::map<std::string, std::string> roles = {
            {"pronunciation", "cmudict"},
            {"frequency", "rank-csv"},
            {"stopwords", "wordlist"},
            {"frequent_verbs", "wordlist"},
            {"spache_familiar", "wordlist"},
            {"dale_chall_familiar", "wordlist"},
            {"discourse_connectors", "wordlist"},
            {"argumentative_connectors", "wordlist"},
            {"prefixes", "wordlist"},
            {"suffixes", "wordlist"},
            {"psych", "mrc-csv"},
            {"embeddings", "word-vectors"},
            {"embeddings2", "word-vectors"},
            {"embeddings3", "word-vectors"},
            {"embeddings4", "word-vectors"},
            {"tagger", "perceptron-json"},
        };
        return roles;
    }

    static const std::vector<std::string>& required_roles() {
        static const std::vector<std::string> roles = {
            "pronunciation",       "frequency",           "stopwords",
            "frequent_verbs",      "spache_familiar",     "dale_chall_familiar",
            "discourse_connectors", "argumentative_connectors", "prefixes",
            "suffixes"};
        return roles;
    }

    bool has(const std::string& role) const { return entries.count(role) != 0; }

    static ResourceManifest parse(const std::string& text, const std::string& origin) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ResourceError(origin, 0, std::string("invalid JSON: ") + e.what());
        }
        if (!j.is_object() || !j.contains("resources") || !j["resources"].is_object())
            throw ResourceError(origin, 0, "expected an object with a \"resources\" map");
        ResourceManifest m;
        for (const auto& [role, spec] : j["resources"].items()) {
            auto known = known_roles().find(role);
            if (known == known_roles().end()) throw ResourceError(origin, 0, "unknown resource role '" + role + "'");
            if (!spec.is_object() || !spec.contains("file") || !spec["file"].is_string())
                throw ResourceError(origin, 0, "resource '" + role + "' needs a \"file\" string");
            Entry e{spec["file"].get<std::string>(), spec.value("format", known->second)};
            if (e.format != known->second)
                throw ResourceError(origin, 0,
                                    "resource '" + role + "' has format '" + e.format + "', expected '" +
                                        known->second + "'");
            m.entries[role] = e;
        }
        for (const auto& role : required_roles())
            if (!m.has(role)) throw ResourceError(origin, 0, "manifest lacks required resource '" + role + "'");
        return m;
    }

    nlohmann::json to_json() const {
        nlohmann::json res = nlohmann::json::object();
        for (const auto& [role, e] : entries) res[role] = {{"file", e.file}, {"format", e.format}};
        return {{"resources", res}};
    }
};

struct ResourceBundle {
    std::string dir;
    PronLexicon pronunciation;
    FrequencyTable frequency;
    WordLists lists;
    std::optional<PsychDatabase> psych;
    std::array<std::optional<EmbeddingTable>, 4> embeddings;
    std::optional<TaggerModel> tagger;
    std::map<std::string, std::size_t> counts;
    std::string fingerprint;

    std::optional<std::vector<std::string>> lookup_phonemes(std::string_view word) const {
        const auto* p = pronunciation.lookup(word);
        if (!p) return std::nullopt;
        return *p;
    }

    std::string summary() const {
        std::string out;
        for (const auto& [role, n] : counts) out += role + ": " + std::to_string(n) + "\n";
        for (std::size_t s = 0; s < embeddings.size(); ++s)
            if (!embeddings[s]) out += std::string(ResourceManifest::embedding_roles[s]) + ": unavailable\n";
        if (!psych) out += "psych: unavailable\n";
        if (!tagger) out += "tagger: unavailable\n";
        return out;
    }
};

namespace detail {

inline void parse_pronunciation(const std::string& path, PronLexicon& lex) {
    const auto text = str::read_file(path);
    std::size_t line_no = 0;
    for (const auto& raw : str::lines(text)) {
        ++line_no;
        std::string_view line = str::trim(raw);
        if (line.empty() || str::starts_with(line, ";;;")) continue;
        auto parts = str::split_ws(line);
        if (parts.size() < 2) throw ResourceError(path, line_no, "entry has no phonemes");
        std::string word = str::to_upper(parts[0]);
        if (auto paren = word.find('('); paren != std::string::npos && paren > 0 && word.back() == ')')
            word.resize(paren);
        std::vector<std::string> phones(parts.begin() + 1, parts.end());
        for (const auto& ph : phones) {
            if (!str::has_alpha(ph)) throw ResourceError(path, line_no, "malformed phoneme '" + ph + "'");
        }
        if (std::none_of(phones.begin(), phones.end(), PronLexicon::is_vowel_phoneme)) {
            ++lex.skipped_without_vowel;
            continue;
        }
        lex.entries.emplace(std::move(word), std::move(phones));
    }
}

inline void parse_frequency(const std::string& path, FrequencyTable& ft) {
    const auto text = str::read_file(path);
    const auto all = str::lines(text);
    if (all.empty()) throw ResourceError(path, 0, "empty frequency table");
    auto header = csv::parse_line(all[0], 1, path);
    for (auto& h : header) h = str::to_lower(str::trim(h));
    if (header != csv::Row{"rank", "word", "frequency"})
        throw ResourceError(path, 1, "expected header rank,word,frequency");
    std::map<long, std::pair<std::string, double>> by_rank;
    for (std::size_t i = 1; i < all.size(); ++i) {
        const std::size_t line_no = i + 1;
        if (str::trim(all[i]).empty()) continue;
        auto row = csv::parse_line(all[i], line_no, path);
        if (row.size() != 3) throw ResourceError(path, line_no, "expected 3 fields");
        bool ok_r = false, ok_f = false;
        const long r = static_cast<long>(str::parse_int(row[0], &ok_r));
        const double f = str::parse_double(row[2], &ok_f);
        if (!ok_r || r < 1) throw ResourceError(path, line_no, "rank must be a positive integer");
        if (!ok_f || !(f > 0) || !std::isfinite(f))
            throw ResourceError(path, line_no, "frequency must be a positive number");
        const std::string word = str::to_lower(str::trim(row[1]));
        if (word.empty()) throw ResourceError(path, line_no, "empty word");
        if (!by_rank.emplace(r, std::make_pair(word, f)).second)
            throw ResourceError(path, line_no, "duplicate rank " + std::to_string(r));
    }
    if (by_rank.empty()) throw ResourceError(path, 0, "frequency table has no rows");
    double prev = 0;
    bool first = true;
    for (const auto& [r, wf] : by_rank) {
        if (!first && wf.second > prev)
            throw ResourceError(path, 0, "frequency increases at rank " + std::to_string(r));
        prev = wf.second;
        first = false;
        const std::string stem = porter_stem(wf.first);
        // ranks are visited in increasing order, so the first stem hit is the best rank
        if (ft.rank.emplace(stem, r).second) ft.freq.emplace(stem, wf.second);
        ft.max_rank = std::max(ft.max_rank, r);
    }
    ft.min_freq = prev;
}

inline void parse_word_list(const std::string& path, WordList& list, bool affix) {
    const auto text = str::read_file(path);
    std::size_t line_no = 0;
    for (const auto& raw : str::lines(text)) {
        ++line_no;
        std::string_view line = str::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        std::string entry = str::to_lower(line);
        if (affix) {
            while (!entry.empty() && entry.front() == '-') entry.erase(entry.begin());
            while (!entry.empty() && entry.back() == '-') entry.pop_back();
            if (entry.empty() || !std::all_of(entry.begin(), entry.end(), str::is_alpha))
                throw ResourceError(path, line_no, "affix entries must be letters");
        }
        list.add(entry);
    }
}

inline void parse_psych(const std::string& path, PsychDatabase& db) {
    const auto text = str::read_file(path);
    const auto all = str::lines(text);
    if (all.empty()) throw ResourceError(path, 0, "empty psycholinguistic table");
    auto header = csv::parse_line(all[0], 1, path);
    for (auto& h : header) h = str::to_lower(str::trim(h));
    csv::Row expected{"word"};
    for (const char* c : PsychDatabase::columns()) expected.emplace_back(c);
    if (header != expected) throw ResourceError(path, 1, "expected header " + str::join(expected, ","));
    for (std::size_t i = 1; i < all.size(); ++i) {
        const std::size_t line_no = i + 1;
        if (str::trim(all[i]).empty()) continue;
        auto row = csv::parse_line(all[i], line_no, path);
        if (row.size() != expected.size())
            throw ResourceError(path, line_no, "expected " + std::to_string(expected.size()) + " fields");
        const std::string word = str::to_lower(str::trim(row[0]));
        if (word.empty()) throw ResourceError(path, line_no, "empty word");
        PsychDatabase::Record rec;
        for (std::size_t k = 0; k < PsychDatabase::norm_count; ++k) {
            const auto cell = str::trim(row[k + 1]);
            if (cell.empty()) continue;
            bool ok = false;
            const double v = str::parse_double(cell, &ok);
            if (!ok || !std::isfinite(v))
                throw ResourceError(path, line_no, std::string("bad value for ") + PsychDatabase::columns()[k]);
            if (v < 0) throw ResourceError(path, line_no, std::string("negative ") + PsychDatabase::columns()[k]);
            rec[k] = v;
        }
        db.records.emplace(word, rec);
    }
}

inline void parse_embeddings(const std::string& path, EmbeddingTable& emb) {
    const auto text = str::read_file(path);
    std::size_t line_no = 0;
    for (const auto& raw : str::lines(text)) {
        ++line_no;
        auto parts = str::split_ws(raw);
        if (parts.empty()) continue;
        // word2vec text files may start with a "count dim" header
        if (line_no == 1 && parts.size() == 2) {
            bool a = false, b = false;
            str::parse_int(parts[0], &a);
            str::parse_int(parts[1], &b);
            if (a && b) continue;
        }
        if (parts.size() < 2) throw ResourceError(path, line_no, "vector has no components");
        std::vector<double> v;
        v.reserve(parts.size() - 1);
        for (std::size_t k = 1; k < parts.size(); ++k) {
            bool ok = false;
            const double x = str::parse_double(parts[k], &ok);
            if (!ok || !std::isfinite(x)) throw ResourceError(path, line_no, "non-numeric vector component");
            v.push_back(x);
        }
        if (emb.dim == 0) emb.dim = v.size();
        if (v.size() != emb.dim)
            throw ResourceError(path, line_no,
                                "vector length " + std::to_string(v.size()) + " differs from " +
                                    std::to_string(emb.dim));
        emb.vectors.emplace(parts[0], std::move(v));
    }
    if (emb.vectors.empty()) throw ResourceError(path, 0, "no vectors");
}

template <typename Set>
std::vector<std::string> sorted(const Set& s) {
    std::vector<std::string> out(s.begin(), s.end());
    std::sort(out.begin(), out.end());
    return out;
}

inline std::string bundle_fingerprint(const ResourceBundle& b) {
    std::uint64_t h = str::fnv1a("textlevel-resources/1");
    auto feed = [&h](std::string_view s) {
        h = str::fnv1a(s, h);
        h = str::fnv1a(std::string_view("\x1f", 1), h);
    };
    std::vector<std::string> words;
    for (const auto& [w, _] : b.pronunciation.entries) words.push_back(w);
    std::sort(words.begin(), words.end());
    for (const auto& w : words) {
        feed(w);
        for (const auto& p : b.pronunciation.entries.at(w)) feed(p);
    }
    std::vector<std::pair<long, std::string>> ranks;
    for (const auto& [s, r] : b.frequency.rank) ranks.emplace_back(r, s);
    std::sort(ranks.begin(), ranks.end());
    for (const auto& [r, s] : ranks) {
        feed(s);
        feed(std::to_string(r));
        feed(str::fmt(b.frequency.freq.at(s)));
    }
    for (const WordList* l : {&b.lists.stopwords, &b.lists.frequent_verbs, &b.lists.spache_familiar,
                              &b.lists.dale_chall_familiar, &b.lists.discourse_connectors,
                              &b.lists.argumentative_connectors, &b.lists.prefixes, &b.lists.suffixes}) {
        feed("list");
        for (const auto& w : sorted(l->words)) feed(w);
    }
    if (b.psych) {
        std::vector<std::string> keys;
        for (const auto& [w, _] : b.psych->records) keys.push_back(w);
        std::sort(keys.begin(), keys.end());
        for (const auto& w : keys) {
            feed(w);
            for (const auto& v : b.psych->records.at(w)) feed(v ? str::fmt(*v) : "-");
        }
    }
    for (const auto& e : b.embeddings) {
        feed(e ? "emb" : "noemb");
        if (!e) continue;
        std::vector<std::string> keys;
        for (const auto& [w, _] : e->vectors) keys.push_back(w);
        std::sort(keys.begin(), keys.end());
        for (const auto& w : keys) {
            feed(w);
            for (double x : e->vectors.at(w)) feed(str::fmt(x));
        }
    }
    if (b.tagger) feed(b.tagger->fingerprint());
    return str::hex64(h);
}

}  // namespace detail

inline ResourceBundle load_resources(const std::string& dir, const ResourceManifest& manifest) {
    namespace fs = std::filesystem;
    ResourceBundle b;
    b.dir = dir;
    auto path_of = [&](const std::string& role) {
        const auto& file = manifest.entries.at(role).file;
        const fs::path p = fs::path(file).is_absolute() ? fs::path(file) : fs::path(dir) / file;
        if (!fs::exists(p)) throw ResourceError(p.string(), 0, "missing resource file for '" + role + "'");
        return p.string();
    };

    detail::parse_pronunciation(path_of("pronunciation"), b.pronunciation);
    b.counts["pronunciation"] = b.pronunciation.entries.size();
    b.counts["pronunciation_skipped"] = b.pronunciation.skipped_without_vowel;

    detail::parse_frequency(path_of("frequency"), b.frequency);
    b.counts["frequency"] = b.frequency.rank.size();

    const std::pair<const char*, WordList WordLists::*> lists[] = {
        {"stopwords", &WordLists::stopwords},
        {"frequent_verbs", &WordLists::frequent_verbs},
        {"spache_familiar", &WordLists::spache_familiar},
        {"dale_chall_familiar", &WordLists::dale_chall_familiar},
        {"discourse_connectors", &WordLists::discourse_connectors},
        {"argumentative_connectors", &WordLists::argumentative_connectors},
        {"prefixes", &WordLists::prefixes},
        {"suffixes", &WordLists::suffixes},
    };
    for (const auto& [role, member] : lists) {
        const std::string r = role;
        detail::parse_word_list(path_of(r), b.lists.*member, r == "prefixes" || r == "suffixes");
        b.counts[r] = (b.lists.*member).size();
    }
    for (const auto& w : detail::sorted(b.lists.argumentative_connectors.words)) {
        if (!b.lists.discourse_connectors.contains(w))
            throw ResourceError(path_of("argumentative_connectors"), 0,
                                "'" + w + "' is not listed among the discourse connectors");
    }
    for (const auto& w : b.lists.spache_familiar.words) b.lists.spache_stems.insert(porter_stem(w));
    for (const auto& w : b.lists.dale_chall_familiar.words) b.lists.dale_chall_stems.insert(porter_stem(w));

    if (manifest.has("psych")) {
        b.psych.emplace();
        detail::parse_psych(path_of("psych"), *b.psych);
        b.counts["psych"] = b.psych->records.size();
    }
    for (std::size_t s = 0; s < ResourceManifest::embedding_roles.size(); ++s) {
        const std::string role = ResourceManifest::embedding_roles[s];
        if (!manifest.has(role)) continue;
        b.embeddings[s].emplace();
        detail::parse_embeddings(path_of(role), *b.embeddings[s]);
        b.counts[role] = b.embeddings[s]->vectors.size();
    }
    if (manifest.has("tagger")) {
        const auto p = path_of("tagger");
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(str::read_file(p));
        } catch (const nlohmann::json::parse_error& e) {
            throw ResourceError(p, 0, std::string("invalid JSON: ") + e.what());
        }
        b.tagger = TaggerModel::from_json(j, p);
        b.counts["tagger_tags"] = b.tagger->tags().size();
    }
    b.fingerprint = detail::bundle_fingerprint(b);
    return b;
}

inline ResourceBundle load_resources(const std::string& dir) {
    const std::string manifest_path = (std::filesystem::path(dir) / "manifest.json").string();
    return load_resources(dir, ResourceManifest::parse(str::read_file(manifest_path), manifest_path));
}

}  // namespace textlevel
