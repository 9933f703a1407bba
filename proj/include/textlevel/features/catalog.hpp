#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "textlevel/document.hpp"
#include "textlevel/features/discpsych.hpp"
#include "textlevel/features/morpholex.hpp"
#include "textlevel/features/readability.hpp"
#include "textlevel/features/synmetrics.hpp"
#include "textlevel/resources.hpp"
#include "textlevel/util/error.hpp"
#include "textlevel/util/strings.hpp"

namespace textlevel {

inline constexpr const char* catalog_version = "textlevel-catalog/1";

enum class Area { phonology, morphology, lexicon, syntax, discourse, psychology, readability };

inline const std::array<const char*, 7>& area_names() {
    static const std::array<const char*, 7> names = {"phonology", "morphology", "lexicon", "syntax",
                                                      "discourse", "psychology", "readability"};
    return names;
}

inline std::optional<Area> parse_area(const std::string& s) {
    for (std::size_t i = 0; i < area_names().size(); ++i)
        if (s == area_names()[i]) return static_cast<Area>(i);
    return std::nullopt;
}

// Fixed-order feature list. Gated features (those that can be undefined for
// a document) get an `<name>__absent` indicator column; absent values are
// stored as 0.
class FeatureCatalog {
public:
    struct Feature {
        std::string name;
        Area area;
        bool gated;
    };

    static const FeatureCatalog& instance() {
        static const FeatureCatalog c;
        return c;
    }

    const std::vector<Feature>& features() const { return features_; }
    std::size_t size() const { return features_.size(); }
    std::size_t index(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw ValidationError("unknown feature: " + name);
        return it->second;
    }
    bool has(const std::string& name) const { return index_.count(name) != 0; }

    // Feature columns, then indicator columns, then the syntax mode flag.
    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::size_t>& gated_indices() const { return gated_; }
    std::string fingerprint() const { return fingerprint_; }

private:
    FeatureCatalog() {
        auto add = [&](const std::string& n, Area a, bool gated = false) { features_.push_back({n, a, gated}); };
        for (const char* n : {"mean_graphemes", "mean_phonemes", "mean_syllables"}) add(n, Area::phonology);

        for (const char* n : {"stem_diversity", "mean_prefixes", "mean_suffixes"}) add(n, Area::morphology);
        for (const char* n : {"len_noun", "len_adj", "len_verb", "len_adv"}) add(n, Area::morphology, true);
        for (const char* t : tense_names()) add(std::string("tense_") + t, Area::morphology);

        for (const char* n : {"lexdens1", "lexdens2", "lexsph", "cls"}) add(n, Area::lexicon);
        for (const char* n : {"vsm", "vsm_sq"}) add(n, Area::lexicon, true);
        for (const char* n : {"ndw", "ttr", "gttr", "cttr"}) add(n, Area::lexicon);
        for (const char* n : {"mtld", "hdd"}) add(n, Area::lexicon, true);

        const char* labels[] = {"np", "vp", "pp", "advp", "ap"};
        add("xp_total", Area::syntax);
        for (const char* l : labels) add(std::string("r_") + l, Area::syntax);
        add("nb_xp", Area::syntax);
        for (const char* l : labels) add(std::string("nb_") + l, Area::syntax);
        add("len_xp", Area::syntax);
        for (const char* l : labels) add(std::string("len_") + l, Area::syntax);
        for (const char* n : {"tu_np", "tu_vp", "tu_pp", "tu_complex_ratio", "tu_len"}) add(n, Area::syntax);
        for (const char* n : {"mean_len_s", "tree_height", "subord", "len_subord", "inv_dec_s", "len_inv_dec_s",
                              "inv_qst", "len_inv_qst", "wh_qst", "len_wh_qst", "sent_coord", "len_sent_coord",
                              "xp_coord", "len_xp_coord"})
            add(n, Area::syntax);
        for (const char* n : {"bigram_per_word", "trigram_per_word", "fourgram_per_word", "bigram_per_sent",
                              "trigram_per_sent", "fourgram_per_sent"})
            add(n, Area::syntax);
        for (int n = 2; n <= 4; ++n)
            for (int l = 1; l <= 3; ++l)
                add("prof" + std::to_string(n) + "_l" + std::to_string(l), Area::syntax, true);

        for (const char* n : {"conn_per_word", "conn_per_sent", "argconn_per_word", "argconn_per_sent"})
            add(n, Area::discourse);
        for (int k = 1; k <= 4; ++k) add("coh_all_e" + std::to_string(k), Area::discourse, true);
        for (int k = 1; k <= 4; ++k) add("coh_nn_e" + std::to_string(k), Area::discourse, true);

        for (const char* c : PsychDatabase::columns()) add(std::string("psych_") + c, Area::psychology, true);
        add("mrc_coverage", Area::psychology);

        for (const char* n : readability_names())
            add(n, Area::readability, std::string(n) == "coleman_liau" || std::string(n) == "forcast");

        for (std::size_t i = 0; i < features_.size(); ++i) {
            index_[features_[i].name] = i;
            columns_.push_back(features_[i].name);
        }
        for (std::size_t i = 0; i < features_.size(); ++i) {
            if (!features_[i].gated) continue;
            gated_.push_back(i);
            columns_.push_back(features_[i].name + "__absent");
        }
        columns_.push_back("syntax_approximate");
        std::string all = catalog_version;
        for (const auto& c : columns_) all += "\n" + c;
        fingerprint_ = str::hex64(str::fnv1a(all));
    }

    std::vector<Feature> features_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::string> columns_;
    std::vector<std::size_t> gated_;
    std::string fingerprint_;
};

inline const FeatureCatalog& catalog() { return FeatureCatalog::instance(); }

struct ExtractionConfig {
    std::size_t window = 27;
    double mtld_threshold = 0.72;
    std::size_t mtld_min_tokens = 30;
    std::size_t hdd_sample = 42;
    std::size_t profile_top_k = 300;
    long rare_rank = 3000;
    bool canonical_spache = false;

    nlohmann::json to_json() const {
        return {{"window", window},           {"mtld_threshold", mtld_threshold},
                {"mtld_min_tokens", mtld_min_tokens}, {"hdd_sample", hdd_sample},
                {"profile_top_k", profile_top_k},     {"rare_rank", rare_rank},
                {"canonical_spache", canonical_spache}};
    }

    static ExtractionConfig from_json(const nlohmann::json& j) {
        ExtractionConfig c;
        c.window = j.value("window", c.window);
        c.mtld_threshold = j.value("mtld_threshold", c.mtld_threshold);
        c.mtld_min_tokens = j.value("mtld_min_tokens", c.mtld_min_tokens);
        c.hdd_sample = j.value("hdd_sample", c.hdd_sample);
        c.profile_top_k = j.value("profile_top_k", c.profile_top_k);
        c.rare_rank = j.value("rare_rank", c.rare_rank);
        c.canonical_spache = j.value("canonical_spache", c.canonical_spache);
        return c;
    }
};

// One document's features in catalog order.
struct FeatureRow {
    std::vector<double> values;
    std::vector<bool> absent;
    bool approximate = false;

    FeatureRow() : values(catalog().size(), 0.0), absent(catalog().size(), false) {}

    void set(const std::string& name, double v) { values[catalog().index(name)] = v; }
    void set(const std::string& name, const std::optional<double>& v) {
        const auto i = catalog().index(name);
        values[i] = v ? *v : 0.0;
        absent[i] = !v;
    }
    double get(const std::string& name) const { return values[catalog().index(name)]; }
    bool is_absent(const std::string& name) const { return absent[catalog().index(name)]; }

    // Values followed by indicator columns and the mode flag.
    std::vector<double> columns() const {
        std::vector<double> out = values;
        for (std::size_t i : catalog().gated_indices()) out.push_back(absent[i] ? 1.0 : 0.0);
        out.push_back(approximate ? 1.0 : 0.0);
        return out;
    }
};

// Writes the nine profile distances into `row` (absent where the level has
// no profile).
inline void set_profile_features(FeatureRow& row, const NgramCounts& ngrams, const LevelProfiles* profiles) {
    std::array<std::optional<double>, 9> d{};
    if (profiles) d = profiles->distances(ngrams);
    for (int n = 2; n <= 4; ++n)
        for (int l = 1; l <= 3; ++l)
            row.set("prof" + std::to_string(n) + "_l" + std::to_string(l),
                    d[static_cast<std::size_t>((n - 2) * 3 + (l - 1))]);
}

inline FeatureRow extract_features(const AnalyzedDoc& doc, const ResourceBundle& bundle, const ExtractionConfig& cfg,
                                   const NgramCounts& ngrams, const LevelProfiles* profiles = nullptr) {
    if (doc.word_count() == 0) throw EmptyInputError("empty document");
    FeatureRow row;

    const auto ph = phonological_features(doc);
    row.set("mean_graphemes", ph.mean_graphemes);
    row.set("mean_phonemes", ph.mean_phonemes);
    row.set("mean_syllables", ph.mean_syllables);

    row.set("stem_diversity", stem_diversity(doc));
    const auto af = affix_means(doc, bundle.lists);
    row.set("mean_prefixes", af.prefixes);
    row.set("mean_suffixes", af.suffixes);
    const auto pl = pos_length_means(doc);
    row.set("len_noun", pl.noun);
    row.set("len_adj", pl.adj);
    row.set("len_verb", pl.verb);
    row.set("len_adv", pl.adv);
    const auto tf = tense_features(doc);
    for (std::size_t k = 0; k < tense_count; ++k) row.set(std::string("tense_") + tense_names()[k], tf[k]);

    const auto ld = lexical_density(doc);
    row.set("lexdens1", ld.v1);
    row.set("lexdens2", ld.v2);
    const auto ls = lexical_sophistication(doc, bundle.frequency, bundle.lists, cfg.rare_rank);
    row.set("lexsph", ls.lexsph);
    row.set("cls", ls.cls);
    row.set("vsm", ls.vsm);
    row.set("vsm_sq", ls.vsm_sq);
    const auto toks = diversity_tokens(doc);
    const auto db = diversity_basic(toks);
    row.set("ndw", db.ndw);
    row.set("ttr", db.ttr);
    row.set("gttr", db.gttr);
    row.set("cttr", db.cttr);
    row.set("mtld", mtld(toks, cfg.mtld_threshold, cfg.mtld_min_tokens));
    row.set("hdd", hdd(toks, cfg.hdd_sample));

    const auto sx = syntax_features(doc);
    row.approximate = sx.approximate;
    const char* labels[] = {"np", "vp", "pp", "advp", "ap"};
    row.set("xp_total", sx.xp_total);
    row.set("nb_xp", sx.nb_xp);
    row.set("len_xp", sx.len_xp);
    for (std::size_t k = 0; k < 5; ++k) {
        row.set(std::string("r_") + labels[k], sx.ratio[k]);
        row.set(std::string("nb_") + labels[k], sx.nb[k]);
        row.set(std::string("len_") + labels[k], sx.len[k]);
    }
    row.set("tu_np", sx.tu_np);
    row.set("tu_vp", sx.tu_vp);
    row.set("tu_pp", sx.tu_pp);
    row.set("tu_complex_ratio", sx.tu_complex_ratio);
    row.set("tu_len", sx.tu_len);
    row.set("mean_len_s", sx.mean_len_s);
    row.set("tree_height", sx.tree_height);
    row.set("subord", sx.subord);
    row.set("len_subord", sx.len_subord);
    row.set("inv_dec_s", sx.inv_dec_s);
    row.set("len_inv_dec_s", sx.len_inv_dec_s);
    row.set("inv_qst", sx.inv_qst);
    row.set("len_inv_qst", sx.len_inv_qst);
    row.set("wh_qst", sx.wh_qst);
    row.set("len_wh_qst", sx.len_wh_qst);
    row.set("sent_coord", sx.sent_coord);
    row.set("len_sent_coord", sx.len_sent_coord);
    row.set("xp_coord", sx.xp_coord);
    row.set("len_xp_coord", sx.len_xp_coord);
    const auto nd = ngram_diversity(doc, ngrams);
    const char* orders[] = {"bigram", "trigram", "fourgram"};
    for (std::size_t k = 0; k < 3; ++k) {
        row.set(std::string(orders[k]) + "_per_word", nd.per_word[k]);
        row.set(std::string(orders[k]) + "_per_sent", nd.per_sentence[k]);
    }
    set_profile_features(row, ngrams, profiles);

    const auto co = cohesion_features(doc, bundle.lists);
    row.set("conn_per_word", co.conn_per_word);
    row.set("conn_per_sent", co.conn_per_sent);
    row.set("argconn_per_word", co.argconn_per_word);
    row.set("argconn_per_sent", co.argconn_per_sent);
    const auto ch = coherence_features(doc, bundle);
    for (std::size_t k = 0; k < 4; ++k) {
        row.set("coh_all_e" + std::to_string(k + 1), ch.all_words[k]);
        row.set("coh_nn_e" + std::to_string(k + 1), ch.nouns_only[k]);
    }

    const auto ps = psych_features(doc, bundle.psych ? &*bundle.psych : nullptr);
    for (std::size_t k = 0; k < PsychDatabase::norm_count; ++k)
        row.set(std::string("psych_") + PsychDatabase::columns()[k], ps.norms[k]);
    row.set("mrc_coverage", ps.coverage);

    const auto rd = readability_scores(doc, bundle.lists, cfg.window, cfg.canonical_spache);
    const auto rv = rd.values();
    for (std::size_t k = 0; k < 7; ++k) {
        if (catalog().features()[catalog().index(readability_names()[k])].gated) row.set(readability_names()[k], rv[k]);
        else row.set(readability_names()[k], *rv[k]);
    }
    return row;
}

inline FeatureRow extract_features(const AnalyzedDoc& doc, const ResourceBundle& bundle,
                                   const ExtractionConfig& cfg = {}, const LevelProfiles* profiles = nullptr) {
    return extract_features(doc, bundle, cfg, tag_ngrams(doc), profiles);
}

}  // namespace textlevel
