#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "textlevel/util/error.hpp"
#include "textlevel/util/rng.hpp"
#include "textlevel/util/strings.hpp"

namespace textlevel {

inline const std::set<std::string>& penn_tagset() {
    static const std::set<std::string> tags = {
        "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "LS", "MD", "NN", "NNS", "NNP", "NNPS",
        "PDT", "POS", "PRP", "PRP$", "RB", "RBR", "RBS", "RP", "SYM", "TO", "UH", "VB", "VBD", "VBG",
        "VBN", "VBP", "VBZ", "WDT", "WP", "WP$", "WRB", ".", ",", ":", "``", "''", "-LRB-", "-RRB-",
        "#", "$", "HYPH", "NFP", "AFX", "ADD", "XX"};
    return tags;
}

inline bool is_penn_tag(const std::string& tag) { return penn_tagset().count(tag) != 0; }

struct TaggedSentence {
    enum class Source { tagged_by_model, ingested };

    std::vector<std::string> words;
    std::vector<std::string> tags;
    Source source = Source::tagged_by_model;
};

// Greedy left-to-right averaged perceptron over sparse string features.
class TaggerModel {
public:
    static constexpr const char* format_id = "textlevel-tagger";
    static constexpr int format_version = 1;

    struct TrainOptions {
        int epochs = 5;
        std::uint64_t seed = 1;
        // tag dictionary for frequent unambiguous words
        int dict_min_count = 20;
        double dict_min_ratio = 0.97;
    };

    static TaggerModel train(const std::vector<TaggedSentence>& corpus, const TrainOptions& opt) {
        if (corpus.empty()) throw ValidationError("tagger training corpus is empty");
        if (opt.epochs < 1) throw ValidationError("tagger training needs epochs >= 1");
        TaggerModel m;
        std::set<std::string> tagset;
        std::map<std::string, std::map<std::string, int>> word_tags;
        for (std::size_t s = 0; s < corpus.size(); ++s) {
            const auto& ts = corpus[s];
            if (ts.words.size() != ts.tags.size())
                throw ValidationError("training sentence " + std::to_string(s) + " has mismatched tags");
            for (std::size_t i = 0; i < ts.words.size(); ++i) {
                if (!is_penn_tag(ts.tags[i]))
                    throw ValidationError("training sentence " + std::to_string(s) + ": unknown tag '" +
                                          ts.tags[i] + "'");
                tagset.insert(ts.tags[i]);
                ++word_tags[str::to_lower(ts.words[i])][ts.tags[i]];
            }
        }
        m.tags_.assign(tagset.begin(), tagset.end());
        for (std::size_t i = 0; i < m.tags_.size(); ++i) m.tag_index_[m.tags_[i]] = i;
        for (const auto& [word, counts] : word_tags) {
            int total = 0, best = 0;
            std::string best_tag;
            for (const auto& [t, c] : counts) {
                total += c;
                if (c > best) best = c, best_tag = t;
            }
            if (total >= opt.dict_min_count && best >= opt.dict_min_ratio * total) m.tagdict_[word] = best_tag;
        }

        Trainer tr(m.tags_.size());
        std::vector<std::size_t> order(corpus.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        Rng rng(opt.seed);
        std::vector<std::string> feats;
        for (int epoch = 0; epoch < opt.epochs; ++epoch) {
            rng.shuffle(order);
            for (std::size_t idx : order) {
                const auto& ts = corpus[idx];
                const auto ctx = context(ts.words);
                std::string p1 = "-START-", p2 = "-START2-";
                for (std::size_t i = 0; i < ts.words.size(); ++i) {
                    std::string guess;
                    if (auto it = m.tagdict_.find(str::to_lower(ts.words[i])); it != m.tagdict_.end()) {
                        guess = it->second;
                    } else {
                        features(ctx, ts.words, i, p1, p2, feats);
                        guess = m.tags_[tr.best(feats)];
                        tr.update(m.tag_index_.at(ts.tags[i]), m.tag_index_.at(guess), feats);
                    }
                    p2 = p1;
                    p1 = guess;
                }
            }
        }
        m.weights_ = tr.averaged();
        return m;
    }

    std::vector<std::string> tag(const std::vector<std::string>& words) const {
        std::vector<std::string> out;
        out.reserve(words.size());
        if (words.empty()) return out;
        const auto ctx = context(words);
        std::string p1 = "-START-", p2 = "-START2-";
        std::vector<std::string> feats;
        std::vector<double> scores(tags_.size());
        for (std::size_t i = 0; i < words.size(); ++i) {
            std::string guess;
            if (auto it = tagdict_.find(str::to_lower(words[i])); it != tagdict_.end()) {
                guess = it->second;
            } else {
                features(ctx, words, i, p1, p2, feats);
                std::fill(scores.begin(), scores.end(), 0.0);
                for (const auto& f : feats) {
                    auto w = weights_.find(f);
                    if (w == weights_.end()) continue;
                    for (const auto& [ti, v] : w->second) scores[ti] += v;
                }
                std::size_t best = 0;
                for (std::size_t t = 1; t < scores.size(); ++t)
                    if (scores[t] > scores[best]) best = t;
                guess = tags_.empty() ? std::string("NN") : tags_[best];
            }
            out.push_back(guess);
            p2 = p1;
            p1 = out.back();
        }
        return out;
    }

    TaggedSentence tag_sentence(const std::vector<std::string>& words) const {
        TaggedSentence ts;
        ts.words = words;
        ts.tags = tag(words);
        ts.source = TaggedSentence::Source::tagged_by_model;
        return ts;
    }

    const std::vector<std::string>& tags() const { return tags_; }
    bool empty() const { return tags_.empty(); }

    // Returns the weight of `feature` for `tag`, 0 when unset.
    double weight(const std::string& feature, const std::string& tag) const {
        auto it = weights_.find(feature);
        auto ti = tag_index_.find(tag);
        if (it == weights_.end() || ti == tag_index_.end()) return 0.0;
        for (const auto& [t, v] : it->second)
            if (t == ti->second) return v;
        return 0.0;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["format"] = format_id;
        j["version"] = format_version;
        j["tags"] = tags_;
        nlohmann::json w = nlohmann::json::object();
        for (const auto& [feat, row] : weights_) {
            nlohmann::json r = nlohmann::json::object();
            for (const auto& [ti, v] : row) r[tags_[ti]] = v;
            w[feat] = std::move(r);
        }
        j["weights"] = std::move(w);
        j["tagdict"] = nlohmann::json(std::map<std::string, std::string>(tagdict_.begin(), tagdict_.end()));
        return j;
    }

    static TaggerModel from_json(const nlohmann::json& j, const std::string& origin = "tagger model") {
        if (j.value("format", "") != format_id) throw ResourceError(origin, 0, "not a tagger model document");
        if (j.value("version", 0) != format_version)
            throw ResourceError(origin, 0, "unsupported tagger model version");
        TaggerModel m;
        m.tags_ = j.at("tags").get<std::vector<std::string>>();
        for (std::size_t i = 0; i < m.tags_.size(); ++i) {
            if (!is_penn_tag(m.tags_[i])) throw ResourceError(origin, 0, "unknown tag '" + m.tags_[i] + "'");
            m.tag_index_[m.tags_[i]] = i;
        }
        for (const auto& [feat, row] : j.at("weights").items()) {
            auto& dst = m.weights_[feat];
            for (const auto& [tag, v] : row.items()) {
                auto ti = m.tag_index_.find(tag);
                if (ti == m.tag_index_.end()) throw ResourceError(origin, 0, "weight for unknown tag '" + tag + "'");
                dst.emplace_back(ti->second, v.get<double>());
            }
            std::sort(dst.begin(), dst.end());
        }
        for (const auto& [w, t] : j.at("tagdict").items()) m.tagdict_[w] = t.get<std::string>();
        return m;
    }

    std::string fingerprint() const { return str::hex64(str::fnv1a(to_json().dump())); }

private:
    using SparseRow = std::vector<std::pair<std::size_t, double>>;

    struct Trainer {
        explicit Trainer(std::size_t ntags) : ntags(ntags) {}

        struct Cell {
            std::vector<double> w, total;
            std::vector<long long> stamp;
        };

        std::size_t best(const std::vector<std::string>& feats) const {
            std::vector<double> scores(ntags, 0.0);
            for (const auto& f : feats) {
                auto it = cells.find(f);
                if (it == cells.end()) continue;
                for (std::size_t t = 0; t < ntags; ++t) scores[t] += it->second.w[t];
            }
            std::size_t b = 0;
            for (std::size_t t = 1; t < ntags; ++t)
                if (scores[t] > scores[b]) b = t;
            return b;
        }

        void update(std::size_t truth, std::size_t guess, const std::vector<std::string>& feats) {
            ++instances;
            if (truth == guess) return;
            for (const auto& f : feats) {
                auto& c = cells[f];
                if (c.w.empty()) {
                    c.w.assign(ntags, 0.0);
                    c.total.assign(ntags, 0.0);
                    c.stamp.assign(ntags, 0);
                }
                bump(c, truth, 1.0);
                bump(c, guess, -1.0);
            }
        }

        void bump(Cell& c, std::size_t t, double delta) {
            c.total[t] += static_cast<double>(instances - c.stamp[t]) * c.w[t];
            c.stamp[t] = instances;
            c.w[t] += delta;
        }

        std::unordered_map<std::string, SparseRow> averaged() {
            std::unordered_map<std::string, SparseRow> out;
            for (auto& [f, c] : cells) {
                SparseRow row;
                for (std::size_t t = 0; t < ntags; ++t) {
                    const double total = c.total[t] + static_cast<double>(instances - c.stamp[t]) * c.w[t];
                    const double avg = instances ? total / static_cast<double>(instances) : 0.0;
                    if (avg != 0.0) row.emplace_back(t, avg);
                }
                if (!row.empty()) out.emplace(f, std::move(row));
            }
            return out;
        }

        std::size_t ntags;
        long long instances = 0;
        std::unordered_map<std::string, Cell> cells;
    };

    struct Context {
        std::vector<std::string> lower;
    };

    static Context context(const std::vector<std::string>& words) {
        Context c;
        c.lower.reserve(words.size() + 4);
        c.lower.emplace_back("-START-");
        c.lower.emplace_back("-START2-");
        for (const auto& w : words) c.lower.push_back(normalize(w));
        c.lower.emplace_back("-END-");
        c.lower.emplace_back("-END2-");
        return c;
    }

    static std::string normalize(const std::string& w) {
        if (w.find('-') != std::string::npos && w.front() != '-') return "!HYPHEN";
        if (w.size() == 4 && std::all_of(w.begin(), w.end(), str::is_digit)) return "!YEAR";
        if (!w.empty() && str::is_digit(w.front())) return "!DIGITS";
        return str::to_lower(w);
    }

    static std::string suffix(const std::string& w, std::size_t n) {
        return w.size() <= n ? w : w.substr(w.size() - n);
    }

    static void features(const Context& ctx, const std::vector<std::string>& words, std::size_t i,
                         const std::string& p1, const std::string& p2, std::vector<std::string>& out) {
        out.clear();
        const std::size_t j = i + 2;
        const std::string& w = ctx.lower[j];
        const std::string& raw = words[i];
        out.emplace_back("bias");
        out.push_back("w " + w);
        if (w.size() > 3) out.push_back("suf3 " + suffix(w, 3));
        if (w.size() > 2) out.push_back("suf2 " + suffix(w, 2));
        out.push_back("pre1 " + w.substr(0, 1));
        out.push_back("t-1 " + p1);
        out.push_back("t-2 " + p2);
        out.push_back("t-1,t-2 " + p1 + " " + p2);
        out.push_back("t-1,w " + p1 + " " + w);
        out.push_back("w-1 " + ctx.lower[j - 1]);
        if (ctx.lower[j - 1].size() > 3) out.push_back("suf3-1 " + suffix(ctx.lower[j - 1], 3));
        out.push_back("w-2 " + ctx.lower[j - 2]);
        // right context only inside the sentence, so a missing final period
        // does not change the prediction for the last word
        if (i + 1 < words.size()) {
            out.push_back("w+1 " + ctx.lower[j + 1]);
            if (ctx.lower[j + 1].size() > 3) out.push_back("suf3+1 " + suffix(ctx.lower[j + 1], 3));
        }
        if (i + 2 < words.size()) out.push_back("w+2 " + ctx.lower[j + 2]);
        if (!raw.empty() && str::is_upper(raw.front())) out.emplace_back(i == 0 ? "shape capfirst" : "shape cap");
        if (raw.size() > 1 && std::all_of(raw.begin(), raw.end(), [](char c) { return str::is_upper(c); }))
            out.emplace_back("shape allcaps");
        if (str::has_digit(raw)) out.emplace_back("shape digit");
        if (raw.find('-') != std::string::npos) out.emplace_back("shape hyphen");
        if (!str::has_alpha(raw) && !str::has_digit(raw)) out.push_back("punct " + raw);
        else out.emplace_back(str::has_alpha(raw) ? "kind alpha" : "kind number");
    }

    std::vector<std::string> tags_;
    std::unordered_map<std::string, std::size_t> tag_index_;
    std::unordered_map<std::string, SparseRow> weights_;
    std::unordered_map<std::string, std::string> tagdict_;
};

}  // namespace textlevel
