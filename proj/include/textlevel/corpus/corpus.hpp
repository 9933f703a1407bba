#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <atomic>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "textlevel/document.hpp"
#include "textlevel/features/catalog.hpp"
#include "textlevel/ml/dataset.hpp"
#include "textlevel/ml/evaluate.hpp"
#include "textlevel/resources.hpp"
#include "textlevel/tagging/trees.hpp"
#include "textlevel/util/csv.hpp"
#include "textlevel/util/error.hpp"
#include "textlevel/util/strings.hpp"

namespace textlevel {

struct ManifestEntry {
    std::string id;
    std::string path;
    std::optional<int> level;
    std::string trees;  // empty when none
};

struct CorpusManifest {
    std::string root;
    std::vector<ManifestEntry> entries;
};

namespace detail {

inline std::optional<int> parse_level(const std::string& s, const std::string& where) {
    if (s.empty()) return std::nullopt;
    bool ok = false;
    const long long v = str::parse_int(s, &ok);
    if (!ok || v < 1 || v > 4) throw ValidationError(where + ": level must be 1..4, got '" + s + "'");
    return static_cast<int>(v);
}

}  // namespace detail

// `root/manifest.csv` (id,path,level[,trees]) when present, otherwise
// `root/level<k>/*.txt`; loose `root/*.txt` files are unlabeled. Sibling
// `<stem>.trees` files are linked automatically.
inline CorpusManifest scan_corpus(const std::string& root) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(root)) throw ValidationError("corpus directory '" + root + "' does not exist");
    CorpusManifest m;
    m.root = root;
    const fs::path manifest = fs::path(root) / "manifest.csv";
    if (fs::exists(manifest)) {
        const auto rows = str::lines(str::read_file(manifest.string()));
        if (rows.empty()) throw ValidationError(manifest.string() + ": empty manifest");
        auto header = csv::parse_line(rows[0], 1, manifest.string());
        for (auto& h : header) h = str::to_lower(str::trim(h));
        if (header.size() < 3 || header[0] != "id" || header[1] != "path" || header[2] != "level" ||
            (header.size() == 4 && header[3] != "trees") || header.size() > 4)
            throw ValidationError(manifest.string() + ": expected header id,path,level[,trees]");
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (str::trim(rows[i]).empty()) continue;
            const auto r = csv::parse_line(rows[i], i + 1, manifest.string());
            const std::string where = manifest.string() + ":" + std::to_string(i + 1);
            if (r.size() != header.size()) throw ValidationError(where + ": expected " + std::to_string(header.size()) + " fields");
            ManifestEntry e;
            e.id = std::string(str::trim(r[0]));
            e.path = (fs::path(root) / std::string(str::trim(r[1]))).string();
            e.level = detail::parse_level(std::string(str::trim(r[2])), where);
            if (header.size() == 4 && !str::trim(r[3]).empty()) e.trees = (fs::path(root) / std::string(str::trim(r[3]))).string();
            if (!fs::exists(e.path)) throw ValidationError(where + ": file '" + e.path + "' does not exist");
            if (!e.trees.empty() && !fs::exists(e.trees)) throw ValidationError(where + ": file '" + e.trees + "' does not exist");
            m.entries.push_back(std::move(e));
        }
    } else {
        auto collect = [&](const fs::path& dir, std::optional<int> level) {
            std::vector<fs::path> files;
            for (const auto& f : fs::directory_iterator(dir))
                if (f.is_regular_file() && f.path().extension() == ".txt") files.push_back(f.path());
            std::sort(files.begin(), files.end());
            for (const auto& f : files) {
                ManifestEntry e;
                e.id = f.stem().string();
                e.path = f.string();
                e.level = level;
                auto t = f;
                t.replace_extension(".trees");
                if (fs::exists(t)) e.trees = t.string();
                m.entries.push_back(std::move(e));
            }
        };
        collect(root, std::nullopt);
        std::vector<std::pair<int, fs::path>> levels;
        for (const auto& d : fs::directory_iterator(root)) {
            if (!d.is_directory()) continue;
            const auto name = d.path().filename().string();
            if (!str::starts_with(name, "level")) continue;
            levels.emplace_back(*detail::parse_level(name.substr(5), d.path().string()), d.path());
        }
        std::sort(levels.begin(), levels.end());
        for (const auto& [level, dir] : levels) collect(dir, level);
    }
    if (m.entries.empty()) throw ValidationError("corpus '" + root + "' contains no documents");
    std::set<std::string> seen;
    for (const auto& e : m.entries)
        if (!seen.insert(e.id).second) throw ValidationError("duplicate document id '" + e.id + "' in corpus");
    return m;
}

// Catalog columns plus document ids, optional levels and provenance.
struct FeatureMatrix {
    std::string version = ::textlevel::catalog_version;
    std::string fingerprint = catalog().fingerprint();
    std::vector<std::string> names = catalog().columns();
    std::vector<std::string> ids;
    std::vector<std::vector<double>> X;
    std::vector<std::optional<int>> levels;
    nlohmann::json extraction = nlohmann::json::object();

    std::size_t rows() const { return X.size(); }

    std::string to_csv() const {
        std::string out = "#catalog:" + version + " fingerprint=" + fingerprint + "\n";
        out += "#extraction:" + extraction.dump() + "\n";
        csv::Row header = {"id"};
        header.insert(header.end(), names.begin(), names.end());
        header.push_back("level");
        out += csv::format_row(header) + "\n";
        for (std::size_t i = 0; i < X.size(); ++i) {
            csv::Row r = {ids[i]};
            for (double v : X[i]) r.push_back(str::fmt(v));
            r.push_back(levels[i] ? std::to_string(*levels[i]) : "");
            out += csv::format_row(r) + "\n";
        }
        return out;
    }

    // Rejects files from another catalog version or column layout.
    static FeatureMatrix from_csv(const std::string& text, const std::string& origin) {
        FeatureMatrix m;
        const auto lines = str::lines(text);
        std::size_t i = 0;
        std::string version, fp;
        for (; i < lines.size() && str::starts_with(lines[i], "#"); ++i) {
            const std::string line(str::trim(lines[i]));
            if (str::starts_with(line, "#catalog:")) {
                const auto parts = str::split_ws(line.substr(9));
                if (!parts.empty()) version = parts[0];
                for (const auto& p : parts)
                    if (str::starts_with(p, "fingerprint=")) fp = p.substr(12);
            } else if (str::starts_with(line, "#extraction:")) {
                try {
                    m.extraction = nlohmann::json::parse(line.substr(12));
                } catch (const nlohmann::json::parse_error&) {
                    throw ValidationError(origin + ":" + std::to_string(i + 1) + ": malformed extraction metadata");
                }
            }
        }
        if (version.empty() || fp.empty()) throw ValidationError(origin + ": missing '#catalog:' header line");
        if (version != m.version || fp != m.fingerprint)
            throw ValidationError(origin + ": matrix was built with catalog " + version + " (fingerprint " + fp +
                                  "), this build expects " + m.version + " (fingerprint " + m.fingerprint + ")");
        if (i >= lines.size()) throw ValidationError(origin + ": missing column header");
        auto header = csv::parse_line(lines[i], i + 1, origin);
        csv::Row expected = {"id"};
        expected.insert(expected.end(), m.names.begin(), m.names.end());
        expected.push_back("level");
        if (header != expected) throw ValidationError(origin + ": column header does not match the feature catalog");
        for (++i; i < lines.size(); ++i) {
            if (str::trim(lines[i]).empty()) continue;
            const auto r = csv::parse_line(lines[i], i + 1, origin);
            const std::string where = origin + ":" + std::to_string(i + 1);
            if (r.size() != expected.size())
                throw ValidationError(where + ": expected " + std::to_string(expected.size()) + " fields, got " +
                                      std::to_string(r.size()));
            std::vector<double> row;
            row.reserve(m.names.size());
            for (std::size_t j = 1; j + 1 < r.size(); ++j) {
                bool ok = false;
                const double v = str::parse_double(r[j], &ok);
                if (!ok || !std::isfinite(v))
                    throw ValidationError(where + ": column '" + m.names[j - 1] + "' is not a finite number");
                row.push_back(v);
            }
            m.ids.push_back(r[0]);
            m.X.push_back(std::move(row));
            m.levels.push_back(detail::parse_level(r.back(), where));
        }
        return m;
    }

    static FeatureMatrix load(const std::string& path) { return from_csv(str::read_file(path), path); }

    struct Labeled {
        Dataset data;
        std::vector<std::size_t> rows;  // matrix row of each dataset row
    };

    Labeled labeled() const {
        Labeled l;
        std::vector<std::vector<double>> X2;
        std::vector<int> y;
        for (std::size_t i = 0; i < X.size(); ++i) {
            if (!levels[i]) continue;
            l.rows.push_back(i);
            X2.push_back(X[i]);
            y.push_back(*levels[i]);
        }
        if (l.rows.empty()) throw ValidationError("matrix has no labeled rows");
        l.data = Dataset::from_levels(names, std::move(X2), y, fingerprint);
        return l;
    }
};

// Per-document tag n-gram counts kept next to a matrix so level profiles
// can be rebuilt from any subset of rows.
struct NgramSidecar {
    std::size_t top_k = 300;
    std::vector<std::string> ids;
    std::vector<NgramCounts> counts;
    LevelProfiles profiles;  // the profiles used for the matrix columns

    nlohmann::json to_json() const {
        nlohmann::json docs = nlohmann::json::array();
        for (std::size_t i = 0; i < ids.size(); ++i) docs.push_back({{"id", ids[i]}, {"counts", counts[i].to_json()}});
        return {{"format", "textlevel-ngrams"}, {"version", 1}, {"top_k", top_k}, {"profiles", profiles.to_json()}, {"documents", docs}};
    }
    static NgramSidecar from_json(const nlohmann::json& j) {
        if (j.value("format", "") != "textlevel-ngrams") throw ValidationError("not an n-gram sidecar file");
        NgramSidecar s;
        s.top_k = j.at("top_k").get<std::size_t>();
        s.profiles = LevelProfiles::from_json(j.at("profiles"));
        for (const auto& d : j.at("documents")) {
            s.ids.push_back(d.at("id").get<std::string>());
            s.counts.push_back(NgramCounts::from_json(d.at("counts")));
        }
        return s;
    }
    static std::string path_for(const std::string& matrix_path) { return matrix_path + ".ngrams.json"; }

    const NgramCounts* find(const std::string& id) const {
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (ids[i] == id) return &counts[i];
        return nullptr;
    }
};

// Writes the nine profile columns (and their indicators) of one dataset row.
inline void write_profile_columns(Dataset& d, std::size_t row, const std::array<std::optional<double>, 9>& dist) {
    for (int n = 2; n <= 4; ++n)
        for (int l = 1; l <= 3; ++l) {
            const std::string name = "prof" + std::to_string(n) + "_l" + std::to_string(l);
            const auto& v = dist[static_cast<std::size_t>((n - 2) * 3 + (l - 1))];
            const int j = d.column(name), ind = d.column(name + "__absent");
            if (j >= 0) d.X[row][static_cast<std::size_t>(j)] = v ? *v : 0.0;
            if (ind >= 0) d.X[row][static_cast<std::size_t>(ind)] = v ? 0.0 : 1.0;
        }
}

// Fold hook rebuilding level profiles from the training rows only.
// `counts[i]` belongs to dataset row i.
inline FoldHook profile_fold_hook(std::vector<NgramCounts> counts, std::size_t top_k) {
    return [counts = std::move(counts), top_k](const std::vector<std::size_t>& train, Dataset& data) {
        std::vector<const NgramCounts*> docs;
        std::vector<int> labels;
        for (std::size_t i : train) {
            docs.push_back(&counts[i]);
            labels.push_back(data.class_labels[static_cast<std::size_t>(data.y[i])]);
        }
        const auto profiles = LevelProfiles::build(docs, labels, top_k);
        for (std::size_t i = 0; i < data.rows(); ++i) write_profile_columns(data, i, profiles.distances(counts[i]));
    };
}

struct ExtractOptions {
    ExtractionConfig cfg;
    bool use_trees = false;
    std::optional<LevelProfiles> fixed_profiles;  // otherwise built from labeled rows
    std::size_t threads = 0;                       // 0 = hardware concurrency
};

struct ExtractResult {
    FeatureMatrix matrix;
    NgramSidecar ngrams;
    LevelProfiles profiles;
    std::vector<std::string> log;  // warnings and per-document failures
    std::size_t failures = 0;
    std::size_t documents = 0;

    bool too_many_failures() const { return failures * 10 > documents; }
};

inline ExtractResult extract_matrix(const CorpusManifest& manifest, const ResourceBundle& bundle,
                                    const ExtractOptions& opt) {
    const std::size_t n = manifest.entries.size();
    struct Slot {
        std::optional<FeatureRow> row;
        NgramCounts counts;
        std::string error;
        std::size_t replaced = 0;
    };
    std::vector<Slot> slots(n);
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (std::size_t i = next++; i < n; i = next++) {
            const auto& e = manifest.entries[i];
            try {
                std::vector<ParseTree> trees;
                if (opt.use_trees && !e.trees.empty()) trees = read_bracketed_trees(e.trees);
                const auto doc = analyze(str::read_file(e.path), bundle, bundle.tagger ? &*bundle.tagger : nullptr, trees.empty() ? nullptr : &trees);
                slots[i].replaced = doc.replaced_bytes;
                slots[i].counts = tag_ngrams(doc);
                slots[i].row = extract_features(doc, bundle, opt.cfg, slots[i].counts, nullptr);
            } catch (const std::exception& ex) {
                slots[i].error = ex.what();
            }
        }
    };
    std::size_t threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(1, n));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    ExtractResult res;
    res.documents = n;
    res.ngrams.top_k = opt.cfg.profile_top_k;
    if (!bundle.embeddings[0]) res.log.push_back("warning: no embeddings loaded; coherence columns are absent");
    std::vector<std::size_t> ok;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& e = manifest.entries[i];
        if (slots[i].replaced)
            res.log.push_back("warning: " + e.id + ": replaced " + std::to_string(slots[i].replaced) + " undecodable bytes");
        if (!slots[i].row) {
            ++res.failures;
            res.log.push_back("error: " + e.id + ": " + slots[i].error);
            continue;
        }
        ok.push_back(i);
    }
    if (opt.fixed_profiles) {
        res.profiles = *opt.fixed_profiles;
    } else {
        std::vector<const NgramCounts*> docs;
        std::vector<int> labels;
        for (std::size_t i : ok)
            if (manifest.entries[i].level) {
                docs.push_back(&slots[i].counts);
                labels.push_back(*manifest.entries[i].level);
            }
        if (!docs.empty()) res.profiles = LevelProfiles::build(docs, labels, opt.cfg.profile_top_k);
        else res.profiles.top_k = opt.cfg.profile_top_k;
    }
    res.ngrams.profiles = res.profiles;
    for (std::size_t i : ok) {
        auto& row = *slots[i].row;
        set_profile_features(row, slots[i].counts, &res.profiles);
        res.matrix.ids.push_back(manifest.entries[i].id);
        res.matrix.X.push_back(row.columns());
        res.matrix.levels.push_back(manifest.entries[i].level);
        res.ngrams.ids.push_back(manifest.entries[i].id);
        res.ngrams.counts.push_back(std::move(slots[i].counts));
    }
    res.matrix.extraction = {{"config", opt.cfg.to_json()},
                             {"resources", bundle.dir},
                             {"resources_fingerprint", bundle.fingerprint},
                             {"trees", opt.use_trees},
                             {"profiles", opt.fixed_profiles ? "file" : "train"}};
    return res;
}

}  // namespace textlevel
