#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "textlevel/analysis/selection.hpp"
#include "textlevel/corpus/corpus.hpp"
#include "textlevel/ml/evaluate.hpp"
#include "textlevel/ml/models.hpp"
#include "textlevel/util/error.hpp"
#include "textlevel/util/strings.hpp"

namespace textlevel {

inline const std::vector<std::string>& selector_names() {
    static const std::vector<std::string> v = {"none", "omega", "cfs", "relieff", "svm"};
    return v;
}

// Ranking of the feature columns of `d` by the named method.
inline Ranking rank_features(const Dataset& d, const std::string& method, std::uint64_t seed,
                             std::vector<std::string>* warnings = nullptr) {
    if (method == "omega") return rank_omega(d);
    if (method == "cfs") return select_cfs(d);
    if (method == "relieff") return rank_relieff(d, 10, warnings);
    if (method == "svm") {
        SvmRankOptions o;
        o.seed = seed;
        return rank_svm_weights(d, o);
    }
    throw ValidationError("unknown ranking method '" + method + "' (expected omega, cfs, relieff or svm)");
}

struct ExperimentSpec {
    std::string matrix, train_matrix, test_matrix;
    std::vector<Algo> algorithms;
    std::vector<std::string> selectors = {"none"};
    std::vector<std::size_t> feature_counts;
    std::size_t folds = 10;
    std::uint64_t seed = 1;
    TrainParams params;
    std::string out;
    bool timing = true;

    bool train_test() const { return !train_matrix.empty(); }

    // Paths are resolved against `base_dir`. Every problem is collected and
    // reported in a single ValidationError.
    static ExperimentSpec parse(const nlohmann::json& j, const std::string& base_dir) {
        namespace fs = std::filesystem;
        ExperimentSpec s;
        std::vector<std::string> errors;
        auto path = [&](const char* key, std::string& dst) {
            if (!j.contains(key)) return;
            if (!j[key].is_string()) {
                errors.push_back(std::string("'") + key + "' must be a string");
                return;
            }
            const fs::path p = j[key].get<std::string>();
            dst = (p.is_absolute() ? p : fs::path(base_dir) / p).lexically_normal().string();
        };
        if (!j.is_object()) throw ValidationError("experiment spec must be a JSON object");
        static const std::vector<std::string> known = {"matrix", "train_matrix", "test_matrix", "algorithms",
                                                       "selectors", "feature_counts", "folds", "seed",
                                                       "params", "out", "timing"};
        for (const auto& [k, v] : j.items())
            if (std::find(known.begin(), known.end(), k) == known.end()) errors.push_back("unknown key '" + k + "'");
        path("matrix", s.matrix);
        path("train_matrix", s.train_matrix);
        path("test_matrix", s.test_matrix);
        path("out", s.out);
        if (s.matrix.empty() == s.train_matrix.empty())
            errors.push_back("give either 'matrix' or 'train_matrix' with 'test_matrix'");
        if (s.train_matrix.empty() != s.test_matrix.empty())
            errors.push_back("'train_matrix' and 'test_matrix' go together");
        if (s.out.empty()) errors.push_back("'out' is required");

        if (!j.contains("algorithms") || !j["algorithms"].is_array() || j["algorithms"].empty()) {
            errors.push_back("'algorithms' must be a non-empty list");
        } else {
            for (const auto& a : j["algorithms"]) {
                try {
                    s.algorithms.push_back(parse_algo(a.is_string() ? a.get<std::string>() : a.dump()));
                } catch (const ValidationError& e) {
                    errors.push_back(e.what());
                }
            }
        }
        if (j.contains("selectors")) {
            s.selectors.clear();
            if (!j["selectors"].is_array() || j["selectors"].empty()) errors.push_back("'selectors' must be a non-empty list");
            else
                for (const auto& v : j["selectors"]) {
                    const std::string name = v.is_string() ? v.get<std::string>() : v.dump();
                    const auto& ok = selector_names();
                    if (std::find(ok.begin(), ok.end(), name) == ok.end())
                        errors.push_back("unknown selector '" + name + "' (expected none, omega, cfs, relieff or svm)");
                    else s.selectors.push_back(name);
                }
        }
        if (j.contains("feature_counts")) {
            const auto& fc = j["feature_counts"];
            auto positive = [&](const nlohmann::json& v, const std::string& what) -> std::optional<std::size_t> {
                if (!v.is_number_integer() || v.get<long long>() < 1) {
                    errors.push_back(what + " must be a positive integer");
                    return std::nullopt;
                }
                return v.get<std::size_t>();
            };
            if (fc.is_array()) {
                for (const auto& v : fc)
                    if (auto k = positive(v, "feature_counts entry")) s.feature_counts.push_back(*k);
            } else if (fc.is_object()) {
                const auto from = positive(fc.value("from", nlohmann::json()), "feature_counts.from");
                const auto to = positive(fc.value("to", nlohmann::json()), "feature_counts.to");
                const auto step = positive(fc.value("step", nlohmann::json(1)), "feature_counts.step");
                if (from && to && step) {
                    if (*from > *to) errors.push_back("feature_counts.from exceeds feature_counts.to");
                    for (std::size_t k = *from; k <= *to; k += *step) s.feature_counts.push_back(k);
                }
            } else {
                errors.push_back("'feature_counts' must be a list or {from, to, step}");
            }
        }
        if (j.contains("folds")) {
            if (!j["folds"].is_number_integer() || j["folds"].get<long long>() < 2) errors.push_back("'folds' must be an integer >= 2");
            else s.folds = j["folds"].get<std::size_t>();
        }
        if (j.contains("seed")) {
            if (!j["seed"].is_number_unsigned()) errors.push_back("'seed' must be a non-negative integer");
            else s.seed = j["seed"].get<std::uint64_t>();
        }
        if (j.contains("timing")) {
            if (!j["timing"].is_boolean()) errors.push_back("'timing' must be true or false");
            else s.timing = j["timing"].get<bool>();
        }
        if (j.contains("params")) {
            try {
                s.params = TrainParams::from_json(j["params"]);
            } catch (const ValidationError& e) {
                errors.push_back(std::string("params: ") + e.what());
            }
        }
        if (!errors.empty()) {
            std::string msg = "invalid experiment spec:";
            for (const auto& e : errors) msg += "\n  - " + e;
            throw ValidationError(msg);
        }
        return s;
    }

    static ExperimentSpec load(const std::string& path) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(str::read_file(path));
        } catch (const nlohmann::json::parse_error& e) {
            throw ValidationError(path + ": " + e.what());
        }
        return parse(j, std::filesystem::path(path).parent_path().string());
    }

    // (selector, k) pairs; k == 0 means every feature.
    std::vector<std::pair<std::string, std::size_t>> selections() const {
        std::vector<std::pair<std::string, std::size_t>> out;
        for (const auto& sel : selectors) {
            if (sel == "none" || feature_counts.empty()) out.emplace_back(sel, 0);
            else
                for (std::size_t k : feature_counts) out.emplace_back(sel, k);
        }
        return out;
    }

    std::size_t cell_count() const { return algorithms.size() * selections().size(); }
};

struct ExperimentResult {
    std::size_t cells = 0;
    nlohmann::json summary;
    std::vector<std::string> warnings;
};

namespace detail {

inline void write_json(const std::filesystem::path& p, const nlohmann::json& j) {
    std::filesystem::create_directories(p.parent_path());
    str::write_file(p.string(), j.dump(2) + "\n");
}

// Per-row n-gram counts aligned with the labeled dataset rows, when a sidecar
// exists next to the matrix.
inline std::optional<std::pair<std::vector<NgramCounts>, std::size_t>> fold_counts(const std::string& matrix_path,
                                                                                   const FeatureMatrix& m,
                                                                                   const std::vector<std::size_t>& rows) {
    const auto side = NgramSidecar::path_for(matrix_path);
    if (!std::filesystem::exists(side)) return std::nullopt;
    const auto s = NgramSidecar::from_json(nlohmann::json::parse(str::read_file(side)));
    std::vector<NgramCounts> out;
    for (std::size_t r : rows) {
        const auto* c = s.find(m.ids[r]);
        if (!c) throw ValidationError(side + ": no n-gram counts for document '" + m.ids[r] + "'");
        out.push_back(*c);
    }
    return std::make_pair(std::move(out), s.top_k);
}

}  // namespace detail

// Runs the algorithm x selection grid. Writes effects.json, ranking_<m>.json,
// cells/<algo>__<selector>__k<k>.json, summary.json and (unless disabled)
// timing.json, the only output that varies between runs.
inline ExperimentResult run_experiment(const ExperimentSpec& spec) {
    namespace fs = std::filesystem;
    ExperimentResult res;
    const fs::path out = spec.out;
    const std::string main_path = spec.train_test() ? spec.train_matrix : spec.matrix;
    const auto matrix = FeatureMatrix::load(main_path);
    const auto labeled = matrix.labeled();
    const Dataset& data = labeled.data;
    std::optional<Dataset> test;
    if (spec.train_test()) {
        const auto tm = FeatureMatrix::load(spec.test_matrix);
        if (tm.fingerprint != matrix.fingerprint || tm.names != matrix.names)
            throw ValidationError("train and test matrices use different catalogs (" + matrix.fingerprint + " vs " +
                                  tm.fingerprint + ")");
        test = tm.labeled().data;
    }
    FoldHook hook;
    if (!spec.train_test())
        if (auto fc = detail::fold_counts(main_path, matrix, labeled.rows)) hook = profile_fold_hook(std::move(fc->first), fc->second);

    detail::write_json(out / "effects.json", effect_report(data).to_json());
    std::map<std::string, Ranking> rankings;
    for (const auto& sel : spec.selectors) {
        if (sel == "none" || rankings.count(sel)) continue;
        rankings[sel] = rank_features(data, sel, spec.seed, &res.warnings);
        detail::write_json(out / ("ranking_" + sel + ".json"), rankings[sel].to_json());
    }

    nlohmann::json cells = nlohmann::json::array();
    for (Algo algo : spec.algorithms)
        for (const auto& [sel, k] : spec.selections()) {
            Dataset sub;
            std::vector<std::string> chosen;
            std::size_t used = 0;
            if (sel == "none") {
                sub = data;
                used = data.feature_columns().size();
            } else {
                const auto& r = rankings.at(sel);
                used = k == 0 ? r.entries.size() : std::min(k, r.entries.size());
                if (k > r.entries.size())
                    res.warnings.push_back(sel + ": ranking has " + std::to_string(r.entries.size()) +
                                           " features, k=" + std::to_string(k) + " capped");
                chosen = r.top(used);
                sub = data.select_features(chosen);
            }
            EvalReport rep;
            if (test) {
                const auto model = train_model(algo, sub, spec.params, spec.seed);
                Dataset tsub = sel == "none" ? *test : test->select_features(chosen);
                rep = evaluate_model(model, tsub);
                rep.seed = spec.seed;
                rep.warnings = model.warnings;
            } else {
                rep = cross_validate(algo, sub, spec.params, spec.folds, spec.seed, hook);
            }
            const std::string name = std::string(algo_name(algo)) + "__" + sel + "__k" + std::to_string(k);
            auto j = rep.to_json();
            j["selector"] = sel;
            j["k"] = k;
            j["features_used"] = used;
            detail::write_json(out / "cells" / (name + ".json"), j);
            cells.push_back({{"cell", name},
                             {"algo", algo_name(algo)},
                             {"selector", sel},
                             {"k", k},
                             {"features_used", used},
                             {"f1", rep.metrics.f1},
                             {"accuracy", rep.metrics.accuracy},
                             {"mcc", rep.metrics.mcc},
                             {"auc", rep.metrics.auc ? nlohmann::json(*rep.metrics.auc) : nlohmann::json(nullptr)}});
            ++res.cells;
        }
    res.summary = {{"mode", spec.train_test() ? "train_test" : "cross_validation"},
                   {"folds", spec.train_test() ? 0 : spec.folds},
                   {"seed", spec.seed},
                   {"rows", data.rows()},
                   {"catalog_fingerprint", matrix.fingerprint},
                   {"cells", cells},
                   {"warnings", res.warnings}};
    detail::write_json(out / "summary.json", res.summary);

    if (spec.timing) {
        nlohmann::json tables = nlohmann::json::array();
        for (Algo algo : spec.algorithms)
            for (const auto& [sel, r] : rankings) {
                std::vector<std::size_t> counts;
                for (std::size_t k : spec.feature_counts)
                    if (k <= r.entries.size()) counts.push_back(k);
                if (counts.empty()) counts.push_back(r.entries.size());
                auto t = measure_training_time(algo, data, counts, r, spec.params, spec.seed).to_json();
                t["selector"] = sel;
                tables.push_back(t);
            }
        detail::write_json(out / "timing.json", {{"tables", tables}});
    }
    return res;
}

inline ExperimentResult run_experiment(const std::string& spec_path) {
    return run_experiment(ExperimentSpec::load(spec_path));
}

}  // namespace textlevel
