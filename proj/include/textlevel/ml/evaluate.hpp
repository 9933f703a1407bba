#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "textlevel/analysis/selection.hpp"
#include "textlevel/ml/dataset.hpp"
#include "textlevel/ml/metrics.hpp"
#include "textlevel/ml/models.hpp"
#include "textlevel/util/rng.hpp"

namespace textlevel {

// Stratified partition: each class is shuffled with its own derived stream
// and dealt round-robin, continuing the dealer position across classes so
// fold sizes differ by at most one. folds == N gives leave-one-out.
inline std::vector<std::vector<std::size_t>> stratified_folds(const std::vector<int>& y, std::size_t classes,
                                                              std::size_t folds, std::uint64_t seed,
                                                              std::vector<std::string>* warnings = nullptr) {
    const std::size_t n = y.size();
    if (folds < 2) throw ValidationError("folds must be >= 2");
    if (folds > n) throw ValidationError("folds (" + std::to_string(folds) + ") exceeds row count " + std::to_string(n));
    std::vector<std::vector<std::size_t>> members(classes);
    for (std::size_t i = 0; i < n; ++i) members[static_cast<std::size_t>(y[i])].push_back(i);
    Rng master(seed);
    if (folds == n) {
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        Rng rng = master.derive(0);
        rng.shuffle(all);
        std::vector<std::vector<std::size_t>> out;
        for (std::size_t i : all) out.push_back({i});
        return out;
    }
    std::size_t smallest = n;
    for (const auto& m : members)
        if (!m.empty()) smallest = std::min(smallest, m.size());
    if (smallest < folds) {
        const std::size_t reduced = std::max<std::size_t>(2, smallest);
        if (warnings)
            warnings->push_back("folds reduced from " + std::to_string(folds) + " to " + std::to_string(reduced) +
                                " (smallest class has " + std::to_string(smallest) + " rows)");
        folds = reduced;
    }
    std::vector<std::vector<std::size_t>> out(folds);
    std::size_t dealer = 0;
    for (std::size_t c = 0; c < classes; ++c) {
        auto idx = members[c];
        Rng rng = master.derive(c);
        rng.shuffle(idx);
        for (std::size_t i : idx) out[dealer++ % folds].push_back(i);
    }
    for (auto& f : out) std::sort(f.begin(), f.end());
    return out;
}

// Rewrites fold-dependent columns (level profiles) of `data` using only the
// given training rows.
using FoldHook = std::function<void(const std::vector<std::size_t>& train, Dataset& data)>;

struct FoldReport {
    std::vector<std::size_t> test_rows;
    Confusion confusion;
    MetricBlock metrics;
};

struct EvalReport {
    std::string algo;
    std::size_t folds = 0;
    std::uint64_t seed = 0;
    std::vector<int> class_labels;
    Confusion confusion;
    MetricBlock metrics;
    std::vector<FoldReport> per_fold;
    std::vector<std::string> warnings;
    std::vector<std::string> columns;

    nlohmann::json to_json() const {
        nlohmann::json folds_j = nlohmann::json::array();
        for (const auto& f : per_fold)
            folds_j.push_back({{"test_rows", f.test_rows}, {"confusion", f.confusion}, {"metrics", f.metrics.to_json(class_labels)}});
        return {{"algo", algo},
                {"folds", folds},
                {"seed", seed},
                {"class_labels", class_labels},
                {"features", columns.size()},
                {"confusion", confusion},
                {"metrics", metrics.to_json(class_labels)},
                {"adjacent_error_share", adjacent_error_share(confusion) ? nlohmann::json(*adjacent_error_share(confusion))
                                                                         : nlohmann::json(nullptr)},
                {"per_fold", folds_j},
                {"warnings", warnings}};
    }
};

// Scores a trained model on a labeled dataset whose columns match it.
inline EvalReport evaluate_model(const TrainedModel& model, const Dataset& test) {
    if (test.names != model.columns || (!model.fingerprint.empty() && !test.fingerprint.empty() &&
                                        model.fingerprint != test.fingerprint))
        throw ValidationError("test matrix columns do not match the model (model catalog fingerprint " +
                              model.fingerprint + ", matrix " + test.fingerprint + ")");
    EvalReport rep;
    rep.algo = algo_name(model.algo);
    rep.class_labels = model.class_labels;
    rep.columns = model.columns;
    const std::size_t L = model.classes();
    std::vector<int> actual, predicted;
    std::vector<std::vector<double>> scores;
    for (std::size_t i = 0; i < test.rows(); ++i) {
        const int label = test.class_labels[static_cast<std::size_t>(test.y[i])];
        const auto it = std::find(model.class_labels.begin(), model.class_labels.end(), label);
        if (it == model.class_labels.end())
            throw ValidationError("test label " + std::to_string(label) + " unknown to the model");
        actual.push_back(static_cast<int>(it - model.class_labels.begin()));
        scores.push_back(model.scores(test.X[i]));
        predicted.push_back(static_cast<int>(detail::argmax(scores.back())));
    }
    rep.confusion = confusion_of(actual, predicted, L);
    rep.metrics = metrics_from_confusion(rep.confusion);
    const auto auc = roc_auc_ovr(scores, actual, L);
    rep.metrics.auc = auc.weighted;
    for (std::size_t c = 0; c < L; ++c) rep.metrics.per_class[c].auc = auc.per_class[c];
    return rep;
}

inline EvalReport cross_validate(Algo algo, const Dataset& d, const TrainParams& params, std::size_t folds,
                                 std::uint64_t seed, const FoldHook& hook = {}) {
    EvalReport rep;
    rep.algo = algo_name(algo);
    rep.seed = seed;
    rep.class_labels = d.class_labels;
    rep.columns = d.names;
    const auto parts = stratified_folds(d.y, d.classes(), folds, seed, &rep.warnings);
    rep.folds = parts.size();
    const std::size_t L = d.classes();
    std::vector<std::vector<double>> scores(d.rows());
    std::vector<int> predicted(d.rows(), 0);
    Rng master(seed);
    for (std::size_t f = 0; f < parts.size(); ++f) {
        std::vector<bool> in_test(d.rows(), false);
        for (std::size_t i : parts[f]) in_test[i] = true;
        std::vector<std::size_t> train;
        for (std::size_t i = 0; i < d.rows(); ++i)
            if (!in_test[i]) train.push_back(i);
        const Dataset* data = &d;
        Dataset rewritten;
        if (hook) {
            rewritten = d;
            hook(train, rewritten);
            data = &rewritten;
        }
        const auto model = train_model(algo, data->subset_rows(train), params, master.derive(f).seed());
        for (const auto& w : model.warnings) rep.warnings.push_back("fold " + std::to_string(f + 1) + ": " + w);
        FoldReport fr;
        fr.test_rows = parts[f];
        std::vector<int> fa, fp;
        for (std::size_t i : parts[f]) {
            scores[i] = model.scores(data->X[i]);
            predicted[i] = static_cast<int>(detail::argmax(scores[i]));
            fa.push_back(d.y[i]);
            fp.push_back(predicted[i]);
        }
        fr.confusion = confusion_of(fa, fp, L);
        fr.metrics = metrics_from_confusion(fr.confusion);
        rep.per_fold.push_back(std::move(fr));
    }
    rep.confusion = confusion_of(d.y, predicted, L);
    rep.metrics = metrics_from_confusion(rep.confusion);
    const auto auc = roc_auc_ovr(scores, d.y, L);
    rep.metrics.auc = auc.weighted;
    for (std::size_t c = 0; c < L; ++c) rep.metrics.per_class[c].auc = auc.per_class[c];
    return rep;
}

struct TimingTable {
    std::string algo;
    std::vector<std::size_t> feature_counts;
    std::vector<double> seconds;

    nlohmann::json to_json() const {
        return {{"algo", algo}, {"feature_counts", feature_counts}, {"seconds", seconds}};
    }
};

// Wall-clock training time on nested top-k subsets of a ranking.
inline TimingTable measure_training_time(Algo algo, const Dataset& d, const std::vector<std::size_t>& feature_counts,
                                         const Ranking& ranking, const TrainParams& params, std::uint64_t seed) {
    TimingTable t;
    t.algo = algo_name(algo);
    for (std::size_t k : feature_counts) {
        if (k == 0 || k > ranking.entries.size())
            throw ValidationError("ranking has " + std::to_string(ranking.entries.size()) + " features, cannot take top " +
                                  std::to_string(k));
        const auto sub = d.select_features(ranking.top(k));
        const auto start = std::chrono::steady_clock::now();
        train_model(algo, sub, params, seed);
        t.feature_counts.push_back(k);
        t.seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    return t;
}

}  // namespace textlevel
