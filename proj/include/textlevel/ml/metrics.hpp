#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "textlevel/util/error.hpp"

namespace textlevel {

using Confusion = std::vector<std::vector<long>>;  // [actual][predicted]

struct ClassMetrics {
    double precision = 0, recall = 0, f1 = 0, mcc = 0;
    long support = 0;
    bool no_predictions = false;  // precision undefined, reported 0
    bool no_support = false;      // recall undefined, reported 0
    std::optional<double> auc;
};

struct MetricBlock {
    std::vector<ClassMetrics> per_class;
    double precision = 0, recall = 0, f1 = 0, mcc = 0, accuracy = 0;
    std::optional<double> auc;
    long total = 0;

    nlohmann::json to_json(const std::vector<int>& labels) const {
        auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
        nlohmann::json pc = nlohmann::json::array();
        for (std::size_t c = 0; c < per_class.size(); ++c) {
            const auto& m = per_class[c];
            nlohmann::json flags = nlohmann::json::array();
            if (m.no_predictions) flags.push_back("no_predictions");
            if (m.no_support) flags.push_back("no_support");
            pc.push_back({{"label", c < labels.size() ? labels[c] : static_cast<int>(c)},
                          {"precision", m.precision},
                          {"recall", m.recall},
                          {"f1", m.f1},
                          {"mcc", m.mcc},
                          {"auc", opt(m.auc)},
                          {"support", m.support},
                          {"flags", flags}});
        }
        return {{"accuracy", accuracy},
                {"weighted", {{"precision", precision}, {"recall", recall}, {"f1", f1}, {"mcc", mcc}, {"auc", opt(auc)}}},
                {"per_class", pc},
                {"total", total}};
    }
};

inline void check_confusion(const Confusion& cm) {
    for (const auto& row : cm) {
        if (row.size() != cm.size()) throw ValidationError("confusion matrix must be square");
        for (long v : row)
            if (v < 0) throw ValidationError("confusion matrix entries must be non-negative");
    }
}

// Binary MCC from one-vs-rest counts; 0 when any margin is empty.
inline double mcc(double tp, double tn, double fp, double fn) {
    const double den = std::sqrt((tp + fp) * (tp + fn) * (tn + fp) * (tn + fn));
    return den > 0 ? (tp * tn - fp * fn) / den : 0.0;
}

inline MetricBlock metrics_from_confusion(const Confusion& cm) {
    check_confusion(cm);
    const std::size_t L = cm.size();
    MetricBlock m;
    long trace = 0;
    std::vector<long> row(L, 0), col(L, 0);
    for (std::size_t a = 0; a < L; ++a)
        for (std::size_t p = 0; p < L; ++p) {
            m.total += cm[a][p];
            row[a] += cm[a][p];
            col[p] += cm[a][p];
            if (a == p) trace += cm[a][p];
        }
    m.per_class.resize(L);
    for (std::size_t c = 0; c < L; ++c) {
        auto& k = m.per_class[c];
        const double tp = static_cast<double>(cm[c][c]);
        const double fp = static_cast<double>(col[c]) - tp;
        const double fn = static_cast<double>(row[c]) - tp;
        const double tn = static_cast<double>(m.total) - tp - fp - fn;
        k.support = row[c];
        k.no_predictions = col[c] == 0;
        k.no_support = row[c] == 0;
        k.precision = col[c] ? tp / static_cast<double>(col[c]) : 0.0;
        k.recall = row[c] ? tp / static_cast<double>(row[c]) : 0.0;
        k.f1 = k.precision + k.recall > 0 ? 2 * k.precision * k.recall / (k.precision + k.recall) : 0.0;
        k.mcc = mcc(tp, tn, fp, fn);
    }
    if (m.total > 0) {
        m.accuracy = static_cast<double>(trace) / static_cast<double>(m.total);
        for (const auto& k : m.per_class) {
            const double w = static_cast<double>(k.support) / static_cast<double>(m.total);
            m.precision += w * k.precision;
            m.recall += w * k.recall;
            m.f1 += w * k.f1;
            m.mcc += w * k.mcc;
        }
    }
    return m;
}

// Area under the ROC curve by the rank statistic with midranks for ties.
// Empty when either side is empty.
inline std::optional<double> binary_auc(const std::vector<double>& score, const std::vector<bool>& positive) {
    const std::size_t n = score.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });
    std::vector<double> rank(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && score[order[j + 1]] == score[order[i]]) ++j;
        const double mid = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = mid;
        i = j + 1;
    }
    double npos = 0, sum = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (positive[i]) ++npos, sum += rank[i];
    const double nneg = static_cast<double>(n) - npos;
    if (npos == 0 || nneg == 0) return std::nullopt;
    return (sum - npos * (npos + 1) / 2.0) / (npos * nneg);
}

struct AucResult {
    std::vector<std::optional<double>> per_class;
    std::optional<double> weighted;
};

// One-vs-rest AUC per class, support-weighted over the classes where it is
// defined.
inline AucResult roc_auc_ovr(const std::vector<std::vector<double>>& scores, const std::vector<int>& labels,
                             std::size_t classes) {
    if (scores.size() != labels.size()) throw ValidationError("scores and labels differ in length");
    AucResult r;
    double wsum = 0, acc = 0;
    for (std::size_t c = 0; c < classes; ++c) {
        std::vector<double> s;
        std::vector<bool> pos;
        double support = 0;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            s.push_back(scores[i].at(c));
            pos.push_back(labels[i] == static_cast<int>(c));
            support += pos.back() ? 1 : 0;
        }
        const auto a = binary_auc(s, pos);
        r.per_class.push_back(a);
        if (a) {
            acc += support * *a;
            wsum += support;
        }
    }
    if (wsum > 0) r.weighted = acc / wsum;
    return r;
}

inline Confusion confusion_of(const std::vector<int>& actual, const std::vector<int>& predicted, std::size_t classes) {
    Confusion cm(classes, std::vector<long>(classes, 0));
    for (std::size_t i = 0; i < actual.size(); ++i)
        ++cm[static_cast<std::size_t>(actual[i])][static_cast<std::size_t>(predicted[i])];
    return cm;
}

// Share of off-diagonal mass that sits one level away from the diagonal.
inline std::optional<double> adjacent_error_share(const Confusion& cm) {
    long off = 0, adj = 0;
    for (std::size_t a = 0; a < cm.size(); ++a)
        for (std::size_t p = 0; p < cm.size(); ++p) {
            if (a == p) continue;
            off += cm[a][p];
            if (a + 1 == p || p + 1 == a) adj += cm[a][p];
        }
    if (off == 0) return std::nullopt;
    return static_cast<double>(adj) / static_cast<double>(off);
}

}  // namespace textlevel
