#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "textlevel/analysis/stats.hpp"
#include "textlevel/ml/dataset.hpp"
#include "textlevel/util/csv.hpp"
#include "textlevel/util/error.hpp"
#include "textlevel/util/rng.hpp"
#include "textlevel/util/strings.hpp"

namespace textlevel {

struct EffectRow {
    std::string feature;
    AnovaResult anova;
    bool valid = true;
};

struct EffectReport {
    std::vector<EffectRow> rows;

    std::string to_csv() const {
        std::string out = "feature,F,p,omega_sq,band\n";
        for (const auto& r : rows) {
            if (!r.valid) {
                out += csv::quote(r.feature) + ",NA,NA,NA,NA\n";
                continue;
            }
            out += csv::quote(r.feature) + "," + (std::isinf(r.anova.F) ? "inf" : str::fmt(r.anova.F)) + "," +
                   str::fmt(r.anova.p) + "," + str::fmt(r.anova.omega_sq) + "," + band_name(r.anova.band) + "\n";
        }
        return out;
    }

    // Invalid rows carry nulls; an infinite F is written as the string "inf".
    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows) {
            if (!r.valid) {
                arr.push_back({{"feature", r.feature}, {"F", nullptr}, {"p", nullptr}, {"omega_sq", nullptr}, {"band", nullptr}});
                continue;
            }
            arr.push_back({{"feature", r.feature},
                           {"F", std::isinf(r.anova.F) ? nlohmann::json("inf") : nlohmann::json(r.anova.F)},
                           {"p", r.anova.p},
                           {"omega_sq", r.anova.omega_sq},
                           {"band", band_name(r.anova.band)}});
        }
        return {{"features", arr}};
    }
};

inline std::vector<std::vector<double>> groups_of(const Dataset& d, std::size_t j) {
    std::vector<std::vector<double>> g(d.classes());
    for (std::size_t i = 0; i < d.rows(); ++i) g[static_cast<std::size_t>(d.y[i])].push_back(d.X[i][j]);
    return g;
}

inline EffectReport effect_report(const Dataset& d) {
    EffectReport rep;
    for (std::size_t j : d.feature_columns()) {
        EffectRow r;
        r.feature = d.names[j];
        try {
            r.anova = one_way_anova(groups_of(d, j));
        } catch (const ValidationError&) {
            r.valid = false;
        }
        rep.rows.push_back(std::move(r));
    }
    return rep;
}

struct Ranking {
    std::string method;
    std::vector<std::pair<std::string, double>> entries;  // rank order
    nlohmann::json params = nlohmann::json::object();
    bool converged = true;

    std::vector<std::string> top(std::size_t k) const {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < entries.size() && i < k; ++i) out.push_back(entries[i].first);
        return out;
    }

    std::string to_csv() const {
        std::string out = "rank,feature,score\n";
        for (std::size_t i = 0; i < entries.size(); ++i)
            out += std::to_string(i + 1) + "," + csv::quote(entries[i].first) + "," + str::fmt(entries[i].second) + "\n";
        return out;
    }

    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (std::size_t i = 0; i < entries.size(); ++i)
            arr.push_back({{"rank", i + 1}, {"feature", entries[i].first}, {"score", entries[i].second}});
        return {{"method", method}, {"params", params}, {"converged", converged}, {"ranking", arr}};
    }
};

namespace detail {

// Descending score, ties by name.
inline void sort_ranking(std::vector<std::pair<std::string, double>>& e) {
    std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
}

inline void require_classes(const Dataset& d) {
    if (d.classes() < 2) throw ValidationError("ranking needs at least 2 classes");
}

}  // namespace detail

// Degenerate features (ANOVA preconditions unmet) score the minimum.
inline Ranking rank_omega(const Dataset& d) {
    detail::require_classes(d);
    Ranking r;
    r.method = "omega";
    for (const auto& row : effect_report(d).rows)
        r.entries.emplace_back(row.feature, row.valid ? row.anova.omega_sq : -1.0);
    detail::sort_ranking(r.entries);
    return r;
}

// Greedy forward correlation-based subset selection. A feature's score is
// the merit gain at the moment it was added, capped by the previous score so
// the list is non-increasing.
inline Ranking select_cfs(const Dataset& d, std::size_t max_features = 0) {
    detail::require_classes(d);
    const auto cols = d.feature_columns();
    if (cols.size() < 2) throw ValidationError("cfs needs at least 2 features");
    std::vector<double> cls;
    for (int k : d.y) cls.push_back(static_cast<double>(k + 1));
    const std::size_t F = cols.size();
    std::vector<std::vector<double>> values;
    for (std::size_t j : cols) values.push_back(d.column_values(j));
    std::vector<double> rcf(F);
    for (std::size_t a = 0; a < F; ++a) rcf[a] = std::fabs(pearson(values[a], cls).value_or(0.0));
    std::vector<std::vector<double>> rff(F, std::vector<double>(F, -1.0));
    auto corr = [&](std::size_t a, std::size_t b) {
        if (rff[a][b] < 0) rff[a][b] = rff[b][a] = std::fabs(pearson(values[a], values[b]).value_or(0.0));
        return rff[a][b];
    };

    Ranking r;
    r.method = "cfs";
    r.params = {{"max_features", max_features}};
    std::vector<std::size_t> chosen;
    std::vector<bool> used(F, false);
    double sum_cf = 0, sum_ff = 0, merit = 0, last_score = std::numeric_limits<double>::infinity();
    const std::size_t limit = max_features ? std::min(max_features, F) : F;
    while (chosen.size() < limit) {
        double best = -1;
        std::size_t best_a = F;
        double best_ff = 0;
        for (std::size_t a = 0; a < F; ++a) {
            if (used[a]) continue;
            double ff = sum_ff;
            for (std::size_t b : chosen) ff += corr(a, b);
            const double k = static_cast<double>(chosen.size() + 1);
            const double mean_cf = (sum_cf + rcf[a]) / k;
            const double mean_ff = k > 1 ? ff / (k * (k - 1) / 2) : 0.0;
            const double m = k * mean_cf / std::sqrt(k + k * (k - 1) * mean_ff);
            if (m > best + 1e-15 || (std::fabs(m - best) <= 1e-15 && best_a < F && d.names[cols[a]] < d.names[cols[best_a]])) {
                best = m;
                best_a = a;
                best_ff = ff;
            }
        }
        if (best_a == F || (!chosen.empty() && best <= merit + 1e-12)) break;
        const double gain = best - merit;
        last_score = std::min(last_score, gain);
        used[best_a] = true;
        chosen.push_back(best_a);
        sum_cf += rcf[best_a];
        sum_ff = best_ff;
        merit = best;
        r.entries.emplace_back(d.names[cols[best_a]], last_score);
    }
    r.params["merit"] = merit;
    return r;
}

namespace detail {

struct MinMax {
    std::vector<double> lo, range;
};

inline MinMax min_max(const Dataset& d, const std::vector<std::size_t>& cols) {
    MinMax m;
    for (std::size_t j : cols) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const auto& r : d.X) lo = std::min(lo, r[j]), hi = std::max(hi, r[j]);
        m.lo.push_back(lo);
        m.range.push_back(hi - lo);
    }
    return m;
}

}  // namespace detail

// Multi-class ReliefF over every instance, Manhattan distance on min-max
// normalized features, neighbors ordered by (distance, index).
inline Ranking rank_relieff(const Dataset& d, std::size_t k_neighbors = 10, std::vector<std::string>* warnings = nullptr) {
    detail::require_classes(d);
    const auto cols = d.feature_columns();
    const std::size_t n = d.rows(), F = cols.size();
    const auto mm = detail::min_max(d, cols);
    std::vector<std::vector<double>> Z(n, std::vector<double>(F, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < F; ++a)
            Z[i][a] = mm.range[a] > 0 ? (d.X[i][cols[a]] - mm.lo[a]) / mm.range[a] : 0.0;

    const auto counts = d.class_counts();
    std::vector<double> prior(d.classes());
    for (std::size_t c = 0; c < d.classes(); ++c) prior[c] = static_cast<double>(counts[c]) / static_cast<double>(n);
    std::size_t k = k_neighbors;
    for (std::size_t c = 0; c < d.classes(); ++c) {
        if (counts[c] <= k_neighbors) {
            const std::size_t reduced = counts[c] > 1 ? counts[c] - 1 : 1;
            if (reduced < k) k = reduced;
        }
    }
    if (k != k_neighbors && warnings)
        warnings->push_back("relieff: k reduced from " + std::to_string(k_neighbors) + " to " + std::to_string(k));

    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0;
            for (std::size_t a = 0; a < F; ++a) s += std::fabs(Z[i][a] - Z[j][a]);
            dist[i][j] = dist[j][i] = s;
        }

    std::vector<double> w(F, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ci = static_cast<std::size_t>(d.y[i]);
        std::vector<std::vector<std::size_t>> by_class(d.classes());
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) by_class[static_cast<std::size_t>(d.y[j])].push_back(j);
        for (std::size_t c = 0; c < d.classes(); ++c) {
            auto& cand = by_class[c];
            const std::size_t take = std::min(k, cand.size());
            if (!take) continue;
            std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(take), cand.end(),
                              [&](std::size_t a, std::size_t b) {
                                  if (dist[i][a] != dist[i][b]) return dist[i][a] < dist[i][b];
                                  return a < b;
                              });
            const double coef = c == ci ? -1.0 : prior[c] / (1.0 - prior[ci]);
            for (std::size_t a = 0; a < F; ++a) {
                double s = 0;
                for (std::size_t t = 0; t < take; ++t) s += std::fabs(Z[i][a] - Z[cand[t]][a]);
                w[a] += coef * s / (static_cast<double>(n) * static_cast<double>(take));
            }
        }
    }
    Ranking r;
    r.method = "relieff";
    r.params = {{"k_neighbors", k}, {"sample_all", true}};
    for (std::size_t a = 0; a < F; ++a) r.entries.emplace_back(d.names[cols[a]], w[a]);
    detail::sort_ranking(r.entries);
    return r;
}

struct SvmRankOptions {
    std::size_t epochs = 100;
    double reg = 1e-3;
    std::uint64_t seed = 1;
};

// One-vs-rest linear hinge-loss models (Pegasos-style subgradient steps on
// z-scored features); a feature's score is the sum of |weight| over classes.
inline Ranking rank_svm_weights(const Dataset& d, const SvmRankOptions& opt = {}) {
    detail::require_classes(d);
    const auto cols = d.feature_columns();
    const std::size_t n = d.rows(), F = cols.size(), L = d.classes();
    std::vector<std::vector<double>> Z(n, std::vector<double>(F, 0.0));
    for (std::size_t a = 0; a < F; ++a) {
        double m = 0, ss = 0;
        for (std::size_t i = 0; i < n; ++i) m += d.X[i][cols[a]];
        m /= static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) ss += (d.X[i][cols[a]] - m) * (d.X[i][cols[a]] - m);
        const double sd = std::sqrt(ss / static_cast<double>(n));
        for (std::size_t i = 0; i < n; ++i) Z[i][a] = sd > 1e-12 ? (d.X[i][cols[a]] - m) / sd : 0.0;
    }
    Rng master(opt.seed);
    std::vector<double> score(F, 0.0);
    bool converged = true;
    for (std::size_t c = 0; c < L; ++c) {
        std::vector<double> w(F, 0.0);
        double b = 0;
        Rng rng = master.derive(c);
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        auto objective = [&]() {
            double loss = 0, norm = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const double yi = d.y[i] == static_cast<int>(c) ? 1.0 : -1.0;
                double s = b;
                for (std::size_t a = 0; a < F; ++a) s += w[a] * Z[i][a];
                loss += std::max(0.0, 1.0 - yi * s);
            }
            for (double v : w) norm += v * v;
            return loss / static_cast<double>(n) + 0.5 * opt.reg * norm;
        };
        double prev = objective(), cur = prev;
        std::size_t t = 0;
        for (std::size_t e = 0; e < opt.epochs; ++e) {
            rng.shuffle(order);
            for (std::size_t i : order) {
                ++t;
                const double eta = 1.0 / (opt.reg * static_cast<double>(t + 1));
                const double yi = d.y[i] == static_cast<int>(c) ? 1.0 : -1.0;
                double s = b;
                for (std::size_t a = 0; a < F; ++a) s += w[a] * Z[i][a];
                for (double& v : w) v *= (1.0 - eta * opt.reg);
                if (yi * s < 1.0) {
                    for (std::size_t a = 0; a < F; ++a) w[a] += eta * yi * Z[i][a];
                    b += eta * yi * 0.01;
                }
            }
            prev = cur;
            cur = objective();
        }
        if (std::fabs(prev - cur) > 1e-3 * std::max(1.0, std::fabs(cur))) converged = false;
        for (std::size_t a = 0; a < F; ++a) score[a] += std::fabs(w[a]);
    }
    Ranking r;
    r.method = "svm";
    r.converged = converged;
    r.params = {{"epochs", opt.epochs}, {"reg", opt.reg}, {"seed", opt.seed}, {"converged", converged}};
    for (std::size_t a = 0; a < F; ++a) r.entries.emplace_back(d.names[cols[a]], score[a]);
    detail::sort_ranking(r.entries);
    return r;
}

}  // namespace textlevel
