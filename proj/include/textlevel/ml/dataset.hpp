#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "textlevel/util/error.hpp"
#include "textlevel/util/strings.hpp"

namespace textlevel {

inline constexpr const char* absent_suffix = "__absent";

inline bool is_indicator_column(const std::string& name) {
    return str::ends_with(name, absent_suffix) || name == "syntax_approximate";
}

// Labeled numeric matrix. Class ids are 0..L-1; `class_labels[id]` is the
// original level label.
struct Dataset {
    std::vector<std::string> names;
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    std::vector<int> class_labels;
    std::string fingerprint;

    std::size_t rows() const { return X.size(); }
    std::size_t dims() const { return names.size(); }
    std::size_t classes() const { return class_labels.size(); }

    static Dataset from_levels(std::vector<std::string> names, std::vector<std::vector<double>> X,
                               const std::vector<int>& levels, std::string fingerprint = {}) {
        if (X.size() != levels.size()) throw ValidationError("row count does not match label count");
        Dataset d;
        d.names = std::move(names);
        d.X = std::move(X);
        d.fingerprint = std::move(fingerprint);
        for (const auto& row : d.X)
            if (row.size() != d.names.size())
                throw ValidationError("row width " + std::to_string(row.size()) + " != " + std::to_string(d.names.size()));
        std::set<int> distinct(levels.begin(), levels.end());
        d.class_labels.assign(distinct.begin(), distinct.end());
        for (int l : levels)
            d.y.push_back(static_cast<int>(std::lower_bound(d.class_labels.begin(), d.class_labels.end(), l) -
                                           d.class_labels.begin()));
        return d;
    }

    int column(const std::string& name) const {
        for (std::size_t j = 0; j < names.size(); ++j)
            if (names[j] == name) return static_cast<int>(j);
        return -1;
    }

    // Index of the indicator column paired with column j, or -1.
    int indicator_of(std::size_t j) const { return column(names[j] + absent_suffix); }

    // Columns eligible for ranking (indicators and mode flags excluded).
    std::vector<std::size_t> feature_columns() const {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < names.size(); ++j)
            if (!is_indicator_column(names[j])) out.push_back(j);
        return out;
    }

    std::vector<double> column_values(std::size_t j) const {
        std::vector<double> v;
        v.reserve(X.size());
        for (const auto& r : X) v.push_back(r[j]);
        return v;
    }

    std::vector<std::size_t> class_counts() const {
        std::vector<std::size_t> c(classes(), 0);
        for (int k : y) ++c[static_cast<std::size_t>(k)];
        return c;
    }

    Dataset subset_rows(const std::vector<std::size_t>& idx) const {
        Dataset d;
        d.names = names;
        d.class_labels = class_labels;
        d.fingerprint = fingerprint;
        for (std::size_t i : idx) {
            d.X.push_back(X[i]);
            d.y.push_back(y[i]);
        }
        return d;
    }

    Dataset subset_columns(const std::vector<std::size_t>& cols) const {
        Dataset d;
        d.class_labels = class_labels;
        d.fingerprint = fingerprint;
        d.y = y;
        for (std::size_t j : cols) d.names.push_back(names[j]);
        d.X.reserve(X.size());
        for (const auto& r : X) {
            std::vector<double> row;
            row.reserve(cols.size());
            for (std::size_t j : cols) row.push_back(r[j]);
            d.X.push_back(std::move(row));
        }
        return d;
    }

    // The named features plus their indicator columns, in the given order.
    Dataset select_features(const std::vector<std::string>& features) const {
        std::vector<std::size_t> cols;
        std::vector<std::size_t> indicators;
        for (const auto& f : features) {
            const int j = column(f);
            if (j < 0) throw ValidationError("matrix has no column '" + f + "'");
            cols.push_back(static_cast<std::size_t>(j));
            const int ind = indicator_of(static_cast<std::size_t>(j));
            if (ind >= 0) indicators.push_back(static_cast<std::size_t>(ind));
        }
        cols.insert(cols.end(), indicators.begin(), indicators.end());
        return subset_columns(cols);
    }
};

// Training-fold imputation of flagged-absent values followed by z-scoring.
struct Preprocessor {
    std::vector<double> mean, scale;
    std::vector<double> fill;    // imputation value per column
    std::vector<int> indicator;  // per column, -1 if none

    static Preprocessor fit(const Dataset& d) {
        Preprocessor p;
        const std::size_t D = d.dims();
        p.mean.assign(D, 0.0);
        p.scale.assign(D, 1.0);
        p.indicator.resize(D);
        for (std::size_t j = 0; j < D; ++j) p.indicator[j] = d.indicator_of(j);
        std::vector<double> impute(D, 0.0);
        for (std::size_t j = 0; j < D; ++j) {
            double s = 0;
            std::size_t n = 0;
            for (const auto& r : d.X)
                if (!p.absent(r, j)) s += r[j], ++n;
            impute[j] = n ? s / static_cast<double>(n) : 0.0;
        }
        // mean/scale describe the imputed column
        for (std::size_t j = 0; j < D; ++j) {
            double s = 0, ss = 0;
            for (const auto& r : d.X) s += p.absent(r, j) ? impute[j] : r[j];
            const double n = static_cast<double>(std::max<std::size_t>(1, d.rows()));
            const double m = s / n;
            for (const auto& r : d.X) {
                const double v = (p.absent(r, j) ? impute[j] : r[j]) - m;
                ss += v * v;
            }
            const double sd = std::sqrt(ss / n);
            p.mean[j] = m;
            p.scale[j] = sd > 1e-12 ? sd : 1.0;
            p.fill.push_back(impute[j]);
        }
        return p;
    }

    bool absent(const std::vector<double>& row, std::size_t j) const {
        return indicator[j] >= 0 && row[static_cast<std::size_t>(indicator[j])] > 0.5;
    }

    std::vector<double> apply(const std::vector<double>& row) const {
        std::vector<double> out(row.size());
        for (std::size_t j = 0; j < row.size(); ++j) {
            const double v = absent(row, j) ? fill[j] : row[j];
            out[j] = (v - mean[j]) / scale[j];
        }
        return out;
    }

    std::vector<std::vector<double>> apply(const std::vector<std::vector<double>>& X) const {
        std::vector<std::vector<double>> out;
        out.reserve(X.size());
        for (const auto& r : X) out.push_back(apply(r));
        return out;
    }

    nlohmann::json to_json() const { return {{"mean", mean}, {"scale", scale}, {"fill", fill}, {"indicator", indicator}}; }
    static Preprocessor from_json(const nlohmann::json& j) {
        Preprocessor p;
        p.mean = j.at("mean").get<std::vector<double>>();
        p.scale = j.at("scale").get<std::vector<double>>();
        p.fill = j.at("fill").get<std::vector<double>>();
        p.indicator = j.at("indicator").get<std::vector<int>>();
        return p;
    }
};

}  // namespace textlevel
