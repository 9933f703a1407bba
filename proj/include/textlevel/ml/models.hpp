#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "textlevel/ml/dataset.hpp"
#include "textlevel/util/error.hpp"
#include "textlevel/util/rng.hpp"

namespace textlevel {

enum class Algo { logreg, tree, forest, bagging, adaboost, mlp };

inline const char* algo_name(Algo a) {
    switch (a) {
        case Algo::logreg: return "logreg";
        case Algo::tree: return "tree";
        case Algo::forest: return "forest";
        case Algo::bagging: return "bagging";
        case Algo::adaboost: return "adaboost";
        default: return "mlp";
    }
}

inline Algo parse_algo(const std::string& s) {
    for (Algo a : {Algo::logreg, Algo::tree, Algo::forest, Algo::bagging, Algo::adaboost, Algo::mlp})
        if (s == algo_name(a)) return a;
    throw ValidationError("unknown algorithm '" + s + "' (expected logreg, tree, forest, bagging, adaboost or mlp)");
}

struct TrainParams {
    // logreg
    double lr = 0.1;
    std::size_t epochs = 500;
    double l2 = 1e-4;
    // single tree; 0 = unlimited depth
    std::size_t max_depth = 0;
    std::size_t min_leaf = 1;
    // forest; max_features 0 = floor(sqrt(D))
    std::size_t trees = 100;
    bool bootstrap = true;
    std::size_t max_features = 0;
    // bagging
    std::size_t bag_trees = 50;
    // adaboost
    std::size_t rounds = 100;
    std::size_t boost_depth = 2;
    // mlp; hidden 0 = ceil((D + L) / 2)
    std::size_t mlp_epochs = 200;
    double mlp_lr = 0.3;
    double momentum = 0.2;
    std::size_t hidden = 0;

    void validate() const {
        std::vector<std::string> errs;
        if (!(lr > 0 && lr <= 10)) errs.push_back("lr must be in (0, 10]");
        if (epochs < 1 || epochs > 100000) errs.push_back("epochs must be in [1, 100000]");
        if (!(l2 >= 0 && l2 <= 1)) errs.push_back("l2 must be in [0, 1]");
        if (min_leaf < 1) errs.push_back("min_leaf must be >= 1");
        if (trees < 1 || trees > 10000) errs.push_back("trees must be in [1, 10000]");
        if (bag_trees < 1 || bag_trees > 10000) errs.push_back("bag_trees must be in [1, 10000]");
        if (rounds < 1 || rounds > 10000) errs.push_back("rounds must be in [1, 10000]");
        if (boost_depth < 1 || boost_depth > 3) errs.push_back("boost_depth must be in [1, 3]");
        if (mlp_epochs < 1 || mlp_epochs > 100000) errs.push_back("mlp_epochs must be in [1, 100000]");
        if (!(mlp_lr > 0 && mlp_lr <= 10)) errs.push_back("mlp_lr must be in (0, 10]");
        if (!(momentum >= 0 && momentum < 1)) errs.push_back("momentum must be in [0, 1)");
        if (errs.empty()) return;
        std::string msg = "invalid hyperparameters:";
        for (const auto& e : errs) msg += " " + e + ";";
        throw ValidationError(msg);
    }

    nlohmann::json to_json() const {
        return {{"lr", lr},
                {"epochs", epochs},
                {"l2", l2},
                {"max_depth", max_depth},
                {"min_leaf", min_leaf},
                {"trees", trees},
                {"bootstrap", bootstrap},
                {"max_features", max_features},
                {"bag_trees", bag_trees},
                {"rounds", rounds},
                {"boost_depth", boost_depth},
                {"mlp_epochs", mlp_epochs},
                {"mlp_lr", mlp_lr},
                {"momentum", momentum},
                {"hidden", hidden}};
    }

    // Missing keys keep their defaults; unknown keys are rejected.
    static TrainParams from_json(const nlohmann::json& j) {
        TrainParams p;
        const nlohmann::json known = p.to_json();
        for (const auto& [k, v] : j.items())
            if (!known.contains(k)) throw ValidationError("unknown hyperparameter '" + k + "'");
        auto get = [&](const char* k, auto& field) {
            if (j.contains(k)) field = j.at(k).get<std::decay_t<decltype(field)>>();
        };
        get("lr", p.lr);
        get("epochs", p.epochs);
        get("l2", p.l2);
        get("max_depth", p.max_depth);
        get("min_leaf", p.min_leaf);
        get("trees", p.trees);
        get("bootstrap", p.bootstrap);
        get("max_features", p.max_features);
        get("bag_trees", p.bag_trees);
        get("rounds", p.rounds);
        get("boost_depth", p.boost_depth);
        get("mlp_epochs", p.mlp_epochs);
        get("mlp_lr", p.mlp_lr);
        get("momentum", p.momentum);
        get("hidden", p.hidden);
        return p;
    }
};

using Matrix = std::vector<std::vector<double>>;

namespace detail {

inline void softmax_inplace(std::vector<double>& z) {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : z) m = std::max(m, v);
    double s = 0;
    for (double& v : z) s += (v = std::exp(v - m));
    for (double& v : z) v /= s;
}

inline std::size_t argmax(const std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

}  // namespace detail

// Multinomial logistic regression. Parameters are flattened as L*D weights
// followed by L biases.
struct LogReg {
    std::size_t L = 0, D = 0;
    std::vector<double> theta;

    std::vector<double> probs(const std::vector<double>& x) const {
        std::vector<double> z(L, 0.0);
        for (std::size_t c = 0; c < L; ++c) {
            double s = theta[L * D + c];
            for (std::size_t j = 0; j < D; ++j) s += theta[c * D + j] * x[j];
            z[c] = s;
        }
        detail::softmax_inplace(z);
        return z;
    }

    // Mean cross-entropy plus (l2 / 2) * ||W||^2.
    static double loss(const Matrix& X, const std::vector<int>& y, std::size_t L, const std::vector<double>& theta,
                       double l2, std::vector<double>* grad) {
        const std::size_t D = X.empty() ? 0 : X[0].size();
        LogReg m{L, D, theta};
        if (grad) grad->assign(theta.size(), 0.0);
        double total = 0;
        const double n = static_cast<double>(X.size());
        for (std::size_t i = 0; i < X.size(); ++i) {
            const auto p = m.probs(X[i]);
            const auto yi = static_cast<std::size_t>(y[i]);
            total -= std::log(std::max(p[yi], 1e-300));
            if (!grad) continue;
            for (std::size_t c = 0; c < L; ++c) {
                const double g = (p[c] - (c == yi ? 1.0 : 0.0)) / n;
                for (std::size_t j = 0; j < D; ++j) (*grad)[c * D + j] += g * X[i][j];
                (*grad)[L * D + c] += g;
            }
        }
        double reg = 0;
        for (std::size_t k = 0; k < L * D; ++k) {
            reg += theta[k] * theta[k];
            if (grad) (*grad)[k] += l2 * theta[k];
        }
        return total / n + 0.5 * l2 * reg;
    }

    static LogReg fit(const Matrix& X, const std::vector<int>& y, std::size_t L, const TrainParams& p) {
        LogReg m;
        m.L = L;
        m.D = X.empty() ? 0 : X[0].size();
        m.theta.assign(L * m.D + L, 0.0);
        std::vector<double> g;
        for (std::size_t e = 0; e < p.epochs; ++e) {
            loss(X, y, L, m.theta, p.l2, &g);
            for (std::size_t k = 0; k < m.theta.size(); ++k) m.theta[k] -= p.lr * g[k];
        }
        return m;
    }

    nlohmann::json to_json() const { return {{"classes", L}, {"dims", D}, {"theta", theta}}; }
    static LogReg from_json(const nlohmann::json& j) {
        return {j.at("classes").get<std::size_t>(), j.at("dims").get<std::size_t>(),
                j.at("theta").get<std::vector<double>>()};
    }
};

// CART with weighted Gini impurity.
struct Tree {
    struct Node {
        int feature = -1;
        double threshold = 0;
        int left = -1, right = -1;
        std::vector<double> dist;
    };
    std::vector<Node> nodes;

    struct Options {
        std::size_t max_depth = 0;
        std::size_t min_leaf = 1;
        std::size_t max_features = 0;  // 0 = all
    };

    const std::vector<double>& proba(const std::vector<double>& x) const {
        int i = 0;
        while (nodes[static_cast<std::size_t>(i)].feature >= 0) {
            const auto& n = nodes[static_cast<std::size_t>(i)];
            i = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
        }
        return nodes[static_cast<std::size_t>(i)].dist;
    }
    std::size_t predict(const std::vector<double>& x) const { return detail::argmax(proba(x)); }
    std::size_t depth() const { return depth_of(0); }

    // `rows` may repeat indices (bootstrap samples).
    static Tree fit(const Matrix& X, const std::vector<int>& y, std::size_t L, const std::vector<double>& weight,
                    const std::vector<std::size_t>& rows, const Options& opt, Rng* rng) {
        Tree t;
        t.grow(X, y, L, weight, rows, opt, rng, 0);
        return t;
    }

    nlohmann::json to_json() const {
        std::vector<int> f, l, r;
        std::vector<double> th;
        std::vector<std::vector<double>> d;
        for (const auto& n : nodes) {
            f.push_back(n.feature);
            th.push_back(n.threshold);
            l.push_back(n.left);
            r.push_back(n.right);
            d.push_back(n.dist);
        }
        return {{"feature", f}, {"threshold", th}, {"left", l}, {"right", r}, {"dist", d}};
    }
    static Tree from_json(const nlohmann::json& j) {
        Tree t;
        const auto f = j.at("feature").get<std::vector<int>>();
        const auto th = j.at("threshold").get<std::vector<double>>();
        const auto l = j.at("left").get<std::vector<int>>();
        const auto r = j.at("right").get<std::vector<int>>();
        const auto d = j.at("dist").get<std::vector<std::vector<double>>>();
        for (std::size_t i = 0; i < f.size(); ++i) t.nodes.push_back({f[i], th[i], l[i], r[i], d[i]});
        return t;
    }

private:
    std::size_t depth_of(std::size_t i) const {
        const auto& n = nodes[i];
        if (n.feature < 0) return 0;
        return 1 + std::max(depth_of(static_cast<std::size_t>(n.left)), depth_of(static_cast<std::size_t>(n.right)));
    }

    static double gini_sum(const std::vector<double>& w, double total) {
        if (total <= 0) return 0;
        double s = 0;
        for (double v : w) s += v * v;
        return total - s / total;  // total * gini
    }

    int grow(const Matrix& X, const std::vector<int>& y, std::size_t L, const std::vector<double>& weight,
             const std::vector<std::size_t>& rows, const Options& opt, Rng* rng, std::size_t depth) {
        const int id = static_cast<int>(nodes.size());
        nodes.emplace_back();
        std::vector<double> cw(L, 0.0);
        double total = 0;
        for (std::size_t i : rows) {
            cw[static_cast<std::size_t>(y[i])] += weight[i];
            total += weight[i];
        }
        std::vector<double> dist = cw;
        if (total > 0)
            for (double& v : dist) v /= total;
        else
            std::fill(dist.begin(), dist.end(), 1.0 / static_cast<double>(L));
        nodes[static_cast<std::size_t>(id)].dist = dist;

        std::size_t nonzero = 0;
        for (double v : cw) nonzero += v > 0 ? 1 : 0;
        const bool depth_ok = opt.max_depth == 0 || depth < opt.max_depth;
        if (nonzero <= 1 || !depth_ok || rows.size() < 2 * opt.min_leaf) return id;

        const std::size_t D = X[rows[0]].size();
        std::vector<std::size_t> features(D);
        for (std::size_t j = 0; j < D; ++j) features[j] = j;
        if (opt.max_features && opt.max_features < D && rng) {
            for (std::size_t k = 0; k < opt.max_features; ++k)
                std::swap(features[k], features[k + rng->index(D - k)]);
            features.resize(opt.max_features);
            std::sort(features.begin(), features.end());
        }

        const double parent = gini_sum(cw, total);
        double best_gain = 1e-12;
        int best_f = -1;
        double best_t = 0;
        std::vector<std::size_t> order(rows);
        for (std::size_t f : features) {
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                if (X[a][f] != X[b][f]) return X[a][f] < X[b][f];
                return a < b;
            });
            std::vector<double> left(L, 0.0);
            double lw = 0;
            for (std::size_t k = 0; k + 1 < order.size(); ++k) {
                const std::size_t i = order[k];
                left[static_cast<std::size_t>(y[i])] += weight[i];
                lw += weight[i];
                const double v = X[i][f], next = X[order[k + 1]][f];
                if (v == next) continue;
                if (k + 1 < opt.min_leaf || order.size() - (k + 1) < opt.min_leaf) continue;
                std::vector<double> right(L);
                for (std::size_t c = 0; c < L; ++c) right[c] = cw[c] - left[c];
                const double gain = parent - gini_sum(left, lw) - gini_sum(right, total - lw);
                if (gain > best_gain + 1e-12) {
                    best_gain = gain;
                    best_f = static_cast<int>(f);
                    best_t = v + (next - v) / 2.0;
                }
            }
        }
        if (best_f < 0) return id;
        std::vector<std::size_t> lrows, rrows;
        for (std::size_t i : rows) (X[i][static_cast<std::size_t>(best_f)] <= best_t ? lrows : rrows).push_back(i);
        const int l = grow(X, y, L, weight, lrows, opt, rng, depth + 1);
        const int r = grow(X, y, L, weight, rrows, opt, rng, depth + 1);
        auto& n = nodes[static_cast<std::size_t>(id)];
        n.feature = best_f;
        n.threshold = best_t;
        n.left = l;
        n.right = r;
        return id;
    }
};

// One hidden layer of sigmoid units with a softmax output. Parameters are
// flattened as W1 (H*D), b1 (H), W2 (L*H), b2 (L).
struct Mlp {
    std::size_t D = 0, H = 0, L = 0;
    std::vector<double> theta;

    std::size_t size() const { return H * D + H + L * H + L; }

    std::vector<double> hidden(const std::vector<double>& x, const std::vector<double>& th) const {
        std::vector<double> h(H);
        for (std::size_t u = 0; u < H; ++u) {
            double s = th[H * D + u];
            for (std::size_t j = 0; j < D; ++j) s += th[u * D + j] * x[j];
            h[u] = 1.0 / (1.0 + std::exp(-s));
        }
        return h;
    }

    std::vector<double> output(const std::vector<double>& h, const std::vector<double>& th) const {
        const std::size_t o = H * D + H;
        std::vector<double> z(L);
        for (std::size_t c = 0; c < L; ++c) {
            double s = th[o + L * H + c];
            for (std::size_t u = 0; u < H; ++u) s += th[o + c * H + u] * h[u];
            z[c] = s;
        }
        detail::softmax_inplace(z);
        return z;
    }

    std::vector<double> probs(const std::vector<double>& x) const { return output(hidden(x, theta), theta); }

    // Cross-entropy of one example; adds its gradient into `grad`.
    double example_loss(const std::vector<double>& x, int y, const std::vector<double>& th,
                        std::vector<double>* grad, double scale = 1.0) const {
        const auto h = hidden(x, th);
        const auto p = output(h, th);
        const auto yi = static_cast<std::size_t>(y);
        const double l = -std::log(std::max(p[yi], 1e-300));
        if (!grad) return l;
        const std::size_t o = H * D + H;
        std::vector<double> dh(H, 0.0);
        for (std::size_t c = 0; c < L; ++c) {
            const double g = (p[c] - (c == yi ? 1.0 : 0.0)) * scale;
            for (std::size_t u = 0; u < H; ++u) {
                (*grad)[o + c * H + u] += g * h[u];
                dh[u] += g * th[o + c * H + u];
            }
            (*grad)[o + L * H + c] += g;
        }
        for (std::size_t u = 0; u < H; ++u) {
            const double gz = dh[u] * h[u] * (1.0 - h[u]);
            for (std::size_t j = 0; j < D; ++j) (*grad)[u * D + j] += gz * x[j];
            (*grad)[H * D + u] += gz;
        }
        return l;
    }

    double loss(const Matrix& X, const std::vector<int>& y, const std::vector<double>& th,
                std::vector<double>* grad) const {
        if (grad) grad->assign(th.size(), 0.0);
        double total = 0;
        const double n = static_cast<double>(X.size());
        for (std::size_t i = 0; i < X.size(); ++i) total += example_loss(X[i], y[i], th, grad, 1.0 / n);
        return total / n;
    }

    static Mlp init(std::size_t D, std::size_t H, std::size_t L, Rng& rng) {
        Mlp m;
        m.D = D;
        m.H = H;
        m.L = L;
        m.theta.resize(m.size());
        for (double& v : m.theta) v = rng.uniform(-0.05, 0.05);
        return m;
    }

    static Mlp fit(const Matrix& X, const std::vector<int>& y, std::size_t L, const TrainParams& p, Rng& rng) {
        const std::size_t D = X.empty() ? 0 : X[0].size();
        const std::size_t H = p.hidden ? p.hidden : (D + L + 1) / 2;
        Mlp m = init(D, std::max<std::size_t>(1, H), L, rng);
        std::vector<double> velocity(m.size(), 0.0), g(m.size());
        std::vector<std::size_t> order(X.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        for (std::size_t e = 0; e < p.mlp_epochs; ++e) {
            rng.shuffle(order);
            for (std::size_t i : order) {
                std::fill(g.begin(), g.end(), 0.0);
                m.example_loss(X[i], y[i], m.theta, &g);
                for (std::size_t k = 0; k < m.theta.size(); ++k) {
                    velocity[k] = p.momentum * velocity[k] - p.mlp_lr * g[k];
                    m.theta[k] += velocity[k];
                }
            }
        }
        return m;
    }

    nlohmann::json to_json() const { return {{"dims", D}, {"hidden", H}, {"classes", L}, {"theta", theta}}; }
    static Mlp from_json(const nlohmann::json& j) {
        Mlp m;
        m.D = j.at("dims").get<std::size_t>();
        m.H = j.at("hidden").get<std::size_t>();
        m.L = j.at("classes").get<std::size_t>();
        m.theta = j.at("theta").get<std::vector<double>>();
        return m;
    }
};

// SAMME boosting over shallow trees.
struct AdaBoost {
    std::vector<Tree> learners;
    std::vector<double> alphas;
    // training diagnostics, not serialized
    std::vector<double> round_errors;
    std::vector<double> weight_sums;

    static AdaBoost fit(const Matrix& X, const std::vector<int>& y, std::size_t L, const TrainParams& p) {
        AdaBoost a;
        const std::size_t n = X.size();
        std::vector<double> w(n, 1.0 / static_cast<double>(n));
        std::vector<std::size_t> rows(n);
        for (std::size_t i = 0; i < n; ++i) rows[i] = i;
        const double chance = static_cast<double>(L - 1) / static_cast<double>(L);
        Tree::Options opt;
        opt.max_depth = p.boost_depth;
        for (std::size_t r = 0; r < p.rounds; ++r) {
            Tree t = Tree::fit(X, y, L, w, rows, opt, nullptr);
            double err = 0;
            std::vector<bool> miss(n);
            for (std::size_t i = 0; i < n; ++i) {
                miss[i] = t.predict(X[i]) != static_cast<std::size_t>(y[i]);
                if (miss[i]) err += w[i];
            }
            if (err >= chance) break;
            const double eps = std::max(err, 1e-10);
            const double alpha = std::log((1.0 - eps) / eps) + std::log(static_cast<double>(L - 1));
            a.learners.push_back(std::move(t));
            a.alphas.push_back(alpha);
            a.round_errors.push_back(err);
            double sum = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (miss[i]) w[i] *= std::exp(alpha);
                sum += w[i];
            }
            double check = 0;
            for (double& v : w) check += (v /= sum);
            a.weight_sums.push_back(check);
            if (err <= 0) break;
        }
        return a;
    }

    std::vector<double> scores(const std::vector<double>& x, std::size_t L) const {
        std::vector<double> s(L, 0.0);
        double total = 0;
        for (std::size_t k = 0; k < learners.size(); ++k) {
            s[learners[k].predict(x)] += alphas[k];
            total += alphas[k];
        }
        for (double& v : s) v /= total;
        return s;
    }
};

struct TrainedModel {
    Algo algo = Algo::logreg;
    TrainParams params;
    std::uint64_t seed = 1;
    std::string fingerprint;
    std::vector<std::string> columns;
    std::vector<int> class_labels;
    Preprocessor prep;
    double training_seconds = 0;
    std::vector<std::string> warnings;
    std::optional<std::size_t> constant_class;  // trivial model

    LogReg logreg;
    std::vector<Tree> trees;  // tree: 1, forest/bagging/adaboost: members
    std::vector<double> alphas;
    Mlp mlp;

    std::size_t classes() const { return class_labels.size(); }

    // Per-class scores for one raw (unprocessed) row; they sum to 1.
    std::vector<double> scores(const std::vector<double>& raw) const {
        if (raw.size() != columns.size())
            throw ValidationError("row has " + std::to_string(raw.size()) + " values but the model expects " +
                                  std::to_string(columns.size()) + " (catalog fingerprint " + fingerprint + ")");
        const std::size_t L = classes();
        if (constant_class) {
            std::vector<double> s(L, 0.0);
            s[*constant_class] = 1.0;
            return s;
        }
        const auto x = prep.apply(raw);
        switch (algo) {
            case Algo::logreg: return logreg.probs(x);
            case Algo::mlp: return mlp.probs(x);
            case Algo::tree: return trees.at(0).proba(x);
            case Algo::adaboost: {
                std::vector<double> s(L, 0.0);
                double total = 0;
                for (std::size_t k = 0; k < trees.size(); ++k) {
                    s[trees[k].predict(x)] += alphas[k];
                    total += alphas[k];
                }
                for (double& v : s) v /= total;
                return s;
            }
            default: {
                std::vector<double> s(L, 0.0);
                for (const auto& t : trees) s[t.predict(x)] += 1.0;
                for (double& v : s) v /= static_cast<double>(trees.size());
                return s;
            }
        }
    }

    std::size_t predict(const std::vector<double>& raw) const { return detail::argmax(scores(raw)); }
    int predict_label(const std::vector<double>& raw) const { return class_labels[predict(raw)]; }

    nlohmann::json to_json(bool with_timing = true) const {
        nlohmann::json j = {{"format", "textlevel-model"},
                            {"version", 1},
                            {"algo", algo_name(algo)},
                            {"params", params.to_json()},
                            {"seed", seed},
                            {"catalog_fingerprint", fingerprint},
                            {"columns", columns},
                            {"class_labels", class_labels},
                            {"preprocess", prep.to_json()},
                            {"warnings", warnings}};
        if (with_timing) j["training_seconds"] = training_seconds;
        nlohmann::json state = nlohmann::json::object();
        if (constant_class) state["constant_class"] = *constant_class;
        switch (algo) {
            case Algo::logreg: state["logreg"] = logreg.to_json(); break;
            case Algo::mlp: state["mlp"] = mlp.to_json(); break;
            default: {
                nlohmann::json ts = nlohmann::json::array();
                for (const auto& t : trees) ts.push_back(t.to_json());
                state["trees"] = ts;
                if (algo == Algo::adaboost) state["alphas"] = alphas;
            }
        }
        if (constant_class) state = {{"constant_class", *constant_class}};
        j["state"] = state;
        return j;
    }

    static TrainedModel from_json(const nlohmann::json& j) {
        if (j.value("format", "") != "textlevel-model") throw ValidationError("not a textlevel model file");
        if (j.value("version", 0) != 1) throw ValidationError("unsupported model version");
        TrainedModel m;
        m.algo = parse_algo(j.at("algo").get<std::string>());
        m.params = TrainParams::from_json(j.at("params"));
        m.seed = j.at("seed").get<std::uint64_t>();
        m.fingerprint = j.at("catalog_fingerprint").get<std::string>();
        m.columns = j.at("columns").get<std::vector<std::string>>();
        m.class_labels = j.at("class_labels").get<std::vector<int>>();
        m.prep = Preprocessor::from_json(j.at("preprocess"));
        m.training_seconds = j.value("training_seconds", 0.0);
        m.warnings = j.value("warnings", std::vector<std::string>{});
        const auto& s = j.at("state");
        if (s.contains("constant_class")) {
            m.constant_class = s.at("constant_class").get<std::size_t>();
            return m;
        }
        switch (m.algo) {
            case Algo::logreg: m.logreg = LogReg::from_json(s.at("logreg")); break;
            case Algo::mlp: m.mlp = Mlp::from_json(s.at("mlp")); break;
            default:
                for (const auto& t : s.at("trees")) m.trees.push_back(Tree::from_json(t));
                if (m.algo == Algo::adaboost) m.alphas = s.at("alphas").get<std::vector<double>>();
        }
        return m;
    }
};

namespace detail {

inline std::vector<Tree> tree_ensemble(const Matrix& X, const std::vector<int>& y, std::size_t L, std::size_t count,
                                       bool bootstrap, std::size_t max_features, const Rng& master) {
    std::vector<Tree> out;
    const std::size_t n = X.size();
    const std::vector<double> w(n, 1.0);
    Tree::Options opt;
    opt.max_features = max_features;
    for (std::size_t t = 0; t < count; ++t) {
        Rng rng = master.derive(t);
        std::vector<std::size_t> rows(n);
        for (std::size_t i = 0; i < n; ++i) rows[i] = bootstrap ? rng.index(n) : i;
        out.push_back(Tree::fit(X, y, L, w, rows, opt, &rng));
    }
    return out;
}

inline std::size_t majority(const std::vector<int>& y, std::size_t L) {
    std::vector<std::size_t> c(L, 0);
    for (int k : y) ++c[static_cast<std::size_t>(k)];
    return static_cast<std::size_t>(std::max_element(c.begin(), c.end()) - c.begin());
}

}  // namespace detail

inline TrainedModel train_model(Algo algo, const Dataset& d, const TrainParams& params, std::uint64_t seed) {
    params.validate();
    if (d.rows() == 0) throw ValidationError("cannot train on an empty dataset");
    TrainedModel m;
    m.algo = algo;
    m.params = params;
    m.seed = seed;
    m.fingerprint = d.fingerprint;
    m.columns = d.names;
    m.class_labels = d.class_labels;
    const auto start = std::chrono::steady_clock::now();
    m.prep = Preprocessor::fit(d);
    const std::size_t L = d.classes();
    std::size_t present = 0;
    for (auto c : d.class_counts()) present += c > 0 ? 1 : 0;
    if (present < 2) {
        m.constant_class = detail::majority(d.y, L);
        m.warnings.push_back("single-class training data: constant predictor");
    } else {
        const Matrix X = m.prep.apply(d.X);
        Rng rng(seed);
        switch (algo) {
            case Algo::logreg: m.logreg = LogReg::fit(X, d.y, L, params); break;
            case Algo::mlp: m.mlp = Mlp::fit(X, d.y, L, params, rng); break;
            case Algo::tree: {
                std::vector<std::size_t> rows(X.size());
                for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
                Tree::Options opt;
                opt.max_depth = params.max_depth;
                opt.min_leaf = params.min_leaf;
                m.trees.push_back(Tree::fit(X, d.y, L, std::vector<double>(X.size(), 1.0), rows, opt, nullptr));
                break;
            }
            case Algo::forest: {
                const std::size_t D = d.dims();
                const std::size_t mf = params.max_features
                                           ? params.max_features
                                           : std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(D))));
                m.trees = detail::tree_ensemble(X, d.y, L, params.trees, params.bootstrap, mf, rng);
                break;
            }
            case Algo::bagging: m.trees = detail::tree_ensemble(X, d.y, L, params.bag_trees, true, 0, rng); break;
            case Algo::adaboost: {
                auto a = AdaBoost::fit(X, d.y, L, params);
                if (a.learners.empty()) {
                    m.constant_class = detail::majority(d.y, L);
                    m.warnings.push_back("adaboost: first round no better than chance, constant predictor");
                } else {
                    m.trees = std::move(a.learners);
                    m.alphas = std::move(a.alphas);
                }
                break;
            }
        }
    }
    m.training_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return m;
}

}  // namespace textlevel
