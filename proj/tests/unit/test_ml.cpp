#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "textlevel/ml/evaluate.hpp"
#include "textlevel/ml/metrics.hpp"
#include "textlevel/ml/models.hpp"
#include "textlevel/util/rng.hpp"

using namespace textlevel;

namespace {

// Gaussian blobs along the first two dimensions, remaining dims noise.
Dataset blobs(std::size_t per_class, std::size_t classes, std::size_t dims, double spread, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::string> names;
    for (std::size_t j = 0; j < dims; ++j) names.push_back("f" + std::to_string(j));
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    for (std::size_t i = 0; i < per_class * classes; ++i) {
        const int c = static_cast<int>(i % classes);
        std::vector<double> row;
        for (std::size_t j = 0; j < dims; ++j) {
            double center = 0;
            if (j == 0) center = 3.0 * c;
            if (j == 1) center = c % 2 ? 2.0 : -2.0;
            row.push_back(rng.normal(center, spread));
        }
        X.push_back(row);
        y.push_back(c + 1);
    }
    return Dataset::from_levels(names, X, y, "fp-test");
}

double max_rel_error(const std::vector<double>& analytic, const std::vector<double>& numeric) {
    double worst = 0;
    for (std::size_t k = 0; k < analytic.size(); ++k) {
        const double den = std::max({std::fabs(analytic[k]), std::fabs(numeric[k]), 1e-8});
        worst = std::max(worst, std::fabs(analytic[k] - numeric[k]) / den);
    }
    return worst;
}

double accuracy_on(const TrainedModel& m, const Dataset& d) {
    std::size_t ok = 0;
    for (std::size_t i = 0; i < d.rows(); ++i) ok += m.predict(d.X[i]) == static_cast<std::size_t>(d.y[i]);
    return static_cast<double>(ok) / static_cast<double>(d.rows());
}

}  // namespace

TEST(LogReg, GradientMatchesFiniteDifferences) {
    Rng rng(4);
    Matrix X(5, std::vector<double>(4));
    for (auto& r : X)
        for (double& v : r) v = rng.normal(0, 1);
    const std::vector<int> y = {0, 2, 1, 2, 0};
    std::vector<double> theta(3 * 4 + 3);
    for (double& v : theta) v = rng.normal(0, 0.5);
    std::vector<double> g, num(theta.size());
    LogReg::loss(X, y, 3, theta, 0.01, &g);
    const double h = 1e-5;
    for (std::size_t k = 0; k < theta.size(); ++k) {
        auto tp = theta, tm = theta;
        tp[k] += h;
        tm[k] -= h;
        num[k] = (LogReg::loss(X, y, 3, tp, 0.01, nullptr) - LogReg::loss(X, y, 3, tm, 0.01, nullptr)) / (2 * h);
    }
    EXPECT_LE(max_rel_error(g, num), 1e-4);
}

TEST(Mlp, GradientMatchesFiniteDifferences) {
    Rng rng(6);
    Matrix X(6, std::vector<double>(4));
    for (auto& r : X)
        for (double& v : r) v = rng.normal(0, 1);
    const std::vector<int> y = {0, 1, 2, 1, 0, 2};
    Rng init(9);
    Mlp m = Mlp::init(4, 3, 3, init);
    for (double& v : m.theta) v = rng.normal(0, 0.7);
    std::vector<double> g, num(m.theta.size());
    m.loss(X, y, m.theta, &g);
    const double h = 1e-5;
    for (std::size_t k = 0; k < m.theta.size(); ++k) {
        auto tp = m.theta, tm = m.theta;
        tp[k] += h;
        tm[k] -= h;
        num[k] = (m.loss(X, y, tp, nullptr) - m.loss(X, y, tm, nullptr)) / (2 * h);
    }
    EXPECT_LE(max_rel_error(g, num), 1e-3);
}

TEST(Train, LogregSeparatesLinearlySeparableData) {
    const auto d = blobs(60, 2, 3, 0.4, 13);
    const auto m = train_model(Algo::logreg, d, {}, 1);
    EXPECT_GE(accuracy_on(m, d), 0.99);
    EXPECT_GE(m.training_seconds, 0.0);
}

TEST(Train, EveryAlgorithmLearnsBlobs) {
    const auto d = blobs(40, 3, 4, 0.6, 21);
    for (Algo a : {Algo::logreg, Algo::tree, Algo::forest, Algo::bagging, Algo::adaboost, Algo::mlp}) {
        const auto m = train_model(a, d, {}, 7);
        EXPECT_GE(accuracy_on(m, d), 0.9) << algo_name(a);
        for (std::size_t i = 0; i < d.rows(); ++i) {
            const auto s = m.scores(d.X[i]);
            double sum = 0;
            for (double v : s) sum += v;
            EXPECT_NEAR(sum, 1.0, 1e-9) << algo_name(a);
        }
    }
}

TEST(Train, SingleClassGivesConstantModel) {
    const auto d = Dataset::from_levels({"x"}, {{1}, {2}, {3}}, {2, 2, 2});
    const auto m = train_model(Algo::forest, d, {}, 1);
    ASSERT_TRUE(m.constant_class.has_value());
    EXPECT_FALSE(m.warnings.empty());
    EXPECT_EQ(m.predict_label({100}), 2);
}

TEST(Train, ForestOfOneUnbootstrappedFullFeatureTreeEqualsCart) {
    const auto d = blobs(30, 3, 5, 1.2, 31);
    TrainParams p;
    p.trees = 1;
    p.bootstrap = false;
    p.max_features = d.dims();
    const auto forest = train_model(Algo::forest, d, p, 99);
    const auto tree = train_model(Algo::tree, d, {}, 99);
    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
        std::vector<double> row;
        for (std::size_t j = 0; j < d.dims(); ++j) row.push_back(rng.normal(3, 4));
        EXPECT_EQ(forest.predict(row), tree.predict(row));
    }
}

TEST(Train, ZeroWeightLogregIsUniform) {
    const auto d = blobs(10, 4, 2, 1, 2);
    TrainedModel m = train_model(Algo::logreg, d, {}, 1);
    std::fill(m.logreg.theta.begin(), m.logreg.theta.end(), 0.0);
    for (double v : m.scores({0.3, -2})) EXPECT_DOUBLE_EQ(v, 0.25);
}

TEST(Train, WidthMismatchNamesFingerprint) {
    const auto d = blobs(10, 2, 3, 1, 2);
    const auto m = train_model(Algo::tree, d, {}, 1);
    try {
        m.scores({1, 2});
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("fp-test"), std::string::npos);
    }
}

TEST(Train, InvalidHyperparametersAreListedTogether) {
    TrainParams p;
    p.lr = -1;
    p.boost_depth = 5;
    try {
        p.validate();
        FAIL();
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("lr"), std::string::npos);
        EXPECT_NE(msg.find("boost_depth"), std::string::npos);
    }
    EXPECT_THROW(TrainParams::from_json({{"nonsense", 1}}), ValidationError);
}

TEST(Train, JsonRoundTripGivesBitIdenticalScores) {
    const auto d = blobs(25, 3, 4, 1.0, 41);
    for (Algo a : {Algo::logreg, Algo::tree, Algo::forest, Algo::bagging, Algo::adaboost, Algo::mlp}) {
        const auto m = train_model(a, d, {}, 3);
        const auto back = TrainedModel::from_json(nlohmann::json::parse(m.to_json().dump()));
        Rng rng(5);
        for (int i = 0; i < 50; ++i) {
            std::vector<double> row;
            for (std::size_t j = 0; j < d.dims(); ++j) row.push_back(rng.normal(2, 3));
            EXPECT_EQ(m.scores(row), back.scores(row)) << algo_name(a);
        }
        EXPECT_EQ(m.to_json(false).dump(), back.to_json(false).dump());
    }
}

TEST(Train, SameSeedSameModel) {
    const auto d = blobs(20, 3, 6, 1.5, 8);
    for (Algo a : {Algo::forest, Algo::bagging, Algo::mlp})
        EXPECT_EQ(train_model(a, d, {}, 5).to_json(false).dump(), train_model(a, d, {}, 5).to_json(false).dump());
}

TEST(Train, EnsembleVotesIgnoreTreeOrder) {
    const auto d = blobs(20, 3, 4, 1.5, 18);
    auto m = train_model(Algo::forest, d, {}, 5);
    auto reversed = m;
    std::reverse(reversed.trees.begin(), reversed.trees.end());
    Rng rng(2);
    for (int i = 0; i < 50; ++i) {
        std::vector<double> row;
        for (std::size_t j = 0; j < d.dims(); ++j) row.push_back(rng.normal(2, 3));
        EXPECT_EQ(m.scores(row), reversed.scores(row));
    }
}

TEST(AdaBoost, WeightsStayNormalizedAndRoundsBeatChance) {
    const auto d = blobs(30, 3, 3, 1.3, 77);
    const Matrix X = Preprocessor::fit(d).apply(d.X);
    TrainParams p;
    p.rounds = 25;
    const auto a = AdaBoost::fit(X, d.y, 3, p);
    ASSERT_FALSE(a.learners.empty());
    for (double s : a.weight_sums) EXPECT_NEAR(s, 1.0, 1e-12);
    for (double e : a.round_errors) EXPECT_LT(e, 2.0 / 3.0);
    for (const auto& t : a.learners) EXPECT_LE(t.depth(), 2u);
}

TEST(Tree, RespectsDepthAndLeafLimits) {
    const auto d = blobs(40, 3, 3, 2.0, 3);
    TrainParams p;
    p.max_depth = 2;
    p.min_leaf = 5;
    const auto m = train_model(Algo::tree, d, p, 1);
    EXPECT_LE(m.trees[0].depth(), 2u);
}

TEST(Metrics, PerfectDiagonal) {
    const auto m = metrics_from_confusion({{50, 0}, {0, 50}});
    EXPECT_EQ(m.f1, 1.0);
    EXPECT_EQ(m.mcc, 1.0);
    EXPECT_EQ(m.accuracy, 1.0);
}

TEST(Metrics, BinaryMccExample) {
    // TP=40 FN=20 / FP=10 TN=30: margins 50, 60, 40, 50
    const double expected = (40.0 * 30 - 10.0 * 20) / std::sqrt(50.0 * 60 * 40 * 50);
    EXPECT_NEAR(mcc(40, 30, 10, 20), expected, 1e-15);
    const auto m = metrics_from_confusion({{40, 20}, {10, 30}});
    EXPECT_NEAR(m.per_class[0].mcc, expected, 1e-15);
    EXPECT_NEAR(m.per_class[1].mcc, expected, 1e-15);
}

TEST(Metrics, ChanceMatrixHasZeroMcc) {
    const auto m = metrics_from_confusion({{25, 25}, {25, 25}});
    EXPECT_EQ(m.mcc, 0.0);
    EXPECT_EQ(m.accuracy, 0.5);
}

TEST(Metrics, WeightedF1IsSupportWeightedMean) {
    const Confusion cm = {{30, 5, 1}, {4, 20, 6}, {0, 7, 12}};
    const auto m = metrics_from_confusion(cm);
    double acc = 0, n = 0;
    for (std::size_t c = 0; c < 3; ++c) {
        double tp = cm[c][c], row = 0, col = 0;
        for (std::size_t k = 0; k < 3; ++k) row += cm[c][k], col += cm[k][c];
        const double p = tp / col, r = tp / row;
        acc += row * 2 * p * r / (p + r);
        n += row;
    }
    EXPECT_NEAR(m.f1, acc / n, 1e-12);
    EXPECT_NEAR(m.accuracy, 62.0 / 85.0, 1e-15);
    long rows = 0;
    for (const auto& c : m.per_class) rows += c.support;
    EXPECT_EQ(rows, 85);
}

TEST(Metrics, EmptyClassIsFlagged) {
    const auto m = metrics_from_confusion({{5, 0, 0}, {2, 3, 0}, {0, 0, 0}});
    EXPECT_TRUE(m.per_class[2].no_support);
    EXPECT_TRUE(m.per_class[2].no_predictions);
    EXPECT_EQ(m.per_class[2].precision, 0.0);
    EXPECT_THROW(metrics_from_confusion({{1, 2}}), ValidationError);
}

TEST(Auc, HandExampleAndExtremes) {
    EXPECT_EQ(*binary_auc({0.9, 0.8, 0.4, 0.3}, {true, false, true, false}), 0.75);
    EXPECT_EQ(*binary_auc({0.9, 0.8, 0.4, 0.3}, {true, true, false, false}), 1.0);
    EXPECT_EQ(*binary_auc({0.9, 0.8, 0.4, 0.3}, {false, false, true, true}), 0.0);
    EXPECT_EQ(*binary_auc({0.5, 0.5, 0.5, 0.5}, {true, false, true, false}), 0.5);
    EXPECT_FALSE(binary_auc({0.1, 0.2}, {true, true}).has_value());
}

TEST(Auc, OvrSkipsAbsentClass) {
    const auto r = roc_auc_ovr({{0.9, 0.1, 0.0}, {0.2, 0.8, 0.0}, {0.6, 0.4, 0.0}, {0.3, 0.7, 0.0}}, {0, 1, 0, 1}, 3);
    EXPECT_FALSE(r.per_class[2].has_value());
    EXPECT_EQ(*r.weighted, 1.0);
}

TEST(Folds, BalancedTwoClassTenFolds) {
    std::vector<int> y;
    for (int i = 0; i < 100; ++i) y.push_back(i % 2);
    const auto f = stratified_folds(y, 2, 10, 3);
    ASSERT_EQ(f.size(), 10u);
    std::set<std::size_t> all;
    for (const auto& fold : f) {
        std::size_t a = 0, b = 0;
        for (std::size_t i : fold) (y[i] ? b : a)++, all.insert(i);
        EXPECT_EQ(a, 5u);
        EXPECT_EQ(b, 5u);
    }
    EXPECT_EQ(all.size(), 100u);
    EXPECT_EQ(f, stratified_folds(y, 2, 10, 3));
    EXPECT_NE(f, stratified_folds(y, 2, 10, 4));
}

TEST(Folds, LeaveOneOutAndReduction) {
    std::vector<int> y = {0, 0, 0, 1, 1, 1, 1};
    const auto loo = stratified_folds(y, 2, 7, 1);
    ASSERT_EQ(loo.size(), 7u);
    for (const auto& f : loo) EXPECT_EQ(f.size(), 1u);
    std::vector<std::string> warnings;
    const auto red = stratified_folds(y, 2, 5, 1, &warnings);
    EXPECT_EQ(red.size(), 3u);
    EXPECT_EQ(warnings.size(), 1u);
}

TEST(CrossValidate, DeterministicAndConsistent) {
    const auto d = blobs(20, 3, 4, 1.0, 55);
    const auto a = cross_validate(Algo::logreg, d, {}, 5, 9);
    const auto b = cross_validate(Algo::logreg, d, {}, 5, 9);
    EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
    long total = 0;
    for (std::size_t c = 0; c < 3; ++c) {
        long row = 0;
        for (long v : a.confusion[c]) row += v;
        EXPECT_EQ(row, 20);
        total += row;
    }
    EXPECT_EQ(total, 60);
    EXPECT_EQ(a.per_fold.size(), 5u);
    EXPECT_GT(a.metrics.f1, 0.8);
}

TEST(CrossValidate, HookSeesOnlyTrainingRows) {
    auto d = blobs(10, 2, 2, 1.0, 5);
    std::size_t calls = 0;
    const auto rep = cross_validate(Algo::tree, d, {}, 5, 1, [&](const std::vector<std::size_t>& train, Dataset& data) {
        ++calls;
        EXPECT_EQ(train.size(), 16u);
        EXPECT_EQ(data.rows(), 20u);
    });
    EXPECT_EQ(calls, 5u);
    EXPECT_EQ(rep.folds, 5u);
}

TEST(Timing, TableShapeAndNesting) {
    const auto d = blobs(15, 2, 6, 1.0, 5);
    Ranking r;
    for (std::size_t j = 0; j < 6; ++j) r.entries.emplace_back(d.names[j], 6.0 - static_cast<double>(j));
    const auto t = measure_training_time(Algo::logreg, d, {2, 4, 6}, r, {}, 1);
    EXPECT_EQ(t.seconds.size(), 3u);
    for (double s : t.seconds) EXPECT_GE(s, 0.0);
    const auto small = r.top(2), big = r.top(4);
    for (const auto& f : small) EXPECT_NE(std::find(big.begin(), big.end(), f), big.end());
    EXPECT_THROW(measure_training_time(Algo::logreg, d, {7}, r, {}, 1), ValidationError);
}
