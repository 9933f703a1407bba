#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <utility>

#include "textlevel/analysis/selection.hpp"
#include "textlevel/util/rng.hpp"

using namespace textlevel;

namespace {

Dataset make(const std::vector<std::string>& names, const std::vector<std::vector<double>>& X, const std::vector<int>& y) {
    return Dataset::from_levels(names, X, y);
}

double score_of(const Ranking& r, const std::string& name) {
    for (const auto& [n, s] : r.entries)
        if (n == name) return s;
    ADD_FAILURE() << "missing " << name;
    return 0;
}

std::size_t rank_of(const Ranking& r, const std::string& name) {
    for (std::size_t i = 0; i < r.entries.size(); ++i)
        if (r.entries[i].first == name) return i;
    return r.entries.size();
}

// Straight transcription of multi-class ReliefF: for every instance and
// every feature, average the normalized difference to the k nearest
// instances of each class.
std::map<std::string, double> relieff_oracle(const Dataset& d, std::size_t k) {
    const std::size_t n = d.rows(), F = d.dims();
    std::vector<double> lo(F, 1e300), hi(F, -1e300);
    for (const auto& r : d.X)
        for (std::size_t a = 0; a < F; ++a) lo[a] = std::min(lo[a], r[a]), hi[a] = std::max(hi[a], r[a]);
    auto diff = [&](std::size_t a, std::size_t i, std::size_t j) {
        if (hi[a] == lo[a]) return 0.0;
        return std::fabs((d.X[i][a] - lo[a]) / (hi[a] - lo[a]) - (d.X[j][a] - lo[a]) / (hi[a] - lo[a]));
    };
    auto distance = [&](std::size_t i, std::size_t j) {
        double s = 0;
        for (std::size_t a = 0; a < F; ++a) s += diff(a, i, j);
        return s;
    };
    std::map<int, double> prior;
    for (int c : d.y) prior[c] += 1.0 / static_cast<double>(n);
    std::vector<double> w(F, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [c, pc] : prior) {
            std::vector<std::pair<double, std::size_t>> cand;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i && d.y[j] == c) cand.emplace_back(distance(i, j), j);
            std::sort(cand.begin(), cand.end());
            cand.resize(std::min(k, cand.size()));
            for (std::size_t a = 0; a < F; ++a) {
                double s = 0;
                for (const auto& [dist, j] : cand) s += diff(a, i, j);
                s /= static_cast<double>(n) * static_cast<double>(cand.size());
                if (c == d.y[i])
                    w[a] -= s;
                else
                    w[a] += pc / (1.0 - prior[d.y[i]]) * s;
            }
        }
    }
    std::map<std::string, double> out;
    for (std::size_t a = 0; a < F; ++a) out[d.names[a]] = w[a];
    return out;
}

Dataset random_fixture(std::size_t n, std::size_t classes, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    for (std::size_t i = 0; i < n; ++i) {
        const int c = static_cast<int>(i % classes) + 1;
        X.push_back({rng.normal(c, 1.0), rng.normal(0, 1), rng.uniform() < 0.5 ? 0.0 : 1.0,
                     std::round(rng.uniform() * 3), rng.normal(-c, 2.0)});
        y.push_back(c);
    }
    return make({"a", "b", "c", "d", "e"}, X, y);
}

}  // namespace

TEST(RankOmega, ClassIndexFeatureWinsAndTiesBreakByName) {
    Rng rng(5);
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    for (int i = 0; i < 60; ++i) {
        const int c = i % 3 + 1;
        const double noise = rng.normal(0, 1);
        X.push_back({noise, static_cast<double>(c), noise});
        y.push_back(c);
    }
    const auto r = rank_omega(make({"noise_b", "level", "noise_a"}, X, y));
    EXPECT_EQ(r.entries[0].first, "level");
    EXPECT_EQ(r.entries[1].first, "noise_a");
    EXPECT_EQ(r.entries[2].first, "noise_b");
    EXPECT_LT(std::fabs(r.entries[1].second), 0.1);
    for (std::size_t i = 1; i < r.entries.size(); ++i) EXPECT_GE(r.entries[i - 1].second, r.entries[i].second);
}

TEST(RankOmega, InvariantUnderPositiveRescaling) {
    auto d = random_fixture(90, 3, 17);
    const auto before = rank_omega(d);
    const double a[] = {3.0, 0.01, 250.0, 7.5, 1.0}, b[] = {-4, 100, 0.5, 0, -1e3};
    for (auto& r : d.X)
        for (std::size_t j = 0; j < 5; ++j) r[j] = a[j] * r[j] + b[j];
    const auto after = rank_omega(d);
    ASSERT_EQ(before.entries.size(), after.entries.size());
    for (std::size_t i = 0; i < before.entries.size(); ++i) {
        EXPECT_EQ(before.entries[i].first, after.entries[i].first);
        EXPECT_NEAR(before.entries[i].second, after.entries[i].second, 1e-9);
    }
}

TEST(RankOmega, IndicatorColumnsAreNotRanked) {
    const auto d = make({"x", "x__absent", "syntax_approximate"}, {{1, 0, 0}, {2, 0, 0}, {5, 1, 0}, {6, 0, 0}}, {1, 1, 2, 2});
    const auto r = rank_omega(d);
    ASSERT_EQ(r.entries.size(), 1u);
    EXPECT_EQ(r.entries[0].first, "x");
}

TEST(Cfs, ExactCopyIsNotAdded) {
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    Rng rng(3);
    for (int i = 0; i < 40; ++i) {
        const int c = i % 2 + 1;
        X.push_back({static_cast<double>(c), static_cast<double>(c), rng.normal(0, 1)});
        y.push_back(c);
    }
    const auto r = select_cfs(make({"perfect", "perfect_copy", "noise"}, X, y));
    ASSERT_EQ(r.entries.size(), 1u);
    EXPECT_EQ(r.entries[0].first, "perfect");
    EXPECT_NEAR(r.params["merit"].get<double>(), 1.0, 1e-12);
}

TEST(Cfs, TwoIndependentHalfInformativeFeaturesAreBothSelected) {
    // class = u + v over a balanced 2x2 grid: each feature correlates with
    // the class at 1/sqrt(2) and not with the other.
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    for (int rep = 0; rep < 10; ++rep)
        for (int u = 0; u < 2; ++u)
            for (int v = 0; v < 2; ++v) {
                X.push_back({static_cast<double>(u), static_cast<double>(v), static_cast<double>((rep * 7 + u * 3 + v) % 5)});
                y.push_back(u + v + 1);
            }
    const auto d = make({"u", "v", "filler"}, X, y);
    const auto r = select_cfs(d);
    const auto top = r.top(2);
    ASSERT_GE(top.size(), 2u);
    EXPECT_TRUE((top[0] == "u" && top[1] == "v") || (top[0] == "v" && top[1] == "u"));
    // merit of {u, v}: 2 * r / sqrt(2) with r = |corr(u, class)|
    const double rcf = std::fabs(*pearson(d.column_values(0), [&] {
        std::vector<double> c;
        for (int k : d.y) c.push_back(k + 1.0);
        return c;
    }()));
    EXPECT_NEAR(rcf, 1.0 / std::sqrt(2.0), 1e-12);
    if (r.entries.size() == 2) EXPECT_NEAR(r.params["merit"].get<double>(), 2 * rcf / std::sqrt(2.0), 1e-12);
    for (std::size_t i = 1; i < r.entries.size(); ++i) EXPECT_GE(r.entries[i - 1].second, r.entries[i].second);
}

TEST(Cfs, AllNoiseStopsAtOneFeature) {
    Rng rng(1);
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    for (int i = 0; i < 200; ++i) {
        X.push_back({rng.normal(0, 1), rng.normal(0, 1), rng.normal(0, 1), rng.normal(0, 1)});
        y.push_back(i % 2 + 1);
    }
    const auto d = make({"n1", "n2", "n3", "n4"}, X, y);
    // Oracle: no pair beats the best single feature's merit |r_cf|.
    std::vector<double> cls;
    for (int k : d.y) cls.push_back(k + 1.0);
    double best_single = 0, best_pair = 0;
    for (std::size_t a = 0; a < 4; ++a) {
        const double ra = std::fabs(*pearson(d.column_values(a), cls));
        best_single = std::max(best_single, ra);
        for (std::size_t b = a + 1; b < 4; ++b) {
            const double rb = std::fabs(*pearson(d.column_values(b), cls));
            const double rab = std::fabs(*pearson(d.column_values(a), d.column_values(b)));
            best_pair = std::max(best_pair, (ra + rb) / std::sqrt(2 + 2 * rab));
        }
    }
    ASSERT_LT(best_pair, best_single);
    const auto r = select_cfs(d);
    EXPECT_EQ(r.entries.size(), 1u);
    EXPECT_NEAR(r.params["merit"].get<double>(), best_single, 1e-12);
}

TEST(Cfs, NeedsTwoFeatures) {
    EXPECT_THROW(select_cfs(make({"x"}, {{1}, {2}}, {1, 2})), ValidationError);
}

TEST(ReliefF, MatchesNaiveOracleOn30And100Instances) {
    for (std::size_t n : {30u, 100u}) {
        const auto d = random_fixture(n, 3, 100 + n);
        const auto r = rank_relieff(d, 5);
        const auto oracle = relieff_oracle(d, 5);
        for (const auto& [name, w] : oracle) EXPECT_NEAR(score_of(r, name), w, 1e-12) << n << " " << name;
        for (std::size_t i = 1; i < r.entries.size(); ++i) EXPECT_GE(r.entries[i - 1].second, r.entries[i].second);
    }
}

TEST(ReliefF, DefaultKMatchesOracle) {
    const auto d = random_fixture(100, 2, 9);
    const auto r = rank_relieff(d);
    const auto oracle = relieff_oracle(d, 10);
    for (const auto& [name, w] : oracle) EXPECT_NEAR(score_of(r, name), w, 1e-12);
}

TEST(ReliefF, XorOutranksNoiseAndConstantScoresZero) {
    Rng rng(21);
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    for (int i = 0; i < 120; ++i) {
        const int a = static_cast<int>(rng.index(2)), b = static_cast<int>(rng.index(2));
        X.push_back({static_cast<double>(a), static_cast<double>(b), rng.uniform(), rng.uniform(), 4.0});
        y.push_back((a ^ b) + 1);
    }
    const auto r = rank_relieff(make({"x1", "x2", "noise1", "noise2", "flat"}, X, y));
    EXPECT_LT(rank_of(r, "x1"), rank_of(r, "noise1"));
    EXPECT_LT(rank_of(r, "x1"), rank_of(r, "noise2"));
    EXPECT_LT(rank_of(r, "x2"), rank_of(r, "noise1"));
    EXPECT_LT(rank_of(r, "x2"), rank_of(r, "noise2"));
    EXPECT_EQ(score_of(r, "flat"), 0.0);
    for (const auto& [n, w] : r.entries) {
        EXPECT_GE(w, -1.0);
        EXPECT_LE(w, 1.0);
    }
}

TEST(ReliefF, SmallClassReducesKWithWarning) {
    const auto d = make({"x", "z"}, {{0, 1}, {1, 0}, {2, 1}, {10, 0}, {11, 1}, {12, 0}, {13, 1}}, {1, 1, 1, 2, 2, 2, 2});
    std::vector<std::string> warnings;
    const auto r = rank_relieff(d, 10, &warnings);
    ASSERT_EQ(warnings.size(), 1u);
    EXPECT_EQ(r.params["k_neighbors"].get<std::size_t>(), 2u);
    const auto oracle = relieff_oracle(d, 2);
    for (const auto& [name, w] : oracle) EXPECT_NEAR(score_of(r, name), w, 1e-12);
}

TEST(SvmRank, SeparatingFeatureTopZeroVarianceZero) {
    Rng rng(8);
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    for (int i = 0; i < 80; ++i) {
        const int c = i % 2;
        X.push_back({rng.normal(0, 1), c ? 2.0 + rng.uniform() : -2.0 - rng.uniform(), 3.0, rng.normal(0, 1)});
        y.push_back(c + 1);
    }
    const auto r = rank_svm_weights(make({"noise1", "sep", "flat", "noise2"}, X, y));
    EXPECT_EQ(r.entries[0].first, "sep");
    EXPECT_EQ(score_of(r, "flat"), 0.0);
    const auto again = rank_svm_weights(make({"noise1", "sep", "flat", "noise2"}, X, y));
    EXPECT_EQ(r.entries, again.entries);
}

TEST(SvmRank, DuplicatedPairOutranksNoise) {
    Rng rng(12);
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    for (int i = 0; i < 90; ++i) {
        const int c = i % 3;
        const double s = c + rng.normal(0, 0.3);
        X.push_back({s, s, rng.normal(0, 1), rng.normal(0, 1)});
        y.push_back(c + 1);
    }
    const auto r = rank_svm_weights(make({"dup_a", "dup_b", "noise1", "noise2"}, X, y));
    EXPECT_LT(rank_of(r, "dup_a"), rank_of(r, "noise1"));
    EXPECT_LT(rank_of(r, "dup_a"), rank_of(r, "noise2"));
    EXPECT_LT(rank_of(r, "dup_b"), rank_of(r, "noise1"));
    EXPECT_LT(rank_of(r, "dup_b"), rank_of(r, "noise2"));
}

TEST(EffectReport, CsvShape) {
    const auto d = make({"x"}, {{1}, {2}, {3}, {2}, {3}, {4}, {3}, {4}, {5}}, {1, 1, 1, 2, 2, 2, 3, 3, 3});
    const auto csv = effect_report(d).to_csv();
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "feature,F,p,omega_sq,band");
    EXPECT_NE(csv.find("x,3,0.125"), std::string::npos) << csv;
    EXPECT_NE(csv.find(",strong"), std::string::npos);
}
