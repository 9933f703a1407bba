#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "textlevel/features/catalog.hpp"
#include "textlevel/features/discpsych.hpp"
#include "textlevel/features/readability.hpp"

using namespace textlevel;
using testsupport::tagged_doc;

namespace {

const ResourceBundle& bundle() {
    static const ResourceBundle b = testsupport::small_bundle();
    return b;
}

EmbeddingTable table(std::initializer_list<std::pair<const char*, std::vector<double>>> items) {
    EmbeddingTable t;
    t.dim = 2;
    for (const auto& [w, v] : items) t.vectors[w] = v;
    return t;
}

std::string words_line(int n, const char* word, const char* tag) {
    std::string out;
    for (int i = 0; i < n; ++i) out += std::string(word) + "/" + tag + " ";
    return out;
}

}  // namespace

TEST(Cohesion, Ratios) {
    // 20 words, 2 connectors ("however", "in addition")
    std::string text = "however/RB " + words_line(9, "cat", "NN") + "\nin/IN addition/NN " + words_line(8, "dog", "NN");
    auto f = cohesion_features(tagged_doc(text, bundle()), bundle().lists);
    EXPECT_DOUBLE_EQ(f.conn_per_word, 0.1);
    EXPECT_DOUBLE_EQ(f.conn_per_sent, 1.0);
    EXPECT_EQ(f.argconn_per_word, 0.0);

    f = cohesion_features(tagged_doc("hence/RB the/DT cat/NN", bundle()), bundle().lists);
    EXPECT_DOUBLE_EQ(f.conn_per_word, 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(f.argconn_per_word, 1.0 / 3.0);

    f = cohesion_features(tagged_doc("the/DT cat/NN", bundle()), bundle().lists);
    EXPECT_EQ(f.conn_per_word + f.conn_per_sent + f.argconn_per_word + f.argconn_per_sent, 0.0);
}

TEST(Cohesion, DuplicationLeavesRatios) {
    const std::string text = "however/RB the/DT cat/NN sleeps/VBZ\nhence/RB dogs/NNS run/VBP";
    const auto a = cohesion_features(tagged_doc(text, bundle()), bundle().lists);
    const auto b = cohesion_features(tagged_doc(text + "\n" + text, bundle()), bundle().lists);
    EXPECT_DOUBLE_EQ(a.conn_per_word, b.conn_per_word);
    EXPECT_DOUBLE_EQ(a.argconn_per_sent, b.argconn_per_sent);
}

TEST(Coherence, Examples) {
    const auto& lists = bundle().lists;
    const auto same = table({{"cat", {1, 1}}, {"dog", {2, 2}}});
    EXPECT_NEAR(*coherence(tagged_doc("cat/NN\ndog/NN cat/NN", bundle()), same, lists, false), 1.0, 1e-12);

    const auto ortho = table({{"cat", {1, 0}}, {"dog", {0, 1}}});
    EXPECT_NEAR(*coherence(tagged_doc("cat/NN\ndog/NN", bundle()), ortho, lists, false), 0.0, 1e-12);
    EXPECT_NEAR(*coherence(tagged_doc("cat/NN\ncat/NN dog/NN", bundle()), ortho, lists, false), 0.5, 1e-12);

    EXPECT_FALSE(coherence(tagged_doc("cat/NN dog/NN", bundle()), ortho, lists, false).has_value());
    EXPECT_FALSE(coherence(tagged_doc("zebra/NN\nyak/NN", bundle()), ortho, lists, false).has_value());
}

TEST(Coherence, NounsOnlyAndStopwords) {
    const auto& lists = bundle().lists;
    const auto t = table({{"cat", {1, 0}}, {"dog", {0, 1}}, {"the", {0, 1}}, {"run", {1, 0}}});
    // "the" is a stopword, "run" is not a noun
    const auto doc = tagged_doc("the/DT cat/NN\nrun/VB dog/NN", bundle());
    EXPECT_NEAR(*coherence(doc, t, lists, false), 0.5, 1e-12);
    EXPECT_NEAR(*coherence(doc, t, lists, true), 0.0, 1e-12);
}

TEST(Coherence, SinglePairReversal) {
    const auto& lists = bundle().lists;
    const auto t = table({{"cat", {1, 0.2}}, {"dog", {0.3, 1}}, {"sleep", {0.5, 0.5}}, {"run", {1, -1}}});
    const double fwd = *coherence(tagged_doc("cat/NN dog/NN\nsleep/VB run/VB", bundle()), t, lists, false);
    const double back = *coherence(tagged_doc("sleep/VB run/VB\ncat/NN dog/NN", bundle()), t, lists, false);
    EXPECT_NEAR(fwd, back, 1e-12);
}

TEST(Psych, MeansAndCoverage) {
    const auto& db = *bundle().psych;
    auto f = psych_features(tagged_doc("cat/NN dog/NN zebra/NN yak/NN", bundle()), &db);
    EXPECT_DOUBLE_EQ(f.coverage, 0.5);
    EXPECT_DOUBLE_EQ(*f.norms[7], (400.0 + 600.0) / 2.0);  // imag
    EXPECT_DOUBLE_EQ(*f.norms[10], 250.0);                 // aoa: dog has none
    f = psych_features(tagged_doc("the/DT quickly/RB", bundle()), &db);
    EXPECT_EQ(f.coverage, 0.0);
    for (const auto& n : f.norms) EXPECT_FALSE(n.has_value());
    // lemma fallback for plurals, order invariance
    const auto a = psych_features(tagged_doc("cats/NNS sleep/VBP\ndog/NN", bundle()), &db);
    const auto b = psych_features(tagged_doc("dog/NN\ncats/NNS sleep/VBP", bundle()), &db);
    EXPECT_DOUBLE_EQ(a.coverage, 1.0);
    EXPECT_EQ(a.norms, b.norms);
}

TEST(Formulas, HandExamples) {
    EXPECT_NEAR(formula::fog(10, 0.05), 6.0, 1e-12);
    EXPECT_NEAR(formula::flesch_kincaid(10, 1.5), 69.785, 1e-9);
    EXPECT_NEAR(formula::ari(4, 10), 2.41, 1e-9);
    EXPECT_NEAR(formula::dale_chall(10, 10), 5.7115, 1e-9);
    EXPECT_NEAR(formula::dale_chall(5, 10), 0.1579 * 5 + 0.496, 1e-12);
    EXPECT_NEAR(formula::spache(10, 0), 1.869, 1e-12);
    EXPECT_NEAR(formula::coleman_liau(500, 10), 10.64, 1e-9);
    EXPECT_NEAR(formula::forcast(27, 27), 6.5, 1e-12);
    EXPECT_NEAR(formula::forcast(150, 150), 5.0, 1e-12);
}

TEST(Formulas, Monotonicity) {
    for (double r = 0.0; r < 0.5; r += 0.05) EXPECT_LT(formula::fog(12, r), formula::fog(12, r + 0.01));
    for (double s = 1.0; s < 3.0; s += 0.1)
        EXPECT_GT(formula::flesch_kincaid(12, s), formula::flesch_kincaid(12, s + 0.01));
}

TEST(Readability, WholeTextOnDocument) {
    // 2 sentences, 6 words: the cat sleeps / the beautiful dog
    const auto doc = tagged_doc("the/DT cat/NN sleeps/VBZ\nthe/DT beautiful/JJ dog/NN", bundle());
    const auto s = whole_text_formulas(doc, bundle().lists);
    const double wps = 3.0;
    // syllables: the 1, cat 1, sleeps 1, the 1, beautiful 3, dog 1
    EXPECT_NEAR(s.fog, 0.4 * (wps + 100.0 / 6.0), 1e-12);
    EXPECT_NEAR(s.flesch_kincaid, 206.835 - 1.015 * wps - 84.6 * (8.0 / 6.0), 1e-12);
    EXPECT_NEAR(s.ari, 4.71 * (27.0 / 6.0) + 0.5 * wps - 21.43, 1e-12);
    // dale-chall list: the cat dog -> sleeps, beautiful difficult
    EXPECT_NEAR(s.dale_chall, 0.1579 * (200.0 / 6.0) + 0.0496 * wps + 3.6365, 1e-12);
    // spache list: the cat -> sleeps, beautiful, dog unfamiliar
    EXPECT_NEAR(s.spache, 0.121 * wps - 0.082 * 0.5 + 0.659, 1e-12);
    EXPECT_THROW(whole_text_formulas(tagged_doc("./.", bundle()), bundle().lists), EmptyInputError);
}

TEST(Readability, Windows) {
    // 27 monosyllabic words in 3 sentences of 9
    std::string text;
    for (int s = 0; s < 3; ++s) text += words_line(9, "cat", "NN") + "\n";
    const auto doc = tagged_doc(text, bundle());
    const auto w = sampled_formulas(doc, 27);
    EXPECT_EQ(w.windows, 1u);
    EXPECT_NEAR(*w.forcast, 6.5, 1e-12);
    EXPECT_NEAR(*w.coleman_liau, formula::coleman_liau(300, 3 * 100.0 / 27.0), 1e-12);
    EXPECT_FALSE(sampled_formulas(tagged_doc(words_line(26, "cat", "NN"), bundle()), 27).forcast.has_value());
    EXPECT_THROW(sampled_formulas(doc, 0), ValidationError);
    // two windows: mean of window values, remainder dropped
    const auto two = sampled_formulas(tagged_doc(words_line(27, "cat", "NN") + "\n" + words_line(30, "beautiful", "JJ"), bundle()), 27);
    EXPECT_EQ(two.windows, 2u);
    EXPECT_NEAR(*two.forcast, (6.5 + 20.0) / 2.0, 1e-12);
}

TEST(Readability, CorrelationReport) {
    std::vector<std::array<std::optional<double>, 7>> rows;
    const double xs[] = {1, 2, 3, 4, 5};
    const double ys[] = {2, 1, 4, 3, 7};
    for (int i = 0; i < 5; ++i)
        rows.push_back({xs[i], xs[i], -xs[i], ys[i], 3.0, std::nullopt, xs[i] * 2 + 1});
    const auto m = correlation_matrix(rows);
    EXPECT_NEAR(*m.r[0][1], 1.0, 1e-12);
    EXPECT_NEAR(*m.r[0][2], -1.0, 1e-12);
    EXPECT_NEAR(*m.r[0][6], 1.0, 1e-12);
    EXPECT_FALSE(m.r[0][4].has_value());
    EXPECT_FALSE(m.r[0][5].has_value());
    // oracle: mean x 3, mean y 3.4; sxy = 12, sxx = 10, syy = 21.2
    EXPECT_NEAR(*m.r[0][3], 12.0 / std::sqrt(10.0 * 21.2), 1e-12);
    EXPECT_EQ(m.r[3][0], m.r[0][3]);
    EXPECT_NE(m.to_csv().find("formula,fog,flesch_kincaid"), std::string::npos);
    rows.resize(2);
    EXPECT_THROW(correlation_matrix(rows), ValidationError);
}

TEST(Catalog, ShapeAndOrder) {
    const auto& c = catalog();
    EXPECT_EQ(c.size(), 118u);
    std::array<int, 7> per_area{};
    for (const auto& f : c.features()) ++per_area[static_cast<std::size_t>(f.area)];
    EXPECT_EQ(per_area, (std::array<int, 7>{3, 20, 12, 52, 12, 12, 7}));
    EXPECT_EQ(c.columns().front(), "mean_graphemes");
    EXPECT_EQ(c.columns().back(), "syntax_approximate");
    EXPECT_EQ(c.columns().size(), 118u + c.gated_indices().size() + 1);
    EXPECT_EQ(c.fingerprint(), catalog().fingerprint());
}

TEST(Catalog, ExtractGatesShortDocuments) {
    const auto doc = tagged_doc("the/DT cat/NN sleeps/VBZ ./.\nthe/DT dog/NN sleeps/VBZ ./.", bundle());
    const auto row = extract_features(doc, bundle());
    EXPECT_TRUE(row.is_absent("mtld"));
    EXPECT_EQ(row.get("mtld"), 0.0);
    EXPECT_TRUE(row.is_absent("hdd"));
    EXPECT_TRUE(row.is_absent("forcast"));
    EXPECT_TRUE(row.is_absent("prof2_l1"));
    EXPECT_FALSE(row.is_absent("coh_all_e1"));
    EXPECT_TRUE(row.is_absent("coh_all_e2"));
    EXPECT_TRUE(row.approximate);
    const auto cols = row.columns();
    EXPECT_EQ(cols.size(), catalog().columns().size());
    EXPECT_EQ(cols[catalog().columns().size() - 1], 1.0);
    for (double v : cols) EXPECT_TRUE(std::isfinite(v));
}

TEST(Catalog, MissingEmbeddingsAreAbsent) {
    const auto b = testsupport::small_bundle(false);
    const auto row = extract_features(tagged_doc("the/DT cat/NN\nthe/DT dog/NN", b), b);
    for (int k = 1; k <= 4; ++k) {
        EXPECT_TRUE(row.is_absent("coh_all_e" + std::to_string(k)));
        EXPECT_TRUE(row.is_absent("coh_nn_e" + std::to_string(k)));
    }
}
