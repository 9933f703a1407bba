#include <gtest/gtest.h>

#include <cctype>
#include <filesystem>
#include <map>

#include "support.hpp"
#include "textlevel/corpus/corpus.hpp"
#include "textlevel/corpus/experiment.hpp"
#include "textlevel/corpus/synthetic.hpp"

using namespace textlevel;
using testsupport::TempDir;
namespace fs = std::filesystem;

namespace {

struct Shared {
    TempDir dir;
    synth::SynthSummary corpus;
    ResourceBundle bundle;
    ExtractResult extracted;
    std::string matrix_path;

    Shared() {
        corpus = synth::generate_synthetic_corpus(11, 10, dir.str());
        bundle = load_resources(corpus.resources_dir);
        extracted = extract_matrix(scan_corpus(corpus.corpus_dir), bundle, ExtractOptions{});
        matrix_path = dir.file("matrix.csv");
        str::write_file(matrix_path, extracted.matrix.to_csv());
        str::write_file(NgramSidecar::path_for(matrix_path), extracted.ngrams.to_json().dump());
    }
};

Shared& shared() {
    static Shared s;
    return s;
}

std::string column_value(const FeatureMatrix& m, std::size_t row, const std::string& name) {
    const auto it = std::find(m.names.begin(), m.names.end(), name);
    return str::fmt(m.X[row][static_cast<std::size_t>(it - m.names.begin())]);
}

double column(const FeatureMatrix& m, std::size_t row, const std::string& name) {
    const auto it = std::find(m.names.begin(), m.names.end(), name);
    return m.X[row][static_cast<std::size_t>(it - m.names.begin())];
}

std::map<std::string, std::string> read_tree(const fs::path& root) {
    std::map<std::string, std::string> out;
    for (const auto& f : fs::recursive_directory_iterator(root))
        if (f.is_regular_file()) out[fs::relative(f.path(), root).string()] = str::read_file(f.path().string());
    return out;
}

}  // namespace

TEST(ScanCorpus, LevelDirectories) {
    TempDir d;
    d.write("level1/a.txt", "One.");
    d.write("level2/b.txt", "Two.");
    const auto m = scan_corpus(d.str());
    ASSERT_EQ(m.entries.size(), 2u);
    EXPECT_EQ(m.entries[0].id, "a");
    EXPECT_EQ(*m.entries[0].level, 1);
    EXPECT_EQ(*m.entries[1].level, 2);
}

TEST(ScanCorpus, TreesLinkedAndLooseFilesUnlabeled) {
    TempDir d;
    d.write("a.txt", "One.");
    d.write("a.trees", "(S (NN one))");
    d.write("level3/c.txt", "Three.");
    const auto m = scan_corpus(d.str());
    ASSERT_EQ(m.entries.size(), 2u);
    EXPECT_EQ(m.entries[0].id, "a");
    EXPECT_FALSE(m.entries[0].level.has_value());
    EXPECT_EQ(m.entries[0].trees, d.file("a.trees"));
    EXPECT_TRUE(m.entries[1].trees.empty());
}

TEST(ScanCorpus, Errors) {
    TempDir empty;
    EXPECT_THROW(scan_corpus(empty.str()), ValidationError);
    TempDir dup;
    dup.write("level1/a.txt", "x");
    dup.write("level2/a.txt", "y");
    EXPECT_THROW(scan_corpus(dup.str()), ValidationError);
    TempDir bad;
    bad.write("level7/a.txt", "x");
    EXPECT_THROW(scan_corpus(bad.str()), ValidationError);
    EXPECT_THROW(scan_corpus(empty.file("missing")), ValidationError);
}

TEST(ScanCorpus, ManifestCsv) {
    TempDir d;
    d.write("texts/x.txt", "x");
    d.write("texts/y.txt", "y");
    d.write("manifest.csv", "id,path,level\nx,texts/x.txt,4\ny,texts/y.txt,\n");
    const auto m = scan_corpus(d.str());
    ASSERT_EQ(m.entries.size(), 2u);
    EXPECT_EQ(*m.entries[0].level, 4);
    EXPECT_FALSE(m.entries[1].level.has_value());
    d.write("manifest.csv", "id,path,level\nx,texts/x.txt,1\nz,texts/z.txt,1\n");
    EXPECT_THROW(scan_corpus(d.str()), ValidationError);
    d.write("manifest.csv", "id,path,level\nx,texts/x.txt,1\nx,texts/y.txt,2\n");
    EXPECT_THROW(scan_corpus(d.str()), ValidationError);
}

TEST(Synthetic, ReproducibleByteForByte) {
    TempDir a, b;
    synth::generate_synthetic_corpus(3, 50, a.str());
    synth::generate_synthetic_corpus(3, 50, b.str());
    const auto ta = read_tree(a.path() / "corpus"), tb = read_tree(b.path() / "corpus");
    EXPECT_EQ(ta.size(), 150u);
    EXPECT_EQ(ta, tb);
    EXPECT_EQ(read_tree(a.path() / "resources"), read_tree(b.path() / "resources"));
    TempDir c;
    synth::generate_synthetic_corpus(4, 50, c.str());
    EXPECT_NE(ta, read_tree(c.path() / "corpus"));
    EXPECT_THROW(synth::generate_synthetic_corpus(3, 9, c.str()), ValidationError);
}

TEST(Synthetic, SentenceLengthGrowsWithLevel) {
    // Counted from the rendered text: alphabetic tokens per terminal mark.
    const synth::Grammar g;
    std::map<int, std::pair<double, double>> acc;
    for (const auto& d : synth::generate_documents(g, 5, 20)) {
        double words = 0, sentences = 0;
        bool in_word = false;
        for (char ch : d.text()) {
            const bool alpha = std::isalpha(static_cast<unsigned char>(ch)) || ch == '\'' || ch == '-';
            if (alpha && !in_word) ++words;
            in_word = alpha;
            if (ch == '.' || ch == '?' || ch == '!') ++sentences;
        }
        acc[d.level].first += words;
        acc[d.level].second += sentences;
    }
    const double l1 = acc[1].first / acc[1].second, l2 = acc[2].first / acc[2].second, l3 = acc[3].first / acc[3].second;
    EXPECT_LT(l1, l2);
    EXPECT_LT(l2, l3);
    EXPECT_NEAR(l1, 6, 2.5);
    EXPECT_NEAR(l3, 20, 5);
}

TEST(Synthetic, LexicalSophisticationGrowsWithLevel) {
    const auto& m = shared().extracted.matrix;
    std::map<int, std::pair<double, int>> acc;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        acc[*m.levels[i]].first += column(m, i, "lexsph");
        ++acc[*m.levels[i]].second;
    }
    EXPECT_GT(acc[3].first / acc[3].second, acc[1].first / acc[1].second);
}

TEST(Extract, RowsAndStableHeader) {
    auto& s = shared();
    EXPECT_EQ(s.extracted.matrix.rows(), 30u);
    EXPECT_EQ(s.extracted.failures, 0u);
    auto manifest = scan_corpus(s.corpus.corpus_dir);
    manifest.entries.resize(3);
    ExtractOptions one, three;
    one.threads = 1;
    three.threads = 3;
    const auto a = extract_matrix(manifest, s.bundle, one), b = extract_matrix(manifest, s.bundle, three);
    EXPECT_EQ(a.matrix.rows(), 3u);
    EXPECT_EQ(a.matrix.to_csv(), b.matrix.to_csv());
    EXPECT_EQ(a.ngrams.to_json(), b.ngrams.to_json());
    const auto first_line = [](const std::string& t) { return t.substr(0, t.find('\n')); };
    EXPECT_EQ(first_line(a.matrix.to_csv()), first_line(s.extracted.matrix.to_csv()));
}

TEST(Extract, ShortDocumentGatesMtld) {
    auto& s = shared();
    TempDir d;
    d.write("level1/short.txt", "The dog runs. The dog sleeps.");
    const auto r = extract_matrix(scan_corpus(d.str()), s.bundle, ExtractOptions{});
    ASSERT_EQ(r.matrix.rows(), 1u);
    EXPECT_EQ(column(r.matrix, 0, "mtld"), 0.0);
    EXPECT_EQ(column(r.matrix, 0, "mtld__absent"), 1.0);
}

TEST(Extract, MissingEmbeddingsDegrade) {
    auto& s = shared();
    TempDir res;
    for (const auto& f : fs::directory_iterator(s.corpus.resources_dir))
        fs::copy_file(f.path(), res.path() / f.path().filename());
    auto manifest = nlohmann::json::parse(str::read_file(res.file("manifest.json")));
    for (const char* role : {"embeddings", "embeddings2", "embeddings3", "embeddings4"}) manifest["resources"].erase(role);
    str::write_file(res.file("manifest.json"), manifest.dump());
    const auto bundle = load_resources(res.str());
    auto corpus = scan_corpus(s.corpus.corpus_dir);
    corpus.entries.resize(2);
    const auto r = extract_matrix(corpus, bundle, ExtractOptions{});
    ASSERT_EQ(r.matrix.rows(), 2u);
    for (int k = 1; k <= 4; ++k)
        for (const std::string base : {"coh_all_e", "coh_nn_e"}) {
            const auto name = base + std::to_string(k);
            EXPECT_EQ(column(r.matrix, 0, name), 0.0);
            EXPECT_EQ(column(r.matrix, 0, name + "__absent"), 1.0);
        }
    bool warned = false;
    for (const auto& l : r.log) warned |= l.find("embeddings") != std::string::npos;
    EXPECT_TRUE(warned);
}

TEST(Extract, FailedDocumentsAreSkipped) {
    auto& s = shared();
    auto corpus = scan_corpus(s.corpus.corpus_dir);
    corpus.entries.resize(4);
    corpus.entries[1].trees = corpus.entries[1].path;  // not bracketed trees
    ExtractOptions opt;
    opt.use_trees = true;
    const auto r = extract_matrix(corpus, s.bundle, opt);
    EXPECT_EQ(r.failures, 1u);
    EXPECT_EQ(r.matrix.rows(), 3u);
    EXPECT_TRUE(r.too_many_failures());
    EXPECT_EQ(r.matrix.ids[1], corpus.entries[2].id);
}

TEST(FeatureMatrix, RoundTripGivesIdenticalMetrics) {
    auto& s = shared();
    const auto& m = s.extracted.matrix;
    const auto back = FeatureMatrix::from_csv(m.to_csv(), "memory");
    EXPECT_EQ(back.to_csv(), m.to_csv());
    EXPECT_EQ(back.X, m.X);
    const auto a = cross_validate(Algo::logreg, m.labeled().data, TrainParams{}, 5, 2);
    const auto b = cross_validate(Algo::logreg, back.labeled().data, TrainParams{}, 5, 2);
    EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
}

TEST(FeatureMatrix, RejectsOtherCatalogs) {
    auto text = shared().extracted.matrix.to_csv();
    const auto pos = text.find("fingerprint=") + 12;
    text[pos] = text[pos] == '0' ? '1' : '0';
    try {
        FeatureMatrix::from_csv(text, "m.csv");
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("fingerprint"), std::string::npos);
    }
    auto renamed = shared().extracted.matrix.to_csv();
    const auto col = renamed.find(",lexsph,");
    renamed.replace(col, 8, ",lexsfh,");
    EXPECT_THROW(FeatureMatrix::from_csv(renamed, "m.csv"), ValidationError);
}

TEST(ProfileFoldHook, UsesTrainingRowsOnly) {
    auto& s = shared();
    const auto labeled = s.extracted.matrix.labeled();
    std::vector<NgramCounts> counts;
    for (std::size_t r : labeled.rows) counts.push_back(s.extracted.ngrams.counts[r]);
    std::vector<std::size_t> train;
    for (std::size_t i = 0; i < labeled.data.rows(); i += 2) train.push_back(i);
    Dataset d = labeled.data;
    profile_fold_hook(counts, 300)(train, d);

    std::vector<const NgramCounts*> docs;
    std::vector<int> levels;
    for (std::size_t i : train) {
        docs.push_back(&counts[i]);
        levels.push_back(labeled.data.class_labels[static_cast<std::size_t>(labeled.data.y[i])]);
    }
    const auto expected = LevelProfiles::build(docs, levels, 300);
    for (std::size_t i = 0; i < d.rows(); ++i) {
        const auto dist = expected.distances(counts[i]);
        EXPECT_EQ(d.X[i][static_cast<std::size_t>(d.column("prof4_l2"))], *dist[7]);
        EXPECT_EQ(d.X[i][static_cast<std::size_t>(d.column("prof2_l1"))], *dist[0]);
    }
    EXPECT_NE(d.X, labeled.data.X);
}

TEST(Experiment, GridCounting) {
    const auto j = nlohmann::json::parse(R"({"matrix": "m.csv", "out": "o",
        "algorithms": ["logreg", "forest", "bagging", "adaboost", "mlp"],
        "selectors": ["omega", "cfs", "relieff", "svm"],
        "feature_counts": {"from": 10, "to": 110, "step": 10}})");
    const auto spec = ExperimentSpec::parse(j, "/data");
    EXPECT_EQ(spec.feature_counts.size(), 11u);
    EXPECT_EQ(spec.cell_count(), 5u * 4u * 11u);
    EXPECT_EQ(spec.matrix, "/data/m.csv");
}

TEST(Experiment, AllErrorsListedTogether) {
    const auto j = nlohmann::json::parse(R"({"algorithms": ["logreg", "svm-rbf"], "folds": 1,
        "selectors": ["omega", "pca"], "colour": 1})");
    try {
        ExperimentSpec::parse(j, ".");
        FAIL();
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        for (const char* part : {"svm-rbf", "folds", "pca", "colour", "'out'", "'matrix'"})
            EXPECT_NE(msg.find(part), std::string::npos) << part;
    }
}

TEST(Experiment, MinimalGridAndDeterminism) {
    auto& s = shared();
    TempDir out;
    nlohmann::json j = {{"matrix", s.matrix_path}, {"algorithms", {"logreg"}}, {"folds", 10}, {"out", out.file("a")},
                        {"timing", false}};
    const auto res = run_experiment(ExperimentSpec::parse(j, "."));
    EXPECT_EQ(res.cells, 1u);
    EXPECT_TRUE(fs::exists(out.path() / "a" / "cells" / "logreg__none__k0.json"));
    EXPECT_TRUE(fs::exists(out.path() / "a" / "effects.json"));
    EXPECT_FALSE(fs::exists(out.path() / "a" / "timing.json"));
    j["out"] = out.file("b");
    run_experiment(ExperimentSpec::parse(j, "."));
    EXPECT_EQ(read_tree(out.path() / "a"), read_tree(out.path() / "b"));
}

TEST(Experiment, SelectorsCapAndTiming) {
    auto& s = shared();
    TempDir out;
    nlohmann::json j = {{"matrix", s.matrix_path}, {"algorithms", {"tree"}}, {"selectors", {"omega", "cfs"}},
                        {"feature_counts", {5, 500}}, {"folds", 3}, {"out", out.str()}};
    const auto res = run_experiment(ExperimentSpec::parse(j, "."));
    EXPECT_EQ(res.cells, 4u);
    bool capped = false;
    for (const auto& w : res.warnings) capped |= w.find("capped") != std::string::npos;
    EXPECT_TRUE(capped);
    const auto cell = nlohmann::json::parse(str::read_file((out.path() / "cells" / "tree__omega__k500.json").string()));
    EXPECT_EQ(cell["features_used"], 118);
    EXPECT_TRUE(fs::exists(out.path() / "timing.json"));
    EXPECT_TRUE(fs::exists(out.path() / "ranking_cfs.json"));
}

TEST(Experiment, TrainTestMode) {
    auto& s = shared();
    TempDir out;
    nlohmann::json j = {{"train_matrix", s.matrix_path}, {"test_matrix", s.matrix_path}, {"algorithms", {"forest"}},
                        {"selectors", {"none", "omega"}}, {"feature_counts", {10}}, {"out", out.str()}, {"timing", false}};
    const auto res = run_experiment(ExperimentSpec::parse(j, "."));
    EXPECT_EQ(res.cells, 2u);
    EXPECT_EQ(res.summary["mode"], "train_test");

    auto text = str::read_file(s.matrix_path);
    const auto pos = text.find("fingerprint=") + 12;
    text[pos] = text[pos] == 'a' ? 'b' : 'a';
    str::write_file(out.file("other.csv"), text);
    j["test_matrix"] = out.file("other.csv");
    try {
        run_experiment(ExperimentSpec::parse(j, "."));
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("fingerprint"), std::string::npos);
    }
}
