#include <gtest/gtest.h>

#include "support.hpp"
#include "tense_gold.hpp"
#include "textlevel/tagging/chunker.hpp"
#include "textlevel/tagging/perceptron.hpp"
#include "textlevel/tagging/tenses.hpp"
#include "textlevel/tagging/trees.hpp"

using namespace textlevel;

namespace {

std::vector<TaggedSentence> fixture_corpus() {
    return testsupport::parse_tagged_lines(str::read_file(testsupport::fixture_path("tagger_train.txt")));
}

TaggerModel fixture_model(std::uint64_t seed = 7) {
    TaggerModel::TrainOptions opt;
    opt.epochs = 5;
    opt.seed = seed;
    return TaggerModel::train(fixture_corpus(), opt);
}

TenseProfile tenses_of(const std::string& tagged) {
    return detect_tenses(testsupport::parse_tagged_lines(tagged).at(0));
}

}  // namespace

TEST(Tagger, ReproducesTrainingTags) {
    const auto corpus = fixture_corpus();
    ASSERT_EQ(corpus.size(), 10u);
    const auto m = fixture_model();
    int right = 0, total = 0;
    for (const auto& ts : corpus) {
        const auto tags = m.tag(ts.words);
        for (std::size_t i = 0; i < tags.size(); ++i, ++total) right += tags[i] == ts.tags[i];
    }
    EXPECT_GE(static_cast<double>(right) / total, 0.95);
}

TEST(Tagger, TagsSimpleSentence) {
    const auto m = fixture_model();
    EXPECT_EQ(m.tag({"the", "cat", "sleeps"}), (std::vector<std::string>{"DT", "NN", "VBZ"}));
    EXPECT_TRUE(m.tag({}).empty());
}

TEST(Tagger, UnseenCapitalizedWordIsProperNoun) {
    const auto m = fixture_model();
    const auto tags = m.tag({"We", "met", "Zorblax", "in", "the", "park", "."});
    EXPECT_EQ(tags[2], "NNP");
    EXPECT_GT(m.weight("shape cap", "NNP"), 0.0);
}

TEST(Tagger, Preconditions) {
    TaggerModel::TrainOptions opt;
    opt.epochs = 0;
    EXPECT_THROW(TaggerModel::train(fixture_corpus(), opt), ValidationError);
    opt.epochs = 3;
    EXPECT_THROW(TaggerModel::train({}, opt), ValidationError);
    auto bad = fixture_corpus();
    bad[0].tags[0] = "XYZ";
    EXPECT_THROW(TaggerModel::train(bad, opt), ValidationError);
}

TEST(Tagger, DeterministicAndReloadable) {
    const auto a = fixture_model(11), b = fixture_model(11);
    EXPECT_EQ(a.fingerprint(), b.fingerprint());
    const auto reloaded = TaggerModel::from_json(nlohmann::json::parse(a.to_json().dump()));
    EXPECT_EQ(reloaded.fingerprint(), a.fingerprint());
    const std::vector<std::string> s = {"My", "old", "dog", "reads", "books", "in", "Berlin", "."};
    EXPECT_EQ(reloaded.tag(s), a.tag(s));
    EXPECT_EQ(a.tag(s), a.tag(s));
}

TEST(Tenses, KnownForms) {
    auto p = tenses_of("will/MD have/VB been/VBN running/VBG");
    EXPECT_EQ(p[Tense::future_perfect_continuous], 1);
    EXPECT_EQ(p.total(), 1);
    p = tenses_of("goes/VBZ");
    EXPECT_EQ(p[Tense::simple_present], 1);
    p = tenses_of("will/MD not/RB go/VB");
    EXPECT_EQ(p[Tense::simple_future], 1);
    EXPECT_EQ(p.total(), 1);
}

TEST(Tenses, AdverbGapLimit) {
    EXPECT_EQ(tenses_of("will/MD really/RB not/RB go/VB")[Tense::simple_future], 1);
    EXPECT_EQ(tenses_of("will/MD very/RB really/RB not/RB go/VB")[Tense::simple_future], 0);
}

TEST(Tenses, CountBoundedByVerbs) {
    for (const auto& line : str::lines(str::read_file(testsupport::fixture_path("tenses_gold.txt")))) {
        if (line.empty() || line[0] == '#') continue;
        const auto ts = testsupport::parse_tagged_lines(line.substr(0, line.find("||"))).at(0);
        int verbs = 0;
        for (const auto& t : ts.tags) verbs += (t.rfind("VB", 0) == 0 || t == "MD") ? 1 : 0;
        EXPECT_LE(detect_tenses(ts).total(), verbs) << line;
    }
}

TEST(Tenses, GoldFixtureQuality) {
    const auto sc = testsupport::score_tense_gold(testsupport::fixture_path("tenses_gold.txt"));
    EXPECT_GE(sc.precision(), 0.90);
    EXPECT_GE(sc.recall(), 0.90);
}

TEST(Chunker, Examples) {
    EXPECT_EQ(chunk({"the", "big", "cat"}, {"DT", "JJ", "NN"}), (std::vector<Chunk>{{"NP", 0, 3}}));
    EXPECT_EQ(chunk({"on", "the", "mat"}, {"IN", "DT", "NN"}),
              (std::vector<Chunk>{{"PP", 0, 3}, {"NP", 1, 3}}));
    EXPECT_TRUE(chunk({"wow"}, {"UH"}).empty());
    const auto c = chunk({"he", "has", "not", "eaten", "very", "quickly"}, {"PRP", "VBZ", "RB", "VBN", "RB", "RB"});
    EXPECT_EQ(c, (std::vector<Chunk>{{"NP", 0, 1}, {"VP", 1, 4}, {"ADVP", 4, 6}}));
    EXPECT_EQ(chunk({"is", "very", "tall"}, {"VBZ", "RB", "JJ"}),
              (std::vector<Chunk>{{"VP", 0, 1}, {"ADJP", 1, 3}}));
}

TEST(Chunker, SpansNeverCross) {
    const auto corpus = fixture_corpus();
    for (const auto& ts : corpus) {
        const auto cs = chunk(ts.words, ts.tags);
        for (std::size_t a = 0; a < cs.size(); ++a) {
            EXPECT_LE(cs[a].end, ts.tags.size());
            for (std::size_t b = a + 1; b < cs.size(); ++b) {
                const bool disjoint = cs[a].end <= cs[b].begin || cs[b].end <= cs[a].begin;
                const bool nested = (cs[a].begin <= cs[b].begin && cs[b].end <= cs[a].end) ||
                                    (cs[b].begin <= cs[a].begin && cs[a].end <= cs[b].end);
                EXPECT_TRUE(disjoint || nested);
                if (!disjoint) EXPECT_TRUE(cs[a].label == "PP" || cs[b].label == "PP");
            }
        }
    }
}

TEST(Trees, ParseAndLeaves) {
    const auto trees = parse_bracketed_trees("(ROOT (S (NP (DT the) (NN cat)) (VP (VBZ sleeps))))");
    ASSERT_EQ(trees.size(), 1u);
    EXPECT_EQ(trees[0].leaves(), (std::vector<std::string>{"the", "cat", "sleeps"}));
    EXPECT_EQ(trees[0].tags(), (std::vector<std::string>{"DT", "NN", "VBZ"}));
}

TEST(Trees, UnbalancedReportsOffset) {
    try {
        parse_bracketed_trees("(S (NP");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_LE(e.offset(), 6u);
    }
    EXPECT_THROW(parse_bracketed_trees("(S (NP x)))"), ParseError);
}

TEST(Trees, AlignmentMismatch) {
    const auto trees = parse_bracketed_trees("(S (NP (DT the) (NN cat)) (VP (VBZ sleeps)))");
    try {
        align_trees(trees, {{"the", "cat", "sleeps", "."}});
        FAIL();
    } catch (const AlignmentError& e) {
        EXPECT_EQ(e.sentence_index(), 0u);
    }
    EXPECT_NO_THROW(align_trees(trees, {{"the", "cat", "sleeps"}}));
}

TEST(Trees, EscapesFunctionTagsAndEmptyNodes) {
    const auto t = parse_bracketed_trees(
        "( (S (NP-SBJ-1 (-NONE- *T*)) (NP-SBJ (PRP He)) (VP (VBD said) (-LRB- -LRB-) (NP (NN so)) (-RRB- -RRB-))))")[0];
    EXPECT_EQ(t.leaves(), (std::vector<std::string>{"He", "said", "(", "so", ")"}));
    EXPECT_EQ(t.nodes[t.root].label, "ROOT");
    const auto st = tree_stats(t);
    EXPECT_EQ(st.phrase_counts.at("NP"), 2);
}

TEST(TreeStats, Examples) {
    auto st = tree_stats(parse_bracketed_trees("(ROOT (S (NP (DT the)(NN cat)) (VP (VBZ sleeps))))")[0]);
    EXPECT_EQ(st.height, 4);
    EXPECT_EQ(st.tunits.size(), 1u);
    EXPECT_EQ(st.complex_tunits, 0);

    st = tree_stats(parse_bracketed_trees(
        "(ROOT (S (S (NP (PRP I)) (VP (VBD ran))) (CC and) (S (NP (PRP she)) (VP (VBD walked)))))")[0]);
    EXPECT_EQ(st.tunits.size(), 2u);
    EXPECT_EQ(st.coord_s_lengths.size(), 1u);
    EXPECT_EQ(st.coord_s_lengths[0], 5);
    EXPECT_EQ(st.complex_tunits, 0);

    st = tree_stats(parse_bracketed_trees(
        "(ROOT (S (NP (PRP I)) (VP (VBD left) (SBAR (IN because) (S (NP (PRP it)) (VP (VBD rained)))))))")[0]);
    EXPECT_EQ(st.tunits.size(), 1u);
    EXPECT_EQ(st.complex_tunits, 1);
    EXPECT_EQ(st.subordinate_lengths, (std::vector<int>{3}));

    st = tree_stats(parse_bracketed_trees("(X (Y w))")[0]);
    EXPECT_EQ(st.height, 2);
}

TEST(TreeStats, QuestionsAndInversion) {
    auto st = tree_stats(parse_bracketed_trees(
        "(ROOT (SBARQ (WHADVP (WRB Where)) (SQ (VBD did) (NP (PRP he)) (VP (VB go))) (. ?)))")[0]);
    EXPECT_EQ(st.sbarq_lengths.size(), 1u);
    EXPECT_TRUE(st.sq_lengths.empty());
    st = tree_stats(parse_bracketed_trees("(ROOT (SQ (VBD Did) (NP (PRP you)) (VP (VB go)) (. ?)))")[0]);
    EXPECT_EQ(st.sq_lengths, (std::vector<int>{4}));
    st = tree_stats(parse_bracketed_trees(
        "(ROOT (SINV (ADVP (RB Never)) (VBP have) (NP (PRP I)) (VP (VBN seen) (NP (PRP it))) (. .)))")[0]);
    EXPECT_EQ(st.sinv_lengths, (std::vector<int>{6}));
    st = tree_stats(parse_bracketed_trees(
        "(ROOT (S (NP (NP (NNS cats)) (CC and) (NP (NNS dogs))) (VP (VBP sleep))))")[0]);
    EXPECT_EQ(st.coord_phrase_lengths, (std::vector<int>{3}));
}

TEST(TreeStats, PhraseCountsTreeMode) {
    const auto st = tree_stats(parse_bracketed_trees(
        "(ROOT (S (NP (DT the) (NN cat)) (VP (VBZ chases) (NP (DT a) (NN mouse)))))")[0]);
    EXPECT_EQ(st.xp_total, 3);
    EXPECT_EQ(st.phrase_counts.at("NP"), 2);
    EXPECT_EQ(st.tunits[0].np, 2);
    EXPECT_EQ(st.tunits[0].vp, 1);
}
