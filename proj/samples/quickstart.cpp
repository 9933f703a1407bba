// Generates a small synthetic corpus, extracts the feature matrix, ranks the
// features and cross-validates a logistic regression on it.
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "textlevel/corpus/corpus.hpp"
#include "textlevel/corpus/experiment.hpp"
#include "textlevel/corpus/synthetic.hpp"

int main(int argc, char** argv) {
    namespace fs = std::filesystem;
    using namespace textlevel;
    const fs::path work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "textlevel-quickstart";
    try {
        const auto corpus = synth::generate_synthetic_corpus(42, 30, work.string());
        const auto bundle = load_resources(corpus.resources_dir);
        const auto extracted = extract_matrix(scan_corpus(corpus.corpus_dir), bundle, ExtractOptions{});
        std::cout << "documents: " << extracted.matrix.rows() << ", columns: " << extracted.matrix.names.size() << "\n";

        const auto labeled = extracted.matrix.labeled();
        const auto ranking = rank_omega(labeled.data);
        std::cout << "strongest features by omega squared:\n";
        for (std::size_t i = 0; i < 5 && i < ranking.entries.size(); ++i) {
            std::printf("  %-22s %.3f\n", ranking.entries[i].first.c_str(), ranking.entries[i].second);
        }

        std::vector<NgramCounts> counts;
        for (std::size_t r : labeled.rows) counts.push_back(extracted.ngrams.counts[r]);
        const auto report = cross_validate(Algo::logreg, labeled.data, TrainParams{}, 5, 1,
                                           profile_fold_hook(counts, extracted.ngrams.top_k));
        std::printf("5-fold logistic regression: weighted F1 %.3f, accuracy %.3f\n", report.metrics.f1,
                    report.metrics.accuracy);
        std::cout << "confusion (rows actual, columns predicted):\n";
        for (const auto& row : report.confusion) {
            for (long v : row) std::printf("%5ld", v);
            std::printf("\n");
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
