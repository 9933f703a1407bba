#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "textlevel/corpus/corpus.hpp"
#include "textlevel/corpus/experiment.hpp"
#include "textlevel/corpus/synthetic.hpp"

using namespace textlevel;
using nlohmann::json;

namespace {

void write_report(const std::string& path, const json& j) {
    const std::string text = j.dump(2) + "\n";
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    str::write_file(path, text);
}

json read_json(const std::string& path) {
    try {
        return json::parse(str::read_file(path));
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

TrainParams load_params(const std::string& path) { return path.empty() ? TrainParams{} : TrainParams::from_json(read_json(path)); }

// Profiles from a sidecar, a classifier file or a bare profile dump.
LevelProfiles load_profiles(const std::string& path) {
    const auto j = read_json(path);
    if (j.contains("profiles") && j["profiles"].is_object()) return LevelProfiles::from_json(j["profiles"]);
    return LevelProfiles::from_json(j);
}

struct ExtractArgs {
    std::string corpus, resources, out, profiles = "train", profile_file;
    bool trees = false, canonical_spache = false;
    std::size_t window = 27, threads = 0;
};

int cmd_extract(const ExtractArgs& a) {
    if (a.profiles != "train" && a.profiles != "file") throw ValidationError("--profiles must be 'train' or 'file'");
    if (a.profiles == "file" && a.profile_file.empty()) throw ValidationError("--profiles file needs --profile-file");
    if (a.window == 0) throw ValidationError("--window must be positive");
    const auto manifest = scan_corpus(a.corpus);
    const auto bundle = load_resources(a.resources);
    ExtractOptions opt;
    opt.cfg.window = a.window;
    opt.cfg.canonical_spache = a.canonical_spache;
    opt.use_trees = a.trees;
    opt.threads = a.threads;
    if (a.profiles == "file") opt.fixed_profiles = load_profiles(a.profile_file);
    const auto res = extract_matrix(manifest, bundle, opt);
    for (const auto& line : res.log) std::cerr << line << "\n";
    const auto parent = std::filesystem::path(a.out).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    str::write_file(a.out, res.matrix.to_csv());
    str::write_file(NgramSidecar::path_for(a.out), res.ngrams.to_json().dump() + "\n");
    std::cerr << "extracted " << res.matrix.rows() << " of " << res.documents << " documents into " << a.out << "\n";
    if (res.too_many_failures()) {
        std::cerr << "error: " << res.failures << " of " << res.documents << " documents failed (more than 10%)\n";
        return 2;
    }
    return 0;
}

int cmd_effects(const std::string& matrix, const std::string& out) {
    write_report(out, effect_report(FeatureMatrix::load(matrix).labeled().data).to_json());
    return 0;
}

int cmd_rank(const std::string& matrix, const std::string& method, std::size_t top, std::uint64_t seed,
             const std::string& out) {
    std::vector<std::string> warnings;
    auto r = rank_features(FeatureMatrix::load(matrix).labeled().data, method, seed, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    if (top && r.entries.size() > top) r.entries.resize(top);
    write_report(out, r.to_json());
    return 0;
}

int cmd_train(const std::string& matrix_path, const std::string& algo, std::uint64_t seed, const std::string& out,
              const std::string& params_path) {
    const auto matrix = FeatureMatrix::load(matrix_path);
    const auto model = train_model(parse_algo(algo), matrix.labeled().data, load_params(params_path), seed);
    for (const auto& w : model.warnings) std::cerr << "warning: " << w << "\n";
    json j = {{"format", "textlevel-classifier"},
              {"version", 1},
              {"extraction", matrix.extraction},
              {"profiles", nullptr},
              {"model", model.to_json(false)}};
    const auto side = NgramSidecar::path_for(matrix_path);
    if (std::filesystem::exists(side)) j["profiles"] = NgramSidecar::from_json(read_json(side)).profiles.to_json();
    else std::cerr << "warning: no n-gram sidecar next to the matrix; profile columns will be absent when classifying\n";
    write_report(out, j);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", model.training_seconds);
    std::cerr << "trained " << algo << " in " << buf << " s\n";
    return 0;
}

int cmd_xval(const std::string& matrix_path, const std::string& algo, std::size_t folds, std::uint64_t seed,
             const std::string& report, const std::string& params_path) {
    const auto matrix = FeatureMatrix::load(matrix_path);
    const auto labeled = matrix.labeled();
    FoldHook hook;
    if (auto fc = detail::fold_counts(matrix_path, matrix, labeled.rows)) hook = profile_fold_hook(std::move(fc->first), fc->second);
    else std::cerr << "warning: no n-gram sidecar next to the matrix; profile columns are not rebuilt per fold\n";
    const auto rep = cross_validate(parse_algo(algo), labeled.data, load_params(params_path), folds, seed, hook);
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
    write_report(report, rep.to_json());
    return 0;
}

int cmd_classify(const std::string& model_path, const std::vector<std::string>& texts, const std::string& resources,
                 const std::string& out) {
    const auto j = read_json(model_path);
    if (j.value("format", "") != "textlevel-classifier") throw ValidationError(model_path + ": not a classifier file (use the output of 'train')");
    const auto model = TrainedModel::from_json(j.at("model"));
    if (model.fingerprint != catalog().fingerprint())
        throw ValidationError("model was trained with catalog fingerprint " + model.fingerprint + ", this build uses " +
                              catalog().fingerprint());
    const auto& ext = j.at("extraction");
    const std::string dir = !resources.empty() ? resources : ext.value("resources", "");
    if (dir.empty()) throw ValidationError("no resource directory recorded in the model; pass --resources");
    const auto bundle = load_resources(dir);
    const auto cfg = ExtractionConfig::from_json(ext.value("config", json::object()));
    std::optional<LevelProfiles> profiles;
    if (!j.at("profiles").is_null()) profiles = LevelProfiles::from_json(j.at("profiles"));
    json results = json::array();
    for (const auto& path : texts) {
        const auto doc = analyze(str::read_file(path), bundle);
        const auto counts = tag_ngrams(doc);
        auto row = extract_features(doc, bundle, cfg, counts, profiles ? &*profiles : nullptr);
        const auto scores = model.scores(row.columns());
        json sc = json::object();
        for (std::size_t c = 0; c < scores.size(); ++c) sc[std::to_string(model.class_labels[c])] = scores[c];
        results.push_back({{"file", path}, {"level", model.class_labels[detail::argmax(scores)]}, {"scores", sc}});
    }
    write_report(out, {{"results", results}});
    return 0;
}

int cmd_synth(std::uint64_t seed, std::size_t per_level, const std::string& out) {
    const auto s = synth::generate_synthetic_corpus(seed, per_level, out);
    std::cerr << "wrote " << s.documents << " documents to " << s.corpus_dir << " and resources to " << s.resources_dir << "\n";
    return 0;
}

int cmd_experiment(const std::string& spec) {
    const auto res = run_experiment(spec);
    for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
    std::cerr << "ran " << res.cells << " cells\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"textlevel: linguistic feature extraction and text difficulty classification"};
    app.require_subcommand(1);
    int code = 0;
    std::function<int()> run;

    ExtractArgs ex;
    auto* extract = app.add_subcommand("extract", "Build a feature matrix from a corpus");
    extract->add_option("--corpus", ex.corpus, "Corpus directory")->required();
    extract->add_option("--resources", ex.resources, "Resource directory")->required();
    extract->add_option("--out", ex.out, "Output matrix CSV")->required();
    extract->add_flag("--trees", ex.trees, "Use sibling .trees files for syntax");
    extract->add_option("--window", ex.window, "Readability window in words");
    extract->add_option("--profiles", ex.profiles, "Level profiles: train or file");
    extract->add_option("--profile-file", ex.profile_file, "Profiles for --profiles file");
    extract->add_option("--threads", ex.threads, "Worker threads (0 = all cores)");
    extract->add_flag("--canonical-spache", ex.canonical_spache, "Use the published Spache coefficients");
    extract->callback([&] { run = [&] { return cmd_extract(ex); }; });

    std::string matrix, out, method, algo, report, params, model_path, resources, spec;
    std::size_t top = 0, folds = 10, per_level = 100;
    std::uint64_t seed = 1;
    std::vector<std::string> texts;

    auto* effects = app.add_subcommand("effects", "ANOVA effect sizes per feature");
    effects->add_option("--matrix", matrix, "Feature matrix CSV")->required();
    effects->add_option("--out", out, "Output JSON")->required();
    effects->callback([&] { run = [&] { return cmd_effects(matrix, out); }; });

    auto* rank = app.add_subcommand("rank", "Rank or select features");
    rank->add_option("--matrix", matrix, "Feature matrix CSV")->required();
    rank->add_option("--method", method, "omega, cfs, relieff or svm")->required();
    rank->add_option("--top", top, "Keep the first K entries (0 = all)");
    rank->add_option("--seed", seed, "Seed for svm");
    rank->add_option("--out", out, "Output JSON (default stdout)");
    rank->callback([&] { run = [&] { return cmd_rank(matrix, method, top, seed, out); }; });

    auto* train = app.add_subcommand("train", "Train a classifier on a matrix");
    train->add_option("--matrix", matrix, "Feature matrix CSV")->required();
    train->add_option("--algo", algo, "logreg, tree, forest, bagging, adaboost or mlp")->required();
    train->add_option("--seed", seed, "Seed");
    train->add_option("--out", out, "Output classifier JSON")->required();
    train->add_option("--params", params, "JSON file of training parameters");
    train->callback([&] { run = [&] { return cmd_train(matrix, algo, seed, out, params); }; });

    auto* xval = app.add_subcommand("xval", "Stratified cross-validation");
    xval->add_option("--matrix", matrix, "Feature matrix CSV")->required();
    xval->add_option("--algo", algo, "logreg, tree, forest, bagging, adaboost or mlp")->required();
    xval->add_option("--folds", folds, "Number of folds");
    xval->add_option("--seed", seed, "Seed");
    xval->add_option("--report", report, "Output JSON")->required();
    xval->add_option("--params", params, "JSON file of training parameters");
    xval->callback([&] { run = [&] { return cmd_xval(matrix, algo, folds, seed, report, params); }; });

    auto* classify = app.add_subcommand("classify", "Predict the level of texts");
    classify->add_option("--model", model_path, "Classifier JSON from 'train'")->required();
    classify->add_option("--text", texts, "Text files")->required();
    classify->add_option("--resources", resources, "Resource directory (default: the one used for training)");
    classify->add_option("--out", out, "Output JSON (default stdout)");
    classify->callback([&] { run = [&] { return cmd_classify(model_path, texts, resources, out); }; });

    auto* synth = app.add_subcommand("synth", "Generate a synthetic three-level corpus and resources");
    synth->add_option("--seed", seed, "Seed");
    synth->add_option("--per-level", per_level, "Documents per level");
    synth->add_option("--out", out, "Output directory")->required();
    synth->callback([&] { run = [&] { return cmd_synth(seed, per_level, out); }; });

    auto* experiment = app.add_subcommand("experiment", "Run an experiment grid from a JSON spec");
    experiment->add_option("--spec", spec, "Experiment spec JSON")->required();
    experiment->callback([&] { run = [&] { return cmd_experiment(spec); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    try {
        code = run();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return code;
}
