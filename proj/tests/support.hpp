#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "textlevel/document.hpp"
#include "textlevel/resources.hpp"
#include "textlevel/util/strings.hpp"

namespace testsupport {

namespace fs = std::filesystem;

class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = fs::temp_directory_path() /
                ("textlevel-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const { return path_; }
    std::string str() const { return path_.string(); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

    void write(const std::string& name, const std::string& content) const {
        const auto p = path_ / name;
        fs::create_directories(p.parent_path());
        textlevel::str::write_file(p.string(), content);
    }

private:
    fs::path path_;
};

inline std::string fixture_path(const std::string& name) { return std::string(TEXTLEVEL_FIXTURES) + "/" + name; }

// Small but complete resource directory. Individual files can be replaced
// through `overrides` (file name -> content); a value of "" drops the file.
inline void write_small_resources(const TempDir& dir, const std::map<std::string, std::string>& overrides = {},
                                  bool with_embeddings = true) {
    std::map<std::string, std::string> files = {
        {"cmudict.txt",
         ";;; tiny lexicon\n"
         "CAT  K AE1 T\n"
         "BEAUTIFUL  B Y UW1 T AH0 F AH0 L\n"
         "THE  DH AH0\n"
         "THE(1)  DH IY0\n"
         "SLEEPS  S L IY1 P S\n"
         "DOG  D AO1 G\n"},
        {"frequency.csv",
         "rank,word,frequency\n"
         "1,the,1000000\n2,be,800000\n3,cat,5000\n4,dog,4000\n5,sleep,2000\n6,run,1000\n"},
        {"stopwords.txt", "# stopwords\nthe\na\nis\nof\n"},
        {"frequent_verbs.txt", "be\nhave\ngo\nrun\n"},
        {"spache.txt", "the\ncat\n"},
        {"dale_chall.txt", "the\ncat\ndog\n"},
        {"connectors.txt", "however\nhence\nin addition\nbut\n"},
        {"argumentative.txt", "hence\n"},
        {"prefixes.txt", "pre\nanti\ncon\n"},
        {"suffixes.txt", "ic\nal\ntion\n"},
        {"psych.csv",
         "word,kfwf,kfncat,kfns,tl_freq,brown_freq,fam,conc,imag,meanc,meanp,aoa\n"
         "cat,23,2,4,500,10,550,600,400,500,6.1,250\n"
         "dog,75,3,6,700,12,560,610,600,,6.2,\n"},
        {"vectors.txt", "2 2\ncat 1 0\ndog 0 1\n"},
    };
    for (const auto& [k, v] : overrides) files[k] = v;
    std::string manifest = "{\"resources\": {\n"
                           "  \"pronunciation\": {\"file\": \"cmudict.txt\", \"format\": \"cmudict\"},\n"
                           "  \"frequency\": {\"file\": \"frequency.csv\", \"format\": \"rank-csv\"},\n"
                           "  \"stopwords\": {\"file\": \"stopwords.txt\"},\n"
                           "  \"frequent_verbs\": {\"file\": \"frequent_verbs.txt\"},\n"
                           "  \"spache_familiar\": {\"file\": \"spache.txt\"},\n"
                           "  \"dale_chall_familiar\": {\"file\": \"dale_chall.txt\"},\n"
                           "  \"discourse_connectors\": {\"file\": \"connectors.txt\"},\n"
                           "  \"argumentative_connectors\": {\"file\": \"argumentative.txt\"},\n"
                           "  \"prefixes\": {\"file\": \"prefixes.txt\"},\n"
                           "  \"suffixes\": {\"file\": \"suffixes.txt\"},\n"
                           "  \"psych\": {\"file\": \"psych.csv\", \"format\": \"mrc-csv\"}";
    if (with_embeddings) manifest += ",\n  \"embeddings\": {\"file\": \"vectors.txt\"}";
    manifest += "\n}}\n";
    for (const auto& [k, v] : files)
        if (!v.empty()) dir.write(k, v);
    dir.write("manifest.json", manifest);
}

inline textlevel::ResourceBundle small_bundle(bool with_embeddings = true) {
    TempDir dir;
    write_small_resources(dir, {}, with_embeddings);
    return textlevel::load_resources(dir.str());
}

// "word/TAG word/TAG ..." lines into tagged sentences.
inline std::vector<textlevel::TaggedSentence> parse_tagged_lines(const std::string& text) {
    std::vector<textlevel::TaggedSentence> out;
    for (const auto& line : textlevel::str::lines(text)) {
        auto trimmed = textlevel::str::trim(line);
        if (trimmed.empty() || trimmed.front() == '#') continue;
        textlevel::TaggedSentence ts;
        for (const auto& item : textlevel::str::split_ws(trimmed)) {
            const auto slash = item.rfind('/');
            ts.words.push_back(item.substr(0, slash));
            ts.tags.push_back(item.substr(slash + 1));
        }
        out.push_back(std::move(ts));
    }
    return out;
}

// Document from pre-tagged lines, one sentence per line.
inline textlevel::AnalyzedDoc tagged_doc(const std::string& text, const textlevel::ResourceBundle& bundle) {
    textlevel::AnalyzedDoc doc;
    for (const auto& ts : parse_tagged_lines(text)) {
        std::vector<textlevel::Token> toks;
        for (const auto& w : ts.words) toks.push_back(textlevel::make_token(w, bundle));
        std::string raw;
        for (const auto& w : ts.words) raw += (raw.empty() ? "" : " ") + w;
        doc.sentences.push_back(
            textlevel::finish_sentence(raw, std::move(toks), ts.tags, textlevel::TaggedSentence::Source::ingested));
    }
    return doc;
}

}  // namespace testsupport
