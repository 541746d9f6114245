#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "topicgraph/corpus.hpp"
#include "topicgraph/keyterms.hpp"
#include "topicgraph/lda.hpp"
#include "topicgraph/model_io.hpp"

namespace topicgraph {

/// Everything the CLI and the service need. Parsed from a key-value file:
///
///     # comment
///     [corpus]
///     path = abstracts.jsonl
///     format = jsonl
///     [lda]
///     num_topics = 10
///
/// Keys may also be written fully qualified (`lda.num_topics = 10`) outside
/// any section. Relative paths resolve against the config file's directory.
/// See README.md for the full key list.
struct AppConfig {
    std::filesystem::path corpus_path;
    CorpusFormat corpus_format = CorpusFormat::jsonl;
    std::optional<std::filesystem::path> stopwords_path;
    PreprocessConfig preprocess;
    LdaConfig lda;
    KeytermPolicy keyterms;
    std::filesystem::path model_path = "model.json";
    ModelFormat model_format = ModelFormat::json;
    std::string host = "127.0.0.1";
    int port = 8080;
    std::optional<std::filesystem::path> static_dir;

    /// Validates every nested configuration. Throws ConfigError.
    void validate() const;
};

/// Throws ConfigError (unknown key, bad value; message carries the line) or
/// IoError (unreadable stopword file).
AppConfig parse_app_config(std::string_view text, const std::filesystem::path& base_dir);

AppConfig load_app_config(const std::filesystem::path& file);

}  // namespace topicgraph
