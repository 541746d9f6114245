#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace topicgraph {

using TermId = std::uint32_t;

struct RawDocument {
    std::string id;
    std::string title;
    std::string body;
    std::optional<std::string> date;

    bool operator==(const RawDocument&) const = default;
};

enum class CorpusFormat { jsonl, text_dir };

CorpusFormat parse_corpus_format(std::string_view name);
std::string_view corpus_format_name(CorpusFormat format) noexcept;

/// Reads documents in file order (text-dir: lexicographic relative path).
/// Throws IoError, FormatError or DuplicateIdError; a duplicate rejects the batch.
std::vector<RawDocument> ingest(const std::filesystem::path& path, CorpusFormat format);

/// Parses JSONL content already in memory. `source` names it in error messages.
std::vector<RawDocument> parse_jsonl(std::string_view content, std::string_view source = "input");

struct PreprocessConfig {
    std::unordered_set<std::string> stopwords;
    std::size_t min_term_length = 1;
    std::size_t min_doc_frequency = 3;
    double max_doc_fraction = 0.5;

    void validate() const;
};

/// UTF-8 text, normalized with the document tokenizer (lowercase letter runs).
std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path);

class Vocabulary {
public:
    Vocabulary() = default;
    /// `terms` must be unique; frequencies are parallel to it.
    Vocabulary(std::vector<std::string> terms, std::vector<std::uint32_t> doc_frequency,
               std::vector<std::uint64_t> corpus_frequency);

    std::size_t size() const noexcept { return terms_.size(); }
    const std::string& term(TermId id) const { return terms_.at(id); }
    std::optional<TermId> find(std::string_view term) const;
    /// Throws UnknownTermError.
    TermId id_of(std::string_view term) const;

    const std::vector<std::string>& terms() const noexcept { return terms_; }
    const std::vector<std::uint32_t>& doc_frequency() const noexcept { return doc_frequency_; }
    const std::vector<std::uint64_t>& corpus_frequency() const noexcept { return corpus_frequency_; }

    bool operator==(const Vocabulary& other) const {
        return terms_ == other.terms_ && doc_frequency_ == other.doc_frequency_
            && corpus_frequency_ == other.corpus_frequency_;
    }

private:
    struct Hash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const noexcept {
            return std::hash<std::string_view>{}(s);
        }
    };

    std::vector<std::string> terms_;
    std::vector<std::uint32_t> doc_frequency_;
    std::vector<std::uint64_t> corpus_frequency_;
    std::unordered_map<std::string, TermId, Hash, std::equal_to<>> index_;
};

struct TokenizedDocument {
    std::string id;
    std::vector<TermId> tokens;

    bool operator==(const TokenizedDocument&) const = default;
};

struct TokenizedCorpus {
    std::vector<TokenizedDocument> documents;
    Vocabulary vocabulary;
    std::uint64_t total_tokens = 0;
    /// Ids of input documents left with no tokens after preprocessing.
    std::vector<std::string> dropped;

    bool operator==(const TokenizedCorpus&) const = default;
};

/// Lowercased maximal runs of Unicode letters; anything else separates tokens.
std::vector<std::string> split_terms(std::string_view text);

/// Throws EmptyCorpusError when no document survives.
TokenizedCorpus tokenize(const std::vector<RawDocument>& docs, const PreprocessConfig& config);

/// Builds a corpus from already-numbered documents, recomputing frequencies.
/// Terms in `terms` that never occur are kept with zero frequency.
TokenizedCorpus make_corpus(std::vector<std::string> terms, std::vector<TokenizedDocument> docs);

}  // namespace topicgraph
