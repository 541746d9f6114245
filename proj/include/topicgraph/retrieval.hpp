#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "topicgraph/corpus.hpp"
#include "topicgraph/lda.hpp"

namespace topicgraph {

struct NodeRef {
    enum class Kind { topic, term };
    Kind kind;
    std::uint32_t index;  // topic id or term id

    auto operator<=>(const NodeRef&) const = default;
};

/// Resolves "T<k>" or "w:<term>". Throws UnknownTopicError / UnknownTermError.
NodeRef resolve_node(const TopicModel& model, std::string_view node_id);

struct SelectionQuery {
    std::vector<std::string> selected;
    std::size_t limit = 50;
};

struct RankedDocument {
    std::string id;
    std::string title;
    double score;

    bool operator==(const RankedDocument&) const = default;
};

struct RankedDocuments {
    std::vector<RankedDocument> documents;
    std::size_t total_matching = 0;

    bool operator==(const RankedDocuments&) const = default;
};

/// theta[d, k]. Throws UnknownDocumentError / UnknownTopicError.
double score_topic(const TopicModel& model, std::string_view doc_id, TopicId topic);

/// c(w, d) / c(w, .), the share of the term's corpus occurrences lying in d.
/// Throws UnknownDocumentError / UnknownTermError.
double score_term(const TokenizedCorpus& corpus, std::string_view doc_id, TermId term);

/// Read-only query structure over a trained model and the corpus it was trained on.
class RetrievalIndex {
public:
    /// `raw` supplies titles by document id; missing titles fall back to the id.
    /// Throws ConfigError when the corpus does not match the model.
    RetrievalIndex(const TopicModel& model, const TokenizedCorpus& corpus,
                   std::span<const RawDocument> raw = {});

    std::size_t num_docs() const noexcept { return doc_ids_.size(); }
    std::optional<std::size_t> find_document(std::string_view doc_id) const;

    double score_topic(std::size_t doc, TopicId topic) const;
    double score_term(std::size_t doc, TermId term) const;

    /// Product of per-node scores; zero-score documents are excluded.
    /// Throws EmptySelectionError, InvalidQueryError and the resolve_node errors.
    RankedDocuments rank(const SelectionQuery& query) const;

private:
    struct Posting {
        std::uint32_t doc;
        std::uint32_t count;
    };

    const TopicModel* model_;
    std::vector<std::string> doc_ids_;
    std::vector<std::string> titles_;
    std::unordered_map<std::string, std::size_t> doc_index_;
    Matrix theta_by_topic_;                      // K x D
    std::vector<std::vector<Posting>> postings_;  // per term, ascending doc
    std::vector<std::uint64_t> term_totals_;
};

/// Convenience form building a temporary index.
RankedDocuments rank(const TopicModel& model, const TokenizedCorpus& corpus,
                     const SelectionQuery& query, std::span<const RawDocument> raw = {});

}  // namespace topicgraph
