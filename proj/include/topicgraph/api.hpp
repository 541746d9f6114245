#pragma once

#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "topicgraph/config.hpp"
#include "topicgraph/corpus.hpp"
#include "topicgraph/graph.hpp"
#include "topicgraph/keyterms.hpp"
#include "topicgraph/lda.hpp"
#include "topicgraph/retrieval.hpp"

namespace topicgraph {

struct HttpResponse {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;

    bool operator==(const HttpResponse&) const = default;
};

/// Body serializers shared by the endpoints and by anyone reproducing them.
std::string ranked_documents_json(const RankedDocuments& ranked);
std::string topic_keyterms_json(const TopicModel& model, const KeytermTable& table, TopicId topic);
std::string document_json(const RawDocument& doc);
std::string error_json(std::string_view code, std::string_view detail);

/// Endpoint logic independent of the HTTP transport. Immutable after
/// construction; every handler is a pure function of the loaded state and
/// its arguments, safe to call from any number of threads.
class Api {
public:
    /// Throws ConfigError when the corpus does not match the model.
    Api(TopicModel model, TokenizedCorpus corpus, std::vector<RawDocument> documents,
        const KeytermPolicy& policy);

    HttpResponse graph() const;                          // GET /api/graph
    HttpResponse topic(std::string_view node_id) const;  // GET /api/topics/{id}
    /// GET /api/rank?nodes=...&limit=...
    HttpResponse rank(std::optional<std::string_view> nodes,
                      std::optional<std::string_view> limit) const;
    HttpResponse document(std::string_view doc_id) const;  // GET /api/document/{id}

    const TopicModel& model() const noexcept { return model_; }
    const TokenizedCorpus& corpus() const noexcept { return corpus_; }
    const std::vector<RawDocument>& documents() const noexcept { return documents_; }
    const KeytermTable& keyterms() const noexcept { return keyterms_; }
    const TopicGraph& topic_graph() const noexcept { return graph_; }
    const RetrievalIndex& index() const noexcept { return *index_; }

private:
    TopicModel model_;
    TokenizedCorpus corpus_;
    std::vector<RawDocument> documents_;
    std::unordered_map<std::string, std::size_t> document_index_;
    KeytermTable keyterms_;
    TopicGraph graph_;
    std::string graph_body_;
    std::unique_ptr<RetrievalIndex> index_;
};

/// ingest -> tokenize -> train -> persist. Writes per-100-sweep
/// log-likelihood lines to `log`.
TopicModel run_training(const AppConfig& config, std::ostream& log);

/// Loads the persisted model and re-reads the corpus it was trained on.
std::shared_ptr<const Api> load_api(const AppConfig& config);

/// Splits a comma-separated node list, dropping empty items.
std::vector<std::string> split_node_list(std::string_view nodes);

}  // namespace topicgraph
