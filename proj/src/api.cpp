#include "topicgraph/api.hpp"

#include <charconv>

#include "topicgraph/errors.hpp"
#include "topicgraph/model_io.hpp"

namespace topicgraph {

using ordered_json = nlohmann::ordered_json;

namespace {

HttpResponse error_response(int status, const Error& e)
{
    return {status, "application/json", error_json(e.code(), e.what())};
}

}  // namespace

std::string ranked_documents_json(const RankedDocuments& ranked)
{
    ordered_json docs = ordered_json::array();
    for (const auto& d : ranked.documents) {
        docs.push_back({{"id", d.id}, {"title", d.title}, {"score", d.score}});
    }
    ordered_json out;
    out["documents"] = std::move(docs);
    out["total_matching"] = ranked.total_matching;
    return out.dump();
}

std::string topic_keyterms_json(const TopicModel& model, const KeytermTable& table, TopicId topic)
{
    if (topic >= model.num_topics()) throw UnknownTopicError("T" + std::to_string(topic));
    ordered_json keyterms = ordered_json::array();
    for (const auto& kt : table.topics.at(topic)) {
        const auto& term = model.vocabulary.term(kt.term);
        keyterms.push_back({{"id", term_node_id(term)}, {"term", term}, {"score", kt.score},
                            {"shared", table.is_shared(kt.term)}});
    }
    ordered_json out;
    out["id"] = topic_node_id(topic);
    out["prevalence"] = model.prevalence[topic];
    out["keyterms"] = std::move(keyterms);
    return out.dump();
}

std::string document_json(const RawDocument& doc)
{
    ordered_json out;
    out["id"] = doc.id;
    out["title"] = doc.title;
    out["date"] = doc.date ? ordered_json(*doc.date) : ordered_json(nullptr);
    out["body"] = doc.body;
    return out.dump();
}

std::string error_json(std::string_view code, std::string_view detail)
{
    ordered_json out;
    out["error"] = code;
    out["detail"] = detail;
    return out.dump();
}

std::vector<std::string> split_node_list(std::string_view nodes)
{
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= nodes.size()) {
        auto comma = nodes.find(',', pos);
        if (comma == std::string_view::npos) comma = nodes.size();
        const auto item = nodes.substr(pos, comma - pos);
        if (!item.empty()) out.emplace_back(item);
        pos = comma + 1;
    }
    return out;
}

Api::Api(TopicModel model, TokenizedCorpus corpus, std::vector<RawDocument> documents,
         const KeytermPolicy& policy)
    : model_(std::move(model)), corpus_(std::move(corpus)), documents_(std::move(documents))
{
    for (std::size_t i = 0; i < documents_.size(); ++i) document_index_.emplace(documents_[i].id, i);
    keyterms_ = select_keyterms(model_, policy);
    graph_ = build_graph(model_, keyterms_);
    graph_body_ = export_graph(graph_);
    index_ = std::make_unique<RetrievalIndex>(model_, corpus_, documents_);
}

HttpResponse Api::graph() const { return {200, "application/json", graph_body_}; }

HttpResponse Api::topic(std::string_view node_id) const
{
    try {
        const auto node = resolve_node(model_, node_id);
        if (node.kind != NodeRef::Kind::topic) throw UnknownTopicError(std::string(node_id));
        return {200, "application/json", topic_keyterms_json(model_, keyterms_, node.index)};
    } catch (const UnknownTermError&) {
        return error_response(404, UnknownTopicError(std::string(node_id)));
    } catch (const UnknownTopicError& e) {
        return error_response(404, e);
    }
}

HttpResponse Api::rank(std::optional<std::string_view> nodes, std::optional<std::string_view> limit) const
{
    SelectionQuery query;
    if (nodes) query.selected = split_node_list(*nodes);
    if (limit) {
        std::size_t n = 0;
        const auto [ptr, ec] = std::from_chars(limit->data(), limit->data() + limit->size(), n);
        if (ec != std::errc{} || ptr != limit->data() + limit->size() || n < 1) {
            return error_response(400, InvalidQueryError("limit must be a positive integer"));
        }
        query.limit = n;
    }
    try {
        return {200, "application/json", ranked_documents_json(index_->rank(query))};
    } catch (const Error& e) {
        return error_response(400, e);
    }
}

HttpResponse Api::document(std::string_view doc_id) const
{
    const auto it = document_index_.find(std::string(doc_id));
    if (it == document_index_.end()) {
        return error_response(404, UnknownDocumentError(std::string(doc_id)));
    }
    return {200, "application/json", document_json(documents_[it->second])};
}

TopicModel run_training(const AppConfig& config, std::ostream& log)
{
    config.validate();
    const auto docs = ingest(config.corpus_path, config.corpus_format);
    const auto corpus = tokenize(docs, config.preprocess);
    log << "corpus: " << corpus.documents.size() << " documents, " << corpus.vocabulary.size()
        << " terms, " << corpus.total_tokens << " tokens";
    if (!corpus.dropped.empty()) log << ", " << corpus.dropped.size() << " empty documents dropped";
    log << "\n";

    TrainOptions options;
    options.log_likelihood_interval = 100;
    options.progress = [&](const TrainProgress& p) {
        if (p.log_likelihood) {
            log << "sweep " << p.sweep << "/" << p.total_sweeps << " log-likelihood "
                << *p.log_likelihood << "\n";
        }
    };
    auto model = train(corpus, config.lda, options);
    save_model(model, config.model_path, config.model_format);
    log << "model written to " << config.model_path.string() << "\n";
    return model;
}

std::shared_ptr<const Api> load_api(const AppConfig& config)
{
    config.validate();
    auto model = load_model(config.model_path);
    auto docs = ingest(config.corpus_path, config.corpus_format);
    auto corpus = tokenize(docs, config.preprocess);
    return std::make_shared<const Api>(std::move(model), std::move(corpus), std::move(docs),
                                       config.keyterms);
}

}  // namespace topicgraph
