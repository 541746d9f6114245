#include "topicgraph/retrieval.hpp"

#include <algorithm>
#include <charconv>

#include "topicgraph/errors.hpp"
#include "topicgraph/simd/kernels.hpp"

namespace topicgraph {

NodeRef resolve_node(const TopicModel& model, std::string_view node_id)
{
    if (node_id.starts_with("w:")) {
        const auto term = node_id.substr(2);
        const auto id = model.vocabulary.find(term);
        if (!id) throw UnknownTermError(std::string(term));
        return {NodeRef::Kind::term, *id};
    }
    if (node_id.starts_with("T") && node_id.size() > 1) {
        std::uint32_t k = 0;
        const auto* first = node_id.data() + 1;
        const auto* last = node_id.data() + node_id.size();
        const auto [ptr, ec] = std::from_chars(first, last, k);
        if (ec == std::errc{} && ptr == last && k < model.num_topics()) {
            return {NodeRef::Kind::topic, k};
        }
        throw UnknownTopicError(std::string(node_id));
    }
    throw UnknownTermError(std::string(node_id));
}

double score_topic(const TopicModel& model, std::string_view doc_id, TopicId topic)
{
    const auto it = std::find(model.doc_ids.begin(), model.doc_ids.end(), doc_id);
    if (it == model.doc_ids.end()) throw UnknownDocumentError(std::string(doc_id));
    if (topic >= model.num_topics()) throw UnknownTopicError("T" + std::to_string(topic));
    return model.theta(static_cast<std::size_t>(it - model.doc_ids.begin()), topic);
}

double score_term(const TokenizedCorpus& corpus, std::string_view doc_id, TermId term)
{
    if (term >= corpus.vocabulary.size()) throw UnknownTermError("#" + std::to_string(term));
    const auto it = std::find_if(corpus.documents.begin(), corpus.documents.end(),
                                 [&](const TokenizedDocument& d) { return d.id == doc_id; });
    if (it == corpus.documents.end()) throw UnknownDocumentError(std::string(doc_id));
    const auto total = corpus.vocabulary.corpus_frequency()[term];
    if (total == 0) return 0.0;
    const auto here = std::count(it->tokens.begin(), it->tokens.end(), term);
    return static_cast<double>(here) / static_cast<double>(total);
}

RetrievalIndex::RetrievalIndex(const TopicModel& model, const TokenizedCorpus& corpus,
                               std::span<const RawDocument> raw)
    : model_(&model)
{
    if (corpus.vocabulary.terms() != model.vocabulary.terms()) {
        throw ConfigError("corpus vocabulary does not match the model vocabulary");
    }
    if (corpus.documents.size() != model.num_docs()) {
        throw ConfigError("corpus document count does not match the model");
    }
    std::unordered_map<std::string_view, std::string_view> title_of;
    for (const auto& doc : raw) title_of.emplace(doc.id, doc.title);

    const std::size_t D = corpus.documents.size();
    const std::size_t K = model.num_topics();
    doc_ids_.reserve(D);
    titles_.reserve(D);
    for (std::size_t d = 0; d < D; ++d) {
        const auto& doc = corpus.documents[d];
        if (doc.id != model.doc_ids[d]) {
            throw ConfigError("corpus document " + doc.id + " does not match the model");
        }
        doc_ids_.push_back(doc.id);
        const auto t = title_of.find(doc.id);
        titles_.emplace_back(t != title_of.end() ? t->second : std::string_view(doc.id));
        doc_index_.emplace(doc.id, d);
    }

    theta_by_topic_ = Matrix(K, D);
    for (std::size_t d = 0; d < D; ++d) {
        for (std::size_t k = 0; k < K; ++k) theta_by_topic_(k, d) = model.theta(d, k);
    }

    const std::size_t V = corpus.vocabulary.size();
    postings_.resize(V);
    term_totals_.assign(V, 0);
    std::vector<std::uint32_t> counts(V, 0);
    for (std::size_t d = 0; d < D; ++d) {
        const auto& tokens = corpus.documents[d].tokens;
        for (TermId w : tokens) ++counts[w];
        for (TermId w : tokens) {
            if (counts[w] == 0) continue;
            postings_[w].push_back({static_cast<std::uint32_t>(d), counts[w]});
            term_totals_[w] += counts[w];
            counts[w] = 0;
        }
    }
}

std::optional<std::size_t> RetrievalIndex::find_document(std::string_view doc_id) const
{
    const auto it = doc_index_.find(std::string(doc_id));
    if (it == doc_index_.end()) return std::nullopt;
    return it->second;
}

double RetrievalIndex::score_topic(std::size_t doc, TopicId topic) const
{
    if (doc >= num_docs()) throw UnknownDocumentError("#" + std::to_string(doc));
    if (topic >= model_->num_topics()) throw UnknownTopicError("T" + std::to_string(topic));
    return theta_by_topic_(topic, doc);
}

double RetrievalIndex::score_term(std::size_t doc, TermId term) const
{
    if (doc >= num_docs()) throw UnknownDocumentError("#" + std::to_string(doc));
    if (term >= postings_.size()) throw UnknownTermError("#" + std::to_string(term));
    const auto& list = postings_[term];
    const auto it = std::lower_bound(list.begin(), list.end(), doc,
                                     [](const Posting& p, std::size_t d) { return p.doc < d; });
    if (it == list.end() || it->doc != doc) return 0.0;
    return static_cast<double>(it->count) / static_cast<double>(term_totals_[term]);
}

RankedDocuments RetrievalIndex::rank(const SelectionQuery& query) const
{
    if (query.selected.empty()) throw EmptySelectionError();
    if (query.limit < 1) throw InvalidQueryError("limit must be >= 1");

    std::vector<NodeRef> nodes;
    nodes.reserve(query.selected.size());
    for (const auto& id : query.selected) nodes.push_back(resolve_node(*model_, id));
    // Canonical factor order keeps the floating-point product independent of
    // the order in which nodes were selected.
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    const auto& kernels = simd::active_kernels();
    const std::size_t D = num_docs();
    std::vector<double> scores(D, 1.0);
    std::vector<double> factor(D);
    for (const auto& node : nodes) {
        if (node.kind == NodeRef::Kind::topic) {
            kernels.multiply(scores.data(), theta_by_topic_.row(node.index).data(), D);
        } else {
            std::fill(factor.begin(), factor.end(), 0.0);
            const auto total = static_cast<double>(term_totals_[node.index]);
            for (const auto& p : postings_[node.index]) {
                factor[p.doc] = static_cast<double>(p.count) / total;
            }
            kernels.multiply(scores.data(), factor.data(), D);
        }
    }

    std::vector<std::size_t> matching;
    for (std::size_t d = 0; d < D; ++d) {
        if (scores[d] > 0.0) matching.push_back(d);
    }
    const auto before = [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return doc_ids_[a] < doc_ids_[b];
    };
    const std::size_t keep = std::min(query.limit, matching.size());
    std::partial_sort(matching.begin(), matching.begin() + static_cast<std::ptrdiff_t>(keep),
                      matching.end(), before);

    RankedDocuments out;
    out.total_matching = matching.size();
    out.documents.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        const auto d = matching[i];
        out.documents.push_back({doc_ids_[d], titles_[d], scores[d]});
    }
    return out;
}

RankedDocuments rank(const TopicModel& model, const TokenizedCorpus& corpus,
                     const SelectionQuery& query, std::span<const RawDocument> raw)
{
    return RetrievalIndex(model, corpus, raw).rank(query);
}

}  // namespace topicgraph
