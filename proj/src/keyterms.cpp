#include "topicgraph/keyterms.hpp"

#include <algorithm>
#include <numeric>

#include "topicgraph/errors.hpp"

namespace topicgraph {

namespace {

bool by_score_then_id(const Keyterm& a, const Keyterm& b)
{
    if (a.score != b.score) return a.score > b.score;
    return a.term < b.term;
}

double unchecked_score(const TopicModel& model, std::size_t k, std::size_t w)
{
    const double marginal = model.term_marginal[w];
    if (marginal <= 0.0) return 0.0;
    const double s = model.phi(k, w) * model.prevalence[k] / marginal;
    return std::min(s, 1.0);
}

// Candidate pool for one topic: top-N eligible terms by phi, then every
// candidate scoring at least the threshold, best first.
std::vector<Keyterm> candidates_above_threshold(const TopicModel& model, std::size_t k,
                                                const KeytermPolicy& policy,
                                                const std::vector<TermId>& eligible)
{
    std::vector<TermId> pool = eligible;
    const auto phi_row = model.phi.row(k);
    const std::size_t n = std::min(policy.candidate_pool_size, pool.size());
    std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n), pool.end(),
                      [&](TermId a, TermId b) {
                          if (phi_row[a] != phi_row[b]) return phi_row[a] > phi_row[b];
                          return a < b;
                      });
    pool.resize(n);

    std::vector<Keyterm> kept;
    for (TermId w : pool) {
        const double s = unchecked_score(model, k, w);
        if (s > 0.0 && s >= policy.score_threshold) kept.push_back({w, s});
    }
    std::sort(kept.begin(), kept.end(), by_score_then_id);
    return kept;
}

}  // namespace

void KeytermPolicy::validate() const
{
    if (candidate_pool_size < 1) throw ConfigError("candidate_pool_size must be >= 1");
    if (max_per_topic < 1) throw ConfigError("max_per_topic must be >= 1");
    if (candidate_pool_size < max_per_topic) {
        throw ConfigError("candidate_pool_size must be >= max_per_topic");
    }
    // 1.0 is accepted so a policy can deliberately select nothing.
    if (!(score_threshold >= 0.0 && score_threshold <= 1.0)) {
        throw ConfigError("score_threshold must be in [0, 1]");
    }
    if (min_corpus_frequency < 1) throw ConfigError("min_corpus_frequency must be >= 1");
}

bool KeytermTable::is_shared(TermId term) const
{
    return std::binary_search(shared_terms.begin(), shared_terms.end(), term);
}

double keyterm_score(const TopicModel& model, TopicId topic, TermId term)
{
    if (topic >= model.num_topics()) throw UnknownTopicError("T" + std::to_string(topic));
    if (term >= model.num_terms()) throw UnknownTermError("#" + std::to_string(term));
    return unchecked_score(model, topic, term);
}

double keyterm_score(const TopicModel& model, TopicId topic, std::string_view term)
{
    return keyterm_score(model, topic, model.vocabulary.id_of(term));
}

KeytermTable select_keyterms(const TopicModel& model, const KeytermPolicy& policy)
{
    policy.validate();
    const std::size_t K = model.num_topics();
    const std::size_t V = model.num_terms();

    std::vector<TermId> eligible;
    const auto& cf = model.vocabulary.corpus_frequency();
    for (std::size_t w = 0; w < V; ++w) {
        if (cf[w] >= policy.min_corpus_frequency) eligible.push_back(static_cast<TermId>(w));
    }

    KeytermTable table;
    table.topics.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        table.topics[k] = candidates_above_threshold(model, k, policy, eligible);
    }

    if (policy.prioritize_shared) {
        std::vector<std::uint32_t> occurrences(V, 0);
        for (const auto& list : table.topics) {
            for (const auto& kt : list) ++occurrences[kt.term];
        }
        for (auto& list : table.topics) {
            std::stable_partition(list.begin(), list.end(),
                                  [&](const Keyterm& kt) { return occurrences[kt.term] >= 2; });
        }
    }

    std::vector<std::uint32_t> listed(V, 0);
    for (auto& list : table.topics) {
        if (list.size() > policy.max_per_topic) list.resize(policy.max_per_topic);
        for (const auto& kt : list) ++listed[kt.term];
    }
    for (std::size_t w = 0; w < V; ++w) {
        if (listed[w] >= 2) table.shared_terms.push_back(static_cast<TermId>(w));
    }
    return table;
}

}  // namespace topicgraph
