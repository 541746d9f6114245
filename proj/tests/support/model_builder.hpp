#pragma once

// Hand-specified TopicModels for tests that need exact distributions.

#include <string>
#include <vector>

#include "planted.hpp"
#include "topicgraph/lda.hpp"

namespace testing_models {

/// Model with the given phi rows (K x V) and prevalence; every term gets
/// corpus frequency `cf`. theta is uniform over `num_docs` documents.
inline topicgraph::TopicModel from_phi(const std::vector<std::vector<double>>& phi,
                                       const std::vector<double>& prevalence,
                                       std::uint64_t cf = 100, std::size_t num_docs = 1)
{
    using namespace topicgraph;
    const std::size_t K = phi.size();
    const std::size_t V = phi.front().size();
    TopicModel m;
    m.config.num_topics = K;
    std::vector<std::string> terms;
    for (std::size_t v = 0; v < V; ++v) terms.push_back(planted::term_name(v));
    m.vocabulary = Vocabulary(terms, std::vector<std::uint32_t>(V, 1), std::vector<std::uint64_t>(V, cf));
    m.phi = Matrix(K, V);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t v = 0; v < V; ++v) m.phi(k, v) = phi[k][v];
    m.prevalence = prevalence;
    m.theta = Matrix(num_docs, K, 1.0 / static_cast<double>(K));
    for (std::size_t d = 0; d < num_docs; ++d) {
        m.doc_ids.push_back(planted::doc_name(d));
        m.doc_lengths.push_back(1);
    }
    recompute_term_marginal(m);
    return m;
}

}  // namespace testing_models
