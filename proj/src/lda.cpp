#include "topicgraph/lda.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "topicgraph/errors.hpp"

namespace topicgraph {

namespace {

// Sum of lgamma(n + prior) over a multiset of counts, evaluated through the
// count histogram so the result does not depend on the order of the counts.
double lgamma_sum(std::span<const std::int32_t> counts, double prior)
{
    std::map<std::int32_t, std::uint64_t> histogram;
    for (auto c : counts) ++histogram[c];
    double sum = 0.0;
    for (const auto& [value, times] : histogram) {
        sum += static_cast<double>(times) * std::lgamma(static_cast<double>(value) + prior);
    }
    return sum;
}

}  // namespace

void LdaConfig::validate() const
{
    if (num_topics < 2) throw ConfigError("num_topics must be >= 2");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be positive");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ConfigError("beta must be positive");
    if (iterations < 1) throw ConfigError("iterations must be >= 1");
    if (burn_in >= iterations) throw ConfigError("burn_in must be smaller than iterations");
}

GibbsState GibbsState::from_assignments(const TokenizedCorpus& corpus, std::size_t num_topics,
                                        std::vector<std::int32_t> assignments)
{
    GibbsState state;
    state.num_topics = num_topics;
    state.num_terms = corpus.vocabulary.size();
    const std::size_t num_docs = corpus.documents.size();
    state.doc_offsets.reserve(num_docs + 1);
    state.doc_offsets.push_back(0);
    for (const auto& doc : corpus.documents) {
        state.doc_offsets.push_back(state.doc_offsets.back() + doc.tokens.size());
    }
    if (assignments.size() != state.doc_offsets.back()) {
        throw std::invalid_argument("assignment count does not match corpus token count");
    }
    state.assignments = std::move(assignments);
    state.doc_topic.assign(num_docs * num_topics, 0);
    state.word_topic.assign(state.num_terms * num_topics, 0);
    state.topic_total.assign(num_topics, 0);
    state.doc_length.assign(num_docs, 0);

    for (std::size_t d = 0; d < num_docs; ++d) {
        const auto& tokens = corpus.documents[d].tokens;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            const auto k = state.assignments[state.doc_offsets[d] + i];
            if (k < 0 || static_cast<std::size_t>(k) >= num_topics) {
                throw std::invalid_argument("topic assignment out of range");
            }
            ++state.doc_topic[d * num_topics + k];
            ++state.word_topic[tokens[i] * num_topics + k];
            ++state.topic_total[k];
        }
        state.doc_length[d] = static_cast<std::int32_t>(tokens.size());
    }
    return state;
}

GibbsState GibbsState::random(const TokenizedCorpus& corpus, std::size_t num_topics, Rng& rng)
{
    std::vector<std::int32_t> z;
    z.reserve(corpus.total_tokens);
    for (const auto& doc : corpus.documents) {
        for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
            z.push_back(static_cast<std::int32_t>(rng.below(num_topics)));
        }
    }
    return from_assignments(corpus, num_topics, std::move(z));
}

std::optional<std::string> GibbsState::check_invariants(const TokenizedCorpus& corpus) const
{
    const std::size_t K = num_topics;
    const std::size_t D = num_docs();
    if (D != corpus.documents.size()) return "document count mismatch";

    std::int64_t grand_total = 0;
    for (std::size_t k = 0; k < K; ++k) {
        if (topic_total[k] < 0) return "negative topic total for topic " + std::to_string(k);
        grand_total += topic_total[k];
    }
    if (static_cast<std::uint64_t>(grand_total) != corpus.total_tokens) {
        return "topic totals do not sum to total_tokens";
    }

    for (std::size_t d = 0; d < D; ++d) {
        std::int64_t row = 0;
        for (std::size_t k = 0; k < K; ++k) {
            if (n_dk(d, k) < 0) return "negative doc-topic count in document " + std::to_string(d);
            row += n_dk(d, k);
        }
        if (row != doc_length[d]) return "doc-topic row does not sum to n_d for document " + std::to_string(d);
        if (static_cast<std::size_t>(doc_length[d]) != corpus.documents[d].tokens.size()) {
            return "n_d differs from document length for document " + std::to_string(d);
        }
    }

    std::vector<std::int64_t> column(K, 0);
    for (std::size_t w = 0; w < num_terms; ++w) {
        for (std::size_t k = 0; k < K; ++k) {
            const auto c = word_topic[w * K + k];
            if (c < 0) return "negative topic-term count for term " + std::to_string(w);
            column[k] += c;
        }
    }
    for (std::size_t k = 0; k < K; ++k) {
        if (column[k] != topic_total[k]) return "topic-term row does not sum to n_k for topic " + std::to_string(k);
    }

    // The counts must also agree with the assignments themselves.
    const auto rebuilt = from_assignments(corpus, K, assignments);
    if (rebuilt.doc_topic != doc_topic || rebuilt.word_topic != word_topic
        || rebuilt.topic_total != topic_total) {
        return "counts disagree with token assignments";
    }
    return std::nullopt;
}

std::size_t sample_from_weights(std::span<double> weights, double u)
{
    double cumulative = 0.0;
    for (auto& w : weights) {
        cumulative += w;
        w = cumulative;
    }
    const double target = u * cumulative;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        if (target < weights[k]) return k;
    }
    return weights.size() - 1;
}

void gibbs_sweep(GibbsState& state, const TokenizedCorpus& corpus, const LdaConfig& config,
                 Rng& rng, const simd::KernelTable& kernels)
{
    const std::size_t K = state.num_topics;
    const double v_beta = static_cast<double>(state.num_terms) * config.beta;
    std::vector<double> weights(K);

    for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
        const auto& tokens = corpus.documents[d].tokens;
        std::int32_t* doc_row = state.doc_topic.data() + d * K;
        std::int32_t* z = state.assignments.data() + state.doc_offsets[d];
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            std::int32_t* word_row = state.word_topic.data() + tokens[i] * K;
            const auto old_topic = z[i];
            --doc_row[old_topic];
            --word_row[old_topic];
            --state.topic_total[old_topic];

            kernels.topic_weights(doc_row, word_row, state.topic_total.data(), K, config.alpha,
                                  config.beta, v_beta, weights.data());
            const auto new_topic = static_cast<std::int32_t>(sample_from_weights(weights, rng.uniform()));

            ++doc_row[new_topic];
            ++word_row[new_topic];
            ++state.topic_total[new_topic];
            z[i] = new_topic;
        }
    }
}

double log_likelihood(const GibbsState& state, const LdaConfig& config)
{
    const auto K = static_cast<double>(state.num_topics);
    const auto V = static_cast<double>(state.num_terms);
    const auto D = static_cast<double>(state.num_docs());
    const double alpha = config.alpha;
    const double beta = config.beta;

    // log p(w | z)
    double ll = K * (std::lgamma(V * beta) - V * std::lgamma(beta));
    ll += lgamma_sum(state.word_topic, beta);
    ll -= lgamma_sum(state.topic_total, V * beta);

    // log p(z)
    ll += D * (std::lgamma(K * alpha) - K * std::lgamma(alpha));
    ll += lgamma_sum(state.doc_topic, alpha);
    ll -= lgamma_sum(state.doc_length, K * alpha);
    return ll;
}

void recompute_term_marginal(TopicModel& model, const simd::KernelTable& kernels)
{
    const std::size_t V = model.phi.cols;
    model.term_marginal.assign(V, 0.0);
    for (std::size_t k = 0; k < model.phi.rows; ++k) {
        kernels.axpy(model.prevalence[k], model.phi.row(k).data(), V, model.term_marginal.data());
    }
}

void estimate_distributions(TopicModel& model, const simd::KernelTable& kernels)
{
    const std::size_t K = model.topic_counts.size();
    const std::size_t V = model.topic_term_counts.cols;
    const std::size_t D = model.doc_topic_counts.rows;
    const double alpha = model.config.alpha;
    const double beta = model.config.beta;

    model.phi = Matrix(K, V);
    for (std::size_t k = 0; k < K; ++k) {
        const double denom = model.topic_counts[k] + static_cast<double>(V) * beta;
        kernels.smooth_normalize(model.topic_term_counts.row(k).data(), V, beta, denom,
                                 model.phi.row(k).data());
    }

    model.theta = Matrix(D, K);
    for (std::size_t d = 0; d < D; ++d) {
        const double denom = static_cast<double>(model.doc_lengths[d]) + static_cast<double>(K) * alpha;
        kernels.smooth_normalize(model.doc_topic_counts.row(d).data(), K, alpha, denom,
                                 model.theta.row(d).data());
    }

    model.prevalence.resize(K);
    const auto total = static_cast<double>(model.total_tokens);
    for (std::size_t k = 0; k < K; ++k) model.prevalence[k] = model.topic_counts[k] / total;

    recompute_term_marginal(model, kernels);
}

TopicModel train(const TokenizedCorpus& corpus, const LdaConfig& config, const TrainOptions& options)
{
    config.validate();
    if (corpus.documents.empty() || corpus.total_tokens == 0) {
        throw EmptyCorpusError("cannot train on an empty corpus");
    }
    const auto& kernels = options.kernels ? *options.kernels : simd::active_kernels();

    const std::size_t K = config.num_topics;
    const std::size_t V = corpus.vocabulary.size();
    const std::size_t D = corpus.documents.size();

    Rng rng(config.seed);
    auto state = GibbsState::random(corpus, K, rng);

    std::vector<double> acc_word_topic(V * K, 0.0);
    std::vector<double> acc_doc_topic(D * K, 0.0);
    std::vector<double> acc_topic(K, 0.0);

    for (std::size_t sweep = 1; sweep <= config.iterations; ++sweep) {
        gibbs_sweep(state, corpus, config, rng, kernels);

        if (options.check_invariants) {
            if (auto violation = state.check_invariants(corpus)) {
                throw std::logic_error("sampler invariant violated after sweep "
                                       + std::to_string(sweep) + ": " + *violation);
            }
        }
        if (sweep > config.burn_in) {
            kernels.accumulate(acc_word_topic.data(), state.word_topic.data(), V * K);
            kernels.accumulate(acc_doc_topic.data(), state.doc_topic.data(), D * K);
            kernels.accumulate(acc_topic.data(), state.topic_total.data(), K);
        }
        if (options.progress) {
            TrainProgress progress{sweep, config.iterations, std::nullopt};
            if (options.log_likelihood_interval != 0 && sweep % options.log_likelihood_interval == 0) {
                progress.log_likelihood = log_likelihood(state, config);
            }
            options.progress(progress);
        }
    }

    TopicModel model;
    model.config = config;
    model.vocabulary = corpus.vocabulary;
    model.total_tokens = corpus.total_tokens;
    model.snapshots = config.iterations - config.burn_in;
    model.doc_ids.reserve(D);
    model.doc_lengths.reserve(D);
    for (const auto& doc : corpus.documents) {
        model.doc_ids.push_back(doc.id);
        model.doc_lengths.push_back(static_cast<std::uint32_t>(doc.tokens.size()));
    }

    const auto snapshots = static_cast<double>(model.snapshots);
    model.topic_term_counts = Matrix(K, V);
    for (std::size_t w = 0; w < V; ++w) {
        for (std::size_t k = 0; k < K; ++k) {
            model.topic_term_counts(k, w) = acc_word_topic[w * K + k] / snapshots;
        }
    }
    model.doc_topic_counts = Matrix(D, K);
    for (std::size_t i = 0; i < D * K; ++i) model.doc_topic_counts.data[i] = acc_doc_topic[i] / snapshots;
    model.topic_counts.resize(K);
    for (std::size_t k = 0; k < K; ++k) model.topic_counts[k] = acc_topic[k] / snapshots;

    estimate_distributions(model, kernels);
    return model;
}

}  // namespace topicgraph
