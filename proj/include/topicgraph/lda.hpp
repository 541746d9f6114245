#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "topicgraph/corpus.hpp"
#include "topicgraph/matrix.hpp"
#include "topicgraph/simd/kernels.hpp"

namespace topicgraph {

using TopicId = std::uint32_t;

struct LdaConfig {
    std::size_t num_topics = 10;
    double alpha = 5.0;
    double beta = 0.01;
    std::size_t iterations = 1000;
    std::size_t burn_in = 500;
    std::uint64_t seed = 1;

    /// Throws ConfigError.
    void validate() const;
    bool operator==(const LdaConfig&) const = default;
};

/// Symmetric document-topic prior used when none is configured.
inline double default_alpha(std::size_t num_topics) { return 50.0 / static_cast<double>(num_topics); }

/// Seeded 64-bit generator with platform-independent conversions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    std::size_t below(std::size_t n)
    {
        const auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return k < n ? k : n - 1;
    }

private:
    std::mt19937_64 engine_;
};

/// Collapsed Gibbs sampler state. Topic-term counts are stored word-major
/// (row w holds the K topic counts of term w) so the per-token conditional
/// reads contiguous memory.
struct GibbsState {
    std::size_t num_topics = 0;
    std::size_t num_terms = 0;
    std::vector<std::size_t> doc_offsets;   // D + 1 entries into `assignments`
    std::vector<std::int32_t> assignments;  // z, one per token
    std::vector<std::int32_t> doc_topic;    // D x K
    std::vector<std::int32_t> word_topic;   // V x K
    std::vector<std::int32_t> topic_total;  // K
    std::vector<std::int32_t> doc_length;   // D

    std::size_t num_docs() const noexcept { return doc_length.size(); }
    std::int32_t n_dk(std::size_t d, std::size_t k) const { return doc_topic[d * num_topics + k]; }
    std::int32_t n_kw(std::size_t k, TermId w) const { return word_topic[w * num_topics + k]; }
    std::span<const std::int32_t> doc_assignments(std::size_t d) const
    {
        return {assignments.data() + doc_offsets[d], doc_offsets[d + 1] - doc_offsets[d]};
    }

    /// Counts rebuilt from explicit assignments (parallel to the corpus tokens).
    static GibbsState from_assignments(const TokenizedCorpus& corpus, std::size_t num_topics,
                                       std::vector<std::int32_t> assignments);

    /// Uniform random initial assignment.
    static GibbsState random(const TokenizedCorpus& corpus, std::size_t num_topics, Rng& rng);

    /// Empty when all count identities hold, otherwise a description of the first violation.
    std::optional<std::string> check_invariants(const TokenizedCorpus& corpus) const;

    bool operator==(const GibbsState&) const = default;
};

/// Draws the topic of one token from unnormalized weights by cumulative-sum
/// inverse CDF in topic index order. `weights` is overwritten with the CDF.
std::size_t sample_from_weights(std::span<double> weights, double u);

/// One full sweep: every token resampled once, in document then position order.
void gibbs_sweep(GibbsState& state, const TokenizedCorpus& corpus, const LdaConfig& config,
                 Rng& rng, const simd::KernelTable& kernels = simd::active_kernels());

/// Collapsed joint log p(w, z | alpha, beta).
double log_likelihood(const GibbsState& state, const LdaConfig& config);

struct TopicModel {
    LdaConfig config;
    Vocabulary vocabulary;
    std::vector<std::string> doc_ids;
    std::vector<std::uint32_t> doc_lengths;
    std::uint64_t total_tokens = 0;
    std::size_t snapshots = 0;

    Matrix phi;    // K x V, P(w | T)
    Matrix theta;  // D x K, P(T | d)
    std::vector<double> prevalence;     // P(T)
    std::vector<double> term_marginal;  // P(w)

    // Sampler counts averaged over post-burn-in snapshots.
    Matrix topic_term_counts;  // K x V
    Matrix doc_topic_counts;   // D x K
    std::vector<double> topic_counts;

    std::size_t num_topics() const noexcept { return prevalence.size(); }
    std::size_t num_terms() const noexcept { return vocabulary.size(); }
    std::size_t num_docs() const noexcept { return doc_ids.size(); }

    bool operator==(const TopicModel&) const = default;
};

/// Derives phi, theta and prevalence from averaged counts already stored in
/// `model`, then the term marginal.
void estimate_distributions(TopicModel& model,
                            const simd::KernelTable& kernels = simd::active_kernels());

/// term_marginal[w] = sum_k phi[k, w] * prevalence[k]
void recompute_term_marginal(TopicModel& model,
                             const simd::KernelTable& kernels = simd::active_kernels());

struct TrainProgress {
    std::size_t sweep;  // 1-based
    std::size_t total_sweeps;
    std::optional<double> log_likelihood;
};

struct TrainOptions {
    std::function<void(const TrainProgress&)> progress;
    /// Log-likelihood is computed on sweeps divisible by this; 0 disables it.
    std::size_t log_likelihood_interval = 0;
    /// Verify count identities after every sweep; violations throw std::logic_error.
    bool check_invariants = false;
    const simd::KernelTable* kernels = nullptr;
};

/// Throws ConfigError or EmptyCorpusError. Deterministic in (corpus, config).
TopicModel train(const TokenizedCorpus& corpus, const LdaConfig& config,
                 const TrainOptions& options = {});

}  // namespace topicgraph
