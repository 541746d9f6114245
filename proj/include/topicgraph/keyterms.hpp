#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "topicgraph/lda.hpp"

namespace topicgraph {

struct KeytermPolicy {
    std::size_t candidate_pool_size = 200;  // top-N terms per topic by P(w|T)
    double score_threshold = 0.2;
    std::size_t max_per_topic = 15;
    bool prioritize_shared = false;
    std::uint64_t min_corpus_frequency = 5;

    /// Throws ConfigError.
    void validate() const;
    bool operator==(const KeytermPolicy&) const = default;
};

struct Keyterm {
    TermId term;
    double score;  // P(T | w)

    bool operator==(const Keyterm&) const = default;
};

struct KeytermTable {
    /// Per topic, descending by score with ties by ascending term id.
    std::vector<std::vector<Keyterm>> topics;
    /// Terms listed for two or more topics, ascending.
    std::vector<TermId> shared_terms;

    bool is_shared(TermId term) const;
    bool operator==(const KeytermTable&) const = default;
};

/// P(T_k | w) = P(w | T_k) P(T_k) / P(w). Throws UnknownTopicError / UnknownTermError.
double keyterm_score(const TopicModel& model, TopicId topic, TermId term);
double keyterm_score(const TopicModel& model, TopicId topic, std::string_view term);

KeytermTable select_keyterms(const TopicModel& model, const KeytermPolicy& policy);

}  // namespace topicgraph
