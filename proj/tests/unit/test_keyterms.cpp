#include <algorithm>
#include <random>
#include <map>
#include <set>

#include "doctest.h"
#include "model_builder.hpp"
#include "planted.hpp"
#include "topicgraph/errors.hpp"
#include "topicgraph/keyterms.hpp"

using namespace topicgraph;
using testing_models::from_phi;

namespace {

std::vector<std::vector<double>> random_phi(std::mt19937_64& rng, std::size_t K, std::size_t V)
{
    std::vector<std::vector<double>> phi(K);
    for (auto& row : phi) row = planted::dirichlet(rng, V, 0.5);
    return phi;
}

KeytermPolicy vacuous(std::size_t V)
{
    KeytermPolicy p;
    p.score_threshold = 0.0;
    p.max_per_topic = V;
    p.candidate_pool_size = V;
    p.min_corpus_frequency = 1;
    return p;
}

void check_table_invariants(const KeytermTable& table, const KeytermPolicy& policy)
{
    std::map<TermId, int> listed;
    for (const auto& list : table.topics) {
        CHECK(list.size() <= policy.max_per_topic);
        std::set<TermId> unique;
        for (const auto& kt : list) {
            CHECK(kt.score >= policy.score_threshold);
            CHECK(kt.score > 0.0);
            CHECK(kt.score <= 1.0);
            CHECK(unique.insert(kt.term).second);
            ++listed[kt.term];
        }
        if (!policy.prioritize_shared) {
            for (std::size_t i = 1; i < list.size(); ++i) {
                const bool ordered = list[i - 1].score > list[i].score
                    || (list[i - 1].score == list[i].score && list[i - 1].term < list[i].term);
                CHECK(ordered);
            }
        }
    }
    std::vector<TermId> shared;
    for (const auto& [term, n] : listed) {
        if (n >= 2) shared.push_back(term);
    }
    CHECK(table.shared_terms == shared);
}

}  // namespace

TEST_CASE("Bayes arithmetic: phi 0.10 / 0.05 with equal prevalence gives 2/3 and 1/3")
{
    const auto m = from_phi({{0.10, 0.90}, {0.05, 0.95}}, {0.5, 0.5});
    CHECK(m.term_marginal[0] == doctest::Approx(0.075).epsilon(1e-15));
    CHECK(keyterm_score(m, 0, TermId{0}) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(keyterm_score(m, 1, TermId{0}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("a term supported by a single topic scores exactly 1")
{
    const auto m = from_phi({{0.5, 0.5, 0.0}, {0.0, 0.4, 0.6}, {0.0, 0.1, 0.9}}, {0.2, 0.3, 0.5});
    CHECK(keyterm_score(m, 0, TermId{0}) == 1.0);
    CHECK(keyterm_score(m, 1, TermId{0}) == 0.0);
}

TEST_CASE("scores equal a brute-force joint-table computation")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto phi = random_phi(rng, 3, 10);
        const auto prevalence = planted::dirichlet(rng, 3, 1.0);
        const auto m = from_phi(phi, prevalence);
        for (std::size_t w = 0; w < 10; ++w) {
            double joint[3], column = 0;
            for (std::size_t k = 0; k < 3; ++k) {
                joint[k] = phi[k][w] * prevalence[k];
                column += joint[k];
            }
            double sum = 0;
            for (TopicId k = 0; k < 3; ++k) {
                const double s = keyterm_score(m, k, static_cast<TermId>(w));
                CHECK(std::abs(s - joint[k] / column) <= 1e-12);
                sum += s;
            }
            CHECK(std::abs(sum - 1.0) <= 1e-9);
        }
    }
}

TEST_CASE("unknown terms and topics are reported")
{
    const auto m = from_phi({{0.5, 0.5}, {0.5, 0.5}}, {0.5, 0.5});
    CHECK_THROWS_AS(keyterm_score(m, 0, TermId{2}), UnknownTermError);
    CHECK_THROWS_AS(keyterm_score(m, 0, "nope"), UnknownTermError);
    CHECK_THROWS_AS(keyterm_score(m, 2, TermId{0}), UnknownTopicError);
    CHECK(keyterm_score(m, 1, planted::term_name(1)) == doctest::Approx(0.5));
}

TEST_CASE("vacuous policy lists every term for every topic, by score")
{
    std::mt19937_64 rng(4);
    const auto m = from_phi(random_phi(rng, 3, 8), {0.3, 0.3, 0.4});
    const auto policy = vacuous(8);
    const auto table = select_keyterms(m, policy);
    REQUIRE(table.topics.size() == 3);
    for (TopicId k = 0; k < 3; ++k) {
        CHECK(table.topics[k].size() == 8);
        for (const auto& kt : table.topics[k]) CHECK(kt.score == keyterm_score(m, k, kt.term));
    }
    check_table_invariants(table, policy);
    CHECK(table.shared_terms.size() == 8);
}

TEST_CASE("disjoint planted topics share no keyterms")
{
    planted::Spec spec;
    spec.num_topics = 2;
    spec.terms_per_topic = 30;
    spec.num_docs = 200;
    spec.doc_length = 50;
    const auto p = planted::generate(spec);
    LdaConfig cfg;
    cfg.num_topics = 2;
    cfg.alpha = 0.1;
    cfg.iterations = 100;
    cfg.burn_in = 50;
    const auto model = train(p.corpus, cfg);
    KeytermPolicy policy;
    policy.min_corpus_frequency = 1;
    const auto table = select_keyterms(model, policy);
    CHECK(table.shared_terms.empty());
    for (std::size_t k = 0; k < 2; ++k) {
        REQUIRE_FALSE(table.topics[k].empty());
        const auto block = table.topics[k].front().term / spec.terms_per_topic;
        for (const auto& kt : table.topics[k]) CHECK(kt.term / spec.terms_per_topic == block);
    }
    CHECK(table.topics[0].front().term / 30 != table.topics[1].front().term / 30);
}

TEST_CASE("a term with equal mass in two equally prevalent topics is shared at 0.5")
{
    // term 0 is w*, equally likely under both topics
    const auto m = from_phi({{0.2, 0.8, 0.0}, {0.2, 0.0, 0.8}}, {0.5, 0.5});
    KeytermPolicy policy = vacuous(3);
    policy.score_threshold = 0.3;
    const auto table = select_keyterms(m, policy);
    CHECK(table.shared_terms == std::vector<TermId>{0});
    CHECK(table.is_shared(0));
    for (std::size_t k = 0; k < 2; ++k) {
        const auto it = std::find_if(table.topics[k].begin(), table.topics[k].end(),
                                     [](const Keyterm& kt) { return kt.term == 0; });
        REQUIRE(it != table.topics[k].end());
        CHECK(it->score == 0.5);
    }
}

TEST_CASE("min_corpus_frequency and the candidate pool restrict candidates")
{
    // topic 0 prefers terms 0,1,2 in that order
    auto m = from_phi({{0.5, 0.3, 0.15, 0.05}, {0.05, 0.15, 0.3, 0.5}}, {0.5, 0.5});
    m.vocabulary = Vocabulary(m.vocabulary.terms(), {1, 1, 1, 1}, {1, 9, 9, 9});
    KeytermPolicy policy = vacuous(4);
    policy.min_corpus_frequency = 5;
    auto table = select_keyterms(m, policy);
    for (const auto& list : table.topics)
        for (const auto& kt : list) CHECK(kt.term != 0);

    policy.min_corpus_frequency = 1;
    policy.candidate_pool_size = 2;
    policy.max_per_topic = 2;
    table = select_keyterms(m, policy);
    std::set<TermId> topic0;
    for (const auto& kt : table.topics[0]) topic0.insert(kt.term);
    CHECK(topic0 == std::set<TermId>{0, 1});
}

TEST_CASE("prioritizing shared terms moves them ahead of the cap")
{
    // Topic 0: strong own terms 0,1 and a weaker term 2 shared with topic 1.
    const auto m = from_phi({{0.45, 0.45, 0.10, 0.00}, {0.00, 0.00, 0.10, 0.90}}, {0.5, 0.5});
    KeytermPolicy policy = vacuous(4);
    policy.score_threshold = 0.2;
    policy.max_per_topic = 2;
    auto plain = select_keyterms(m, policy);
    CHECK(plain.shared_terms.empty());
    CHECK(plain.topics[0].size() == 2);

    policy.prioritize_shared = true;
    const auto prioritized = select_keyterms(m, policy);
    REQUIRE(prioritized.topics[0].size() == 2);
    CHECK(prioritized.topics[0][0].term == 2);
    CHECK(prioritized.topics[0][0].score == 0.5);
    CHECK(prioritized.topics[0][1].term == 0);  // best of the non-shared group, ties by id
    CHECK(prioritized.shared_terms == std::vector<TermId>{2});
    check_table_invariants(prioritized, policy);
}

TEST_CASE("property: threshold monotonicity, cap and shared consistency")
{
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t K = 2 + rng() % 5, V = 5 + rng() % 40;
        const auto m = from_phi(random_phi(rng, K, V), planted::dirichlet(rng, K, 2.0));
        KeytermPolicy policy;
        policy.min_corpus_frequency = 1;
        policy.max_per_topic = 1 + rng() % V;
        policy.candidate_pool_size = policy.max_per_topic + rng() % (V + 1);
        policy.prioritize_shared = rng() % 2;
        policy.score_threshold = 0.0;
        auto previous = select_keyterms(m, policy);
        check_table_invariants(previous, policy);
        for (double tau : {0.05, 0.1, 0.2, 0.3, 0.5, 0.8, 1.0}) {
            policy.score_threshold = tau;
            const auto table = select_keyterms(m, policy);
            check_table_invariants(table, policy);
            if (!policy.prioritize_shared) {
                for (std::size_t k = 0; k < K; ++k) {
                    std::set<TermId> before;
                    for (const auto& kt : previous.topics[k]) before.insert(kt.term);
                    for (const auto& kt : table.topics[k]) CHECK(before.contains(kt.term));
                }
            }
            previous = table;
        }
    }
}

TEST_CASE("policy validation")
{
    KeytermPolicy p;
    CHECK_NOTHROW(p.validate());
    p.candidate_pool_size = 10;
    p.max_per_topic = 11;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = {};
    p.score_threshold = -0.1;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p.score_threshold = 1.1;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = {};
    p.max_per_topic = 0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = {};
    p.min_corpus_frequency = 0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
}
