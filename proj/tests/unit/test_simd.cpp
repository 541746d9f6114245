#include <cstring>
#include <random>

#include "doctest.h"
#include "planted.hpp"
#include "topicgraph/errors.hpp"
#include "topicgraph/lda.hpp"
#include "topicgraph/model_io.hpp"
#include "topicgraph/simd/kernels.hpp"

using namespace topicgraph;
using simd::Isa;

namespace {

const std::size_t lengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 16, 17, 31, 100, 1001};

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b)
{
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<std::int32_t> random_counts(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_int_distribution<std::int32_t> dist(0, 200000);
    std::vector<std::int32_t> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

std::vector<double> random_doubles(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> exp(-30, 30);
    std::vector<double> v(n);
    for (auto& x : v) x = std::ldexp(mant(rng), exp(rng));
    return v;
}

}  // namespace

TEST_CASE("scalar variant is always available and listed first")
{
    const auto isas = simd::available_isas();
    REQUIRE_FALSE(isas.empty());
    CHECK(isas.front() == Isa::scalar);
    CHECK(simd::kernels_for(Isa::scalar).isa == Isa::scalar);
    for (auto isa : isas) CHECK(simd::kernels_for(isa).isa == isa);
}

TEST_CASE("requesting a variant the build or CPU lacks is a config error")
{
    const auto isas = simd::available_isas();
    for (auto isa : {Isa::avx2, Isa::neon}) {
        if (std::find(isas.begin(), isas.end(), isa) == isas.end()) {
            CHECK_THROWS_AS(simd::kernels_for(isa), ConfigError);
        }
    }
}

TEST_CASE("every variant matches the scalar reference bit for bit")
{
    const auto& ref = simd::scalar_kernels();
    std::mt19937_64 rng(2024);
    for (auto isa : simd::available_isas()) {
        const auto& k = simd::kernels_for(isa);
        CAPTURE(simd::isa_name(isa));
        for (auto n : lengths) {
            CAPTURE(n);
            const auto a = random_counts(rng, n), b = random_counts(rng, n), c = random_counts(rng, n);
            std::vector<double> expected(n), actual(n);
            ref.topic_weights(a.data(), b.data(), c.data(), n, 0.1, 0.01, 5.0, expected.data());
            k.topic_weights(a.data(), b.data(), c.data(), n, 0.1, 0.01, 5.0, actual.data());
            CHECK(bitwise_equal(expected, actual));

            auto acc_ref = random_doubles(rng, n);
            auto acc = acc_ref;
            ref.accumulate(acc_ref.data(), a.data(), n);
            k.accumulate(acc.data(), a.data(), n);
            CHECK(bitwise_equal(acc_ref, acc));

            const auto x = random_doubles(rng, n);
            ref.smooth_normalize(x.data(), n, 0.37, 123.25, expected.data());
            k.smooth_normalize(x.data(), n, 0.37, 123.25, actual.data());
            CHECK(bitwise_equal(expected, actual));

            auto y_ref = random_doubles(rng, n);
            auto y = y_ref;
            ref.axpy(0.7131, x.data(), n, y_ref.data());
            k.axpy(0.7131, x.data(), n, y.data());
            CHECK(bitwise_equal(y_ref, y));

            auto m_ref = random_doubles(rng, n);
            auto m = m_ref;
            ref.multiply(m_ref.data(), x.data(), n);
            k.multiply(m.data(), x.data(), n);
            CHECK(bitwise_equal(m_ref, m));
        }
    }
}

TEST_CASE("topic_weights computes the collapsed conditional")
{
    const std::int32_t dk[] = {3, 0, 1};
    const std::int32_t wk[] = {2, 5, 0};
    const std::int32_t nk[] = {10, 20, 30};
    double out[3];
    simd::scalar_kernels().topic_weights(dk, wk, nk, 3, 0.5, 0.1, 2.0, out);
    CHECK(out[0] == doctest::Approx((3.5 * 2.1) / 12.0).epsilon(1e-15));
    CHECK(out[1] == doctest::Approx((0.5 * 5.1) / 22.0).epsilon(1e-15));
    CHECK(out[2] == doctest::Approx((1.5 * 0.1) / 32.0).epsilon(1e-15));
}

TEST_CASE("training through any variant yields the same model bytes")
{
    planted::Spec spec;
    spec.num_topics = 7;  // odd K exercises the vector tails
    spec.terms_per_topic = 13;
    spec.num_docs = 60;
    spec.doc_length = 25;
    const auto planted = planted::generate(spec);
    LdaConfig cfg;
    cfg.num_topics = 7;
    cfg.alpha = 0.2;
    cfg.iterations = 30;
    cfg.burn_in = 10;
    cfg.seed = 3;

    TrainOptions scalar_opts;
    scalar_opts.kernels = &simd::scalar_kernels();
    const auto reference = serialize_model(train(planted.corpus, cfg, scalar_opts), ModelFormat::binary);
    for (auto isa : simd::available_isas()) {
        TrainOptions opts;
        opts.kernels = &simd::kernels_for(isa);
        CAPTURE(simd::isa_name(isa));
        CHECK(serialize_model(train(planted.corpus, cfg, opts), ModelFormat::binary) == reference);
    }
}
