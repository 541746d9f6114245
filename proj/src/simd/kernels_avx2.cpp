// Compiled with -mavx2. Keep this file free of shared inline code so no AVX2
// instructions leak into functions used on the scalar path.

#include <immintrin.h>

#include "kernels_internal.hpp"

namespace topicgraph::simd::detail {

namespace {

constexpr std::size_t lanes = 4;

inline __m256d load_i32_as_f64(const std::int32_t* p)
{
    return _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(p)));
}

void topic_weights(const std::int32_t* doc_topic, const std::int32_t* word_topic,
                   const std::int32_t* topic_total, std::size_t n, double alpha, double beta,
                   double v_beta, double* out)
{
    const __m256d alpha_v = _mm256_set1_pd(alpha);
    const __m256d beta_v = _mm256_set1_pd(beta);
    const __m256d v_beta_v = _mm256_set1_pd(v_beta);
    std::size_t k = 0;
    for (; k + lanes <= n; k += lanes) {
        const __m256d a = _mm256_add_pd(load_i32_as_f64(doc_topic + k), alpha_v);
        const __m256d b = _mm256_add_pd(load_i32_as_f64(word_topic + k), beta_v);
        const __m256d c = _mm256_add_pd(load_i32_as_f64(topic_total + k), v_beta_v);
        _mm256_storeu_pd(out + k, _mm256_div_pd(_mm256_mul_pd(a, b), c));
    }
    for (; k < n; ++k) {
        const double a = static_cast<double>(doc_topic[k]) + alpha;
        const double b = static_cast<double>(word_topic[k]) + beta;
        const double c = static_cast<double>(topic_total[k]) + v_beta;
        out[k] = a * b / c;
    }
}

void accumulate(double* acc, const std::int32_t* counts, std::size_t n)
{
    std::size_t i = 0;
    for (; i + lanes <= n; i += lanes) {
        const __m256d sum = _mm256_add_pd(_mm256_loadu_pd(acc + i), load_i32_as_f64(counts + i));
        _mm256_storeu_pd(acc + i, sum);
    }
    for (; i < n; ++i) acc[i] += static_cast<double>(counts[i]);
}

void smooth_normalize(const double* counts, std::size_t n, double prior, double denom,
                      double* out)
{
    const __m256d prior_v = _mm256_set1_pd(prior);
    const __m256d denom_v = _mm256_set1_pd(denom);
    std::size_t i = 0;
    for (; i + lanes <= n; i += lanes) {
        const __m256d num = _mm256_add_pd(_mm256_loadu_pd(counts + i), prior_v);
        _mm256_storeu_pd(out + i, _mm256_div_pd(num, denom_v));
    }
    for (; i < n; ++i) out[i] = (counts[i] + prior) / denom;
}

void axpy(double a, const double* x, std::size_t n, double* y)
{
    const __m256d a_v = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + lanes <= n; i += lanes) {
        const __m256d prod = _mm256_mul_pd(a_v, _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void multiply(double* acc, const double* factor, std::size_t n)
{
    std::size_t i = 0;
    for (; i + lanes <= n; i += lanes) {
        const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(factor + i));
        _mm256_storeu_pd(acc + i, prod);
    }
    for (; i < n; ++i) acc[i] *= factor[i];
}

constexpr KernelTable table{
    Isa::avx2, topic_weights, accumulate, smooth_normalize, axpy, multiply,
};

}  // namespace

const KernelTable& avx2_kernels() noexcept { return table; }

}  // namespace topicgraph::simd::detail
