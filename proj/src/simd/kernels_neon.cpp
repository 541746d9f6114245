#include <arm_neon.h>

#include "kernels_internal.hpp"

namespace topicgraph::simd::detail {

namespace {

constexpr std::size_t lanes = 2;

inline float64x2_t load_i32_as_f64(const std::int32_t* p)
{
    const int32x2_t narrow = vld1_s32(p);
    return vcvtq_f64_s64(vmovl_s32(narrow));
}

void topic_weights(const std::int32_t* doc_topic, const std::int32_t* word_topic,
                   const std::int32_t* topic_total, std::size_t n, double alpha, double beta,
                   double v_beta, double* out)
{
    const float64x2_t alpha_v = vdupq_n_f64(alpha);
    const float64x2_t beta_v = vdupq_n_f64(beta);
    const float64x2_t v_beta_v = vdupq_n_f64(v_beta);
    std::size_t k = 0;
    for (; k + lanes <= n; k += lanes) {
        const float64x2_t a = vaddq_f64(load_i32_as_f64(doc_topic + k), alpha_v);
        const float64x2_t b = vaddq_f64(load_i32_as_f64(word_topic + k), beta_v);
        const float64x2_t c = vaddq_f64(load_i32_as_f64(topic_total + k), v_beta_v);
        vst1q_f64(out + k, vdivq_f64(vmulq_f64(a, b), c));
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
        vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), load_i32_as_f64(counts + i)));
    }
    for (; i < n; ++i) acc[i] += static_cast<double>(counts[i]);
}

void smooth_normalize(const double* counts, std::size_t n, double prior, double denom,
                      double* out)
{
    const float64x2_t prior_v = vdupq_n_f64(prior);
    const float64x2_t denom_v = vdupq_n_f64(denom);
    std::size_t i = 0;
    for (; i + lanes <= n; i += lanes) {
        vst1q_f64(out + i, vdivq_f64(vaddq_f64(vld1q_f64(counts + i), prior_v), denom_v));
    }
    for (; i < n; ++i) out[i] = (counts[i] + prior) / denom;
}

void axpy(double a, const double* x, std::size_t n, double* y)
{
    const float64x2_t a_v = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + lanes <= n; i += lanes) {
        // vmulq + vaddq rather than vfmaq to match the scalar rounding
        vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(a_v, vld1q_f64(x + i))));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void multiply(double* acc, const double* factor, std::size_t n)
{
    std::size_t i = 0;
    for (; i + lanes <= n; i += lanes) {
        vst1q_f64(acc + i, vmulq_f64(vld1q_f64(acc + i), vld1q_f64(factor + i)));
    }
    for (; i < n; ++i) acc[i] *= factor[i];
}

constexpr KernelTable table{
    Isa::neon, topic_weights, accumulate, smooth_normalize, axpy, multiply,
};

}  // namespace

const KernelTable& neon_kernels() noexcept { return table; }

}  // namespace topicgraph::simd::detail
