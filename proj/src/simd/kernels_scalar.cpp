#include "topicgraph/simd/kernels.hpp"

namespace topicgraph::simd {

namespace {

void topic_weights(const std::int32_t* doc_topic, const std::int32_t* word_topic,
                   const std::int32_t* topic_total, std::size_t n, double alpha, double beta,
                   double v_beta, double* out)
{
    for (std::size_t k = 0; k < n; ++k) {
        const double a = static_cast<double>(doc_topic[k]) + alpha;
        const double b = static_cast<double>(word_topic[k]) + beta;
        const double c = static_cast<double>(topic_total[k]) + v_beta;
        out[k] = a * b / c;
    }
}

void accumulate(double* acc, const std::int32_t* counts, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) acc[i] += static_cast<double>(counts[i]);
}

void smooth_normalize(const double* counts, std::size_t n, double prior, double denom,
                      double* out)
{
    for (std::size_t i = 0; i < n; ++i) out[i] = (counts[i] + prior) / denom;
}

void axpy(double a, const double* x, std::size_t n, double* y)
{
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void multiply(double* acc, const double* factor, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) acc[i] *= factor[i];
}

constexpr KernelTable table{
    Isa::scalar, topic_weights, accumulate, smooth_normalize, axpy, multiply,
};

}  // namespace

const KernelTable& scalar_kernels() noexcept { return table; }

}  // namespace topicgraph::simd
