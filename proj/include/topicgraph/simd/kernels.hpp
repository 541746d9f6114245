#pragma once

// Elementwise numeric kernels with scalar reference and vector variants.
//
// Every variant performs the same IEEE-754 operations in the same order per
// element (no FMA contraction, no reassociation), so all variants produce
// bit-identical output. Reductions are deliberately absent from this table.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace topicgraph::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
    Isa isa;

    /// out[k] = (doc_topic[k] + alpha) * (word_topic[k] + beta) / (topic_total[k] + v_beta)
    void (*topic_weights)(const std::int32_t* doc_topic, const std::int32_t* word_topic,
                          const std::int32_t* topic_total, std::size_t n, double alpha,
                          double beta, double v_beta, double* out);

    /// acc[i] += counts[i]
    void (*accumulate)(double* acc, const std::int32_t* counts, std::size_t n);

    /// out[i] = (counts[i] + prior) / denom
    void (*smooth_normalize)(const double* counts, std::size_t n, double prior, double denom,
                             double* out);

    /// y[i] += a * x[i]
    void (*axpy)(double a, const double* x, std::size_t n, double* y);

    /// acc[i] *= factor[i]
    void (*multiply)(double* acc, const double* factor, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;

/// Variants compiled into this build and supported by the running CPU.
std::vector<Isa> available_isas();

/// Table for a specific variant; throws ConfigError when unavailable.
const KernelTable& kernels_for(Isa isa);

/// Process-wide table, chosen once on first use: the widest available
/// variant, unless TOPICGRAPH_KERNELS=scalar|avx2|neon overrides it.
const KernelTable& active_kernels();

}  // namespace topicgraph::simd
