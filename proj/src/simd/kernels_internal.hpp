#pragma once

#include "topicgraph/simd/kernels.hpp"

namespace topicgraph::simd::detail {

#if defined(TOPICGRAPH_HAVE_AVX2)
const KernelTable& avx2_kernels() noexcept;
#endif
#if defined(TOPICGRAPH_HAVE_NEON)
const KernelTable& neon_kernels() noexcept;
#endif

}  // namespace topicgraph::simd::detail
