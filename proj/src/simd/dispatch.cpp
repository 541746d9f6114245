#include <cstdlib>
#include <string>

#include "kernels_internal.hpp"
#include "topicgraph/errors.hpp"

namespace topicgraph::simd {

namespace {

bool cpu_supports(Isa isa) noexcept
{
    switch (isa) {
    case Isa::scalar:
        return true;
    case Isa::avx2:
#if defined(TOPICGRAPH_HAVE_AVX2)
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    case Isa::neon:
#if defined(TOPICGRAPH_HAVE_NEON)
        return true;  // baseline on aarch64
#else
        return false;
#endif
    }
    return false;
}

Isa parse_isa(std::string_view name)
{
    if (name == "scalar") return Isa::scalar;
    if (name == "avx2") return Isa::avx2;
    if (name == "neon") return Isa::neon;
    throw ConfigError("unknown kernel variant: " + std::string(name));
}

const KernelTable& select_default()
{
    if (const char* forced = std::getenv("TOPICGRAPH_KERNELS"); forced && *forced) {
        const std::string_view name(forced);
        if (name != "auto") return kernels_for(parse_isa(name));
    }
    const auto isas = available_isas();
    return kernels_for(isas.back());
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept
{
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
    }
    return "unknown";
}

std::vector<Isa> available_isas()
{
    std::vector<Isa> isas{Isa::scalar};
    for (Isa isa : {Isa::avx2, Isa::neon}) {
        if (cpu_supports(isa)) isas.push_back(isa);
    }
    return isas;
}

const KernelTable& kernels_for(Isa isa)
{
    if (!cpu_supports(isa)) {
        throw ConfigError("kernel variant not available: " + std::string(isa_name(isa)));
    }
    switch (isa) {
#if defined(TOPICGRAPH_HAVE_AVX2)
    case Isa::avx2: return detail::avx2_kernels();
#endif
#if defined(TOPICGRAPH_HAVE_NEON)
    case Isa::neon: return detail::neon_kernels();
#endif
    default: return scalar_kernels();
    }
}

const KernelTable& active_kernels()
{
    static const KernelTable& table = select_default();
    return table;
}

}  // namespace topicgraph::simd
