#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace pipetrack::kernels {

const KernelTable *avx2_kernels() noexcept {
#ifdef PIPETRACK_HAVE_AVX2
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &detail::avx2_table() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable &active_kernels() noexcept {
    static const KernelTable &chosen = [] () -> const KernelTable & {
        const char *forced = std::getenv("PIPETRACK_KERNELS");
        if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_kernels();
        if (const KernelTable *fast = avx2_kernels()) return *fast;
        return scalar_kernels();
    }();
    return chosen;
}

}  // namespace pipetrack::kernels
