#pragma once

#include "pipetrack/kernels.hpp"

namespace pipetrack::kernels::detail {

#ifdef PIPETRACK_HAVE_AVX2
const KernelTable &avx2_table() noexcept;
#endif

}  // namespace pipetrack::kernels::detail
