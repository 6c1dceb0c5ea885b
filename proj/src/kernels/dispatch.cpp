#include "odolab/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace odolab::kernels {

const KernelTable* avx2_table_impl();

const KernelTable* avx2_table() {
#if defined(__x86_64__) || defined(__i386__)
    if (!__builtin_cpu_supports("avx2")) return nullptr;
    return avx2_table_impl();
#else
    return nullptr;
#endif
}

const KernelTable& active() {
    static const KernelTable* chosen = [] {
        const char* env = std::getenv("ODOLAB_KERNELS");
        if (env && std::strcmp(env, "scalar") == 0) return &scalar_table();
        const KernelTable* v = avx2_table();
        return v ? v : &scalar_table();
    }();
    return *chosen;
}

}  // namespace odolab::kernels
