#include "switchstab/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace switchstab {

#ifdef SWITCHSTAB_BUILD_AVX2
const Kernels* avx2_kernels_impl();
#endif
#ifdef SWITCHSTAB_BUILD_NEON
const Kernels* neon_kernels_impl();
#endif

const Kernels* avx2_kernels() {
#ifdef SWITCHSTAB_BUILD_AVX2
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        return avx2_kernels_impl();
    }
#endif
    return nullptr;
}

const Kernels* neon_kernels() {
#ifdef SWITCHSTAB_BUILD_NEON
    return neon_kernels_impl();
#else
    return nullptr;
#endif
}

namespace {

const Kernels& select_kernels() {
    if (const char* req = std::getenv("SWITCHSTAB_KERNEL")) {
        if (std::strcmp(req, "scalar") == 0) return scalar_kernels();
        if (std::strcmp(req, "avx2") == 0) {
            if (const Kernels* k = avx2_kernels()) return *k;
            return scalar_kernels();
        }
        if (std::strcmp(req, "neon") == 0) {
            if (const Kernels* k = neon_kernels()) return *k;
            return scalar_kernels();
        }
    }
    if (const Kernels* k = avx2_kernels()) return *k;
    if (const Kernels* k = neon_kernels()) return *k;
    return scalar_kernels();
}

} // namespace

const Kernels& active_kernels() {
    static const Kernels& chosen = select_kernels();
    return chosen;
}

std::vector<std::string> available_kernel_names() {
    std::vector<std::string> names{scalar_kernels().name};
    if (const Kernels* k = avx2_kernels()) names.emplace_back(k->name);
    if (const Kernels* k = neon_kernels()) names.emplace_back(k->name);
    return names;
}

} // namespace switchstab
