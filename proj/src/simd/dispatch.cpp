#include <cstdlib>
#include <string_view>

#include "ufc/simd/bitops.hpp"

namespace ufc::simd {

const BitKernels* avx2_kernels();
const BitKernels* neon_kernels();

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const BitKernels& select() {
    // UFC_FORCE_SCALAR=1 pins the reference kernels (used to diff runs).
    if (const char* force = std::getenv("UFC_FORCE_SCALAR"); force && std::string_view(force) == "1")
        return scalar_kernels();
    if (const auto* k = kernels_for(Isa::Avx2)) return *k;
    if (const auto* k = kernels_for(Isa::Neon)) return *k;
    return scalar_kernels();
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "unknown";
}

const BitKernels* kernels_for(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return &scalar_kernels();
        case Isa::Avx2: return cpu_has_avx2() ? avx2_kernels() : nullptr;
        case Isa::Neon: return neon_kernels();
    }
    return nullptr;
}

const BitKernels& kernels() {
    static const BitKernels& chosen = select();
    return chosen;
}

}  // namespace ufc::simd
