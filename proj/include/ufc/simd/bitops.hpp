#pragma once

// Word-level kernels over packed bit vectors.
//
// Every kernel has a scalar reference version; vector variants (AVX2 on x86-64,
// NEON on AArch64) are selected once at runtime. All variants produce
// bit-identical results, which the equivalence tests enforce.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace ufc::simd {

using Word = std::uint64_t;

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

struct BitKernels {
    Isa isa;
    // dst[i] = a[i] & b[i]  (dst may alias a or b)
    void (*and_words)(Word* dst, const Word* a, const Word* b, std::size_t n);
    void (*or_words)(Word* dst, const Word* a, const Word* b, std::size_t n);
    void (*xor_words)(Word* dst, const Word* a, const Word* b, std::size_t n);
    // dst[i] = a[i] & ~b[i]
    void (*andnot_words)(Word* dst, const Word* a, const Word* b, std::size_t n);
    void (*not_words)(Word* dst, const Word* a, std::size_t n);
    std::size_t (*popcount)(const Word* a, std::size_t n);
    bool (*equal)(const Word* a, const Word* b, std::size_t n);
    bool (*any)(const Word* a, std::size_t n);
    // (a & b) != 0 anywhere
    bool (*intersects)(const Word* a, const Word* b, std::size_t n);
    // (a & ~b) == 0 everywhere
    bool (*subset)(const Word* a, const Word* b, std::size_t n);
};

/// Kernels for the best ISA supported by the running CPU.
const BitKernels& kernels();

/// Kernels for a specific ISA, or nullptr when not compiled in / not supported.
const BitKernels* kernels_for(Isa isa);

const BitKernels& scalar_kernels();

}  // namespace ufc::simd
