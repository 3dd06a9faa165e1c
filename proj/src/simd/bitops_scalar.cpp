#include "ufc/simd/bitops.hpp"

#include <bit>

namespace ufc::simd {
namespace {

void and_scalar(Word* dst, const Word* a, const Word* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] & b[i];
}

void or_scalar(Word* dst, const Word* a, const Word* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] | b[i];
}

void xor_scalar(Word* dst, const Word* a, const Word* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] ^ b[i];
}

void andnot_scalar(Word* dst, const Word* a, const Word* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] & ~b[i];
}

void not_scalar(Word* dst, const Word* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = ~a[i];
}

std::size_t popcount_scalar(const Word* a, std::size_t n) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += static_cast<std::size_t>(std::popcount(a[i]));
    return total;
}

bool equal_scalar(const Word* a, const Word* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

bool any_scalar(const Word* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != 0) return true;
    return false;
}

bool intersects_scalar(const Word* a, const Word* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if ((a[i] & b[i]) != 0) return true;
    return false;
}

bool subset_scalar(const Word* a, const Word* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if ((a[i] & ~b[i]) != 0) return false;
    return true;
}

}  // namespace

const BitKernels& scalar_kernels() {
    static const BitKernels table{Isa::Scalar,     and_scalar,      or_scalar,
                                  xor_scalar,      andnot_scalar,   not_scalar,
                                  popcount_scalar, equal_scalar,    any_scalar,
                                  intersects_scalar, subset_scalar};
    return table;
}

}  // namespace ufc::simd
