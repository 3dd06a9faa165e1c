// Compiled with -mavx2; only reached when the CPU reports AVX2 support.

#include "ufc/simd/bitops.hpp"

#if defined(__x86_64__) && defined(__AVX2__)

#include <immintrin.h>

#include <bit>

namespace ufc::simd {
namespace {

inline __m256i load(const Word* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store(Word* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

// 4 words per 256-bit lane group.
constexpr std::size_t kStep = 4;

void and_avx2(Word* dst, const Word* a, const Word* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + kStep <= n; i += kStep) store(dst + i, _mm256_and_si256(load(a + i), load(b + i)));
    for (; i < n; ++i) dst[i] = a[i] & b[i];
}

void or_avx2(Word* dst, const Word* a, const Word* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + kStep <= n; i += kStep) store(dst + i, _mm256_or_si256(load(a + i), load(b + i)));
    for (; i < n; ++i) dst[i] = a[i] | b[i];
}

void xor_avx2(Word* dst, const Word* a, const Word* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + kStep <= n; i += kStep) store(dst + i, _mm256_xor_si256(load(a + i), load(b + i)));
    for (; i < n; ++i) dst[i] = a[i] ^ b[i];
}

void andnot_avx2(Word* dst, const Word* a, const Word* b, std::size_t n) {
    std::size_t i = 0;
    // _mm256_andnot_si256(x, y) computes ~x & y
    for (; i + kStep <= n; i += kStep) store(dst + i, _mm256_andnot_si256(load(b + i), load(a + i)));
    for (; i < n; ++i) dst[i] = a[i] & ~b[i];
}

void not_avx2(Word* dst, const Word* a, std::size_t n) {
    const __m256i ones = _mm256_set1_epi64x(-1);
    std::size_t i = 0;
    for (; i + kStep <= n; i += kStep) store(dst + i, _mm256_xor_si256(load(a + i), ones));
    for (; i < n; ++i) dst[i] = ~a[i];
}

// Nibble lookup popcount (Mula et al.), accumulated with SAD into 64-bit lanes.
std::size_t popcount_avx2(const Word* a, std::size_t n) {
    const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + kStep <= n; i += kStep) {
        const __m256i v = load(a + i);
        const __m256i lo = _mm256_and_si256(v, low_mask);
        const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
        const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(cnt, _mm256_setzero_si256()));
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::size_t total = static_cast<std::size_t>(lanes[0] + lanes[1] + lanes[2] + lanes[3]);
    for (; i < n; ++i) total += static_cast<std::size_t>(std::popcount(a[i]));
    return total;
}

bool equal_avx2(const Word* a, const Word* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + kStep <= n; i += kStep) {
        const __m256i x = _mm256_xor_si256(load(a + i), load(b + i));
        if (!_mm256_testz_si256(x, x)) return false;
    }
    for (; i < n; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

bool any_avx2(const Word* a, std::size_t n) {
    std::size_t i = 0;
    for (; i + kStep <= n; i += kStep) {
        const __m256i v = load(a + i);
        if (!_mm256_testz_si256(v, v)) return true;
    }
    for (; i < n; ++i)
        if (a[i] != 0) return true;
    return false;
}

bool intersects_avx2(const Word* a, const Word* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + kStep <= n; i += kStep)
        if (!_mm256_testz_si256(load(a + i), load(b + i))) return true;
    for (; i < n; ++i)
        if ((a[i] & b[i]) != 0) return true;
    return false;
}

bool subset_avx2(const Word* a, const Word* b, std::size_t n) {
    std::size_t i = 0;
    // testc(b, a) is 1 iff (~b & a) == 0
    for (; i + kStep <= n; i += kStep)
        if (!_mm256_testc_si256(load(b + i), load(a + i))) return false;
    for (; i < n; ++i)
        if ((a[i] & ~b[i]) != 0) return false;
    return true;
}

}  // namespace

const BitKernels* avx2_kernels() {
    static const BitKernels table{Isa::Avx2,      and_avx2,     or_avx2,   xor_avx2,
                                  andnot_avx2,    not_avx2,     popcount_avx2,
                                  equal_avx2,     any_avx2,     intersects_avx2,
                                  subset_avx2};
    return &table;
}

}  // namespace ufc::simd

#else

namespace ufc::simd {
const BitKernels* avx2_kernels() { return nullptr; }
}  // namespace ufc::simd

#endif
