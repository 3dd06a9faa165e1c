#include "ufc/simd/bitops.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

#include <bit>

namespace ufc::simd {
namespace {

constexpr std::size_t kStep = 2;

void and_neon(Word* dst, const Word* a, const Word* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + kStep <= n; i += kStep) vst1q_u64(dst + i, vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
    for (; i < n; ++i) dst[i] = a[i] & b[i];
}

void or_neon(Word* dst, const Word* a, const Word* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + kStep <= n; i += kStep) vst1q_u64(dst + i, vorrq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
    for (; i < n; ++i) dst[i] = a[i] | b[i];
}

void xor_neon(Word* dst, const Word* a, const Word* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + kStep <= n; i += kStep) vst1q_u64(dst + i, veorq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
    for (; i < n; ++i) dst[i] = a[i] ^ b[i];
}

void andnot_neon(Word* dst, const Word* a, const Word* b, std::size_t n) {
    std::size_t i = 0;
    // vbicq(x, y) = x & ~y
    for (; i + kStep <= n; i += kStep) vst1q_u64(dst + i, vbicq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
    for (; i < n; ++i) dst[i] = a[i] & ~b[i];
}

void not_neon(Word* dst, const Word* a, std::size_t n) {
    std::size_t i = 0;
    for (; i + kStep <= n; i += kStep)
        vst1q_u64(dst + i, vreinterpretq_u64_u8(vmvnq_u8(vreinterpretq_u8_u64(vld1q_u64(a + i)))));
    for (; i < n; ++i) dst[i] = ~a[i];
}

std::size_t popcount_neon(const Word* a, std::size_t n) {
    std::size_t total = 0;
    std::size_t i = 0;
    for (; i + kStep <= n; i += kStep) {
        const uint8x16_t c = vcntq_u8(vreinterpretq_u8_u64(vld1q_u64(a + i)));
        total += vaddvq_u8(c);
    }
    for (; i < n; ++i) total += static_cast<std::size_t>(std::popcount(a[i]));
    return total;
}

inline bool nonzero(uint64x2_t v) { return (vgetq_lane_u64(v, 0) | vgetq_lane_u64(v, 1)) != 0; }

bool equal_neon(const Word* a, const Word* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + kStep <= n; i += kStep)
        if (nonzero(veorq_u64(vld1q_u64(a + i), vld1q_u64(b + i)))) return false;
    for (; i < n; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

bool any_neon(const Word* a, std::size_t n) {
    std::size_t i = 0;
    for (; i + kStep <= n; i += kStep)
        if (nonzero(vld1q_u64(a + i))) return true;
    for (; i < n; ++i)
        if (a[i] != 0) return true;
    return false;
}

bool intersects_neon(const Word* a, const Word* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + kStep <= n; i += kStep)
        if (nonzero(vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)))) return true;
    for (; i < n; ++i)
        if ((a[i] & b[i]) != 0) return true;
    return false;
}

bool subset_neon(const Word* a, const Word* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + kStep <= n; i += kStep)
        if (nonzero(vbicq_u64(vld1q_u64(a + i), vld1q_u64(b + i)))) return false;
    for (; i < n; ++i)
        if ((a[i] & ~b[i]) != 0) return false;
    return true;
}

}  // namespace

const BitKernels* neon_kernels() {
    static const BitKernels table{Isa::Neon,      and_neon,     or_neon,   xor_neon,
                                  andnot_neon,    not_neon,     popcount_neon,
                                  equal_neon,     any_neon,     intersects_neon,
                                  subset_neon};
    return &table;
}

}  // namespace ufc::simd

#else

namespace ufc::simd {
const BitKernels* neon_kernels() { return nullptr; }
}  // namespace ufc::simd

#endif
