#include "ufc/simd/bit_vector.hpp"

#include <bit>
#include <stdexcept>

namespace ufc {

namespace {
std::size_t word_count(std::size_t bits) { return (bits + BitVector::kWordBits - 1) / BitVector::kWordBits; }
}  // namespace

BitVector::BitVector(std::size_t size, bool value)
    : size_(size), words_(word_count(size), value ? ~Word{0} : Word{0}) {
    clear_tail();
}

void BitVector::clear_tail() noexcept {
    const std::size_t rem = size_ % kWordBits;
    if (rem != 0 && !words_.empty()) words_.back() &= (Word{1} << rem) - 1;
}

void BitVector::require_same_size(const BitVector& other) const {
    if (size_ != other.size_) throw std::invalid_argument("BitVector size mismatch");
}

std::size_t BitVector::count() const { return simd::kernels().popcount(words_.data(), words_.size()); }

bool BitVector::any() const { return simd::kernels().any(words_.data(), words_.size()); }

BitVector& BitVector::operator&=(const BitVector& other) {
    require_same_size(other);
    simd::kernels().and_words(words_.data(), words_.data(), other.words_.data(), words_.size());
    return *this;
}

BitVector& BitVector::operator|=(const BitVector& other) {
    require_same_size(other);
    simd::kernels().or_words(words_.data(), words_.data(), other.words_.data(), words_.size());
    return *this;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    require_same_size(other);
    simd::kernels().xor_words(words_.data(), words_.data(), other.words_.data(), words_.size());
    return *this;
}

BitVector& BitVector::and_not(const BitVector& other) {
    require_same_size(other);
    simd::kernels().andnot_words(words_.data(), words_.data(), other.words_.data(), words_.size());
    return *this;
}

BitVector& BitVector::flip() {
    simd::kernels().not_words(words_.data(), words_.data(), words_.size());
    clear_tail();
    return *this;
}

bool BitVector::operator==(const BitVector& other) const {
    return size_ == other.size_ && simd::kernels().equal(words_.data(), other.words_.data(), words_.size());
}

bool BitVector::is_subset_of(const BitVector& other) const {
    require_same_size(other);
    return simd::kernels().subset(words_.data(), other.words_.data(), words_.size());
}

bool BitVector::intersects(const BitVector& other) const {
    require_same_size(other);
    return simd::kernels().intersects(words_.data(), other.words_.data(), words_.size());
}

std::optional<std::size_t> BitVector::find_next(std::size_t from) const {
    if (from >= size_) return std::nullopt;
    std::size_t w = from / kWordBits;
    Word cur = words_[w] & (~Word{0} << (from % kWordBits));
    while (true) {
        if (cur != 0) {
            const std::size_t idx = w * kWordBits + static_cast<std::size_t>(std::countr_zero(cur));
            return idx < size_ ? std::optional<std::size_t>(idx) : std::nullopt;
        }
        if (++w >= words_.size()) return std::nullopt;
        cur = words_[w];
    }
}

BitVector::Word BitVector::window(std::size_t offset) const noexcept {
    const std::size_t w = offset / kWordBits;
    const std::size_t shift = offset % kWordBits;
    if (w >= words_.size()) return 0;
    Word lo = words_[w] >> shift;
    if (shift != 0 && w + 1 < words_.size()) lo |= words_[w + 1] << (kWordBits - shift);
    return lo;
}

std::size_t BitVector::hash() const noexcept {
    std::size_t h = size_ * 0x9e3779b97f4a7c15ULL;
    for (Word x : words_) h = (h ^ x) * 0x100000001b3ULL + (h >> 29);
    return h;
}

BitVector BitVector::from_predicate(std::size_t size, const std::function<bool(std::size_t)>& pred) {
    BitVector out(size);
    for (std::size_t i = 0; i < size; ++i)
        if (pred(i)) out.set(i);
    return out;
}

}  // namespace ufc
