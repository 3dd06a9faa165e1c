#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ufc/simd/bitops.hpp"

namespace ufc {

/// Fixed-size packed bit vector. Bits past size() are always zero, so word
/// kernels can run over whole words without masking.
class BitVector {
public:
    using Word = simd::Word;
    static constexpr std::size_t kWordBits = 64;

    BitVector() = default;
    explicit BitVector(std::size_t size, bool value = false);

    std::size_t size() const noexcept { return size_; }
    bool empty_range() const noexcept { return size_ == 0; }

    bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    void set(std::size_t i) noexcept { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
    void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
    void assign(std::size_t i, bool v) noexcept { v ? set(i) : reset(i); }

    std::size_t count() const;
    bool any() const;
    bool none() const { return !any(); }

    BitVector& operator&=(const BitVector& other);
    BitVector& operator|=(const BitVector& other);
    BitVector& operator^=(const BitVector& other);
    BitVector& and_not(const BitVector& other);
    BitVector& flip();

    friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
    friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    friend BitVector operator~(BitVector a) { return a.flip(); }

    bool operator==(const BitVector& other) const;

    bool is_subset_of(const BitVector& other) const;
    bool intersects(const BitVector& other) const;

    std::optional<std::size_t> find_first() const { return find_next(0); }
    std::optional<std::size_t> find_next(std::size_t from) const;

    /// The 64 bits starting at bit `offset`; bits past size() read as zero.
    Word window(std::size_t offset) const noexcept;

    std::span<const Word> words() const noexcept { return words_; }
    std::span<Word> words() noexcept { return words_; }

    std::size_t hash() const noexcept;

    /// Re-establishes the zero-tail invariant after writing through words().
    void clear_tail() noexcept;

    /// Builds a vector from a per-index predicate.
    static BitVector from_predicate(std::size_t size, const std::function<bool(std::size_t)>& pred);

private:
    void require_same_size(const BitVector& other) const;

    std::size_t size_ = 0;
    std::vector<Word> words_;
};

}  // namespace ufc
