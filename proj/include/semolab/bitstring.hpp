#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semolab {

/// Fixed-length bit vector packed into 64-bit words. Bits past `size()` in
/// the last word are kept zero so word-wise popcounts are exact.
class BitString {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    BitString() = default;
    explicit BitString(std::size_t n, bool value = false);

    /// Parses a string of '0'/'1' characters, position 0 first.
    static BitString from_string(std::string_view bits);

    std::size_t size() const noexcept { return n_; }

    bool test(std::size_t i) const noexcept {
        return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
    }
    void set(std::size_t i, bool value) noexcept {
        const Word mask = Word{1} << (i % kWordBits);
        if (value)
            words_[i / kWordBits] |= mask;
        else
            words_[i / kWordBits] &= ~mask;
    }
    void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

    /// Number of ones in the whole string.
    std::size_t count() const noexcept;
    /// Number of ones in positions [first, last).
    std::size_t count_range(std::size_t first, std::size_t last) const noexcept;
    std::size_t hamming_distance(const BitString& other) const noexcept;

    std::span<const Word> words() const noexcept { return words_; }
    std::string to_string() const;

    /// Loads bit i of `bits` into position i; requires size() <= 64.
    void assign_low_bits(Word bits) noexcept;

    /// Overwrites the contents with `other` reusing the existing storage.
    void assign(const BitString& other);

    friend bool operator==(const BitString& a, const BitString& b) noexcept {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }

private:
    void clear_tail() noexcept;

    std::size_t n_ = 0;
    std::vector<Word> words_;
};

/// A search point x in {0,1}^n.
using Individual = BitString;

}  // namespace semolab
