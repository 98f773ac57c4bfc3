#include "semolab/bitstring.hpp"

#include <stdexcept>

namespace semolab {

BitString::BitString(std::size_t n, bool value)
    : n_(n), words_((n + kWordBits - 1) / kWordBits, value ? ~Word{0} : Word{0}) {
    clear_tail();
}

BitString BitString::from_string(std::string_view bits) {
    BitString out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            out.set(i, true);
        else if (bits[i] != '0')
            throw std::invalid_argument("bit string may only contain '0' and '1'");
    }
    return out;
}

std::size_t BitString::count() const noexcept {
    std::size_t total = 0;
    for (Word w : words_)
        total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

std::size_t BitString::count_range(std::size_t first, std::size_t last) const noexcept {
    if (first >= last)
        return 0;
    const std::size_t first_word = first / kWordBits;
    const std::size_t last_word = (last - 1) / kWordBits;
    const Word head_mask = ~Word{0} << (first % kWordBits);
    const std::size_t tail_bits = last - last_word * kWordBits;
    const Word tail_mask = tail_bits == kWordBits ? ~Word{0} : (Word{1} << tail_bits) - 1;

    if (first_word == last_word)
        return static_cast<std::size_t>(std::popcount(words_[first_word] & head_mask & tail_mask));

    std::size_t total = static_cast<std::size_t>(std::popcount(words_[first_word] & head_mask));
    for (std::size_t w = first_word + 1; w < last_word; ++w)
        total += static_cast<std::size_t>(std::popcount(words_[w]));
    total += static_cast<std::size_t>(std::popcount(words_[last_word] & tail_mask));
    return total;
}

std::size_t BitString::hamming_distance(const BitString& other) const noexcept {
    std::size_t total = 0;
    for (std::size_t w = 0; w < words_.size(); ++w)
        total += static_cast<std::size_t>(std::popcount(words_[w] ^ other.words_[w]));
    return total;
}

std::string BitString::to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (test(i))
            s[i] = '1';
    return s;
}

void BitString::assign(const BitString& other) {
    n_ = other.n_;
    words_.assign(other.words_.begin(), other.words_.end());
}

void BitString::assign_low_bits(Word bits) noexcept {
    words_[0] = bits;
    clear_tail();
}

void BitString::clear_tail() noexcept {
    const std::size_t rem = n_ % kWordBits;
    if (rem != 0 && !words_.empty())
        words_.back() &= (Word{1} << rem) - 1;
}

}  // namespace semolab
