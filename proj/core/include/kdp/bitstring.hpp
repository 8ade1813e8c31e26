#pragma once

#include <cstdint>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace kdp {

/// Fixed-length binary word. Bit i is the i-th symbol of the string
/// (position 0 first). Used for raw strings, check blocks, seeds, keys
/// and authenticators throughout.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    static BitString random(std::size_t nbits, std::mt19937_64& rng) {
        BitString b(nbits);
        for (auto& w : b.words_) w = rng();
        b.trim();
        return b;
    }

    static BitString from_uint(std::uint64_t v, std::size_t nbits) {
        if (nbits > 64) throw std::invalid_argument("from_uint: nbits > 64");
        BitString b(nbits);
        if (nbits) b.words_[0] = (nbits == 64) ? v : (v & ((std::uint64_t{1} << nbits) - 1));
        return b;
    }

    std::size_t size() const { return nbits_; }
    bool empty() const { return nbits_ == 0; }

    bool get(std::size_t i) const {
        check(i);
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i, bool v) {
        check(i);
        std::uint64_t m = std::uint64_t{1} << (i & 63);
        if (v) words_[i >> 6] |= m; else words_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) {
        check(i);
        words_[i >> 6] ^= std::uint64_t{1} << (i & 63);
    }

    std::size_t popcount() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
        return n;
    }

    BitString& operator^=(const BitString& o) {
        if (o.nbits_ != nbits_) throw std::invalid_argument("xor: length mismatch");
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
        return *this;
    }
    friend BitString operator^(BitString a, const BitString& b) { a ^= b; return a; }

    std::size_t hamming(const BitString& o) const {
        if (o.nbits_ != nbits_) throw std::invalid_argument("hamming: length mismatch");
        std::size_t n = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            n += static_cast<std::size_t>(__builtin_popcountll(words_[i] ^ o.words_[i]));
        return n;
    }

    BitString slice(std::size_t pos, std::size_t len) const {
        if (pos + len > nbits_) throw std::out_of_range("slice out of range");
        BitString r(len);
        for (std::size_t i = 0; i < len; ++i) r.set(i, get(pos + i));
        return r;
    }

    BitString concat(const BitString& o) const {
        BitString r(nbits_ + o.nbits_);
        for (std::size_t i = 0; i < nbits_; ++i) r.set(i, get(i));
        for (std::size_t i = 0; i < o.nbits_; ++i) r.set(nbits_ + i, o.get(i));
        return r;
    }

    /// Low 64 bits as an integer (string must fit).
    std::uint64_t to_uint() const {
        if (nbits_ > 64) throw std::invalid_argument("to_uint: string longer than 64 bits");
        return words_.empty() ? 0 : words_[0];
    }

    std::string to_hex() const {
        static const char* digits = "0123456789abcdef";
        std::string s;
        std::size_t nyb = (nbits_ + 3) / 4;
        for (std::size_t i = 0; i < nyb; ++i) {
            unsigned v = 0;
            for (unsigned j = 0; j < 4; ++j) {
                std::size_t bit = 4 * i + j;
                if (bit < nbits_ && get(bit)) v |= 1u << j;
            }
            s.push_back(digits[v]);
        }
        return s.empty() ? std::string("-") : s;
    }

    bool operator==(const BitString& o) const { return nbits_ == o.nbits_ && words_ == o.words_; }
    bool operator!=(const BitString& o) const { return !(*this == o); }

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    void check(std::size_t i) const {
        if (i >= nbits_) throw std::out_of_range("bit index out of range");
    }
    void trim() {
        if (nbits_ % 64 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (nbits_ % 64)) - 1;
    }

    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Pass a string through a BSC with the given crossover probability.
inline BitString bsc(const BitString& x, double p, std::mt19937_64& rng) {
    BitString y = x;
    std::bernoulli_distribution flip(p);
    for (std::size_t i = 0; i < y.size(); ++i)
        if (flip(rng)) y.flip(i);
    return y;
}

} // namespace kdp
