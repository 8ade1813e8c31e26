#pragma once

#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "kdp/bitstring.hpp"

namespace kdp {

/// Binary finite field GF(2^width), width in [1, 512]. Elements are bit
/// strings of the given width; arithmetic is carry-less polynomial multiply
/// reduced by the lexicographically smallest irreducible polynomial of that
/// degree (computed once per width and cached, so results are bit-exact
/// across runs).
class GF2Field {
public:
    explicit GF2Field(unsigned width);

    unsigned width() const { return width_; }

    /// The reduction polynomial, low word first; bit i = coefficient of x^i.
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }

    std::vector<std::uint64_t> mul(const std::vector<std::uint64_t>& a,
                                   const std::vector<std::uint64_t>& b) const;

    /// Field multiply on BitString operands of matching width.
    BitString mul(const BitString& a, const BitString& b) const;
    BitString add(const BitString& a, const BitString& b) const { return a ^ b; }

    BitString one() const;

    /// a^e by square-and-multiply (e >= 0).
    BitString pow(const BitString& a, std::uint64_t e) const;

private:
    unsigned width_;
    std::vector<std::uint64_t> modulus_;  // degree == width_
};

/// Lexicographically smallest irreducible polynomial of the given degree
/// over GF(2) (scanning the non-leading coefficients as an integer from 0).
std::vector<std::uint64_t> smallest_irreducible(unsigned degree);

/// Rabin irreducibility test.
bool is_irreducible(const std::vector<std::uint64_t>& f, unsigned degree);

} // namespace kdp
