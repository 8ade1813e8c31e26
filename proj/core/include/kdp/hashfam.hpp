#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include "kdp/bitstring.hpp"
#include "kdp/gf2.hpp"

namespace kdp {

/// Parameter law of the almost-strongly-universal class: messages of
/// a = 2^i * b bits, b-bit authenticators, keys of b*(i+2) bits and
/// substitution bound epsilon = (i+1)/2^b.
struct AsuParams {
    unsigned b = 0;  // authenticator bits, q = 2^b
    unsigned i = 1;  // composition depth

    AsuParams(unsigned b_, unsigned i_) : b(b_), i(i_) {
        if (b_ < 1 || i_ < 1)
            throw std::invalid_argument("AsuParams: require b >= 1 and i >= 1");
        if (static_cast<std::uint64_t>(b_) << i_ > (1u << 20))
            throw std::invalid_argument("AsuParams: input width too large");
    }

    std::uint64_t input_bits() const { return static_cast<std::uint64_t>(b) << i; }
    std::uint64_t key_bits() const { return static_cast<std::uint64_t>(b) * (i + 2); }
    double epsilon() const { return static_cast<double>(i + 1) / std::pow(2.0, b); }
};

/// Multiply-truncate family: low b bits of the field product x*s in GF(2^a).
BitString u2_hash(const BitString& s, const BitString& x, unsigned b);

/// Affine family x -> s*x + t over GF(2^a).
BitString su2_hash(const BitString& s, const BitString& t, const BitString& x);

/// Keyed authenticator: i halving levels of pair-combining over GF(2^b)
/// followed by an affine map, using key = (k_1..k_i, s, t) of b*(i+2) bits.
BitString asu2_hash(const AsuParams& params, const BitString& key, const BitString& x);

/// Impersonation and substitution probability bounds (P_i = 2^-b,
/// P_s = (i+1)/2^b).
std::pair<double, double> deception_bounds(const AsuParams& params);

/// Deception bound when the adversary knows part of the key:
/// 2^(-((bt - l0(1-t))/2 - 1)) clamped to [0,1]; bt = -log2 epsilon.
double partial_key_deception(std::uint64_t l0, double b_tilde, double t);

} // namespace kdp
