#include "kdp/hashfam.hpp"

#include <algorithm>
#include <vector>

namespace kdp {

BitString u2_hash(const BitString& s, const BitString& x, unsigned b) {
    if (s.size() != x.size())
        throw std::invalid_argument("u2_hash: width mismatch");
    if (b > x.size())
        throw std::invalid_argument("u2_hash: b > a");
    GF2Field field(static_cast<unsigned>(x.size()));
    return field.mul(x, s).slice(0, b);
}

BitString su2_hash(const BitString& s, const BitString& t, const BitString& x) {
    if (s.size() != x.size() || t.size() != x.size())
        throw std::invalid_argument("su2_hash: width mismatch");
    GF2Field field(static_cast<unsigned>(x.size()));
    return field.mul(s, x) ^ t;
}

BitString asu2_hash(const AsuParams& params, const BitString& key, const BitString& x) {
    if (key.size() != params.key_bits())
        throw std::invalid_argument("asu2_hash: key length mismatch");
    if (x.size() != params.input_bits())
        throw std::invalid_argument("asu2_hash: message length mismatch");

    const unsigned b = params.b;
    GF2Field field(b);

    std::vector<BitString> elems;
    elems.reserve(std::size_t{1} << params.i);
    for (std::size_t j = 0; j < (std::size_t{1} << params.i); ++j)
        elems.push_back(x.slice(j * b, b));

    // i halving levels: (u, v) -> u + k_level * v
    for (unsigned level = 0; level < params.i; ++level) {
        BitString k = key.slice(std::size_t{level} * b, b);
        std::vector<BitString> next;
        next.reserve(elems.size() / 2);
        for (std::size_t t = 0; t + 1 < elems.size(); t += 2)
            next.push_back(elems[t] ^ field.mul(k, elems[t + 1]));
        elems = std::move(next);
    }

    BitString s = key.slice(std::size_t{params.i} * b, b);
    BitString t = key.slice(std::size_t{params.i + 1} * b, b);
    return field.mul(s, elems[0]) ^ t;
}

std::pair<double, double> deception_bounds(const AsuParams& params) {
    double pi = std::pow(2.0, -static_cast<double>(params.b));
    return {pi, params.epsilon()};
}

double partial_key_deception(std::uint64_t l0, double b_tilde, double t) {
    if (!(t > 0.0 && t <= 1.0))
        throw std::invalid_argument("partial_key_deception: t outside (0,1]");
    double expo = (b_tilde - static_cast<double>(l0) * (1.0 - t)) / 2.0 - 1.0;
    double v = std::pow(2.0, -expo);
    return std::clamp(v, 0.0, 1.0);
}

} // namespace kdp
