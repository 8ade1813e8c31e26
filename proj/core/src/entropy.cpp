#include "kdp/entropy.hpp"

#include <algorithm>
#include <cmath>

namespace kdp {

double binary_entropy(Probability p) {
    double v = p.value();
    if (v == 0.0 || v == 1.0) return 0.0;
    return -v * std::log2(v) - (1.0 - v) * std::log2(1.0 - v);
}

ChannelParams reduce_source_model(Probability piA, Probability piB, Probability piE) {
    double a = piA, b = piB, e = piE;
    double pm = a + b - 2.0 * a * b;
    double pwA = a + e - 2.0 * a * e;
    double pwB = b + e - 2.0 * b * e;
    return ChannelParams{Probability(pm), Probability(std::min(pwA, pwB))};
}

double min_entropy_per_bit(Probability p_w) {
    double v = p_w.value();
    if (v == 0.0 || v == 1.0)
        throw DegenerateChannelError("min_entropy_per_bit: degenerate wiretap channel");
    return -std::log2(std::max(v, 1.0 - v));
}

double renyi_entropy_per_bit(Probability p_w) {
    double v = p_w.value();
    if (v == 0.0 || v == 1.0)
        throw DegenerateChannelError("renyi_entropy_per_bit: degenerate wiretap channel");
    return -std::log2(v * v + (1.0 - v) * (1.0 - v));
}

double secret_key_capacity(const ChannelParams& ch) {
    if (ch.p_w.value() <= ch.p_m.value())
        throw ZeroCapacityError("secret_key_capacity: p_w <= p_m gives zero capacity");
    return binary_entropy(ch.p_w) - binary_entropy(ch.p_m);
}

} // namespace kdp
