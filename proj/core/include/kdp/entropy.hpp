#pragma once

#include <stdexcept>

namespace kdp {

/// Error probability or similar quantity constrained to [0,1].
class Probability {
public:
    Probability(double v = 0.0) : v_(v) {  // NOLINT: implicit by design
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("Probability outside [0,1]");
    }
    double value() const { return v_; }
    operator double() const { return v_; }

private:
    double v_;
};

/// Crossover probabilities of the main and wiretap virtual BSCs.
struct ChannelParams {
    Probability p_m;
    Probability p_w;
};

struct DegenerateChannelError : std::domain_error {
    using std::domain_error::domain_error;
};
struct ZeroCapacityError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Binary entropy in bits, with 0*log 0 = 0.
double binary_entropy(Probability p);

/// Collapse the source model (pi_A, pi_B, pi_E) to the channel model:
/// p_m = piA+piB-2*piA*piB, p_w = min over both legal users' wiretap paths.
ChannelParams reduce_source_model(Probability piA, Probability piB, Probability piE);

/// Per-bit min-entropy of the wiretap observation: -log2 max(p_w, 1-p_w).
double min_entropy_per_bit(Probability p_w);

/// Per-bit collision (Renyi) entropy: -log2(p_w^2 + (1-p_w)^2).
double renyi_entropy_per_bit(Probability p_w);

/// Secret-key capacity g(p_w) - g(p_m); throws ZeroCapacityError if p_w <= p_m.
double secret_key_capacity(const ChannelParams& ch);

} // namespace kdp
