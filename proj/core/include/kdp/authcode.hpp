#pragma once

#include <cstdint>
#include <vector>

#include "kdp/codes.hpp"
#include "kdp/entropy.hpp"

namespace kdp {

/// Keyless noisy-channel authentication code built from an (n0,k0,d) base
/// code by the 1->10 / 0->01 doubling; n_a = 2*n0, constant weight
/// tau = n0, asymmetric semidistance d01 = d.
struct AcSpec {
    std::int64_t n0 = 0;
    std::int64_t k0 = 0;
    std::int64_t d = 0;        // minimum distance of the base code
    std::int64_t delta_w = 0;  // verification threshold, 0 <= delta_w < tau

    std::int64_t n_a() const { return 2 * n0; }
    std::int64_t tau() const { return n0; }
    std::int64_t d01() const { return d; }
};

/// Positions (0-based, in [0, 2*n0)) where the doubled codeword is 1 --
/// exactly tau of them -- and the shared-string bits at those positions.
struct Authenticator {
    std::vector<std::uint32_t> positions;
    BitString bits;
};

struct BuiltAc {
    AcSpec spec;
    LinearCode base;
};

/// Sample random (n0,k0) base codes with growing n0 until measured minimum
/// distance reaches d_target (exhaustive check, so k0 <= 20).
BuiltAc build_ac(std::int64_t k0, std::int64_t d_target, std::uint64_t seed);

/// 1-positions of the doubled codeword for the message.
std::vector<std::uint32_t> ac_positions(const LinearCode& base, const BitString& message);

Authenticator make_authenticator(const AcSpec& spec, const LinearCode& base,
                                 const BitString& message, const BitString& x2);

/// Recompute the authenticator from y2 and accept iff at most delta_w bits
/// disagree. Malformed positions (wrong count, out of range, mismatch with
/// the message's codeword) reject.
bool verify_authenticator(const AcSpec& spec, const LinearCode& base,
                          const BitString& message, const Authenticator& auth,
                          const BitString& y2);

/// Which printed form of the deception bound to evaluate. The planner and
/// defaults use the operational form (p_w in the d01 factor, inner sum to
/// delta_w - i); the legacy form keeps p_m in both factors with a fixed
/// inner limit.
enum class PdForm { operational, legacy };

/// False-rejection bound: upper binomial tail over the tau authenticator bits.
double pf_bound(const AcSpec& spec, Probability p_m);

/// Deception bound for a substituted message at semidistance d01.
double pd_bound(const AcSpec& spec, Probability p_m, Probability p_w,
                PdForm form = PdForm::operational);

/// Stable binomial helpers shared with the planner (regularized incomplete
/// beta for the tails, log-space pmf).
double binomial_tail_ge(std::int64_t n, std::int64_t k, double p);
double binomial_cdf_le(std::int64_t n, std::int64_t k, double p);
double binomial_log_pmf(std::int64_t n, std::int64_t k, double p);
double log_binomial_cdf_le(std::int64_t n, std::int64_t k, double p);

} // namespace kdp
