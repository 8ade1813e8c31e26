#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kdp/bitstring.hpp"
#include "kdp/entropy.hpp"

namespace kdp {

struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Information/check lengths of a systematic code; rate = k/(k+r).
struct CodeSpec {
    std::int64_t k = 0;
    std::int64_t r = 0;
    double rate() const { return static_cast<double>(k) / static_cast<double>(k + r); }
};

/// Systematic binary linear code: generator [I_k | P], P the parity block.
/// Immutable after construction; the syndrome table for nearest-codeword
/// decoding is built lazily on first decode and then shared read-only.
class LinearCode {
public:
    LinearCode(CodeSpec spec, std::vector<BitString> parity_rows);

    const CodeSpec& spec() const { return spec_; }

    /// Parity block of the systematic codeword for information word x.
    BitString encode_checks(const BitString& x) const;

    /// Full codeword x || checks.
    BitString encode(const BitString& x) const;

    /// Information word of the codeword nearest in Hamming distance to
    /// (y || checks); ties broken by lexicographically smallest error
    /// pattern (positions compared from index 0 up, flipped-later wins).
    /// Requires k + r <= 26.
    BitString decode_nearest(const BitString& y, const BitString& checks) const;

    /// Exact minimum distance by codeword enumeration (k <= 20).
    std::size_t min_distance() const;

private:
    void build_syndrome_table() const;

    CodeSpec spec_;
    std::vector<BitString> parity_rows_;  // k rows of r bits
    mutable std::vector<std::uint32_t> syndrome_table_;  // error pattern per syndrome
    mutable bool table_built_ = false;
};

/// Gallager's E0 for a BSC: rho - (1+rho)*log2(p^(1/(1+rho)) + (1-p)^(1/(1+rho))).
double gallager_E0(double rho, Probability p_m);

/// Random-coding exponent max_{rho in (0,1)} [E0(rho) - rho(2rc-1)/rc],
/// golden-section search to 1e-10. rc must lie in [1/2, 1/(1+g(p_m))].
double gallager_exponent(double rc, Probability p_m);

/// Smallest k with 2^(-k E(rc)) <= P_e_adm:  ceil(-log2(P_e_adm)/E(rc)).
std::int64_t solve_k_for_error(Probability P_e_adm, double rc, Probability p_m);

/// Asymptotic check-symbol budget ceil(k * g(p_m)).
std::int64_t asymptotic_check_budget(std::int64_t k, Probability p_m);

/// Deterministic-in-seed systematic code with uniformly random parity block.
LinearCode make_random_systematic_code(std::int64_t k, std::int64_t r, std::uint64_t seed);

/// Solve k2*(1 - g(2d/k2)) = 2*k0 for the fixed ratio 2d/k2 = p_hint.
/// Returns the smallest k2 with k2*(1-g(p_hint)) >= 2*k0 and d = floor(p_hint*k2/2).
std::pair<std::int64_t, std::int64_t> solve_varshamov_gilbert(std::int64_t k0, double p_hint);

} // namespace kdp
