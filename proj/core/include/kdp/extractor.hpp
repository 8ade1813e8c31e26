#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "kdp/bitstring.hpp"
#include "kdp/codes.hpp"
#include "kdp/gf2.hpp"

namespace kdp {

/// Family of ell nu-subsets of {0..u-1} with bounded pairwise overlap:
/// for every i, sum over j<i of 2^|S_j ∩ S_i| <= c*(ell-1).
struct WeakDesign {
    unsigned nu = 0;
    double c = 0.0;
    std::uint64_t u = 0;
    std::vector<std::vector<std::uint32_t>> sets;
};

/// Independent recount of the overlap bound.
bool verify_weak_design(const WeakDesign& d);

/// ceil(log2(k/eps)).
unsigned index_bits(std::int64_t k, double eps);

/// Seed bits u = ceil(nu/ln c) * nu with nu = index_bits(k, eps).
std::int64_t seed_length(std::int64_t k, double eps, double c);

/// Seed bits for the full-extraction variant:
/// ceil(nu/ln 2) * nu * ceil(log2(4/mu)), mu in (0, 1/2).
std::int64_t seed_length_full_extraction(std::int64_t k, double eps, double mu);

/// Deterministic greedy construction: the u slots are split into nu blocks
/// and each set takes one slot per block, chosen by a conditional-expectation
/// sweep. Throws InfeasibleError if the finished family fails the recount
/// (u too small for this c).
WeakDesign greedy_weak_design(unsigned nu, double c, std::uint64_t ell, std::uint64_t u);

/// Reed-Solomon outer code over GF(2^m), m = ceil(nu/2), evaluated at
/// n_eval = 2^(nu-m) points, concatenated with a Hadamard inner code;
/// total length 2^nu.
struct InnerCode {
    unsigned nu = 0;
    unsigned m = 0;
    std::uint64_t n_eval = 0;
    std::int64_t k = 0;      // message bits
    std::int64_t k_sym = 0;  // message symbols, ceil(k/m)

    std::uint64_t length() const { return std::uint64_t{1} << nu; }
    // (n_eval - k_sym + 1) * 2^(m-1) positions differ between distinct codewords
    double designed_distance() const {
        return static_cast<double>(n_eval - k_sym + 1) * std::pow(2.0, static_cast<int>(m) - 1);
    }
};

InnerCode build_inner_code(unsigned nu, std::int64_t k);

/// One encoded message: the Boolean function gamma-restriction indexes into.
/// Materializes the full table for nu <= 24, else evaluates per index.
class InnerCodeword {
public:
    InnerCodeword(const InnerCode& code, const BitString& x);
    bool bit(std::uint64_t idx) const;
    const InnerCode& code() const { return code_; }

private:
    bool eval(std::uint64_t idx) const;

    InnerCode code_;
    GF2Field field_;
    std::vector<BitString> coeffs_;
    std::vector<std::uint64_t> table_;
    bool materialized_ = false;
};

struct ExtractorSpec {
    std::int64_t k = 0;
    std::int64_t ell = 0;
    double eps = 0.0;
    double c = 0.0;
    unsigned nu = 0;
    std::int64_t u = 0;
    InnerCode code;

    static ExtractorSpec make(std::int64_t k, std::int64_t ell, double eps, double c);
};

/// Output bit i is the codeword bit of x at the index formed by gamma
/// restricted to design set i.
BitString extract(const ExtractorSpec& spec, const WeakDesign& design,
                  const BitString& x, const BitString& gamma);

/// Largest admissible design parameter for a given min-entropy budget:
/// c = (budget - 3*log2(ell/eps) - u - 3) / ell. Throws InfeasibleError
/// when the result is <= 1.
double strong_param_c(double h_inf_budget, std::int64_t ell, double eps, std::int64_t u);

} // namespace kdp
