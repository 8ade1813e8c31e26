#pragma once

#include <cstdint>

#include "kdp/entropy.hpp"

namespace kdp {

/// Upper bound on the Shannon information an observer gains about the key,
/// with the probability that the bound fails. Values like 2^-225 underflow
/// a double, so the log2 of the bound is kept alongside the clamped value.
struct LeakageReport {
    enum class Mechanism { hashing, extraction };

    double log2_bound = 0.0;
    double bound = 0.0;  // clamped to [0, ell]
    double risk = 0.0;
    Mechanism mechanism = Mechanism::hashing;
};

/// Hashed-key leakage: 2^-(k - ell - t - r - s) / ln 2, failing with
/// probability 2^(-s/2 - 1). t is the collision-entropy deficit of the
/// source, r the bits published during reconciliation, s the slack.
LeakageReport hashing_leakage(double k, double ell, double t, double r, double s);

/// Collision-entropy deficit after r published bits with slack s: t + r + s.
double renyi_side_info(double t_base, double r, double s);

struct MinEntropyBound {
    double bound = 0.0;
    double risk = 0.0;
    bool infeasible = false;  // raw bound was negative, clamped to 0
};

/// Min-entropy left after r published bits: h - r - s, failing with
/// probability 2^-s.
MinEntropyBound minentropy_side_info(double h_base, double r, double s);

/// Leakage through a strong extractor with statistical distance eps:
/// 2 * ell * sqrt(eps).
double extractor_leakage(double ell, double eps);

/// Statistical distance needed to keep extractor leakage at most I_adm:
/// (I_adm / (2*ell))^2.
double required_eps(double I_adm, double ell);

} // namespace kdp
