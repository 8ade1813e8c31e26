#include "kdp/authcode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/beta.hpp>

namespace kdp {

double binomial_log_pmf(std::int64_t n, std::int64_t k, double p) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    if (p == 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    if (p == 1.0) return k == n ? 0.0 : -std::numeric_limits<double>::infinity();
    double lc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    return lc + k * std::log(p) + (n - k) * std::log1p(-p);
}

double binomial_tail_ge(std::int64_t n, std::int64_t k, double p) {
    if (k <= 0) return 1.0;
    if (k > n) return 0.0;
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    // P(X >= k) is the regularized incomplete beta I_p(k, n-k+1)
    return boost::math::ibeta(static_cast<double>(k), static_cast<double>(n - k + 1), p);
}

double binomial_cdf_le(std::int64_t n, std::int64_t k, double p) {
    if (k < 0) return 0.0;
    if (k >= n) return 1.0;
    if (p <= 0.0) return 1.0;
    if (p >= 1.0) return 0.0;
    return boost::math::ibeta(static_cast<double>(n - k), static_cast<double>(k + 1), 1.0 - p);
}

double log_binomial_cdf_le(std::int64_t n, std::int64_t k, double p) {
    if (k < 0) return -std::numeric_limits<double>::infinity();
    if (k >= n || p <= 0.0) return 0.0;
    double v = binomial_cdf_le(n, k, p);
    if (v > 1e-300) return std::log(v);
    // far below the mean the cdf underflows linearly but its top terms decay
    // geometrically, so sum the pmf downward from k in log space
    const double lr = std::log(p) - std::log1p(-p);
    const double l0 = binomial_log_pmf(n, k, p);
    if (l0 == -std::numeric_limits<double>::infinity()) return l0;
    double lp = l0, total = 1.0;
    for (std::int64_t j = k - 1; j >= 0; --j) {
        lp += std::log(static_cast<double>(j + 1) / static_cast<double>(n - j)) - lr;
        double t = std::exp(lp - l0);
        total += t;
        if (t < total * 1e-18) break;
    }
    return l0 + std::log(total);
}

BuiltAc build_ac(std::int64_t k0, std::int64_t d_target, std::uint64_t seed) {
    if (k0 < 1) throw std::invalid_argument("build_ac: k0 < 1");
    if (k0 > 20) throw std::invalid_argument("build_ac: k0 > 20 (exhaustive distance check)");
    if (d_target < 1) throw std::invalid_argument("build_ac: d_target < 1");

    const std::int64_t n0_cap = k0 + std::max<std::int64_t>(64, 8 * d_target);
    for (std::int64_t n0 = k0 + d_target - 1; n0 <= n0_cap; ++n0) {
        std::int64_t r0 = n0 - k0;
        if (r0 < 1) continue;
        for (unsigned attempt = 0; attempt < 40; ++attempt) {
            std::uint64_t s = seed * 0x9e3779b97f4a7c15ull + n0 * 1000003ull + attempt;
            LinearCode code = make_random_systematic_code(k0, r0, s);
            if (static_cast<std::int64_t>(code.min_distance()) >= d_target) {
                AcSpec spec;
                spec.n0 = n0;
                spec.k0 = k0;
                spec.d = static_cast<std::int64_t>(code.min_distance());
                spec.delta_w = 0;
                return BuiltAc{spec, std::move(code)};
            }
        }
    }
    throw InfeasibleError("build_ac: n0 cap exceeded without reaching target distance");
}

std::vector<std::uint32_t> ac_positions(const LinearCode& base, const BitString& message) {
    BitString cw = base.encode(message);
    std::vector<std::uint32_t> pos;
    pos.reserve(cw.size());
    for (std::size_t i = 0; i < cw.size(); ++i)
        pos.push_back(static_cast<std::uint32_t>(cw.get(i) ? 2 * i : 2 * i + 1));
    return pos;
}

Authenticator make_authenticator(const AcSpec& spec, const LinearCode& base,
                                 const BitString& message, const BitString& x2) {
    if (static_cast<std::int64_t>(message.size()) != spec.k0)
        throw std::invalid_argument("make_authenticator: message length != k0");
    if (static_cast<std::int64_t>(x2.size()) != spec.n_a())
        throw std::invalid_argument("make_authenticator: x2 length != 2*n0");
    Authenticator a;
    a.positions = ac_positions(base, message);
    a.bits = BitString(a.positions.size());
    for (std::size_t i = 0; i < a.positions.size(); ++i)
        a.bits.set(i, x2.get(a.positions[i]));
    return a;
}

bool verify_authenticator(const AcSpec& spec, const LinearCode& base,
                          const BitString& message, const Authenticator& auth,
                          const BitString& y2) {
    if (static_cast<std::int64_t>(message.size()) != spec.k0) return false;
    if (static_cast<std::int64_t>(y2.size()) != spec.n_a())
        throw std::invalid_argument("verify_authenticator: y2 length != 2*n0");
    if (static_cast<std::int64_t>(auth.positions.size()) != spec.tau()) return false;
    if (auth.bits.size() != auth.positions.size()) return false;
    for (auto p : auth.positions)
        if (p >= static_cast<std::uint32_t>(spec.n_a())) return false;
    std::vector<std::uint32_t> expected = ac_positions(base, message);
    if (auth.positions != expected) return false;

    std::int64_t disagree = 0;
    for (std::size_t i = 0; i < expected.size(); ++i)
        if (auth.bits.get(i) != y2.get(expected[i])) ++disagree;
    return disagree <= spec.delta_w;
}

double pf_bound(const AcSpec& spec, Probability p_m) {
    return binomial_tail_ge(spec.tau(), spec.delta_w + 1, p_m.value());
}

double pd_bound(const AcSpec& spec, Probability p_m, Probability p_w, PdForm form) {
    const std::int64_t tau = spec.tau(), d = spec.d01(), dw = spec.delta_w;
    if (d > tau) throw std::invalid_argument("pd_bound: d > tau");
    const double p1 = (form == PdForm::operational) ? p_w.value() : p_m.value();
    const std::int64_t i_hi = std::min(dw, d);

    if (form == PdForm::legacy) {
        // inner sum limit fixed at dw-1, so the double sum factorizes
        double outer = binomial_cdf_le(d, i_hi, p1);
        double inner = binomial_cdf_le(tau - d, dw - 1, p_m.value());
        return std::min(1.0, outer * inner);
    }

    const std::int64_t n2 = tau - d;
    const double pm = p_m.value();
    const double lr1 = std::log(p1) - std::log1p(-p1);
    const double lr2 = std::log(pm) - std::log1p(-pm);
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    constexpr double kRelTol = 1e-18;

    auto log_term = [&](std::int64_t i) {
        return binomial_log_pmf(d, i, p1) + log_binomial_cdf_le(n2, dw - i, pm);
    };

    // adjacent log-term differences decrease in i, so binary search for the
    // last rising step; ternary search is unreliable in the near-flat regime
    std::int64_t lo = 0, hi = i_hi;
    while (lo < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (log_term(mid + 1) >= log_term(mid)) lo = mid + 1;
        else hi = mid;
    }
    const std::int64_t peak = lo;
    const double best = log_term(peak);
    if (best == kNegInf) return 0.0;
    // even i_hi+1 copies of the peak term cannot reach a representable value
    if (best + std::log(static_cast<double>(i_hi) + 1.0) < -800.0) return 0.0;

    // sum outward from the peak, maintaining both pmf factors and the inner
    // log-cdf by ratio recurrences; terms are scaled by exp(-best)
    double total = 1.0;
    const double saturated = std::exp(-best);  // scaled total meaning a sum of 1
    {   // upward in i: inner cdf argument dw - i decreases
        double lp = binomial_log_pmf(d, peak, p1);
        double lc = log_binomial_cdf_le(n2, dw - peak, pm);
        double lpm = binomial_log_pmf(n2, dw - peak, pm);
        for (std::int64_t i = peak + 1; i <= i_hi && lc != kNegInf; ++i) {
            lp += lr1 + std::log(static_cast<double>(d - i + 1) / static_cast<double>(i));
            std::int64_t m = dw - i;  // cdf(m) = cdf(m+1) - pmf(m+1)
            double diff = lpm - lc;   // lpm holds pmf(m+1) here
            lc += diff < 0.0 ? std::log1p(-std::exp(diff)) : kNegInf;
            if (m < 0 || m > n2)
                lpm = kNegInf;
            else if (lpm == kNegInf)  // re-anchor after a boundary
                lpm = binomial_log_pmf(n2, m, pm);
            else                      // pmf(m) from pmf(m+1)
                lpm += -lr2 + std::log(static_cast<double>(m + 1) /
                                       static_cast<double>(n2 - m));
            double t = std::exp(std::min(lp + lc - best, 700.0));
            total += t;
            if (t < total * kRelTol || total >= saturated) break;
        }
    }
    {   // downward in i: inner cdf argument increases
        double lp = binomial_log_pmf(d, peak, p1);
        double lc = log_binomial_cdf_le(n2, dw - peak, pm);
        double lpm = binomial_log_pmf(n2, dw - peak, pm);
        for (std::int64_t i = peak - 1; i >= 0; --i) {
            lp += -lr1 + std::log(static_cast<double>(i + 1) / static_cast<double>(d - i));
            std::int64_t m = dw - i;  // cdf(m) = cdf(m-1) + pmf(m)
            if (m >= 1 && m <= n2)
                lpm += lr2 + std::log(static_cast<double>(n2 - m + 1) /
                                      static_cast<double>(m));
            else
                lpm = kNegInf;
            if (m > n2) lc = 0.0;
            else if (lc == kNegInf) lc = lpm;
            else if (lpm != kNegInf)
                lc = std::max(lc, lpm) + std::log1p(std::exp(-std::fabs(lpm - lc)));
            if (lc > 0.0) lc = 0.0;
            double t = std::exp(std::min(lp + lc - best, 700.0));
            total += t;
            if (t < total * kRelTol || total >= saturated) break;
        }
    }
    return std::min(1.0, std::exp(best) * total);
}

} // namespace kdp
