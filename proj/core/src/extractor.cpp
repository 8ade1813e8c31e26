#include "kdp/extractor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kdp {

bool verify_weak_design(const WeakDesign& d) {
    const double budget = d.c * static_cast<double>(d.sets.size() - 1) + 1e-9;
    for (std::size_t i = 0; i < d.sets.size(); ++i) {
        const auto& si = d.sets[i];
        if (si.size() != d.nu) return false;
        for (std::size_t s = 0; s < si.size(); ++s) {
            if (si[s] >= d.u) return false;
            if (s > 0 && si[s] <= si[s - 1]) return false;
        }
        double sum = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            const auto& sj = d.sets[j];
            std::size_t a = 0, b = 0, overlap = 0;
            while (a < si.size() && b < sj.size()) {
                if (si[a] == sj[b]) { ++overlap; ++a; ++b; }
                else if (si[a] < sj[b]) ++a;
                else ++b;
            }
            sum += std::pow(2.0, static_cast<double>(overlap));
        }
        if (sum > budget) return false;
    }
    return true;
}

unsigned index_bits(std::int64_t k, double eps) {
    if (k < 1) throw std::invalid_argument("index_bits: k < 1");
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("index_bits: eps outside (0,1)");
    double v = std::log2(static_cast<double>(k) / eps);
    auto nu = static_cast<std::int64_t>(std::ceil(v - 1e-12));
    return static_cast<unsigned>(std::max<std::int64_t>(nu, 1));
}

std::int64_t seed_length(std::int64_t k, double eps, double c) {
    if (!(c > 1.0)) throw std::invalid_argument("seed_length: c <= 1");
    auto nu = static_cast<std::int64_t>(index_bits(k, eps));
    auto blocks = static_cast<std::int64_t>(std::ceil(static_cast<double>(nu) / std::log(c) - 1e-12));
    return std::max<std::int64_t>(blocks, 1) * nu;
}

std::int64_t seed_length_full_extraction(std::int64_t k, double eps, double mu) {
    if (!(mu > 0.0 && mu < 0.5))
        throw std::invalid_argument("seed_length_full_extraction: mu outside (0, 1/2)");
    auto nu = static_cast<std::int64_t>(index_bits(k, eps));
    auto blocks = static_cast<std::int64_t>(std::ceil(static_cast<double>(nu) / std::log(2.0) - 1e-12));
    auto reps = static_cast<std::int64_t>(std::ceil(std::log2(4.0 / mu) - 1e-12));
    return blocks * nu * reps;
}

WeakDesign greedy_weak_design(unsigned nu, double c, std::uint64_t ell, std::uint64_t u) {
    if (nu < 1) throw std::invalid_argument("greedy_weak_design: nu < 1");
    if (!(c > 1.0)) throw std::invalid_argument("greedy_weak_design: c <= 1");
    if (ell < 1) throw std::invalid_argument("greedy_weak_design: ell < 1");
    if (u < nu) throw std::invalid_argument("greedy_weak_design: u < nu");

    // Block b covers slots [start[b], start[b+1]).
    std::vector<std::uint64_t> start(nu + 1);
    for (unsigned b = 0; b <= nu; ++b)
        start[b] = (u * b) / nu;

    WeakDesign d;
    d.nu = nu;
    d.c = c;
    d.u = u;
    d.sets.reserve(ell);

    for (std::uint64_t i = 0; i < ell; ++i) {
        // cur[j] holds the product of decided-block factors for earlier set j.
        std::vector<double> cur(i, 1.0);
        std::vector<std::uint32_t> chosen(nu);
        for (unsigned b = 0; b < nu; ++b) {
            std::uint64_t lo = start[b], hi = start[b + 1];
            // Doubling the products of sets that share the slot adds exactly
            // sum(cur[j] over matching j), so minimize that partial sum.
            std::uint64_t best = lo;
            double best_extra = std::numeric_limits<double>::infinity();
            for (std::uint64_t e = lo; e < hi; ++e) {
                double extra = 0.0;
                for (std::uint64_t j = 0; j < i; ++j)
                    if (d.sets[j][b] == e) extra += cur[j];
                if (extra < best_extra) { best_extra = extra; best = e; }
            }
            chosen[b] = static_cast<std::uint32_t>(best);
            for (std::uint64_t j = 0; j < i; ++j)
                cur[j] *= (d.sets[j][b] == best) ? 2.0 : 1.0;
        }
        d.sets.push_back(std::move(chosen));
    }

    if (!verify_weak_design(d))
        throw InfeasibleError("greedy_weak_design: overlap bound unreachable at this u");
    return d;
}

InnerCode build_inner_code(unsigned nu, std::int64_t k) {
    if (nu < 1) throw std::invalid_argument("build_inner_code: nu < 1");
    if (nu > 64) throw std::invalid_argument("build_inner_code: nu > 64 (construction scale)");
    if (k < 1) throw std::invalid_argument("build_inner_code: k < 1");
    InnerCode code;
    code.nu = nu;
    code.m = (nu + 1) / 2;
    code.n_eval = std::uint64_t{1} << (nu - code.m);
    code.k = k;
    code.k_sym = (k + code.m - 1) / code.m;
    if (static_cast<std::uint64_t>(code.k_sym) > code.n_eval)
        throw InfeasibleError("build_inner_code: message needs more symbols than evaluation points");
    return code;
}

InnerCodeword::InnerCodeword(const InnerCode& code, const BitString& x)
    : code_(code), field_(code.m) {
    if (static_cast<std::int64_t>(x.size()) != code.k)
        throw std::invalid_argument("InnerCodeword: message length != k");
    coeffs_.reserve(static_cast<std::size_t>(code.k_sym));
    for (std::int64_t j = 0; j < code.k_sym; ++j) {
        std::size_t pos = static_cast<std::size_t>(j) * code.m;
        std::size_t len = std::min<std::size_t>(code.m, x.size() - pos);
        BitString c = x.slice(pos, len);
        if (len < code.m) {
            BitString padded(code.m);
            for (std::size_t t = 0; t < len; ++t) padded.set(t, c.get(t));
            c = padded;
        }
        coeffs_.push_back(std::move(c));
    }
    if (code.nu <= 24) {
        std::uint64_t n = code_.length();
        table_.assign((n + 63) / 64, 0);
        for (std::uint64_t e = 0; e < code_.n_eval; ++e) {
            BitString alpha = BitString::from_uint(e, code_.m);
            BitString val(code_.m);
            for (std::int64_t j = code_.k_sym - 1; j >= 0; --j)
                val = field_.mul(val, alpha) ^ coeffs_[static_cast<std::size_t>(j)];
            std::uint64_t w = val.to_uint();
            for (std::uint64_t a = 0; a < (std::uint64_t{1} << code_.m); ++a) {
                if (std::popcount(w & a) & 1u) {
                    std::uint64_t idx = (e << code_.m) | a;
                    table_[idx >> 6] |= std::uint64_t{1} << (idx & 63);
                }
            }
        }
        materialized_ = true;
    }
}

bool InnerCodeword::eval(std::uint64_t idx) const {
    std::uint64_t e = idx >> code_.m;
    std::uint64_t a = idx & ((std::uint64_t{1} << code_.m) - 1);
    BitString alpha = BitString::from_uint(e, code_.m);
    BitString val(code_.m);
    for (std::int64_t j = code_.k_sym - 1; j >= 0; --j)
        val = field_.mul(val, alpha) ^ coeffs_[static_cast<std::size_t>(j)];
    return std::popcount(val.to_uint() & a) & 1u;
}

bool InnerCodeword::bit(std::uint64_t idx) const {
    if (idx >= code_.length())
        throw std::out_of_range("InnerCodeword::bit: index past code length");
    if (materialized_)
        return (table_[idx >> 6] >> (idx & 63)) & 1u;
    return eval(idx);
}

ExtractorSpec ExtractorSpec::make(std::int64_t k, std::int64_t ell, double eps, double c) {
    if (ell < 1) throw std::invalid_argument("ExtractorSpec: ell < 1");
    if (ell > k) throw std::invalid_argument("ExtractorSpec: ell > k");
    ExtractorSpec s;
    s.k = k;
    s.ell = ell;
    s.eps = eps;
    s.c = c;
    s.nu = index_bits(k, eps);
    s.u = seed_length(k, eps, c);
    s.code = build_inner_code(s.nu, k);
    return s;
}

BitString extract(const ExtractorSpec& spec, const WeakDesign& design,
                  const BitString& x, const BitString& gamma) {
    if (static_cast<std::int64_t>(x.size()) != spec.k)
        throw std::invalid_argument("extract: source length != k");
    if (static_cast<std::int64_t>(gamma.size()) != spec.u)
        throw std::invalid_argument("extract: seed length != u");
    if (design.nu != spec.nu || design.u != static_cast<std::uint64_t>(spec.u) ||
        design.sets.size() != static_cast<std::size_t>(spec.ell))
        throw std::invalid_argument("extract: design does not match spec");

    InnerCodeword cw(spec.code, x);
    BitString out(static_cast<std::size_t>(spec.ell));
    for (std::int64_t i = 0; i < spec.ell; ++i) {
        std::uint64_t idx = 0;
        const auto& s = design.sets[static_cast<std::size_t>(i)];
        for (unsigned b = 0; b < spec.nu; ++b)
            if (gamma.get(s[b])) idx |= std::uint64_t{1} << b;
        out.set(static_cast<std::size_t>(i), cw.bit(idx));
    }
    return out;
}

double strong_param_c(double h_inf_budget, std::int64_t ell, double eps, std::int64_t u) {
    if (ell < 1) throw std::invalid_argument("strong_param_c: ell < 1");
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("strong_param_c: eps outside (0,1)");
    double c = (h_inf_budget - 3.0 * std::log2(static_cast<double>(ell) / eps) -
                static_cast<double>(u) - 3.0) / static_cast<double>(ell);
    if (c <= 1.0)
        throw InfeasibleError("strong_param_c: budget leaves no admissible design parameter");
    return c;
}

} // namespace kdp
