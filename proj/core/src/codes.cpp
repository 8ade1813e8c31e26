#include "kdp/codes.hpp"

#include <cmath>
#include <limits>

namespace kdp {

LinearCode::LinearCode(CodeSpec spec, std::vector<BitString> parity_rows)
    : spec_(spec), parity_rows_(std::move(parity_rows)) {
    if (spec_.k < 1 || spec_.r < 1)
        throw std::invalid_argument("LinearCode: k and r must be positive");
    if (static_cast<std::int64_t>(parity_rows_.size()) != spec_.k)
        throw std::invalid_argument("LinearCode: parity row count != k");
    for (const auto& row : parity_rows_)
        if (static_cast<std::int64_t>(row.size()) != spec_.r)
            throw std::invalid_argument("LinearCode: parity row width != r");
}

BitString LinearCode::encode_checks(const BitString& x) const {
    if (static_cast<std::int64_t>(x.size()) != spec_.k)
        throw std::invalid_argument("encode_checks: length mismatch");
    BitString c(spec_.r);
    for (std::int64_t i = 0; i < spec_.k; ++i)
        if (x.get(i)) c ^= parity_rows_[i];
    return c;
}

BitString LinearCode::encode(const BitString& x) const {
    return x.concat(encode_checks(x));
}

namespace {
// Enumerate n-bit masks of the given weight in increasing string-lex order
// (bit 0 read first; a pattern with its 1s later is smaller). Returns false
// from visit to stop.
template <typename F>
bool lex_masks(unsigned n, unsigned pos, unsigned weight, std::uint32_t mask, F&& visit) {
    if (weight == 0) return visit(mask);
    if (n - pos < weight) return true;
    if (!lex_masks(n, pos + 1, weight, mask, visit)) return false;
    return lex_masks(n, pos + 1, weight - 1, mask | (std::uint32_t{1} << pos), visit);
}
} // namespace

void LinearCode::build_syndrome_table() const {
    const unsigned n = static_cast<unsigned>(spec_.k + spec_.r);
    if (n > 26) throw std::invalid_argument("decode_nearest: k + r > 26");
    const unsigned k = static_cast<unsigned>(spec_.k);
    const std::size_t nsyn = std::size_t{1} << spec_.r;

    // Parity rows as small integers for fast syndromes.
    std::vector<std::uint32_t> rows(k);
    for (unsigned i = 0; i < k; ++i)
        rows[i] = static_cast<std::uint32_t>(parity_rows_[i].to_uint());

    auto syndrome_of = [&](std::uint32_t mask) {
        std::uint32_t s = static_cast<std::uint32_t>(mask >> k);  // check part
        std::uint32_t info = mask & ((std::uint32_t{1} << k) - 1);
        while (info) {
            unsigned i = static_cast<unsigned>(__builtin_ctz(info));
            s ^= rows[i];
            info &= info - 1;
        }
        return s;
    };

    syndrome_table_.assign(nsyn, std::numeric_limits<std::uint32_t>::max());
    std::size_t filled = 0;
    for (unsigned w = 0; w <= n && filled < nsyn; ++w) {
        lex_masks(n, 0, w, 0, [&](std::uint32_t mask) {
            std::uint32_t s = syndrome_of(mask);
            if (syndrome_table_[s] == std::numeric_limits<std::uint32_t>::max()) {
                syndrome_table_[s] = mask;
                ++filled;
            }
            return filled < nsyn;
        });
    }
    table_built_ = true;
}

BitString LinearCode::decode_nearest(const BitString& y, const BitString& checks) const {
    if (static_cast<std::int64_t>(y.size()) != spec_.k ||
        static_cast<std::int64_t>(checks.size()) != spec_.r)
        throw std::invalid_argument("decode_nearest: length mismatch");
    if (!table_built_) build_syndrome_table();

    const unsigned k = static_cast<unsigned>(spec_.k);
    std::uint32_t v = static_cast<std::uint32_t>(y.to_uint()) |
                      (static_cast<std::uint32_t>(checks.to_uint()) << k);
    std::uint32_t s = static_cast<std::uint32_t>(encode_checks(y).to_uint()) ^
                      static_cast<std::uint32_t>(checks.to_uint());
    std::uint32_t e = syndrome_table_[s];
    std::uint32_t info = (v ^ e) & ((std::uint32_t{1} << k) - 1);
    return BitString::from_uint(info, k);
}

std::size_t LinearCode::min_distance() const {
    if (spec_.k > 22) throw std::invalid_argument("min_distance: k > 22");
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << spec_.k); ++m) {
        BitString x = BitString::from_uint(m, static_cast<std::size_t>(spec_.k));
        std::size_t w = x.popcount() + encode_checks(x).popcount();
        if (w < best) best = w;
    }
    return best;
}

double gallager_E0(double rho, Probability p_m) {
    double p = p_m.value();
    double e = 1.0 / (1.0 + rho);
    double sum = std::pow(p, e) + std::pow(1.0 - p, e);
    return rho - (1.0 + rho) * std::log2(sum);
}

double gallager_exponent(double rc, Probability p_m) {
    double cap = 1.0 - binary_entropy(p_m);
    double rc_max = 1.0 / (2.0 - cap);  // == 1/(1+g(p_m))
    if (rc < 0.5 - 1e-12 || rc > rc_max + 1e-12)
        throw std::invalid_argument("gallager_exponent: rate outside admissible band");
    double delta = (2.0 * rc - 1.0) / rc;
    auto f = [&](double rho) { return gallager_E0(rho, p_m) - rho * delta; };

    // golden-section maximization on (0,1)
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0, b = 1.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-10) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a); f2 = f(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a); f1 = f(x1);
        }
    }
    double v = std::max(f1, f2);
    return v > 0.0 ? v : 0.0;
}

std::int64_t solve_k_for_error(Probability P_e_adm, double rc, Probability p_m) {
    double pe = P_e_adm.value();
    if (!(pe > 0.0 && pe < 1.0))
        throw std::invalid_argument("solve_k_for_error: P_e_adm outside (0,1)");
    double E = gallager_exponent(rc, p_m);
    if (E <= 0.0)
        throw InfeasibleError("solve_k_for_error: exponent vanishes at this rate");
    double x = -std::log2(pe) / E;
    auto k = static_cast<std::int64_t>(std::ceil(x - 1e-9));
    return k < 1 ? 1 : k;
}

std::int64_t asymptotic_check_budget(std::int64_t k, Probability p_m) {
    if (k < 1) throw std::invalid_argument("asymptotic_check_budget: k < 1");
    double r = static_cast<double>(k) * binary_entropy(p_m);
    return static_cast<std::int64_t>(std::ceil(r - 1e-9));
}

LinearCode make_random_systematic_code(std::int64_t k, std::int64_t r, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<BitString> rows;
    rows.reserve(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < k; ++i)
        rows.push_back(BitString::random(static_cast<std::size_t>(r), rng));
    return LinearCode(CodeSpec{k, r}, std::move(rows));
}

std::pair<std::int64_t, std::int64_t> solve_varshamov_gilbert(std::int64_t k0, double p_hint) {
    if (k0 < 1) throw std::invalid_argument("solve_varshamov_gilbert: k0 < 1");
    double margin = 1.0 - binary_entropy(Probability(p_hint));
    if (margin <= 0.0)
        throw InfeasibleError("solve_varshamov_gilbert: 1 - g(2d/k2) <= 0");
    auto k2 = static_cast<std::int64_t>(std::ceil(2.0 * k0 / margin - 1e-9));
    while (static_cast<double>(k2) * margin < 2.0 * k0 - 1e-9) ++k2;
    auto d = static_cast<std::int64_t>(std::floor(p_hint * k2 / 2.0 + 1e-9));
    return {k2, d};
}

} // namespace kdp
