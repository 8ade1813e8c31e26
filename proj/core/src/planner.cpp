#include "kdp/planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "kdp/extractor.hpp"
#include "kdp/leakage.hpp"

namespace kdp {

namespace {

constexpr double kLn2 = 0.6931471805599453;

struct ProtocolNameEntry {
    Protocol p;
    std::string_view name;
};

constexpr ProtocolNameEntry kNames[] = {
    {Protocol::alpha, "alpha"},
    {Protocol::beta, "beta"},
    {Protocol::alpha_ext, "alpha_ext"},
    {Protocol::beta_ext, "beta_ext"},
    {Protocol::alpha_primed, "alpha_primed"},
    {Protocol::beta_primed, "beta_primed"},
    {Protocol::alpha_primed_ext, "alpha_primed_ext"},
    {Protocol::beta_primed_ext, "beta_primed_ext"},
    {Protocol::hybrid_alpha_alpha_primed_ext, "hybrid_alpha_alpha_primed_ext"},
    {Protocol::hybrid_beta_alpha_primed_ext, "hybrid_beta_alpha_primed_ext"},
    {Protocol::hybrid_alpha_beta_primed_ext, "hybrid_alpha_beta_primed_ext"},
    {Protocol::hybrid_beta_beta_primed_ext, "hybrid_beta_beta_primed_ext"},
};

void require_usable_channel(const ChannelParams& ch) {
    if (!(ch.p_w.value() > ch.p_m.value()))
        throw InfeasibleError("wiretap channel must be noisier than the main channel");
    if (ch.p_m.value() >= 0.5)
        throw InfeasibleError("main channel has zero capacity");
}

void validate_requirements(const Requirements& req) {
    if (req.ell_req < 1) throw std::invalid_argument("requirements: ell_req < 1");
    if (!(req.I_adm > 0.0)) throw std::invalid_argument("requirements: I_adm <= 0");
    auto check01 = [](double v, const char* what) {
        if (!(v > 0.0 && v < 1.0))
            throw std::invalid_argument(std::string("requirements: ") + what + " outside (0,1)");
    };
    check01(req.P_e_adm.value(), "P_e_adm");
    check01(req.P_f_adm.value(), "P_f_adm");
    check01(req.P_d_adm.value(), "P_d_adm");
    check01(req.P_risk_adm.value(), "P_risk_adm");
}

struct Recon {
    double rc = 0.0;
    double r1 = 0.0;
};

double max_code_rate(Probability p_m) {
    return 1.0 / (1.0 + binary_entropy(p_m));
}

// Bisections revisit the same rate grid many times per plan, so the
// exponent evaluations are memoized.
double cached_exponent(double rc, Probability p_m) {
    static thread_local std::unordered_map<std::uint64_t, double> memo;
    std::uint64_t krc, kpm;
    double pm = p_m.value();
    std::memcpy(&krc, &rc, sizeof krc);
    std::memcpy(&kpm, &pm, sizeof kpm);
    std::uint64_t key = krc ^ (kpm * 0x9e3779b97f4a7c15ull);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    double v = gallager_exponent(rc, p_m);
    memo.emplace(key, v);
    return v;
}

// Largest code rate whose error exponent still reaches neg_log_pe / k1.
Recon solve_recon(double k1, Probability p_m, double neg_log_pe) {
    double need = neg_log_pe / k1 * (1.0 - 1e-9);
    double rc_max = max_code_rate(p_m);
    double lo = 0.5, hi = rc_max;
    if (cached_exponent(lo, p_m) < need)
        throw InfeasibleError("block too short for the admissible error probability");
    for (int it = 0; it < 48; ++it) {
        double mid = 0.5 * (lo + hi);
        if (cached_exponent(mid, p_m) >= need) lo = mid;
        else hi = mid;
    }
    Recon r;
    r.rc = lo;
    r.r1 = k1 * (1.0 / lo - 1.0);
    return r;
}

double min_block_length(Probability p_m, double neg_log_pe) {
    return neg_log_pe / gallager_exponent(0.5, p_m) * (1.0 + 1e-9) + 1.0;
}

// Root of deficit(k1) = k1*entropy_rate - demand(k1), found by doubling then
// bisection; demand grows strictly slower than linearly near the root.
double solve_block_length(double k_lo, double entropy_rate,
                          const std::function<double(double)>& demand) {
    auto deficit = [&](double k1) { return k1 * entropy_rate - demand(k1); };
    if (deficit(k_lo) >= 0.0) return k_lo;
    double hi = k_lo;
    for (int it = 0; it < 64; ++it) {
        hi *= 2.0;
        if (hi > 1e15)
            throw InfeasibleError("entropy rate cannot cover the key and overhead demand");
        if (deficit(hi) >= 0.0) break;
    }
    double lo = hi / 2.0;
    while (hi - lo > 0.25) {
        double mid = 0.5 * (lo + hi);
        if (deficit(mid) >= 0.0) hi = mid;
        else lo = mid;
    }
    return hi;
}

// Smallest even-length AC block meeting both authentication budgets, with
// the distance taken from the Varshamov-Gilbert balance
// k2*(1 - g(2d/k2)) >= 2*k0 and the threshold from the false-rejection tail.
std::optional<AcSpec> try_ac(std::int64_t k2, std::int64_t k0, Probability p_m,
                             Probability p_w, Probability pf_adm, Probability pd_adm) {
    std::int64_t n0 = k2 / 2;
    if (k0 >= n0) return std::nullopt;

    auto vg_ok = [&](std::int64_t d) {
        double frac = static_cast<double>(2 * d) / static_cast<double>(k2);
        return static_cast<double>(k2) * (1.0 - binary_entropy(Probability(frac))) >=
               2.0 * static_cast<double>(k0);
    };
    std::int64_t d_hi = n0 / 2;
    if (d_hi < 1 || !vg_ok(1)) return std::nullopt;
    std::int64_t lo = 1, hi = d_hi;
    while (lo < hi) {  // largest d with vg_ok
        std::int64_t mid = lo + (hi - lo + 1) / 2;
        if (vg_ok(mid)) lo = mid;
        else hi = mid - 1;
    }
    std::int64_t d = lo;

    AcSpec spec;
    spec.n0 = n0;
    spec.k0 = k0;
    spec.d = d;

    auto pf_ok = [&](std::int64_t dw) {
        spec.delta_w = dw;
        return pf_bound(spec, p_m) <= pf_adm.value();
    };
    if (!pf_ok(n0 - 1)) return std::nullopt;
    std::int64_t dlo = 0, dhi = n0 - 1;
    while (dlo < dhi) {  // smallest delta_w within the false-rejection budget
        std::int64_t mid = dlo + (dhi - dlo) / 2;
        if (pf_ok(mid)) dhi = mid;
        else dlo = mid + 1;
    }
    spec.delta_w = dlo;

    if (pd_bound(spec, p_m, p_w, PdForm::operational) > pd_adm.value())
        return std::nullopt;
    return spec;
}

AcSpec solve_ac(std::int64_t k0, Probability p_m, Probability p_w,
                Probability pf_adm, Probability pd_adm) {
    std::int64_t k2 = 2 * (k0 + 2);
    std::optional<AcSpec> found;
    while (k2 <= (std::int64_t{1} << 46)) {
        found = try_ac(k2, k0, p_m, p_w, pf_adm, pd_adm);
        if (found) break;
        k2 *= 2;
    }
    if (!found)
        throw InfeasibleError("no authentication-code block meets the deception budgets");
    std::int64_t lo = std::max<std::int64_t>(2 * (k0 + 2) - 2, k2 / 2);
    std::int64_t hi = k2;
    while (hi - lo > 2) {
        std::int64_t mid = lo + (hi - lo) / 2;
        mid += mid & 1;
        if (mid >= hi) mid -= 2;
        auto attempt = try_ac(mid, k0, p_m, p_w, pf_adm, pd_adm);
        if (attempt) { hi = mid; found = attempt; }
        else lo = mid;
    }
    return *found;
}

// ell0 of the keyed hash: field width b, depth i, key b*(i+2); b must cover
// both the message (b*2^i >= a) and the substitution budget (i+1)/2^b <= pd.
void pick_asu(std::int64_t a, Probability pd_adm, unsigned& b_out, unsigned& i_out,
              std::int64_t& ell0_out) {
    std::int64_t best = -1;
    for (unsigned i = 1; i <= 60; ++i) {
        double cover = std::ceil(static_cast<double>(a) / std::pow(2.0, i) - 1e-12);
        double floorb = std::ceil(std::log2((i + 1) / pd_adm.value()) - 1e-12);
        auto b = static_cast<std::int64_t>(std::max({cover, floorb, 1.0}));
        std::int64_t ell0 = b * (i + 2);
        if (best < 0 || ell0 < best) {
            best = ell0;
            b_out = static_cast<unsigned>(b);
            i_out = i;
        }
    }
    ell0_out = best;
}

std::int64_t ceil_i64(double v) {
    return static_cast<std::int64_t>(std::ceil(v - 1e-9));
}

// Shared scaffold of the extractor-based equation system at a fixed c.
struct ExtCore {
    std::int64_t k1 = 0, r1 = 0, u = 0, r2 = 0;
    double rc = 0.0;
    double eps = 0.0;
};

ExtCore solve_ext_core(const ChannelParams& ch, const Requirements& req, double c,
                       bool seed_from_channel) {
    const double ell = static_cast<double>(req.ell_req);
    const double h_inf = min_entropy_per_bit(ch.p_w);
    const double neg_log_pe = -std::log2(req.P_e_adm.value());
    const double s = -std::log2(req.P_risk_adm.value());
    const double eps = required_eps(req.I_adm, ell);
    const double dist_term = 3.0 * std::log2(ell / eps) + 3.0;
    const double k_lo = min_block_length(ch.p_m, neg_log_pe);

    auto demand = [&](double k1) {
        Recon rec = solve_recon(k1, ch.p_m, neg_log_pe);
        auto k1i = static_cast<std::int64_t>(std::ceil(k1));
        double u = static_cast<double>(seed_length(k1i, eps, c));
        return c * ell + rec.r1 + s + u + dist_term;
    };
    double root = solve_block_length(k_lo, h_inf, demand);

    ExtCore core;
    core.eps = eps;
    core.k1 = ceil_i64(root);
    Recon rec = solve_recon(static_cast<double>(core.k1), ch.p_m, neg_log_pe);
    core.rc = rec.rc;
    core.r1 = ceil_i64(rec.r1);
    core.u = seed_length(core.k1, eps, c);

    // balance recheck: the rounded solution still covers the demand
    double covered = static_cast<double>(core.k1) * h_inf;
    double needed = c * ell + static_cast<double>(core.r1) + s +
                    static_cast<double>(core.u) + dist_term;
    if (covered + 1.0 < needed)
        throw std::logic_error("extractor equation system out of balance after rounding");

    if (seed_from_channel) {
        double rc2 = 0.5;
        double e_half = gallager_exponent(0.5, ch.p_m);
        if (static_cast<double>(core.u) * e_half >= neg_log_pe)
            rc2 = solve_recon(static_cast<double>(core.u), ch.p_m, neg_log_pe).rc;
        core.r2 = ceil_i64(static_cast<double>(core.u) * (1.0 / rc2 - 1.0));
    }
    return core;
}

struct HashCore {
    std::int64_t k1 = 0, r1 = 0;
    double rc = 0.0;
};

HashCore solve_hash_core(const ChannelParams& ch, const Requirements& req) {
    const double ell = static_cast<double>(req.ell_req);
    const double h2 = renyi_entropy_per_bit(ch.p_w);
    const double neg_log_pe = -std::log2(req.P_e_adm.value());
    const double s = -std::log2(req.P_risk_adm.value());
    const double tail = 2.0 * s - std::log2(req.I_adm * kLn2) - 2.0;
    const double k_lo = min_block_length(ch.p_m, neg_log_pe);

    auto demand = [&](double k1) {
        Recon rec = solve_recon(k1, ch.p_m, neg_log_pe);
        return ell + rec.r1 + tail;
    };
    double root = solve_block_length(k_lo, h2, demand);

    HashCore core;
    core.k1 = ceil_i64(root);
    Recon rec = solve_recon(static_cast<double>(core.k1), ch.p_m, neg_log_pe);
    core.rc = rec.rc;
    core.r1 = ceil_i64(rec.r1);
    return core;
}

void check_rate_ceiling(const ProtocolPlan& p, const ChannelParams& ch) {
    double cap = secret_key_capacity(ch);
    if (p.key_rate > cap + 1e-9)
        throw std::logic_error("planned key rate exceeds the secrecy capacity ceiling");
}

// Optimize an extractor plan over c on a log grid with golden refinement;
// the rate has a single interior peak in c.
template <typename BuildFn>
ProtocolPlan optimize_c(BuildFn&& build) {
    constexpr int kGrid = 200;
    const double c_lo = 1.0 + 1e-3, c_hi = 64.0;
    const double l_lo = std::log(c_lo), l_hi = std::log(c_hi);

    auto rate_at = [&](double c) -> double {
        try {
            return build(c).key_rate;
        } catch (const InfeasibleError&) {
            return -1.0;
        }
    };

    int best = -1;
    double best_rate = -1.0;
    std::vector<double> cs(kGrid);
    for (int i = 0; i < kGrid; ++i) {
        cs[i] = std::exp(l_lo + (l_hi - l_lo) * i / (kGrid - 1));
        double r = rate_at(cs[i]);
        if (r > best_rate) { best_rate = r; best = i; }
    }
    if (best_rate <= 0.0)
        return build(cs[kGrid / 2]);  // propagate the infeasibility reason

    double a = std::log(cs[std::max(best - 1, 0)]);
    double b = std::log(cs[std::min(best + 1, kGrid - 1)]);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = rate_at(std::exp(x1)), f2 = rate_at(std::exp(x2));
    for (int it = 0; it < 40; ++it) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a); f2 = rate_at(std::exp(x2));
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a); f1 = rate_at(std::exp(x1));
        }
    }
    double c_best = std::exp(f1 >= f2 ? x1 : x2);
    if (std::max(f1, f2) < best_rate) c_best = cs[best];
    return build(c_best);
}

} // namespace

std::string_view protocol_name(Protocol p) {
    for (const auto& e : kNames)
        if (e.p == p) return e.name;
    throw std::invalid_argument("protocol_name: unknown protocol");
}

std::optional<Protocol> protocol_from_name(std::string_view name) {
    for (const auto& e : kNames)
        if (e.name == name) return e.p;
    return std::nullopt;
}

bool protocol_uses_extractor(Protocol p) {
    switch (p) {
        case Protocol::alpha:
        case Protocol::beta:
        case Protocol::alpha_primed:
        case Protocol::beta_primed:
            return false;
        default:
            return true;
    }
}

bool protocol_is_primed(Protocol p) {
    return p == Protocol::alpha_primed || p == Protocol::beta_primed ||
           p == Protocol::alpha_primed_ext || p == Protocol::beta_primed_ext;
}

bool protocol_is_hybrid(Protocol p) {
    return p == Protocol::hybrid_alpha_alpha_primed_ext ||
           p == Protocol::hybrid_beta_alpha_primed_ext ||
           p == Protocol::hybrid_alpha_beta_primed_ext ||
           p == Protocol::hybrid_beta_beta_primed_ext;
}

ProtocolPlan plan_single_hash(Protocol p, const ChannelParams& ch, const Requirements& req) {
    if (p != Protocol::alpha && p != Protocol::beta)
        throw std::invalid_argument("plan_single_hash: protocol is not alpha or beta");
    require_usable_channel(ch);
    validate_requirements(req);

    HashCore core = solve_hash_core(ch, req);
    ProtocolPlan plan;
    plan.protocol = p;
    plan.ell = req.ell_req;
    plan.k1 = core.k1;
    plan.r1 = core.r1;
    plan.rc = core.rc;
    plan.k3 = (p == Protocol::beta) ? core.k1 : 0;

    std::int64_t k0 = (p == Protocol::alpha) ? core.k1 + core.r1 : 2 * core.r1;
    plan.ac = solve_ac(k0, ch.p_m, ch.p_w, req.P_f_adm, req.P_d_adm);
    plan.k2 = plan.ac.n_a();

    plan.total_k = plan.k1 + plan.k2 + plan.k3;
    plan.key_rate = static_cast<double>(plan.ell) / static_cast<double>(plan.total_k);
    check_rate_ceiling(plan, ch);
    return plan;
}

ProtocolPlan plan_single_ext(Protocol p, const ChannelParams& ch, const Requirements& req) {
    if (p != Protocol::alpha_ext && p != Protocol::beta_ext)
        throw std::invalid_argument("plan_single_ext: protocol is not alpha_ext or beta_ext");
    require_usable_channel(ch);
    validate_requirements(req);
    const bool seed_from_channel = (p == Protocol::beta_ext);

    auto build = [&](double c) {
        ExtCore core = solve_ext_core(ch, req, c, seed_from_channel);
        ProtocolPlan plan;
        plan.protocol = p;
        plan.ell = req.ell_req;
        plan.k1 = core.k1;
        plan.r1 = core.r1;
        plan.r2 = core.r2;
        plan.u = core.u;
        plan.rc = core.rc;
        plan.c = c;
        plan.eps = core.eps;
        plan.k3 = seed_from_channel ? core.u : 0;

        std::int64_t k0 = seed_from_channel ? core.r1 + core.r2 : core.u + core.r1;
        plan.ac = solve_ac(k0, ch.p_m, ch.p_w, req.P_f_adm, req.P_d_adm);
        plan.k2 = plan.ac.n_a();

        plan.total_k = plan.k1 + plan.k2 + plan.k3;
        plan.key_rate = static_cast<double>(plan.ell) / static_cast<double>(plan.total_k);
        check_rate_ceiling(plan, ch);
        return plan;
    };
    return optimize_c(build);
}

ProtocolPlan plan_primed(Protocol p, const ChannelParams& ch, const Requirements& req) {
    if (!protocol_is_primed(p))
        throw std::invalid_argument("plan_primed: protocol is not a primed variant");
    require_usable_channel(ch);
    validate_requirements(req);

    if (p == Protocol::alpha_primed || p == Protocol::beta_primed) {
        HashCore core = solve_hash_core(ch, req);
        ProtocolPlan plan;
        plan.protocol = p;
        plan.ell = req.ell_req;
        plan.k1 = core.k1;
        plan.r1 = core.r1;
        plan.rc = core.rc;
        std::int64_t a = core.r1;
        if (p == Protocol::beta_primed) {
            plan.k3 = core.k1;
            a = 2 * core.r1;
        }
        pick_asu(a, req.P_d_adm, plan.asu_b, plan.asu_i, plan.ell0);
        plan.total_k = plan.k1 + plan.k3;
        plan.key_rate = static_cast<double>(plan.ell) / static_cast<double>(plan.total_k);
        check_rate_ceiling(plan, ch);
        return plan;
    }

    const bool seed_from_channel = (p == Protocol::beta_primed_ext);
    auto build = [&](double c) {
        ExtCore core = solve_ext_core(ch, req, c, seed_from_channel);
        ProtocolPlan plan;
        plan.protocol = p;
        plan.ell = req.ell_req;
        plan.k1 = core.k1;
        plan.r1 = core.r1;
        plan.r2 = core.r2;
        plan.u = core.u;
        plan.rc = core.rc;
        plan.c = c;
        plan.eps = core.eps;
        std::int64_t a = core.r1 + core.u;
        if (seed_from_channel) {
            plan.k3 = core.u;
            a = core.r1 + core.r2;
        }
        pick_asu(a, req.P_d_adm, plan.asu_b, plan.asu_i, plan.ell0);
        plan.total_k = plan.k1 + plan.k3;
        plan.key_rate = static_cast<double>(plan.ell) / static_cast<double>(plan.total_k);
        check_rate_ceiling(plan, ch);
        return plan;
    };
    return optimize_c(build);
}

ProtocolPlan plan_hybrid(Protocol p, const ChannelParams& ch, const Requirements& req) {
    if (!protocol_is_hybrid(p))
        throw std::invalid_argument("plan_hybrid: protocol is not a hybrid variant");
    require_usable_channel(ch);
    validate_requirements(req);

    Protocol stage1_p = (p == Protocol::hybrid_alpha_alpha_primed_ext ||
                         p == Protocol::hybrid_alpha_beta_primed_ext)
                            ? Protocol::alpha
                            : Protocol::beta;
    Protocol stage2_p = (p == Protocol::hybrid_alpha_alpha_primed_ext ||
                         p == Protocol::hybrid_beta_alpha_primed_ext)
                            ? Protocol::alpha_primed_ext
                            : Protocol::beta_primed_ext;

    // each stage gets half of the leakage and risk budgets
    Requirements req2 = req;
    req2.I_adm = req.I_adm / 2.0;
    req2.P_risk_adm = Probability(req.P_risk_adm.value() / 2.0);

    ProtocolPlan stage2;
    try {
        stage2 = plan_primed(stage2_p, ch, req2);
    } catch (const InfeasibleError& e) {
        throw InfeasibleError(std::string("hybrid stage 2 infeasible: ") + e.what());
    }

    Requirements req1 = req2;
    req1.ell_req = stage2.ell0;
    ProtocolPlan stage1;
    try {
        stage1 = plan_single_hash(stage1_p, ch, req1);
    } catch (const InfeasibleError& e) {
        throw InfeasibleError(std::string("hybrid stage 1 infeasible: ") + e.what());
    }

    ProtocolPlan plan;
    plan.protocol = p;
    plan.ell = req.ell_req;
    plan.k1 = stage2.k1;
    plan.k3 = stage2.k3;
    plan.r1 = stage2.r1;
    plan.r2 = stage2.r2;
    plan.u = stage2.u;
    plan.rc = stage2.rc;
    plan.c = stage2.c;
    plan.eps = stage2.eps;
    plan.ell0 = stage2.ell0;
    plan.asu_b = stage2.asu_b;
    plan.asu_i = stage2.asu_i;
    plan.total_k = stage1.total_k + stage2.total_k;
    plan.key_rate = static_cast<double>(plan.ell) / static_cast<double>(plan.total_k);
    plan.stages = {std::move(stage1), std::move(stage2)};
    check_rate_ceiling(plan, ch);
    return plan;
}

ProtocolPlan plan(Protocol p, const ChannelParams& ch, const Requirements& req) {
    if (protocol_is_hybrid(p)) return plan_hybrid(p, ch, req);
    if (protocol_is_primed(p)) return plan_primed(p, ch, req);
    if (p == Protocol::alpha_ext || p == Protocol::beta_ext)
        return plan_single_ext(p, ch, req);
    return plan_single_hash(p, ch, req);
}

double asymptotic_rate(Protocol p, const ChannelParams& ch) {
    double g = binary_entropy(ch.p_m);
    double h2 = renyi_entropy_per_bit(ch.p_w);
    double hi = min_entropy_per_bit(ch.p_w);
    switch (p) {
        case Protocol::alpha: return (h2 - g) / (3.0 + 2.0 * g);
        case Protocol::beta: return (h2 - g) / (2.0 + 4.0 * g);
        case Protocol::alpha_ext:
        case Protocol::beta_ext: return (hi - g) / (1.0 + 2.0 * g);
        case Protocol::alpha_primed: return h2 - g;
        case Protocol::beta_primed: return (h2 - g) / 2.0;
        case Protocol::alpha_primed_ext:
        case Protocol::beta_primed_ext:
        case Protocol::hybrid_alpha_alpha_primed_ext:
        case Protocol::hybrid_beta_alpha_primed_ext:
        case Protocol::hybrid_alpha_beta_primed_ext:
        case Protocol::hybrid_beta_beta_primed_ext: return hi - g;
    }
    throw std::invalid_argument("asymptotic_rate: unknown protocol");
}

std::vector<SweepRow> sweep(const std::vector<Protocol>& protocols,
                            const ChannelParams& ch, const Requirements& req,
                            const std::vector<std::int64_t>& ell_grid) {
    std::vector<SweepRow> rows;
    rows.reserve(protocols.size() * ell_grid.size());
    for (Protocol p : protocols) {
        for (std::int64_t ell : ell_grid) {
            SweepRow row;
            row.protocol = p;
            row.ell = ell;
            row.asymptote = asymptotic_rate(p, ch);
            Requirements r = req;
            r.ell_req = ell;
            try {
                row.plan = plan(p, ch, r);
                row.feasible = true;
                row.c_opt = row.plan.c;
                row.key_rate = row.plan.key_rate;
            } catch (const InfeasibleError&) {
                row.feasible = false;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace kdp
