#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "kdp/authcode.hpp"
#include "kdp/entropy.hpp"

namespace kdp {

/// The twelve key-distribution protocols. "primed" variants assume a
/// pre-shared authentication key of ell0 bits; hybrid variants generate
/// that key in a first hash-based stage.
enum class Protocol {
    alpha,
    beta,
    alpha_ext,
    beta_ext,
    alpha_primed,
    beta_primed,
    alpha_primed_ext,
    beta_primed_ext,
    hybrid_alpha_alpha_primed_ext,
    hybrid_beta_alpha_primed_ext,
    hybrid_alpha_beta_primed_ext,
    hybrid_beta_beta_primed_ext,
};

constexpr Protocol kAllProtocols[] = {
    Protocol::alpha, Protocol::beta, Protocol::alpha_ext, Protocol::beta_ext,
    Protocol::alpha_primed, Protocol::beta_primed, Protocol::alpha_primed_ext,
    Protocol::beta_primed_ext, Protocol::hybrid_alpha_alpha_primed_ext,
    Protocol::hybrid_beta_alpha_primed_ext, Protocol::hybrid_alpha_beta_primed_ext,
    Protocol::hybrid_beta_beta_primed_ext,
};

std::string_view protocol_name(Protocol p);
std::optional<Protocol> protocol_from_name(std::string_view name);
bool protocol_uses_extractor(Protocol p);
bool protocol_is_primed(Protocol p);
bool protocol_is_hybrid(Protocol p);

/// Target key length and admissible failure budgets.
struct Requirements {
    std::int64_t ell_req = 0;
    double I_adm = 1e-30;
    Probability P_e_adm{1e-5};
    Probability P_f_adm{1e-5};
    Probability P_d_adm{1e-5};
    Probability P_risk_adm{1e-5};
};

struct ProtocolPlan {
    Protocol protocol = Protocol::alpha;
    std::int64_t ell = 0;

    std::int64_t k1 = 0;  // reconciled source block
    std::int64_t k2 = 0;  // authentication-code block (keyless AC protocols)
    std::int64_t k3 = 0;  // auxiliary block (hash key / channel-borne seed)
    std::int64_t r1 = 0;  // check bits for the k1 block
    std::int64_t r2 = 0;  // check bits for the seed block, if reconciled
    std::int64_t u = 0;   // extractor seed bits
    double rc = 0.0;      // code rate of the k1 reconciliation code

    AcSpec ac;            // keyless authentication code, zeroed when unused

    std::int64_t ell0 = 0;  // pre-shared key bits (primed / hybrid stage 2)
    unsigned asu_b = 0;     // keyed-hash field width
    unsigned asu_i = 0;     // keyed-hash composition depth

    double c = 0.0;    // design parameter, > 1 for extractor plans
    double eps = 0.0;  // extractor statistical-distance target

    std::int64_t total_k = 0;  // raw bits consumed
    double key_rate = 0.0;

    std::vector<ProtocolPlan> stages;  // hybrid: [stage1 hash, stage2 primed]
};

ProtocolPlan plan_single_hash(Protocol p, const ChannelParams& ch, const Requirements& req);
ProtocolPlan plan_single_ext(Protocol p, const ChannelParams& ch, const Requirements& req);
ProtocolPlan plan_primed(Protocol p, const ChannelParams& ch, const Requirements& req);
ProtocolPlan plan_hybrid(Protocol p, const ChannelParams& ch, const Requirements& req);

/// Dispatch on the protocol family.
ProtocolPlan plan(Protocol p, const ChannelParams& ch, const Requirements& req);

/// Closed-form key rate in the ell -> infinity limit.
double asymptotic_rate(Protocol p, const ChannelParams& ch);

struct SweepRow {
    Protocol protocol;
    std::int64_t ell = 0;
    bool feasible = false;
    double c_opt = 0.0;
    double key_rate = 0.0;
    double asymptote = 0.0;
    ProtocolPlan plan;
};

/// One row per (protocol, ell) grid point, grid order preserved.
std::vector<SweepRow> sweep(const std::vector<Protocol>& protocols,
                            const ChannelParams& ch, const Requirements& req,
                            const std::vector<std::int64_t>& ell_grid);

} // namespace kdp
