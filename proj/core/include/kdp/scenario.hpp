#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kdp/engine.hpp"
#include "kdp/planner.hpp"

namespace kdp {

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Desk-scale protocol parameters for simulation and leakage audits.
struct ToyParams {
    std::int64_t k1 = 8;
    std::int64_t r1 = 4;
    std::int64_t ell = 2;
    std::int64_t d = 4;        // authentication-code distance target
    std::int64_t delta_w = 1;  // verification threshold
    std::int64_t r2 = 3;       // seed-block check bits
    double eps = 0.5;          // extractor distance target
    double c = 8.0;            // extractor design parameter
    unsigned asu_b_min = 3;    // keyed-hash minimum field width
};

/// Smallest-key keyed-hash geometry covering an a-bit payload.
AsuParams size_asu(std::int64_t a, unsigned b_min);

/// Desk-scale plan for one protocol, ready for prepare_session. Hybrid
/// plans carry both stage plans; the stage-1 key length matches the
/// stage-2 keyed-hash key.
ProtocolPlan toy_plan(Protocol p, const ToyParams& t);

/// Parsed scenario file: channel, requirement budgets, work lists and seeds.
/// Serialization is lossless (shortest round-trip decimals).
struct Scenario {
    int schema = 1;

    // channel, either form; the source model reduces to (p_m, p_w)
    double p_m = 0.01;
    double p_w = 0.2;
    std::optional<double> pi_a, pi_b, pi_e;

    double i_adm = 1e-30;
    double p_e_adm = 1e-5;
    double p_f_adm = 1e-5;
    double p_d_adm = 1e-5;
    double p_risk_adm = 1e-5;

    std::vector<Protocol> protocols;       // empty and not explicit = all twelve
    bool protocols_explicit = false;       // a protocols key was given, even if empty
    std::vector<std::int64_t> ell_grid;
    std::int64_t trials = 10000;
    std::uint64_t seed = 1;
    AdversaryMode adversary = AdversaryMode::passive;
    ToyParams toy;

    ChannelParams channel() const;
    Requirements requirements(std::int64_t ell) const;
    std::vector<Protocol> protocol_list() const;
};

/// Shortest decimal that parses back to exactly the same double.
std::string format_double(double v);

Scenario parse_scenario(const std::string& text);
std::string serialize_scenario(const Scenario& s);

Scenario load_scenario(const std::string& path);

} // namespace kdp
