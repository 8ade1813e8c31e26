#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kdp/authcode.hpp"
#include "kdp/bitstring.hpp"
#include "kdp/extractor.hpp"
#include "kdp/hashfam.hpp"
#include "kdp/planner.hpp"

namespace kdp {

/// One message over the public discussion channel. The tampered flag is
/// bookkeeping visible to the measurement harness only, never to the
/// receiving party's accept/reject logic.
struct PdcMessage {
    std::uint32_t step = 0;
    char origin = 'A';
    bool tampered = false;
    std::vector<BitString> parts;

    BitString flattened() const;
    std::vector<std::uint8_t> serialize() const;
    static PdcMessage deserialize(const std::vector<std::uint8_t>& bytes);

    bool operator==(const PdcMessage& o) const = default;
};

enum class AdversaryMode {
    passive,
    impersonate,
    substitute_random,
    substitute_nearest_codeword,
    break_off,
};

struct AdversaryPolicy {
    AdversaryMode mode = AdversaryMode::passive;
};

std::string_view adversary_mode_name(AdversaryMode m);
std::optional<AdversaryMode> adversary_mode_from_name(std::string_view name);

struct PartyState {
    char role = 'A';        // 'A', 'B' or 'E'
    BitString raw;          // X^k / Y^k / Z^k
    BitString preshared;    // keyed-authentication key (primed variants)
    int phase = 0;
    BitString key;          // final key once derived
};

struct Parties {
    PartyState alice, bob, eve;
};

struct InitResult {
    BitString x, y, z;
};

/// Source-model initialization: a uniform k-bit string observed through
/// three independent BSCs.
InitResult run_initialization(std::uint64_t seed, Probability piA, Probability piB,
                              Probability piE, std::int64_t k);

enum class Outcome { keys, rejected, deceived };

struct TranscriptRecord {
    std::uint32_t step = 0;
    std::string direction;  // "A->B", "E->B", ...
    std::string payload_hex;
    bool tampered = false;
    bool accepted = false;
};

struct RunResult {
    Outcome outcome = Outcome::rejected;
    bool keys_match = false;
    BitString key_a, key_b;
    std::vector<TranscriptRecord> transcript;
    std::vector<PdcMessage> messages;  // as delivered to B
};

/// Tab-separated transcript lines: step, direction, payload-hex, tampered,
/// accepted.
std::string dump_transcript(const std::vector<TranscriptRecord>& transcript);

/// Public per-session material derived from the plan and a setup seed:
/// reconciliation codes (block-partitioned so each block decodes exactly),
/// the keyless authentication code or the keyed-hash parameters, and the
/// extractor with its seed design.
struct SessionSetup {
    Protocol protocol = Protocol::alpha;
    ProtocolPlan plan;
    std::uint64_t setup_seed = 0;

    std::vector<LinearCode> recon1;          // covers the k1 block
    std::vector<LinearCode> recon3;          // covers a reconciled seed block
    std::optional<BuiltAc> ac;               // keyless variants
    BitString ac_min_word;                   // cheapest substitution offset
    std::optional<AsuParams> asu;            // primed variants
    std::optional<ExtractorSpec> ext;
    std::optional<WeakDesign> design;

    std::vector<SessionSetup> stages;        // hybrid wiring
};

/// Build the session material. The authentication-code search may need a
/// longer base code than the plan's nominal k2; the returned setup's plan
/// carries the adjusted ac/k2/total_k and is the one to execute against.
SessionSetup prepare_session(Protocol p, const ProtocolPlan& plan, std::uint64_t setup_seed);

/// Execute one protocol run over fresh channel noise. The seed drives the
/// source, both channels, all private coins and the adversary; identical
/// seeds give identical transcripts.
RunResult run_protocol(const SessionSetup& setup, const ChannelParams& ch,
                       const AdversaryPolicy& policy, std::uint64_t seed);

struct WilsonInterval {
    double center = 0.0;
    double half_width = 0.0;
    double lo() const { return center - half_width; }
    double hi() const { return center + half_width; }
};

WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials, double z);

struct MeasureResult {
    std::int64_t trials = 0;
    std::int64_t accepted = 0;        // runs where B completed with a key
    std::int64_t rejected = 0;
    std::int64_t deceived = 0;        // accepted runs carrying a tampered payload
    std::int64_t key_mismatch = 0;    // accepted untampered runs with K_A != K_B

    WilsonInterval p_e(double z = 1.0) const;  // mismatch / trials
    WilsonInterval p_f(double z = 1.0) const;  // rejected / trials
    WilsonInterval p_d(double z = 1.0) const;  // deceived / trials
    WilsonInterval acceptance(double z = 1.0) const;
};

/// Monte Carlo over independent per-trial substreams of the master seed.
MeasureResult measure(const SessionSetup& setup, const ChannelParams& ch,
                      const AdversaryPolicy& policy, std::int64_t trials,
                      std::uint64_t master_seed);

struct LeakageAudit {
    double leakage_bits = 0.0;   // exact I(K; Z, transcript)
    double bound = 0.0;          // 2*ell*sqrt(eps), eps from the plan
    double eps_measured = 0.0;   // exact dif((side, K), side x uniform)
    double bound_measured = 0.0; // 2*ell*sqrt(eps_measured)
    bool vacuous = false;        // bound >= ell, nothing to learn from it
    bool within_bound = false;
    bool within_measured = false;
};

/// Exhaustive joint-distribution audit for extractor-based toy plans
/// (k1 <= 10, ell <= 2, seed <= 16 bits): enumerates source, seed and
/// wiretap strings and computes the exact Shannon leakage of the key.
LeakageAudit toy_leakage_audit(const SessionSetup& setup, Probability p_w);

} // namespace kdp
