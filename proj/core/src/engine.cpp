#include "kdp/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace kdp {

namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
    z ^= z >> 30; z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27; z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::vector<std::uint8_t>& in, std::size_t& pos) {
    if (pos + 4 > in.size()) throw std::invalid_argument("message truncated");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[pos++]) << (8 * i);
    return v;
}

std::uint64_t get_u64(const std::vector<std::uint8_t>& in, std::size_t& pos) {
    if (pos + 8 > in.size()) throw std::invalid_argument("message truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in[pos++]) << (8 * i);
    return v;
}

// (k_b, r_b) per reconciliation sub-block, each small enough for exact
// nearest-codeword decoding
std::vector<std::pair<std::int64_t, std::int64_t>> partition_blocks(std::int64_t k,
                                                                    std::int64_t r) {
    if (k < 1) throw std::invalid_argument("partition_blocks: k < 1");
    std::int64_t nb = 1;
    while ((k + nb - 1) / nb + (r + nb - 1) / nb > 26) ++nb;
    std::vector<std::pair<std::int64_t, std::int64_t>> blocks;
    for (std::int64_t b = 0; b < nb; ++b)
        blocks.emplace_back(k / nb + (b < k % nb ? 1 : 0), r / nb + (b < r % nb ? 1 : 0));
    return blocks;
}

std::vector<LinearCode> build_recon(std::int64_t k, std::int64_t r, std::uint64_t seed) {
    std::vector<LinearCode> codes;
    std::int64_t block = 0;
    for (auto [kb, rb] : partition_blocks(k, r))
        codes.push_back(make_random_systematic_code(kb, rb, mix(seed, block++)));
    return codes;
}

BitString make_checks(const std::vector<LinearCode>& codes, const BitString& x) {
    BitString out;
    std::size_t pos = 0;
    for (const auto& c : codes) {
        out = out.concat(c.encode_checks(x.slice(pos, c.spec().k)));
        pos += c.spec().k;
    }
    return out;
}

BitString reconcile(const std::vector<LinearCode>& codes, const BitString& y,
                    const BitString& checks) {
    BitString out;
    std::size_t ypos = 0, cpos = 0;
    for (const auto& c : codes) {
        out = out.concat(c.decode_nearest(y.slice(ypos, c.spec().k),
                                          checks.slice(cpos, c.spec().r)));
        ypos += c.spec().k;
        cpos += c.spec().r;
    }
    return out;
}

bool seed_from_channel(Protocol p) {
    return p == Protocol::beta_ext || p == Protocol::beta_primed_ext;
}

bool key_from_channel(Protocol p) {
    return p == Protocol::beta || p == Protocol::beta_primed;
}

BitString pad_to(const BitString& b, std::size_t n) {
    if (b.size() > n) throw std::invalid_argument("pad_to: string longer than target");
    BitString r(n);
    for (std::size_t i = 0; i < b.size(); ++i) r.set(i, b.get(i));
    return r;
}

// information word of the minimum-weight nonzero codeword; the cheapest
// substitution against the authentication code flips exactly these positions
BitString min_weight_word(const LinearCode& code) {
    const auto k = static_cast<std::size_t>(code.spec().k);
    if (k > 20) throw std::invalid_argument("min_weight_word: k too large");
    BitString best;
    std::size_t best_w = SIZE_MAX;
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << k); ++m) {
        BitString word = BitString::from_uint(m, k);
        std::size_t w = code.encode(word).popcount();
        if (w < best_w) { best_w = w; best = word; }
    }
    return best;
}

struct StageResult {
    bool accepted = false;
    bool tampered = false;
    BitString ka, kb;
};

struct MessageLayout {
    std::vector<std::size_t> part_sizes;  // message parts, tag part last
    std::size_t msg_parts = 0;            // parts covered by authentication
};

MessageLayout layout_for(const SessionSetup& s) {
    const auto& pl = s.plan;
    MessageLayout l;
    l.part_sizes.push_back(static_cast<std::size_t>(pl.r1));
    if (s.ext) {
        if (seed_from_channel(s.protocol))
            l.part_sizes.push_back(static_cast<std::size_t>(pl.r2));
        else
            l.part_sizes.push_back(static_cast<std::size_t>(pl.u));
    } else {
        if (key_from_channel(s.protocol))
            l.part_sizes.push_back(static_cast<std::size_t>(pl.r1));
        else
            l.part_sizes.push_back(static_cast<std::size_t>(pl.k1));  // hash key
    }
    l.msg_parts = l.part_sizes.size();
    if (s.ac)
        l.part_sizes.push_back(static_cast<std::size_t>(s.ac->spec.tau()));
    else
        l.part_sizes.push_back(s.asu->b);
    return l;
}

BitString flatten_msg(const PdcMessage& m, std::size_t msg_parts) {
    BitString out;
    for (std::size_t i = 0; i < msg_parts && i < m.parts.size(); ++i)
        out = out.concat(m.parts[i]);
    return out;
}

PdcMessage adversary_apply(const SessionSetup& s, const AdversaryPolicy& policy,
                           const PdcMessage& m, const MessageLayout& layout,
                           const BitString& z2, std::mt19937_64& adv, bool& dropped) {
    dropped = false;
    switch (policy.mode) {
        case AdversaryMode::passive:
            return m;
        case AdversaryMode::break_off:
            dropped = true;
            return m;
        default:
            break;
    }

    PdcMessage f = m;
    f.tampered = true;

    auto guess_tag_from_z = [&](const BitString& msg) {
        // Eve reuses observed authenticator bits at positions shared with
        // the original message and falls back to her wiretap view elsewhere
        auto new_pos = ac_positions(s.ac->base, msg);
        auto old_pos = ac_positions(s.ac->base, flatten_msg(m, layout.msg_parts));
        const BitString& old_bits = m.parts.back();
        BitString bits(new_pos.size());
        for (std::size_t i = 0; i < new_pos.size(); ++i) {
            if (new_pos[i] == old_pos[i])
                bits.set(i, old_bits.get(i));
            else
                bits.set(i, z2.get(new_pos[i]));
        }
        return bits;
    };

    switch (policy.mode) {
        case AdversaryMode::impersonate: {
            f.origin = 'E';
            for (std::size_t i = 0; i < layout.msg_parts; ++i)
                f.parts[i] = BitString::random(f.parts[i].size(), adv);
            if (s.ac)
                f.parts.back() = guess_tag_from_z(flatten_msg(f, layout.msg_parts));
            else
                f.parts.back() = BitString::random(f.parts.back().size(), adv);
            break;
        }
        case AdversaryMode::substitute_random: {
            for (std::size_t i = 0; i < layout.msg_parts; ++i)
                f.parts[i] = BitString::random(f.parts[i].size(), adv);
            if (s.ac) f.parts.back() = guess_tag_from_z(flatten_msg(f, layout.msg_parts));
            break;
        }
        case AdversaryMode::substitute_nearest_codeword: {
            if (s.ac) {
                BitString msg = flatten_msg(m, layout.msg_parts);
                BitString forged = msg ^ pad_to(s.ac_min_word, msg.size());
                std::size_t pos = 0;
                for (std::size_t i = 0; i < layout.msg_parts; ++i) {
                    f.parts[i] = forged.slice(pos, f.parts[i].size());
                    pos += f.parts[i].size();
                }
                f.parts.back() = guess_tag_from_z(forged);
            } else {
                // keyed tag has no codeword structure; minimal substitution
                std::size_t part = 0;
                while (part + 1 < layout.msg_parts && f.parts[part].empty()) ++part;
                if (!f.parts[part].empty())
                    f.parts[part].flip(adv() % f.parts[part].size());
            }
            break;
        }
        default:
            break;
    }
    return f;
}

StageResult run_single(const SessionSetup& s, const AdversaryPolicy& policy,
                       const BitString& x, const BitString& y, const BitString& z,
                       const BitString& pre_a, const BitString& pre_b,
                       std::mt19937_64& priv, std::mt19937_64& adv,
                       std::uint32_t step_base, RunResult& rr) {
    const auto& pl = s.plan;
    const auto k1 = static_cast<std::size_t>(pl.k1);
    const auto k2 = static_cast<std::size_t>(pl.k2);
    const auto k3 = static_cast<std::size_t>(pl.k3);
    const BitString x1 = x.slice(0, k1), y1 = y.slice(0, k1);
    const BitString x2 = s.ac ? x.slice(k1, k2) : BitString();
    const BitString y2 = s.ac ? y.slice(k1, k2) : BitString();
    const BitString z2 = s.ac ? z.slice(k1, k2) : BitString();
    const BitString x3 = k3 ? x.slice(k1 + k2, k3) : BitString();
    const BitString y3 = k3 ? y.slice(k1 + k2, k3) : BitString();

    const MessageLayout layout = layout_for(s);

    // sender side
    PdcMessage m;
    m.step = step_base;
    m.origin = 'A';
    m.parts.push_back(make_checks(s.recon1, x1));
    BitString hash_key, gamma;
    if (s.ext) {
        if (seed_from_channel(s.protocol)) {
            gamma = x3;  // channel-borne seed, never transmitted
            m.parts.push_back(make_checks(s.recon3, x3));
        } else {
            gamma = BitString::random(static_cast<std::size_t>(pl.u), priv);
            m.parts.push_back(gamma);
        }
    } else {
        if (key_from_channel(s.protocol)) {
            hash_key = x3;
            m.parts.push_back(make_checks(s.recon3, x3));
        } else {
            hash_key = BitString::random(k1, priv);
            m.parts.push_back(hash_key);
        }
    }
    StageResult res;
    res.ka = s.ext ? extract(*s.ext, *s.design, x1, gamma)
                   : u2_hash(hash_key, x1, static_cast<unsigned>(pl.ell));

    BitString msg = flatten_msg(m, layout.msg_parts);
    if (s.ac) {
        Authenticator a = make_authenticator(s.ac->spec, s.ac->base, msg, x2);
        m.parts.push_back(a.bits);
    } else {
        m.parts.push_back(asu2_hash(*s.asu, pre_a, pad_to(msg, s.asu->input_bits())));
    }

    // public discussion with adversary interposition
    bool dropped = false;
    PdcMessage delivered = adversary_apply(s, policy, m, layout, z2, adv, dropped);
    res.tampered = delivered.tampered;

    TranscriptRecord rec;
    rec.step = m.step;
    rec.direction = dropped ? "A->E" : (delivered.origin == 'E' ? "E->B" : "A->B");
    rec.payload_hex = delivered.flattened().to_hex();
    rec.tampered = delivered.tampered || dropped;
    rec.accepted = false;

    if (dropped) {
        rr.transcript.push_back(rec);
        return res;
    }
    rr.messages.push_back(delivered);

    // receiver side
    bool shape_ok = delivered.parts.size() == layout.part_sizes.size();
    for (std::size_t i = 0; shape_ok && i < layout.part_sizes.size(); ++i)
        shape_ok = delivered.parts[i].size() == layout.part_sizes[i];
    bool accept = false;
    if (shape_ok) {
        BitString msg_b = flatten_msg(delivered, layout.msg_parts);
        if (s.ac) {
            Authenticator a{ac_positions(s.ac->base, msg_b), delivered.parts.back()};
            accept = verify_authenticator(s.ac->spec, s.ac->base, msg_b, a, y2);
        } else {
            BitString tag = asu2_hash(*s.asu, pre_b, pad_to(msg_b, s.asu->input_bits()));
            accept = tag == delivered.parts.back();
        }
    }
    rec.accepted = accept;
    rr.transcript.push_back(rec);
    if (!accept) return res;

    res.accepted = true;
    const BitString& checks1 = delivered.parts[0];
    BitString x1t = reconcile(s.recon1, y1, checks1);
    if (s.ext) {
        BitString gamma_b = seed_from_channel(s.protocol)
                                ? reconcile(s.recon3, y3, delivered.parts[1])
                                : delivered.parts[1];
        res.kb = extract(*s.ext, *s.design, x1t, gamma_b);
    } else {
        BitString key_b = key_from_channel(s.protocol)
                              ? reconcile(s.recon3, y3, delivered.parts[1])
                              : delivered.parts[1];
        res.kb = u2_hash(key_b, x1t, static_cast<unsigned>(pl.ell));
    }
    return res;
}

} // namespace

BitString PdcMessage::flattened() const {
    BitString out;
    for (const auto& p : parts) out = out.concat(p);
    return out;
}

std::vector<std::uint8_t> PdcMessage::serialize() const {
    std::vector<std::uint8_t> out;
    put_u32(out, step);
    out.push_back(static_cast<std::uint8_t>(origin));
    out.push_back(tampered ? 1 : 0);
    put_u32(out, static_cast<std::uint32_t>(parts.size()));
    for (const auto& p : parts) {
        put_u64(out, p.size());
        for (auto w : p.words()) put_u64(out, w);
    }
    return out;
}

PdcMessage PdcMessage::deserialize(const std::vector<std::uint8_t>& bytes) {
    PdcMessage m;
    std::size_t pos = 0;
    m.step = get_u32(bytes, pos);
    if (pos + 2 > bytes.size()) throw std::invalid_argument("message truncated");
    m.origin = static_cast<char>(bytes[pos++]);
    m.tampered = bytes[pos++] != 0;
    std::uint32_t n = get_u32(bytes, pos);
    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint64_t nbits = get_u64(bytes, pos);
        BitString b(static_cast<std::size_t>(nbits));
        for (std::size_t w = 0; w < (nbits + 63) / 64; ++w) {
            std::uint64_t word = get_u64(bytes, pos);
            for (unsigned j = 0; j < 64 && 64 * w + j < nbits; ++j)
                if ((word >> j) & 1) b.set(64 * w + j, true);
        }
        m.parts.push_back(std::move(b));
    }
    return m;
}

std::string_view adversary_mode_name(AdversaryMode m) {
    switch (m) {
        case AdversaryMode::passive: return "passive";
        case AdversaryMode::impersonate: return "impersonate";
        case AdversaryMode::substitute_random: return "substitute-random";
        case AdversaryMode::substitute_nearest_codeword: return "substitute-nearest-codeword";
        case AdversaryMode::break_off: return "break-off";
    }
    throw std::invalid_argument("adversary_mode_name: unknown mode");
}

std::optional<AdversaryMode> adversary_mode_from_name(std::string_view name) {
    for (AdversaryMode m : {AdversaryMode::passive, AdversaryMode::impersonate,
                            AdversaryMode::substitute_random,
                            AdversaryMode::substitute_nearest_codeword,
                            AdversaryMode::break_off})
        if (adversary_mode_name(m) == name) return m;
    return std::nullopt;
}

InitResult run_initialization(std::uint64_t seed, Probability piA, Probability piB,
                              Probability piE, std::int64_t k) {
    std::mt19937_64 src(mix(seed, 1)), cha(mix(seed, 2)), chb(mix(seed, 3)),
        che(mix(seed, 4));
    BitString s = BitString::random(static_cast<std::size_t>(k), src);
    InitResult r;
    r.x = bsc(s, piA.value(), cha);
    r.y = bsc(s, piB.value(), chb);
    r.z = bsc(s, piE.value(), che);
    return r;
}

std::string dump_transcript(const std::vector<TranscriptRecord>& transcript) {
    std::ostringstream out;
    for (const auto& r : transcript)
        out << r.step << '\t' << r.direction << '\t' << r.payload_hex << '\t'
            << (r.tampered ? 1 : 0) << '\t' << (r.accepted ? 1 : 0) << '\n';
    return out.str();
}

SessionSetup prepare_session(Protocol p, const ProtocolPlan& plan, std::uint64_t setup_seed) {
    SessionSetup s;
    s.protocol = p;
    s.plan = plan;
    s.setup_seed = setup_seed;

    if (protocol_is_hybrid(p)) {
        if (plan.stages.size() != 2)
            throw std::invalid_argument("prepare_session: hybrid plan needs two stages");
        Protocol p1 = (p == Protocol::hybrid_alpha_alpha_primed_ext ||
                       p == Protocol::hybrid_alpha_beta_primed_ext)
                          ? Protocol::alpha : Protocol::beta;
        Protocol p2 = (p == Protocol::hybrid_alpha_alpha_primed_ext ||
                       p == Protocol::hybrid_beta_alpha_primed_ext)
                          ? Protocol::alpha_primed_ext : Protocol::beta_primed_ext;
        s.stages.push_back(prepare_session(p1, plan.stages[0], mix(setup_seed, 101)));
        s.stages.push_back(prepare_session(p2, plan.stages[1], mix(setup_seed, 102)));
        if (s.stages[0].plan.ell != s.stages[1].plan.ell0)
            throw std::invalid_argument("prepare_session: stage-1 key does not fit stage 2");
        s.plan.stages = {s.stages[0].plan, s.stages[1].plan};
        s.plan.total_k = s.stages[0].plan.total_k + s.stages[1].plan.total_k;
        s.plan.key_rate = s.plan.total_k
                              ? static_cast<double>(s.plan.ell) / static_cast<double>(s.plan.total_k)
                              : 0.0;
        return s;
    }

    auto& pl = s.plan;
    if (pl.k1 < 1 || pl.ell < 1 || pl.ell > pl.k1)
        throw std::invalid_argument("prepare_session: need 1 <= ell <= k1");
    s.recon1 = build_recon(pl.k1, pl.r1, mix(setup_seed, 1));

    if (protocol_uses_extractor(p)) {
        s.ext = ExtractorSpec::make(pl.k1, pl.ell, pl.eps, pl.c);
        s.design = greedy_weak_design(s.ext->nu, s.ext->c,
                                      static_cast<std::uint64_t>(pl.ell),
                                      static_cast<std::uint64_t>(s.ext->u));
        pl.u = s.ext->u;
        if (seed_from_channel(p)) {
            pl.k3 = pl.u;
            s.recon3 = build_recon(pl.u, pl.r2, mix(setup_seed, 2));
        } else {
            pl.k3 = 0;
        }
    } else if (key_from_channel(p)) {
        pl.k3 = pl.k1;
        s.recon3 = build_recon(pl.k1, pl.r1, mix(setup_seed, 3));
    } else {
        pl.k3 = 0;
    }

    // authenticated payload length
    std::int64_t k0 = pl.r1;
    if (protocol_uses_extractor(p)) k0 += seed_from_channel(p) ? pl.r2 : pl.u;
    else k0 += key_from_channel(p) ? pl.r1 : pl.k1;

    if (protocol_is_primed(p)) {
        s.asu = AsuParams(pl.asu_b, pl.asu_i);
        if (static_cast<std::uint64_t>(k0) > s.asu->input_bits())
            throw std::invalid_argument("prepare_session: keyed hash narrower than payload");
        pl.ell0 = static_cast<std::int64_t>(s.asu->key_bits());
        pl.k2 = 0;
        pl.ac = AcSpec{};
        pl.total_k = pl.k1 + pl.k3;
    } else {
        std::int64_t dw = pl.ac.delta_w;
        BuiltAc built = build_ac(k0, std::max<std::int64_t>(pl.ac.d, 1), mix(setup_seed, 4));
        built.spec.delta_w = dw;
        s.ac = std::move(built);
        s.ac_min_word = min_weight_word(s.ac->base);
        pl.ac = s.ac->spec;
        pl.k2 = pl.ac.n_a();
        pl.total_k = pl.k1 + pl.k2 + pl.k3;
    }
    pl.key_rate = static_cast<double>(pl.ell) / static_cast<double>(pl.total_k);
    return s;
}

RunResult run_protocol(const SessionSetup& setup, const ChannelParams& ch,
                       const AdversaryPolicy& policy, std::uint64_t seed) {
    std::mt19937_64 src(mix(seed, 11)), chan_b(mix(seed, 12)), chan_e(mix(seed, 13)),
        priv(mix(seed, 14)), adv(mix(seed, 15)), pre(mix(seed, 16));

    const auto total = static_cast<std::size_t>(setup.plan.total_k);
    BitString x = BitString::random(total, src);
    BitString y = bsc(x, ch.p_m.value(), chan_b);
    BitString z = bsc(x, ch.p_w.value(), chan_e);

    RunResult rr;
    if (!setup.stages.empty()) {
        const auto t1 = static_cast<std::size_t>(setup.stages[0].plan.total_k);
        StageResult s1 = run_single(setup.stages[0], policy, x.slice(0, t1),
                                    y.slice(0, t1), z.slice(0, t1), BitString(),
                                    BitString(), priv, adv, 0, rr);
        if (!s1.accepted) {
            rr.outcome = Outcome::rejected;
            return rr;
        }
        const auto t2 = static_cast<std::size_t>(setup.stages[1].plan.total_k);
        StageResult s2 = run_single(setup.stages[1], policy, x.slice(t1, t2),
                                    y.slice(t1, t2), z.slice(t1, t2), s1.ka, s1.kb,
                                    priv, adv, 10, rr);
        if (!s2.accepted) {
            rr.outcome = Outcome::rejected;
            return rr;
        }
        rr.outcome = (s1.tampered || s2.tampered) ? Outcome::deceived : Outcome::keys;
        rr.key_a = s2.ka;
        rr.key_b = s2.kb;
        rr.keys_match = rr.key_a == rr.key_b;
        return rr;
    }

    BitString pre_a, pre_b;
    if (protocol_is_primed(setup.protocol)) {
        pre_a = BitString::random(static_cast<std::size_t>(setup.plan.ell0), pre);
        pre_b = pre_a;
    }
    StageResult res = run_single(setup, policy, x, y, z, pre_a, pre_b, priv, adv, 0, rr);
    if (!res.accepted) {
        rr.outcome = Outcome::rejected;
        return rr;
    }
    rr.outcome = res.tampered ? Outcome::deceived : Outcome::keys;
    rr.key_a = res.ka;
    rr.key_b = res.kb;
    rr.keys_match = rr.key_a == rr.key_b;
    return rr;
}

WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials, double z) {
    if (trials < 1) throw std::invalid_argument("wilson_interval: trials < 1");
    const double n = static_cast<double>(trials);
    const double x = static_cast<double>(successes);
    const double z2 = z * z;
    WilsonInterval w;
    w.center = (x + z2 / 2.0) / (n + z2);
    w.half_width = z * std::sqrt(x * (n - x) / n + z2 / 4.0) / (n + z2);
    return w;
}

WilsonInterval MeasureResult::p_e(double z) const { return wilson_interval(key_mismatch, trials, z); }
WilsonInterval MeasureResult::p_f(double z) const { return wilson_interval(rejected, trials, z); }
WilsonInterval MeasureResult::p_d(double z) const { return wilson_interval(deceived, trials, z); }
WilsonInterval MeasureResult::acceptance(double z) const { return wilson_interval(accepted, trials, z); }

MeasureResult measure(const SessionSetup& setup, const ChannelParams& ch,
                      const AdversaryPolicy& policy, std::int64_t trials,
                      std::uint64_t master_seed) {
    MeasureResult mr;
    mr.trials = trials;
    for (std::int64_t t = 0; t < trials; ++t) {
        RunResult rr = run_protocol(setup, ch, policy, mix(master_seed, t));
        switch (rr.outcome) {
            case Outcome::rejected:
                ++mr.rejected;
                break;
            case Outcome::deceived:
                ++mr.accepted;
                ++mr.deceived;
                break;
            case Outcome::keys:
                ++mr.accepted;
                if (!rr.keys_match) ++mr.key_mismatch;
                break;
        }
    }
    return mr;
}

LeakageAudit toy_leakage_audit(const SessionSetup& setup, Probability p_w) {
    if (!setup.ext || !setup.design)
        throw std::invalid_argument("toy_leakage_audit: extractor-based plans only");
    const auto& pl = setup.plan;
    const auto k = static_cast<unsigned>(pl.k1);
    const auto u = static_cast<unsigned>(setup.ext->u);
    const auto ell = static_cast<unsigned>(pl.ell);
    if (k > 10 || ell > 2 || u > 16)
        throw std::invalid_argument("toy_leakage_audit: instance too large to enumerate");

    const double pw = p_w.value();
    // joint over (K; Z, checks, gamma) with X and gamma uniform
    std::unordered_map<std::uint64_t, double> p_key, p_side, p_joint;
    const double px = std::pow(2.0, -static_cast<double>(k)) *
                      std::pow(2.0, -static_cast<double>(u));
    for (std::uint64_t xv = 0; xv < (std::uint64_t{1} << k); ++xv) {
        BitString xb = BitString::from_uint(xv, k);
        std::uint64_t checks = make_checks(setup.recon1, xb).to_uint();
        for (std::uint64_t gv = 0; gv < (std::uint64_t{1} << u); ++gv) {
            BitString gb = BitString::from_uint(gv, u);
            std::uint64_t key = extract(*setup.ext, *setup.design, xb, gb).to_uint();
            for (std::uint64_t zv = 0; zv < (std::uint64_t{1} << k); ++zv) {
                auto flips = static_cast<double>(__builtin_popcountll(xv ^ zv));
                double pz = std::pow(pw, flips) *
                            std::pow(1.0 - pw, static_cast<double>(k) - flips);
                double w = px * pz;
                if (w <= 0.0) continue;
                std::uint64_t side = zv | (checks << k) | (gv << (k + pl.r1));
                p_key[key] += w;
                p_side[side] += w;
                p_joint[side * 4 + key] += w;
            }
        }
    }
    double info = 0.0;
    for (const auto& [sk, pj] : p_joint) {
        double pk = p_key[sk & 3], ps = p_side[sk / 4];
        info += pj * std::log2(pj / (pk * ps));
    }
    // exact statistical distance of (side, K) from side x uniform key;
    // absent joint cells still contribute p_side * 2^-ell
    const double pu = std::pow(2.0, -static_cast<double>(ell));
    double dif = 0.0;
    for (const auto& [side, ps] : p_side) {
        for (std::uint64_t key = 0; key < (std::uint64_t{1} << ell); ++key) {
            auto it = p_joint.find(side * 4 + key);
            double pj = it == p_joint.end() ? 0.0 : it->second;
            dif += std::fabs(pj - ps * pu);
        }
    }
    dif /= 2.0;
    LeakageAudit a;
    a.leakage_bits = std::max(0.0, info);
    a.bound = 2.0 * static_cast<double>(ell) * std::sqrt(setup.ext->eps);
    a.eps_measured = dif;
    a.bound_measured = 2.0 * static_cast<double>(ell) * std::sqrt(dif);
    a.vacuous = a.bound >= static_cast<double>(ell);
    a.within_bound = a.leakage_bits <= a.bound + 1e-9;
    a.within_measured = a.leakage_bits <= a.bound_measured + 1e-9;
    return a;
}

} // namespace kdp
