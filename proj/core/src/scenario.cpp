#include "kdp/scenario.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace kdp {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw ScenarioError("scenario: bad number for '" + key + "': " + v);
    }
}

std::int64_t parse_int(const std::string& v, const std::string& key) {
    std::int64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw ScenarioError("scenario: bad integer for '" + key + "': " + v);
    return out;
}

std::vector<std::string> split_commas(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

bool toy_seed_from_channel(Protocol p) {
    return p == Protocol::beta_ext || p == Protocol::beta_primed_ext;
}

bool toy_key_from_channel(Protocol p) {
    return p == Protocol::beta || p == Protocol::beta_primed;
}

} // namespace

AsuParams size_asu(std::int64_t a, unsigned b_min) {
    std::optional<AsuParams> best;
    for (unsigned i = 1; i <= 8; ++i) {
        auto need = static_cast<unsigned>((a + (std::int64_t{1} << i) - 1) >> i);
        unsigned b = std::max(std::max(need, b_min), 1u);
        AsuParams cand(b, i);
        if (!best || cand.key_bits() < best->key_bits()) best = cand;
    }
    return *best;
}

ProtocolPlan toy_plan(Protocol p, const ToyParams& t) {
    ProtocolPlan pl;
    pl.protocol = p;
    if (protocol_is_hybrid(p)) {
        Protocol p1 = (p == Protocol::hybrid_alpha_alpha_primed_ext ||
                       p == Protocol::hybrid_alpha_beta_primed_ext)
                          ? Protocol::alpha : Protocol::beta;
        Protocol p2 = (p == Protocol::hybrid_alpha_alpha_primed_ext ||
                       p == Protocol::hybrid_beta_alpha_primed_ext)
                          ? Protocol::alpha_primed_ext : Protocol::beta_primed_ext;
        ProtocolPlan s2 = toy_plan(p2, t);
        ProtocolPlan s1 = toy_plan(p1, t);
        s1.ell = s2.ell0;
        if (s1.k1 < s1.ell) s1.k1 = s1.ell;
        pl.ell = s2.ell;
        pl.stages = {std::move(s1), std::move(s2)};
        return pl;
    }

    pl.k1 = t.k1;
    pl.r1 = t.r1;
    pl.ell = t.ell;
    if (protocol_uses_extractor(p)) {
        pl.eps = t.eps;
        pl.c = t.c;
        pl.u = ExtractorSpec::make(pl.k1, pl.ell, pl.eps, pl.c).u;
        if (toy_seed_from_channel(p)) pl.r2 = t.r2;
    }

    std::int64_t k0 = pl.r1;
    if (protocol_uses_extractor(p))
        k0 += toy_seed_from_channel(p) ? pl.r2 : pl.u;
    else
        k0 += toy_key_from_channel(p) ? pl.r1 : pl.k1;

    if (protocol_is_primed(p)) {
        AsuParams asu = size_asu(k0, t.asu_b_min);
        pl.asu_b = asu.b;
        pl.asu_i = asu.i;
        pl.ell0 = static_cast<std::int64_t>(asu.key_bits());
    } else {
        pl.ac.d = t.d;
        pl.ac.delta_w = t.delta_w;
    }
    return pl;
}

ChannelParams Scenario::channel() const {
    if (pi_a && pi_b && pi_e)
        return reduce_source_model(Probability(*pi_a), Probability(*pi_b), Probability(*pi_e));
    return ChannelParams{Probability(p_m), Probability(p_w)};
}

Requirements Scenario::requirements(std::int64_t ell) const {
    Requirements r;
    r.ell_req = ell;
    r.I_adm = i_adm;
    r.P_e_adm = Probability(p_e_adm);
    r.P_f_adm = Probability(p_f_adm);
    r.P_d_adm = Probability(p_d_adm);
    r.P_risk_adm = Probability(p_risk_adm);
    return r;
}

std::vector<Protocol> Scenario::protocol_list() const {
    if (protocols_explicit || !protocols.empty()) return protocols;
    return {std::begin(kAllProtocols), std::end(kAllProtocols)};
}

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, p);
}

Scenario parse_scenario(const std::string& text) {
    Scenario s;
    bool saw_schema = false;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw ScenarioError("scenario: expected 'key: value', got '" + line + "'");
        std::string key = trim(line.substr(0, colon));
        std::string val = trim(line.substr(colon + 1));

        if (key == "schema") {
            if (parse_int(val, key) != 1)
                throw ScenarioError("scenario: unsupported schema '" + val + "'");
            saw_schema = true;
        } else if (key == "p_m") s.p_m = parse_double(val, key);
        else if (key == "p_w") s.p_w = parse_double(val, key);
        else if (key == "pi_a") s.pi_a = parse_double(val, key);
        else if (key == "pi_b") s.pi_b = parse_double(val, key);
        else if (key == "pi_e") s.pi_e = parse_double(val, key);
        else if (key == "i_adm") s.i_adm = parse_double(val, key);
        else if (key == "p_e_adm") s.p_e_adm = parse_double(val, key);
        else if (key == "p_f_adm") s.p_f_adm = parse_double(val, key);
        else if (key == "p_d_adm") s.p_d_adm = parse_double(val, key);
        else if (key == "p_risk_adm") s.p_risk_adm = parse_double(val, key);
        else if (key == "protocols") {
            s.protocols.clear();
            s.protocols_explicit = true;
            for (const auto& name : split_commas(val)) {
                auto p = protocol_from_name(name);
                if (!p) throw ScenarioError("scenario: unknown protocol '" + name + "'");
                s.protocols.push_back(*p);
            }
        } else if (key == "ell_grid") {
            s.ell_grid.clear();
            for (const auto& item : split_commas(val))
                s.ell_grid.push_back(parse_int(item, key));
        } else if (key == "trials") s.trials = parse_int(val, key);
        else if (key == "seed") s.seed = static_cast<std::uint64_t>(parse_int(val, key));
        else if (key == "adversary") {
            auto m = adversary_mode_from_name(val);
            if (!m) throw ScenarioError("scenario: unknown adversary mode '" + val + "'");
            s.adversary = *m;
        }
        else if (key == "toy_k1") s.toy.k1 = parse_int(val, key);
        else if (key == "toy_r1") s.toy.r1 = parse_int(val, key);
        else if (key == "toy_ell") s.toy.ell = parse_int(val, key);
        else if (key == "toy_d") s.toy.d = parse_int(val, key);
        else if (key == "toy_delta_w") s.toy.delta_w = parse_int(val, key);
        else if (key == "toy_r2") s.toy.r2 = parse_int(val, key);
        else if (key == "toy_eps") s.toy.eps = parse_double(val, key);
        else if (key == "toy_c") s.toy.c = parse_double(val, key);
        else if (key == "toy_asu_b_min")
            s.toy.asu_b_min = static_cast<unsigned>(parse_int(val, key));
        else throw ScenarioError("scenario: unknown key '" + key + "'");
    }
    if (!saw_schema) throw ScenarioError("scenario: missing 'schema: 1' header");
    if (!(s.p_m >= 0.0 && s.p_m <= 1.0 && s.p_w >= 0.0 && s.p_w <= 1.0))
        throw ScenarioError("scenario: channel probabilities outside [0,1]");
    if (s.trials < 1) throw ScenarioError("scenario: trials < 1");
    return s;
}

std::string serialize_scenario(const Scenario& s) {
    std::ostringstream out;
    out << "schema: " << s.schema << '\n';
    out << "p_m: " << format_double(s.p_m) << '\n';
    out << "p_w: " << format_double(s.p_w) << '\n';
    if (s.pi_a) out << "pi_a: " << format_double(*s.pi_a) << '\n';
    if (s.pi_b) out << "pi_b: " << format_double(*s.pi_b) << '\n';
    if (s.pi_e) out << "pi_e: " << format_double(*s.pi_e) << '\n';
    out << "i_adm: " << format_double(s.i_adm) << '\n';
    out << "p_e_adm: " << format_double(s.p_e_adm) << '\n';
    out << "p_f_adm: " << format_double(s.p_f_adm) << '\n';
    out << "p_d_adm: " << format_double(s.p_d_adm) << '\n';
    out << "p_risk_adm: " << format_double(s.p_risk_adm) << '\n';
    if (s.protocols_explicit || !s.protocols.empty()) {
        out << "protocols:";
        for (std::size_t i = 0; i < s.protocols.size(); ++i)
            out << (i ? "," : " ") << protocol_name(s.protocols[i]);
        out << '\n';
    }
    if (!s.ell_grid.empty()) {
        out << "ell_grid: ";
        for (std::size_t i = 0; i < s.ell_grid.size(); ++i)
            out << (i ? "," : "") << s.ell_grid[i];
        out << '\n';
    }
    out << "trials: " << s.trials << '\n';
    out << "seed: " << s.seed << '\n';
    out << "adversary: " << adversary_mode_name(s.adversary) << '\n';
    out << "toy_k1: " << s.toy.k1 << '\n';
    out << "toy_r1: " << s.toy.r1 << '\n';
    out << "toy_ell: " << s.toy.ell << '\n';
    out << "toy_d: " << s.toy.d << '\n';
    out << "toy_delta_w: " << s.toy.delta_w << '\n';
    out << "toy_r2: " << s.toy.r2 << '\n';
    out << "toy_eps: " << format_double(s.toy.eps) << '\n';
    out << "toy_c: " << format_double(s.toy.c) << '\n';
    out << "toy_asu_b_min: " << s.toy.asu_b_min << '\n';
    return out.str();
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("scenario: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

} // namespace kdp
