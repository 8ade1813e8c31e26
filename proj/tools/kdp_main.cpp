#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kdp/engine.hpp"
#include "kdp/planner.hpp"
#include "kdp/scenario.hpp"

using nlohmann::ordered_json;
using namespace kdp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitBadScenario = 3;

struct Options {
    std::string scenario_path;
    std::string out_path;
    std::string format = "csv";
    std::string protocols;
    std::optional<std::uint64_t> seed;
};

Scenario resolve_scenario(const Options& opt) {
    Scenario s;
    if (!opt.scenario_path.empty()) s = load_scenario(opt.scenario_path);
    if (opt.seed) s.seed = *opt.seed;
    if (!opt.protocols.empty()) {
        s.protocols.clear();
        s.protocols_explicit = true;
        std::stringstream ss(opt.protocols);
        std::string name;
        while (std::getline(ss, name, ',')) {
            if (name.empty()) continue;
            auto p = protocol_from_name(name);
            if (!p) throw ScenarioError("unknown protocol '" + name + "'");
            s.protocols.push_back(*p);
        }
    }
    if (s.ell_grid.empty()) s.ell_grid = {1000000};
    return s;
}

std::uint64_t session_seed(const Scenario& s, std::size_t idx) {
    return s.seed ^ (0x9e3779b97f4a7c15ull * (idx + 1));
}

void emit(const Options& opt, const std::string& text) {
    if (opt.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + opt.out_path + "'");
    out << text;
}

std::string csv_row(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    line += '\n';
    return line;
}

std::string fi(std::int64_t v) { return std::to_string(v); }
std::string fd(double v) { return format_double(v); }

ordered_json plan_json(const ProtocolPlan& pl, double asymptote) {
    ordered_json j;
    j["protocol"] = std::string(protocol_name(pl.protocol));
    j["ell"] = pl.ell;
    j["k1"] = pl.k1;
    j["k2"] = pl.k2;
    j["k3"] = pl.k3;
    j["r1"] = pl.r1;
    j["r2"] = pl.r2;
    j["u"] = pl.u;
    j["rc"] = pl.rc;
    j["ac_n0"] = pl.ac.n0;
    j["ac_k0"] = pl.ac.k0;
    j["ac_d"] = pl.ac.d;
    j["ac_delta_w"] = pl.ac.delta_w;
    j["ell0"] = pl.ell0;
    j["asu_b"] = pl.asu_b;
    j["asu_i"] = pl.asu_i;
    j["c"] = pl.c;
    j["eps"] = pl.eps;
    j["total_k"] = pl.total_k;
    j["key_rate"] = pl.key_rate;
    if (asymptote >= 0.0) j["asymptote"] = asymptote;
    if (!pl.stages.empty()) {
        j["stages"] = ordered_json::array();
        for (const auto& st : pl.stages) j["stages"].push_back(plan_json(st, -1.0));
    }
    return j;
}

int cmd_plan(const Options& opt, const Scenario& s) {
    ChannelParams ch = s.channel();
    std::string csv = csv_row({"protocol", "ell", "k1", "k2", "k3", "r1", "r2", "u",
                               "rc", "ac_n0", "ac_k0", "ac_d", "ac_delta_w", "ell0",
                               "asu_b", "asu_i", "c", "eps", "total_k", "key_rate",
                               "asymptote"});
    ordered_json rows = ordered_json::array();
    for (Protocol p : s.protocol_list()) {
        double asym = asymptotic_rate(p, ch);
        for (std::int64_t ell : s.ell_grid) {
            ProtocolPlan pl = plan(p, ch, s.requirements(ell));
            csv += csv_row({std::string(protocol_name(p)), fi(pl.ell), fi(pl.k1),
                            fi(pl.k2), fi(pl.k3), fi(pl.r1), fi(pl.r2), fi(pl.u),
                            fd(pl.rc), fi(pl.ac.n0), fi(pl.ac.k0), fi(pl.ac.d),
                            fi(pl.ac.delta_w), fi(pl.ell0), fi(pl.asu_b), fi(pl.asu_i),
                            fd(pl.c), fd(pl.eps), fi(pl.total_k), fd(pl.key_rate),
                            fd(asym)});
            rows.push_back(plan_json(pl, asym));
        }
    }
    emit(opt, opt.format == "json" ? rows.dump(2) + "\n" : csv);
    return kExitOk;
}

int cmd_sweep(const Options& opt, const Scenario& s) {
    ChannelParams ch = s.channel();
    std::vector<SweepRow> rows = sweep(s.protocol_list(), ch, s.requirements(0), s.ell_grid);

    std::string csv = csv_row({"protocol", "ell", "c_opt", "key_rate", "asymptote"});
    ordered_json jrows = ordered_json::array();
    bool any_feasible = false;
    for (const auto& r : rows) {
        if (!r.feasible) continue;
        any_feasible = true;
        csv += csv_row({std::string(protocol_name(r.protocol)), fi(r.ell), fd(r.c_opt),
                        fd(r.key_rate), fd(r.asymptote)});
        ordered_json j;
        j["protocol"] = std::string(protocol_name(r.protocol));
        j["ell"] = r.ell;
        j["c_opt"] = r.c_opt;
        j["key_rate"] = r.key_rate;
        j["asymptote"] = r.asymptote;
        jrows.push_back(j);
    }
    emit(opt, opt.format == "json" ? jrows.dump(2) + "\n" : csv);
    if (!rows.empty() && !any_feasible) return kExitInfeasible;
    return kExitOk;
}

// Deception-probability bound for the toy session: authentication-code bound
// for keyless variants, keyed-hash substitution bound for primed variants,
// union of the two stage bounds for hybrids.
double toy_pd_bound(const SessionSetup& setup, const ChannelParams& ch) {
    if (!setup.stages.empty())
        return std::min(1.0, toy_pd_bound(setup.stages[0], ch) +
                                 toy_pd_bound(setup.stages[1], ch));
    if (setup.ac)
        return pd_bound(setup.ac->spec, ch.p_m, ch.p_w, PdForm::operational);
    return setup.asu->epsilon();
}

int cmd_simulate(const Options& opt, const Scenario& s) {
    ChannelParams ch = s.channel();
    AdversaryPolicy policy{s.adversary};

    std::string csv = csv_row({"protocol", "adversary", "trials", "accepted", "rejected",
                               "deceived", "key_mismatch", "p_e_emp", "p_e_hw", "p_f_emp",
                               "p_f_hw", "p_d_emp", "p_d_hw", "p_d_bound"});
    ordered_json jrows = ordered_json::array();
    std::size_t idx = 0;
    for (Protocol p : s.protocol_list()) {
        SessionSetup setup = prepare_session(p, toy_plan(p, s.toy), session_seed(s, idx));
        MeasureResult m = measure(setup, ch, policy, s.trials, s.seed);
        double bound = toy_pd_bound(setup, ch);
        auto pe = m.p_e(), pf = m.p_f(), pd = m.p_d();
        csv += csv_row({std::string(protocol_name(p)),
                        std::string(adversary_mode_name(s.adversary)), fi(m.trials),
                        fi(m.accepted), fi(m.rejected), fi(m.deceived),
                        fi(m.key_mismatch), fd(pe.center), fd(pe.half_width),
                        fd(pf.center), fd(pf.half_width), fd(pd.center),
                        fd(pd.half_width), fd(bound)});
        ordered_json j;
        j["protocol"] = std::string(protocol_name(p));
        j["adversary"] = std::string(adversary_mode_name(s.adversary));
        j["trials"] = m.trials;
        j["accepted"] = m.accepted;
        j["rejected"] = m.rejected;
        j["deceived"] = m.deceived;
        j["key_mismatch"] = m.key_mismatch;
        j["p_e_emp"] = pe.center;
        j["p_e_hw"] = pe.half_width;
        j["p_f_emp"] = pf.center;
        j["p_f_hw"] = pf.half_width;
        j["p_d_emp"] = pd.center;
        j["p_d_hw"] = pd.half_width;
        j["p_d_bound"] = bound;
        jrows.push_back(j);
        ++idx;
    }
    emit(opt, opt.format == "json" ? jrows.dump(2) + "\n" : csv);
    return kExitOk;
}

int cmd_audit(const Options& opt, const Scenario& s) {
    ChannelParams ch = s.channel();
    std::string csv = csv_row({"protocol", "k1", "ell", "u", "leakage_bits", "bound",
                               "vacuous", "within_bound"});
    ordered_json jrows = ordered_json::array();
    std::size_t idx = 0;
    for (Protocol p : s.protocol_list()) {
        ++idx;
        if (!protocol_uses_extractor(p) || protocol_is_hybrid(p)) continue;
        SessionSetup setup = prepare_session(p, toy_plan(p, s.toy), session_seed(s, idx));
        LeakageAudit a = toy_leakage_audit(setup, ch.p_w);
        csv += csv_row({std::string(protocol_name(p)), fi(setup.plan.k1),
                        fi(setup.plan.ell), fi(setup.plan.u), fd(a.leakage_bits),
                        fd(a.bound), a.vacuous ? "1" : "0", a.within_bound ? "1" : "0"});
        ordered_json j;
        j["protocol"] = std::string(protocol_name(p));
        j["k1"] = setup.plan.k1;
        j["ell"] = setup.plan.ell;
        j["u"] = setup.plan.u;
        j["leakage_bits"] = a.leakage_bits;
        j["bound"] = a.bound;
        j["vacuous"] = a.vacuous;
        j["within_bound"] = a.within_bound;
        jrows.push_back(j);
    }
    emit(opt, opt.format == "json" ? jrows.dump(2) + "\n" : csv);
    return kExitOk;
}

void add_common(CLI::App* sub, Options& opt) {
    sub->add_option("--scenario", opt.scenario_path, "scenario file (key-value text, schema 1)");
    sub->add_option("--out", opt.out_path, "output file (default: stdout)");
    sub->add_option("--seed", opt.seed, "master seed override");
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--protocols", opt.protocols, "comma-separated protocol list override");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"key-distribution planner and simulator"};
    app.require_subcommand(1);
    Options opt;
    CLI::App* plan_cmd = app.add_subcommand("plan", "full parameter plans per (protocol, ell)");
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "key-rate curves over the ell grid");
    CLI::App* sim_cmd = app.add_subcommand("simulate", "Monte Carlo on desk-scale sessions");
    CLI::App* audit_cmd = app.add_subcommand("audit", "exhaustive leakage audit on desk-scale sessions");
    for (CLI::App* sub : {plan_cmd, sweep_cmd, sim_cmd, audit_cmd}) add_common(sub, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        Scenario s = resolve_scenario(opt);
        if (plan_cmd->parsed()) return cmd_plan(opt, s);
        if (sweep_cmd->parsed()) return cmd_sweep(opt, s);
        if (sim_cmd->parsed()) return cmd_simulate(opt, s);
        return cmd_audit(opt, s);
    } catch (const ScenarioError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadScenario;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
