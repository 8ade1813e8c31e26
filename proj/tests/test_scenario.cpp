#include <doctest.h>

#include <cstdlib>
#include <random>

#include "kdp/scenario.hpp"

using namespace kdp;

TEST_SUITE("scenario") {

TEST_CASE("defaults match the published requirement values") {
    Scenario s = parse_scenario("schema: 1\n");
    CHECK(s.i_adm == 1e-30);
    CHECK(s.p_e_adm == 1e-5);
    CHECK(s.p_f_adm == 1e-5);
    CHECK(s.p_d_adm == 1e-5);
    CHECK(s.p_risk_adm == 1e-5);
    CHECK(s.p_m == 0.01);
    CHECK(s.p_w == 0.2);
    CHECK(s.protocol_list().size() == 12);
    CHECK(s.adversary == AdversaryMode::passive);
}

TEST_CASE("parse and serialize round-trip losslessly") {
    std::string text =
        "schema: 1\n"
        "p_m: 0.001\n"
        "p_w: 0.17\n"
        "i_adm: 1e-25\n"
        "protocols: beta,alpha_ext\n"
        "ell_grid: 1000,2000\n"
        "trials: 500\n"
        "seed: 99\n"
        "adversary: substitute-random\n";
    Scenario s = parse_scenario(text);
    CHECK(s.p_m == 0.001);
    CHECK(s.protocols == std::vector<Protocol>{Protocol::beta, Protocol::alpha_ext});
    CHECK(s.ell_grid == std::vector<std::int64_t>{1000, 2000});
    CHECK(s.adversary == AdversaryMode::substitute_random);

    std::string round = serialize_scenario(s);
    Scenario s2 = parse_scenario(round);
    CHECK(serialize_scenario(s2) == round);
    CHECK(s2.p_m == s.p_m);
    CHECK(s2.protocols == s.protocols);
    CHECK(s2.seed == s.seed);
}

TEST_CASE("explicitly empty protocol list stays empty") {
    Scenario s = parse_scenario("schema: 1\nprotocols:\n");
    CHECK(s.protocols_explicit);
    CHECK(s.protocol_list().empty());
    Scenario s2 = parse_scenario(serialize_scenario(s));
    CHECK(s2.protocol_list().empty());
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_scenario("p_m: 0.1\n"), ScenarioError);       // no schema
    CHECK_THROWS_AS(parse_scenario("schema: 2\n"), ScenarioError);      // wrong schema
    CHECK_THROWS_AS(parse_scenario("schema: 1\nwat: 3\n"), ScenarioError);
    CHECK_THROWS_AS(parse_scenario("schema: 1\np_m: soup\n"), ScenarioError);
    CHECK_THROWS_AS(parse_scenario("schema: 1\np_m: 1.5\n"), ScenarioError);
    CHECK_THROWS_AS(parse_scenario("schema: 1\nprotocols: gamma\n"), ScenarioError);
    CHECK_THROWS_AS(parse_scenario("schema: 1\nadversary: loud\n"), ScenarioError);
    CHECK_THROWS_AS(parse_scenario("schema: 1\ntrials: 0\n"), ScenarioError);
    CHECK_THROWS_AS(parse_scenario("schema: 1\nnot a pair\n"), ScenarioError);
}

TEST_CASE("comments and whitespace are tolerated") {
    Scenario s = parse_scenario("# header\nschema: 1\n\n  p_m:  0.02  # inline\n");
    CHECK(s.p_m == 0.02);
}

TEST_CASE("shortest round-trip decimals") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> uni(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        double v = uni(rng);
        CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
    }
    CHECK(std::strtod(format_double(1e-30).c_str(), nullptr) == 1e-30);
    CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("source-model channel reduction") {
    Scenario s = parse_scenario("schema: 1\npi_a: 0.01\npi_b: 0.01\npi_e: 0.25\n");
    ChannelParams ch = s.channel();
    CHECK(ch.p_m.value() == doctest::Approx(0.0198).epsilon(1e-12));
    CHECK(ch.p_w.value() == doctest::Approx(0.255).epsilon(1e-12));
}

TEST_CASE("keyed-hash auto-sizing") {
    AsuParams a = size_asu(12, 3);
    CHECK(a.input_bits() >= 12);
    CHECK(a.key_bits() == 12);
    AsuParams b = size_asu(18, 3);
    CHECK(b.input_bits() >= 18);
    CHECK(b.key_bits() <= 16);
    AsuParams c = size_asu(7, 3);
    CHECK(c.input_bits() >= 7);
    CHECK(c.b >= 3);
}

TEST_CASE("toy plans are internally consistent") {
    ToyParams t;
    ProtocolPlan a = toy_plan(Protocol::alpha, t);
    CHECK(a.k1 == t.k1);
    CHECK(a.ac.d == t.d);
    CHECK(a.ac.delta_w == t.delta_w);

    ProtocolPlan pe = toy_plan(Protocol::alpha_primed_ext, t);
    CHECK(pe.u > 0);
    CHECK(static_cast<std::int64_t>(AsuParams(pe.asu_b, pe.asu_i).input_bits()) >=
          pe.r1 + pe.u);

    ProtocolPlan h = toy_plan(Protocol::hybrid_beta_alpha_primed_ext, t);
    REQUIRE(h.stages.size() == 2);
    CHECK(h.stages[0].ell == h.stages[1].ell0);
    CHECK(h.stages[0].ell <= h.stages[0].k1);
}

} // TEST_SUITE
