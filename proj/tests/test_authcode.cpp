#include <doctest.h>

#include <random>

#include "kdp/authcode.hpp"

using namespace kdp;

TEST_SUITE("authcode") {

TEST_CASE("binomial helpers against frozen oracle values") {
    CHECK(binomial_tail_ge(30, 3, 0.01) ==
          doctest::Approx(0.0033177093188826382).epsilon(1e-9));
    CHECK(binomial_cdf_le(20, 4, 0.3) ==
          doctest::Approx(0.23750777887760164).epsilon(1e-9));
    CHECK(binomial_tail_ge(20, 4, 0.3) ==
          doctest::Approx(0.89291319549626900).epsilon(1e-9));
    CHECK(binomial_log_pmf(50, 3, 0.01) ==
          doctest::Approx(-4.4045914978602332).epsilon(1e-9));
    CHECK(log_binomial_cdf_le(10000, 50, 0.2) ==
          doctest::Approx(-1988.8133874210165).epsilon(1e-9));
    CHECK(binomial_tail_ge(10, 0, 0.3) == 1.0);
    CHECK(binomial_cdf_le(10, 10, 0.3) == 1.0);
    CHECK(binomial_cdf_le(10, -1, 0.3) == 0.0);
}

TEST_CASE("deception bound against frozen double-sum oracle") {
    AcSpec spec;
    spec.n0 = 30;
    spec.k0 = 5;
    spec.d = 8;
    spec.delta_w = 5;
    CHECK(pd_bound(spec, 0.05, 0.2, PdForm::operational) ==
          doctest::Approx(0.95683455207553023).epsilon(1e-9));
    CHECK(pd_bound(spec, 0.05, 0.2, PdForm::legacy) ==
          doctest::Approx(0.99597726548354873).epsilon(1e-9));
}

TEST_CASE("deception bound deep in the tail") {
    AcSpec spec;
    spec.n0 = 300000;
    spec.k0 = 5;
    spec.d = 60000;
    spec.delta_w = 4000;
    // oracle log-value is about -6020 nats, far below double range
    CHECK(pd_bound(spec, 0.01, 0.2, PdForm::operational) == 0.0);
}

TEST_CASE("false-rejection bound") {
    AcSpec spec;
    spec.n0 = 30;
    spec.k0 = 5;
    spec.d = 8;
    spec.delta_w = 2;
    CHECK(pf_bound(spec, 0.01) == doctest::Approx(0.0033177093188826382).epsilon(1e-9));
}

TEST_CASE("authentication code construction") {
    BuiltAc ac = build_ac(8, 4, 77);
    CHECK(ac.spec.k0 == 8);
    CHECK(ac.spec.d >= 4);
    CHECK(ac.spec.n_a() == 2 * ac.spec.n0);
    CHECK(static_cast<std::int64_t>(ac.base.min_distance()) == ac.spec.d);
    CHECK_THROWS_AS(build_ac(21, 4, 1), std::invalid_argument);
}

TEST_CASE("authenticator round-trip and tampering") {
    BuiltAc ac = build_ac(8, 4, 77);
    ac.spec.delta_w = 1;
    std::mt19937_64 rng(41);
    BitString msg = BitString::random(8, rng);
    BitString x2 = BitString::random(static_cast<std::size_t>(ac.spec.n_a()), rng);

    Authenticator auth = make_authenticator(ac.spec, ac.base, msg, x2);
    CHECK(static_cast<std::int64_t>(auth.positions.size()) == ac.spec.tau());
    CHECK(verify_authenticator(ac.spec, ac.base, msg, auth, x2));

    // one disagreeing shared bit stays within delta_w
    BitString y2 = x2;
    y2.flip(auth.positions[0]);
    CHECK(verify_authenticator(ac.spec, ac.base, msg, auth, y2));

    // past the threshold it rejects
    y2.flip(auth.positions[1]);
    y2.flip(auth.positions[2]);
    CHECK_FALSE(verify_authenticator(ac.spec, ac.base, msg, auth, y2));

    // substituted message with unmatched positions rejects
    BitString other = msg;
    other.flip(0);
    CHECK_FALSE(verify_authenticator(ac.spec, ac.base, other, auth, x2));

    // malformed position list rejects
    Authenticator bad = auth;
    bad.positions[0] = static_cast<std::uint32_t>(ac.spec.n_a());
    CHECK_FALSE(verify_authenticator(ac.spec, ac.base, msg, bad, x2));
}

TEST_CASE("doubled codeword has constant weight") {
    BuiltAc ac = build_ac(6, 3, 7);
    std::mt19937_64 rng(43);
    for (int i = 0; i < 20; ++i) {
        BitString msg = BitString::random(6, rng);
        auto pos = ac_positions(ac.base, msg);
        CHECK(static_cast<std::int64_t>(pos.size()) == ac.spec.tau());
        for (std::size_t j = 0; j + 1 < pos.size(); ++j) CHECK(pos[j] < pos[j + 1]);
    }
}

} // TEST_SUITE
