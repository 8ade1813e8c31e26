#include <doctest.h>

#include <random>

#include "kdp/hashfam.hpp"

using namespace kdp;

TEST_SUITE("hashfam") {

TEST_CASE("keyed-hash parameter law") {
    AsuParams p(9, 1);
    CHECK(p.input_bits() == 18);
    CHECK(p.key_bits() == 27);
    CHECK(p.epsilon() == doctest::Approx(2.0 / 512.0).epsilon(1e-12));
    AsuParams q(3, 2);
    CHECK(q.input_bits() == 12);
    CHECK(q.key_bits() == 12);
    CHECK(q.epsilon() == doctest::Approx(3.0 / 8.0).epsilon(1e-12));
    CHECK_THROWS_AS(AsuParams(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(AsuParams(1, 0), std::invalid_argument);
}

TEST_CASE("multiply-truncate family output and linearity") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        BitString s = BitString::random(8, rng);
        BitString x1 = BitString::random(8, rng);
        BitString x2 = BitString::random(8, rng);
        BitString h1 = u2_hash(s, x1, 3);
        CHECK(h1.size() == 3);
        CHECK((u2_hash(s, x1 ^ x2, 3)) == (h1 ^ u2_hash(s, x2, 3)));
    }
}

TEST_CASE("affine family shifts by t") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        BitString s = BitString::random(4, rng);
        BitString t = BitString::random(4, rng);
        BitString x = BitString::random(4, rng);
        BitString zero(4);
        CHECK(su2_hash(s, t, x).size() == 4);
        CHECK(su2_hash(s, zero, x) == (su2_hash(s, t, x) ^ t));
    }
}

TEST_CASE("keyed authenticator shape and determinism") {
    AsuParams p(3, 2);
    std::mt19937_64 rng(31);
    BitString key = BitString::random(p.key_bits(), rng);
    BitString x = BitString::random(p.input_bits(), rng);
    BitString tag = asu2_hash(p, key, x);
    CHECK(tag.size() == 3);
    CHECK(asu2_hash(p, key, x) == tag);
}

TEST_CASE("deception bounds") {
    auto [pi, ps] = deception_bounds(AsuParams(4, 2));
    CHECK(pi == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
    CHECK(ps == doctest::Approx(3.0 / 16.0).epsilon(1e-12));
}

TEST_CASE("partial key deception") {
    CHECK(partial_key_deception(50, 10.0, 1.0) == doctest::Approx(0.0625).epsilon(1e-12));
    double a = partial_key_deception(50, 10.0, 0.6);
    double b = partial_key_deception(50, 20.0, 0.6);
    CHECK(a >= b);
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
    CHECK(partial_key_deception(1000, 4.0, 0.5) == 1.0);
}

} // TEST_SUITE
