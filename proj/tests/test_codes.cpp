#include <doctest.h>

#include <cmath>
#include <random>

#include "kdp/codes.hpp"

using namespace kdp;

TEST_SUITE("codes") {

TEST_CASE("E0 closed-form values") {
    CHECK(gallager_E0(1.0, 0.01) == doctest::Approx(0.73817136450774150).epsilon(1e-9));
    CHECK(gallager_E0(1e-9, 0.05) == doctest::Approx(0.0).epsilon(1e-6));
    double prev = 0.0;
    for (int i = 1; i <= 50; ++i) {
        double rho = i / 50.0;
        double v = gallager_E0(rho, 0.05);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("random-coding exponent") {
    CHECK(gallager_exponent(0.92, 0.01) == doctest::Approx(6.2358490456e-5).epsilon(1e-6));
    double g = 0.080793135895911173;  // binary entropy at 0.01
    double top = 1.0 / (1.0 + g);
    CHECK(gallager_exponent(top, 0.01) == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(gallager_exponent(0.75, 0.01) > gallager_exponent(0.9, 0.01));
    CHECK_THROWS(gallager_exponent(0.45, 0.01));
    CHECK_THROWS(gallager_exponent(0.99, 0.01));
}

TEST_CASE("block length from error budget") {
    double e = gallager_exponent(0.9, 0.01);
    std::int64_t k = solve_k_for_error(1e-5, 0.9, 0.01);
    CHECK(k == static_cast<std::int64_t>(std::ceil(-std::log2(1e-5) / e)));
    CHECK(asymptotic_check_budget(1000, 0.01) ==
          static_cast<std::int64_t>(std::ceil(1000 * 0.080793135895911173)));
}

TEST_CASE("hamming(7,4) minimum distance") {
    // parity rows of the standard [7,4,3] code
    std::vector<BitString> rows = {
        BitString::from_uint(0b011, 3), BitString::from_uint(0b101, 3),
        BitString::from_uint(0b110, 3), BitString::from_uint(0b111, 3)};
    LinearCode code(CodeSpec{4, 3}, rows);
    CHECK(code.min_distance() == 3);
}

TEST_CASE("nearest-codeword decoding matches brute force") {
    LinearCode code = make_random_systematic_code(4, 3, 99);
    std::vector<BitString> codewords;
    for (std::uint64_t v = 0; v < 16; ++v)
        codewords.push_back(code.encode(BitString::from_uint(v, 4)));
    for (std::uint64_t rv = 0; rv < 128; ++rv) {
        BitString recv = BitString::from_uint(rv, 7);
        std::size_t best = 8;
        for (const auto& cw : codewords) best = std::min(best, recv.hamming(cw));
        BitString info = code.decode_nearest(recv.slice(0, 4), recv.slice(4, 3));
        CHECK(recv.hamming(code.encode(info)) == best);
    }
}

TEST_CASE("decoding corrects within half the distance") {
    LinearCode code = make_random_systematic_code(8, 6, 5);
    auto d = code.min_distance();
    std::size_t t = (d - 1) / 2;
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        BitString x = BitString::random(8, rng);
        BitString cw = code.encode(x);
        BitString noisy = cw;
        for (std::size_t e = 0; e < t; ++e)
            noisy.flip(rng() % noisy.size());
        CHECK(code.decode_nearest(noisy.slice(0, 8), noisy.slice(8, 6)) == x);
    }
}

TEST_CASE("random systematic codes are seed-deterministic") {
    LinearCode a = make_random_systematic_code(10, 5, 42);
    LinearCode b = make_random_systematic_code(10, 5, 42);
    LinearCode c = make_random_systematic_code(10, 5, 43);
    std::mt19937_64 rng(1);
    BitString x = BitString::random(10, rng);
    CHECK(a.encode_checks(x) == b.encode_checks(x));
    CHECK(a.spec().rate() == doctest::Approx(10.0 / 15.0));
    (void)c;
}

TEST_CASE("varshamov-gilbert budget") {
    auto [k2, d] = solve_varshamov_gilbert(1000, 0.11);
    double g = 0.49992;  // entropy at 0.11 is slightly under 1/2
    CHECK(k2 * (1.0 - binary_entropy(0.11)) >= 2000.0);
    CHECK((k2 - 1) * (1.0 - binary_entropy(0.11)) < 2000.0);
    CHECK(d == static_cast<std::int64_t>(std::floor(0.11 * k2 / 2.0)));
    (void)g;
}

} // TEST_SUITE
