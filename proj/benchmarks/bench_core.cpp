#include <benchmark/benchmark.h>

#include <random>

#include "kdp/engine.hpp"
#include "kdp/planner.hpp"
#include "kdp/scenario.hpp"

using namespace kdp;

namespace {

const ChannelParams kCh{Probability(0.01), Probability(0.2)};

Requirements reqs(std::int64_t ell) {
    Requirements r;
    r.ell_req = ell;
    return r;
}

void BM_BinaryEntropy(benchmark::State& state) {
    double p = 0.123;
    for (auto _ : state) {
        benchmark::DoNotOptimize(binary_entropy(p));
        p = p < 0.9 ? p + 1e-9 : 0.123;
    }
}
BENCHMARK(BM_BinaryEntropy);

void BM_GallagerExponent(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(gallager_exponent(0.9, 0.01));
}
BENCHMARK(BM_GallagerExponent);

void BM_DeceptionBound(benchmark::State& state) {
    AcSpec spec;
    spec.n0 = 50000;
    spec.k0 = 20;
    spec.d = 9000;
    spec.delta_w = 800;
    for (auto _ : state)
        benchmark::DoNotOptimize(pd_bound(spec, 0.01, 0.2, PdForm::operational));
}
BENCHMARK(BM_DeceptionBound);

void BM_DecodeNearest(benchmark::State& state) {
    LinearCode code = make_random_systematic_code(13, 13, 7);
    std::mt19937_64 rng(3);
    BitString x = BitString::random(13, rng);
    BitString cw = code.encode(x);
    BitString noisy = bsc(cw, 0.02, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(code.decode_nearest(noisy.slice(0, 13), noisy.slice(13, 13)));
}
BENCHMARK(BM_DecodeNearest);

void BM_Extract(benchmark::State& state) {
    ExtractorSpec spec = ExtractorSpec::make(64, 8, 1e-4, 4.0);
    WeakDesign d = greedy_weak_design(spec.nu, spec.c, 8, static_cast<std::uint64_t>(spec.u));
    std::mt19937_64 rng(5);
    BitString x = BitString::random(64, rng);
    BitString gamma = BitString::random(static_cast<std::size_t>(spec.u), rng);
    for (auto _ : state) benchmark::DoNotOptimize(extract(spec, d, x, gamma));
}
BENCHMARK(BM_Extract);

void BM_HashU2(benchmark::State& state) {
    std::mt19937_64 rng(9);
    BitString s = BitString::random(256, rng);
    BitString x = BitString::random(256, rng);
    u2_hash(s, x, 128);  // warm the field-modulus cache
    for (auto _ : state) benchmark::DoNotOptimize(u2_hash(s, x, 128));
}
BENCHMARK(BM_HashU2);

void BM_PlanHash(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(plan(Protocol::beta, kCh, reqs(100000)).key_rate);
}
BENCHMARK(BM_PlanHash)->Unit(benchmark::kMillisecond);

void BM_PlanExtractor(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(plan(Protocol::beta_ext, kCh, reqs(100000)).key_rate);
}
BENCHMARK(BM_PlanExtractor)->Unit(benchmark::kMillisecond);

void BM_ProtocolRun(benchmark::State& state) {
    SessionSetup setup =
        prepare_session(Protocol::alpha_ext, toy_plan(Protocol::alpha_ext, ToyParams{}), 11);
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_protocol(setup, kCh, AdversaryPolicy{}, ++seed).outcome);
}
BENCHMARK(BM_ProtocolRun)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
