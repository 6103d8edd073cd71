#include <benchmark/benchmark.h>

#include "semilin/json_io.hpp"
#include "semilin/scalar_io.hpp"

using namespace semilin;

namespace {

io::InstanceFile load(const std::string& name) {
    return io::instance_from(io::read_file(std::string(SEMILIN_BENCH_CORPUS) + "/" + name));
}

void BM_AlgebraicArithmetic(benchmark::State& state) {
    ComplexAlgebraic a = parse_scalar("(1+2*i)/sqrt(5)"), b = parse_scalar("sqrt(2)+sqrt(3)");
    for (auto _ : state) {
        ComplexAlgebraic c = pow(a, 12) * b + b / a;
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_AlgebraicArithmetic);

void BM_RootOfUnityTest(benchmark::State& state) {
    ComplexAlgebraic z = parse_scalar("(1+2*i)/sqrt(5)");
    for (auto _ : state) benchmark::DoNotOptimize(is_root_of_unity(z));
}
BENCHMARK(BM_RootOfUnityTest);

void BM_JordanForm(benchmark::State& state) {
    int d = static_cast<int>(state.range(0));
    Matrix a(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = i == j ? 2 : (i + 2 * j) % 3 == 0 ? 1 : 0;
    for (auto _ : state) benchmark::DoNotOptimize(jordan_form(a));
}
BENCHMARK(BM_JordanForm)->DenseRange(2, 5);

void BM_SubsetCube(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Polyhedron cube = Polyhedron::full(n);
    SemilinearSet halves = SemilinearSet::empty(n);
    for (int i = 0; i < n; ++i) {
        RVec e(n);
        e[i] = RealAlgebraic(1);
        cube.add({e, RealAlgebraic(0), false});
        e[i] = RealAlgebraic(-1);
        cube.add({e, RealAlgebraic(-2), false});
    }
    for (int i = 0; i < n; ++i) {
        RVec e(n);
        e[i] = RealAlgebraic(1);
        halves.add(Polyhedron::full(n).add({e, RealAlgebraic(1), false}));
    }
    RVec e(n);
    for (auto& c : e) c = RealAlgebraic(-1);
    halves.add(Polyhedron::full(n).add({e, RealAlgebraic(-n), false}));
    for (auto _ : state) benchmark::DoNotOptimize(subset(cube, halves));
}
BENCHMARK(BM_SubsetCube)->DenseRange(2, 5);

void BM_SmallStableSet(benchmark::State& state) {
    int dj = static_cast<int>(state.range(0));
    ComplexAlgebraic l = parse_scalar("(1+i)/2");
    for (auto _ : state) benchmark::DoNotOptimize(small_stable_set(dj, l, RealAlgebraic(1)));
}
BENCHMARK(BM_SmallStableSet)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_Decide(benchmark::State& state, const char* file) {
    OrbitInstance l = load(file).single();
    for (auto _ : state) benchmark::DoNotOptimize(decide(l));
}
BENCHMARK_CAPTURE(BM_Decide, example1, "example1.json")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Decide, example3, "example3.json")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Decide, example4, "example4.json")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Decide, example5, "example5.json")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Decide, lt1_jordan, "lt1_jordan.json")->Unit(benchmark::kMillisecond);

void BM_CheckPcpInvariant(benchmark::State& state) {
    io::InstanceFile f = load("pcp_9x3.json");
    SemilinearSet inv = io::invariant_from(io::read_file(std::string(SEMILIN_BENCH_CORPUS) + "/pcp_9x3.invariant.json"));
    for (auto _ : state) benchmark::DoNotOptimize(check_certificate(f.matrices, f.x, f.y, inv));
}
BENCHMARK(BM_CheckPcpInvariant)->Unit(benchmark::kMillisecond);

void BM_ProofInvariantSearch(benchmark::State& state) {
    PcpInstance p = PcpInstance::from({{"02", "20"}, {"20", "02"}, {"0", "2"}, {"22", "0"}});
    for (auto _ : state) benchmark::DoNotOptimize(proof_invariant_9x3(p));
}
BENCHMARK(BM_ProofInvariantSearch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
