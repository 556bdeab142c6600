#include <benchmark/benchmark.h>

#include "cglearn/complexes.hpp"
#include "cglearn/gaussian.hpp"
#include "cglearn/rng.hpp"
#include "cglearn/separation.hpp"
#include "cglearn/synthetic.hpp"

using namespace cglearn;

namespace {

void BM_c_separated(benchmark::State& state) {
    const auto p = static_cast<std::size_t>(state.range(0));
    const MixedGraph g = random_chain_graph({p, 3.0, 11});
    Rng rng(7);
    for (auto _ : state) {
        const VertexId u = static_cast<VertexId>(rng.uniform_int(0, p - 1));
        VertexId v = static_cast<VertexId>(rng.uniform_int(0, p - 2));
        if (v >= u) ++v;
        VertexSet s;
        for (VertexId x = 0; x < p && s.size() < 3; ++x) {
            if (x != u && x != v && rng.bernoulli(0.1)) s.push_back(x);
        }
        benchmark::DoNotOptimize(c_separated(g, u, v, s));
    }
}
BENCHMARK(BM_c_separated)->Arg(30)->Arg(100);

void BM_gauss_ci(benchmark::State& state) {
    const MixedGraph g = random_chain_graph({50, 3.0, 3});
    const GaussianData data = sample_gaussian(g, random_params(g, 1), 2000, 5);
    Rng rng(9);
    for (auto _ : state) {
        const VertexId u = static_cast<VertexId>(rng.uniform_int(0, 49));
        VertexId v = static_cast<VertexId>(rng.uniform_int(0, 48));
        if (v >= u) ++v;
        VertexSet s;
        for (VertexId x = 0; x < 50 && s.size() < 3; ++x) {
            if (x != u && x != v && rng.bernoulli(0.06)) s.push_back(x);
        }
        benchmark::DoNotOptimize(gauss_ci(data, u, v, s, 0.005));
    }
}
BENCHMARK(BM_gauss_ci);

void BM_skeleton_exact(benchmark::State& state) {
    const auto p = static_cast<std::size_t>(state.range(0));
    const MixedGraph g = random_chain_graph({p, 3.0, 23});
    const ExactOracle oracle(g);
    const auto order = VariableOrdering::natural(p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(learn_skeleton(oracle, order, {SkeletonMode::stable}));
    }
}
BENCHMARK(BM_skeleton_exact)->Arg(15)->Arg(25);

void BM_skeleton_gaussian(benchmark::State& state) {
    const MixedGraph g = random_chain_graph({50, 3.0, 31});
    const GaussianData data = sample_gaussian(g, random_params(g, 2), 2000, 4);
    const GaussianOracle oracle(data, 0.005);
    const auto order = VariableOrdering::natural(50);
    const auto mode = state.range(0) == 0 ? SkeletonMode::original : SkeletonMode::stable;
    for (auto _ : state) {
        benchmark::DoNotOptimize(learn_skeleton(oracle, order, {mode}));
    }
}
BENCHMARK(BM_skeleton_gaussian)->Arg(0)->Arg(1);

void BM_stable_parallel(benchmark::State& state) {
    const MixedGraph g = random_chain_graph({60, 3.0, 13});
    const GaussianData data = sample_gaussian(g, random_params(g, 6), 1000, 8);
    const GaussianOracle oracle(data, 0.01);
    const auto order = VariableOrdering::natural(60);
    SkeletonOptions options;
    options.mode = SkeletonMode::stable;
    options.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(learn_skeleton(oracle, order, options));
    }
}
BENCHMARK(BM_stable_parallel)->Arg(1)->Arg(4);

void BM_pattern_extraction(benchmark::State& state) {
    const MixedGraph g = random_chain_graph({40, 3.0, 17});
    for (auto _ : state) {
        benchmark::DoNotOptimize(pattern_of(g));
    }
}
BENCHMARK(BM_pattern_extraction);

}  // namespace

BENCHMARK_MAIN();
