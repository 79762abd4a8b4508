// Copyright 2026 The rnskit Authors.
// SPDX-License-Identifier: Apache-2.0

// Serial exact-arithmetic reference vs. OpenMP word kernels for bulk
// conversion and channel arithmetic. Argument is the batch size.

#include "rns/batch.hpp"
#include "rns/moduli.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

namespace
{

const rns::RnsContext& context()
{
    static const rns::RnsContext ctx{rns::find_moduli({32, 6}).set};
    return ctx;
}

std::vector<std::uint64_t> values(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> out(n);
    for (auto& v : out)
        v = rng() >> 31;
    return out;
}

void BM_ForwardReference(benchmark::State& state)
{
    const auto xs = values(state.range(0), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(rns::batch::reference::forward(context(), xs));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ForwardKernel(benchmark::State& state)
{
    const rns::batch::FastContext fast{context()};
    const auto xs = values(state.range(0), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(rns::batch::forward(fast, xs));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ReverseReference(benchmark::State& state)
{
    const rns::batch::FastContext fast{context()};
    const auto block = rns::batch::forward(fast, values(state.range(0), 2));
    for (auto _ : state)
        benchmark::DoNotOptimize(rns::batch::reference::reverse(context(), block));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ReverseKernel(benchmark::State& state)
{
    const rns::batch::FastContext fast{context()};
    const auto block = rns::batch::forward(fast, values(state.range(0), 2));
    for (auto _ : state)
        benchmark::DoNotOptimize(rns::batch::reverse(fast, block));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MulReference(benchmark::State& state)
{
    const rns::batch::FastContext fast{context()};
    const auto a = rns::batch::forward(fast, values(state.range(0), 3));
    const auto b = rns::batch::forward(fast, values(state.range(0), 4));
    for (auto _ : state)
        benchmark::DoNotOptimize(rns::batch::reference::combine(context(), rns::batch::Op::Mul, a, b));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MulKernel(benchmark::State& state)
{
    const rns::batch::FastContext fast{context()};
    const auto a = rns::batch::forward(fast, values(state.range(0), 3));
    const auto b = rns::batch::forward(fast, values(state.range(0), 4));
    for (auto _ : state)
        benchmark::DoNotOptimize(rns::batch::combine(fast, rns::batch::Op::Mul, a, b));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_ForwardReference)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_ForwardKernel)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_ReverseReference)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_ReverseKernel)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_MulReference)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_MulKernel)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);

BENCHMARK_MAIN();
