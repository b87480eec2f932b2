/*
* Copyright (C) 2026 seiropt contributors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/

// Serial-versus-OpenMP throughput of the grid kernels. The interesting sizes
// bracket parallel_grain: below it the OpenMP entry points fall back to the
// serial path, above it they fan out.

#include "seiropt/kernels.hpp"
#include "seiropt/numerics.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using namespace seiropt;

namespace {

std::vector<double> random_values(std::size_t n, std::uint64_t seed, double lo, double hi)
{
    std::mt19937_64 rng(seed);
    std::vector<double> values(n);
    for (double& v : values) {
        v = lo + (hi - lo) * uniform01(rng);
    }
    return values;
}

// One full grid of states, costates, and controls on [0, 20].
struct GridFixture {
    Trajectory traj;
    AdjointTrajectory adj;
    ControlSignal signal;

    explicit GridFixture(int n_steps)
    {
        TimeGrid grid;
        grid.T = 20.0;
        grid.n_steps = n_steps;
        traj.grid = grid;
        adj.grid = grid;
        signal.grid = grid;
        signal.variant = ControlVariant::Both;

        std::mt19937_64 rng(99);
        const std::size_t n = static_cast<std::size_t>(grid.n_nodes());
        traj.states.resize(n);
        adj.costates.resize(n);
        signal.u_values.resize(n);
        signal.p_values.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            double draws[4];
            double total = 0.0;
            for (double& d : draws) {
                d = 0.01 + uniform01(rng);
                total += d;
            }
            traj.states[k] = {draws[0] / total, draws[1] / total, draws[2] / total, draws[3] / total};
            adj.costates[k] = {4.0 * uniform01(rng) - 2.0, 4.0 * uniform01(rng) - 2.0,
                               4.0 * uniform01(rng) - 2.0, 4.0 * uniform01(rng) - 2.0};
            signal.u_values[k] = 0.5 * uniform01(rng);
            signal.p_values[k] = 0.3 * uniform01(rng);
        }
    }
};

void bm_weighted_sum_serial(benchmark::State& state)
{
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::vector<double> w = random_values(n, 1, 0.0, 1.0);
    const std::vector<double> v = random_values(n, 2, -1.0, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::serial::weighted_sum(w, v));
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(n));
}

void bm_weighted_sum_parallel(benchmark::State& state)
{
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::vector<double> w = random_values(n, 1, 0.0, 1.0);
    const std::vector<double> v = random_values(n, 2, -1.0, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::weighted_sum(w, v));
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(n));
}

void bm_sup_abs_diff_serial(benchmark::State& state)
{
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::vector<double> a = random_values(n, 3, -1.0, 1.0);
    const std::vector<double> b = random_values(n, 4, -1.0, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::serial::sup_abs_diff(a, b));
    }
}

void bm_sup_abs_diff_parallel(benchmark::State& state)
{
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::vector<double> a = random_values(n, 3, -1.0, 1.0);
    const std::vector<double> b = random_values(n, 4, -1.0, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::sup_abs_diff(a, b));
    }
}

void bm_damped_update_serial(benchmark::State& state)
{
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    std::vector<double> values = random_values(n, 5, 0.0, 0.5);
    const std::vector<double> targets = random_values(n, 6, 0.0, 0.5);
    for (auto _ : state) {
        kernels::serial::damped_update(values, targets, 0.5, 0.0, 0.5);
        benchmark::DoNotOptimize(values.data());
    }
}

void bm_damped_update_parallel(benchmark::State& state)
{
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    std::vector<double> values = random_values(n, 5, 0.0, 0.5);
    const std::vector<double> targets = random_values(n, 6, 0.0, 0.5);
    for (auto _ : state) {
        kernels::damped_update(values, targets, 0.5, 0.0, 0.5);
        benchmark::DoNotOptimize(values.data());
    }
}

void bm_characterize_serial(benchmark::State& state)
{
    const GridFixture fixture(static_cast<int>(state.range(0)));
    const std::size_t n = fixture.traj.states.size();
    std::vector<double> u(n);
    std::vector<double> p(n);
    const ModelParams params;
    for (auto _ : state) {
        kernels::serial::characterize_grid(fixture.traj, fixture.adj, params, ControlVariant::Both, u, p);
        benchmark::DoNotOptimize(u.data());
    }
}

void bm_characterize_parallel(benchmark::State& state)
{
    const GridFixture fixture(static_cast<int>(state.range(0)));
    const std::size_t n = fixture.traj.states.size();
    std::vector<double> u(n);
    std::vector<double> p(n);
    const ModelParams params;
    for (auto _ : state) {
        kernels::characterize_grid(fixture.traj, fixture.adj, params, ControlVariant::Both, u, p);
        benchmark::DoNotOptimize(u.data());
    }
}

void bm_control_gradient_serial(benchmark::State& state)
{
    const GridFixture fixture(static_cast<int>(state.range(0)));
    const std::size_t n = fixture.traj.states.size();
    std::vector<double> du(n);
    std::vector<double> dp(n);
    const CostWeights w{0.0, 1.0, 1.0, 1.0};
    for (auto _ : state) {
        kernels::serial::control_gradient_grid(fixture.traj, fixture.adj, fixture.signal, w, du, dp);
        benchmark::DoNotOptimize(du.data());
    }
}

void bm_control_gradient_parallel(benchmark::State& state)
{
    const GridFixture fixture(static_cast<int>(state.range(0)));
    const std::size_t n = fixture.traj.states.size();
    std::vector<double> du(n);
    std::vector<double> dp(n);
    const CostWeights w{0.0, 1.0, 1.0, 1.0};
    for (auto _ : state) {
        kernels::control_gradient_grid(fixture.traj, fixture.adj, fixture.signal, w, du, dp);
        benchmark::DoNotOptimize(du.data());
    }
}

BENCHMARK(bm_weighted_sum_serial)->Arg(2048)->Arg(65536)->Arg(1 << 20);
BENCHMARK(bm_weighted_sum_parallel)->Arg(2048)->Arg(65536)->Arg(1 << 20);
BENCHMARK(bm_sup_abs_diff_serial)->Arg(2048)->Arg(65536)->Arg(1 << 20);
BENCHMARK(bm_sup_abs_diff_parallel)->Arg(2048)->Arg(65536)->Arg(1 << 20);
BENCHMARK(bm_damped_update_serial)->Arg(2048)->Arg(65536)->Arg(1 << 20);
BENCHMARK(bm_damped_update_parallel)->Arg(2048)->Arg(65536)->Arg(1 << 20);
BENCHMARK(bm_characterize_serial)->Arg(2000)->Arg(20000)->Arg(200000);
BENCHMARK(bm_characterize_parallel)->Arg(2000)->Arg(20000)->Arg(200000);
BENCHMARK(bm_control_gradient_serial)->Arg(2000)->Arg(20000)->Arg(200000);
BENCHMARK(bm_control_gradient_parallel)->Arg(2000)->Arg(20000)->Arg(200000);

} // namespace

BENCHMARK_MAIN();
