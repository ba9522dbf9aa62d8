// SPDX-License-Identifier: Apache-2.0
//
// risbeam: robust hybrid beamforming for RIS-aided mmWave links under random blockages
// Copyright (C) 2026 The risbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <risbeam/channel.hpp>
#include <risbeam/evaluation.hpp>
#include <risbeam/optimizer.hpp>
#include <risbeam/rng.hpp>
#include <risbeam/surrogate.hpp>

#include <benchmark/benchmark.h>

namespace
{

using namespace risbeam;

// Noise-normalized problem and its initial state at the given array sizes.
struct Fixture
{
    Problem problem;
    BeamformingState state;
    ChannelSample sample;

    Fixture(int n_tx, int m_side)
    {
        SystemConfig cfg = full_scale_scenario(0.5);
        cfg.n_tx = n_tx;
        cfg.m_rows = m_side;
        cfg.m_cols = m_side;
        Rng rng = make_rng(1);
        problem = normalized_problem(cfg, gen_geometry(cfg, rng));
        state = initialize_state(problem.config, problem.geo, rng);
        sample = EquivalentChannelBuilder(problem.geo).assemble(sample_blockage(problem.config, rng));
        // Keep every user on an active hinge branch.
        problem.config.sinr_targets.assign(2, 1e6);
    }
};

void BM_SumHingeGradient(benchmark::State &st)
{
    const Fixture f(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
    const SurrogateParams params = SurrogateParams::from(f.problem.config);
    for (auto _ : st)
        for (Block b : {Block::d, Block::a, Block::e})
            benchmark::DoNotOptimize(sum_hinge_gradient(b, f.state, f.sample, params));
}
BENCHMARK(BM_SumHingeGradient)->Args({16, 4})->Args({32, 8});

void BM_AssembleSample(benchmark::State &st)
{
    const Fixture f(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
    const EquivalentChannelBuilder builder(f.problem.geo);
    Rng rng = make_rng(2);
    for (auto _ : st)
        benchmark::DoNotOptimize(builder.assemble(sample_blockage(f.problem.config, rng)));
}
BENCHMARK(BM_AssembleSample)->Args({16, 4})->Args({32, 8});

void BM_BsgdIterations(benchmark::State &st)
{
    const Fixture f(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
    BsgdOptions opts;
    opts.stop = StopCriteria{100, 1000, 0.0};
    opts.log_stride = 100;
    for (auto _ : st)
    {
        BlockageSampler sampler(f.problem.geo, f.problem.config.p_block);
        Rng rng = make_rng(3);
        benchmark::DoNotOptimize(
            bsgd_outmin(SurrogateParams::from(f.problem.config), f.problem.config.p_max, f.state, sampler, opts, rng));
    }
    st.SetItemsProcessed(st.iterations() * 100);
}
BENCHMARK(BM_BsgdIterations)->Args({16, 4})->Args({32, 8})->Unit(benchmark::kMillisecond);

void BM_Evaluate(benchmark::State &st)
{
    Fixture f(16, 4);
    f.problem.config.sinr_targets.assign(2, 1.0);
    for (auto _ : st)
        benchmark::DoNotOptimize(evaluate(f.state, f.problem.geo, f.problem.config, st.range(0), 4));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_Evaluate)->Arg(2000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
