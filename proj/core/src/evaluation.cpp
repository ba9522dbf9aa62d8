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

#include "risbeam/evaluation.hpp"
#include "risbeam/rng.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <ostream>
#include <thread>

namespace risbeam
{

EvalReport evaluate(const BeamformingState &state, const GeometricChannel &geo, const SystemConfig &config,
                    long n_trials, std::uint64_t seed)
{
    if (n_trials < 1)
        throw UsageError("evaluate: n_trials must be >= 1");
    require_feasible(state, config.p_max);
    geo.check_against(config);

    const int k_users = config.n_users;
    const EquivalentChannelBuilder builder(geo);
    Rng rng = make_rng(seed);

    std::vector<long> outages(k_users, 0);
    std::vector<double> rate_sum(k_users, 0.0);
    for (long t = 0; t < n_trials; ++t)
    {
        const ChannelSample sample = builder.assemble(sample_blockage(config.p_block, rng));
        const RVector s = sinr_all(state, sample, config.noise_power);
        for (int k = 0; k < k_users; ++k)
        {
            if (s[k] <= config.sinr_targets[k])
                ++outages[k];
            else
                rate_sum[k] += std::log2(1.0 + s[k]);
        }
    }

    EvalReport r;
    r.n_trials = n_trials;
    r.seed = seed;
    const auto n = static_cast<double>(n_trials);
    for (int k = 0; k < k_users; ++k)
    {
        r.outage.push_back(static_cast<double>(outages[k]) / n);
        r.eff_rate.push_back(rate_sum[k] / n);
        r.outage_avg += r.outage.back();
        r.eff_sum_rate += r.eff_rate.back();
    }
    r.outage_avg /= k_users;
    return r;
}

double binomial_std_error(double q, long n) noexcept
{
    return n > 0 ? std::sqrt(q * (1.0 - q) / static_cast<double>(n)) : 0.0;
}

std::string scheme_name(Scheme scheme)
{
    switch (scheme)
    {
    case Scheme::bsgd_robust:
        return "bsgd_robust";
    case Scheme::ris_non_robust:
        return "ris_non_robust";
    case Scheme::ris_random:
        return "ris_random";
    case Scheme::non_ris:
        return "non_ris";
    }
    return "unknown";
}

Scheme scheme_from_name(const std::string &name)
{
    for (Scheme s : kAllSchemes)
        if (scheme_name(s) == name)
            return s;
    throw UsageError("unknown scheme '" + name + "'");
}

Problem normalized_problem(const SystemConfig &config, const GeometricChannel &geo)
{
    Problem p{config, normalize_noise(geo, config.noise_power)};
    p.config.noise_power.assign(config.noise_power.size(), 1.0);
    return p;
}

Problem scheme_problem(Scheme scheme, const Problem &problem)
{
    if (scheme != Scheme::non_ris)
        return problem;
    Problem p{problem.config, without_ris(problem.geo)};
    p.config.n_ris = 0;
    p.config.deployment.ris.clear();
    return p;
}

BsgdResult baseline_ris_random(const SystemConfig &config, const GeometricChannel &geo, const BsgdOptions &options,
                               Rng &rng)
{
    config.validate();
    geo.check_against(config);
    const ChannelSample h0 = EquivalentChannelBuilder(geo).unblocked();

    BeamformingState init;
    init.e = CVector(config.e_length());
    for (int m = 0; m + 1 < config.e_length(); ++m)
        init.e[m] = std::polar(1.0, 2.0 * kPi * uniform01(rng));
    init.e[config.e_length() - 1] = cplx(1.0, 0.0);
    init.a = init_a(h0, init.e, config.n_rf, rng);
    init.d = init_d(h0, init.a, init.e, config.p_max);

    BsgdOptions opts = options;
    opts.blocks.e = false;
    BlockageSampler sampler(geo, config.p_block);
    return bsgd_outmin(SurrogateParams::from(config), config.p_max, std::move(init), sampler, opts, rng);
}

BsgdResult baseline_non_robust(const SystemConfig &config, const GeometricChannel &geo, const BsgdOptions &options,
                               Rng &rng)
{
    config.validate();
    BeamformingState init = initialize_state(config, geo, rng);
    FixedSampler sampler(EquivalentChannelBuilder(geo).unblocked());
    return bsgd_outmin(SurrogateParams::from(config), config.p_max, std::move(init), sampler, options, rng);
}

BsgdResult baseline_no_ris(const SystemConfig &config, const GeometricChannel &geo, const BsgdOptions &options,
                           Rng &rng)
{
    const Problem reduced = scheme_problem(Scheme::non_ris, Problem{config, geo});
    return bsgd_outmin(reduced.config, reduced.geo, options, rng);
}

BsgdResult train_scheme(Scheme scheme, const SystemConfig &config, const GeometricChannel &geo,
                        const BsgdOptions &options, Rng &rng)
{
    switch (scheme)
    {
    case Scheme::bsgd_robust:
        return bsgd_outmin(config, geo, options, rng);
    case Scheme::ris_non_robust:
        return baseline_non_robust(config, geo, options, rng);
    case Scheme::ris_random:
        return baseline_ris_random(config, geo, options, rng);
    case Scheme::non_ris:
        return baseline_no_ris(config, geo, options, rng);
    }
    throw UsageError("train_scheme: unknown scheme");
}

std::uint64_t sweep_geometry_seed(std::uint64_t master, int geo_index) noexcept
{
    return derive_seed(master, {stream::geometry, static_cast<std::uint64_t>(geo_index)});
}

std::uint64_t sweep_evaluation_seed(std::uint64_t master, int geo_index) noexcept
{
    return derive_seed(master, {stream::evaluation, static_cast<std::uint64_t>(geo_index)});
}

std::uint64_t sweep_training_seed(std::uint64_t master, int geo_index, Scheme scheme) noexcept
{
    return derive_seed(master,
                       {stream::training, static_cast<std::uint64_t>(geo_index), static_cast<std::uint64_t>(scheme)});
}

namespace
{

// Runs body(i) for i in [0, n) on `threads` workers. The first exception by
// task index is rethrown after all workers finish.
template <class Body>
void parallel_for(std::size_t n, int threads, Body body)
{
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++)
        {
            try
            {
                body(i);
            }
            catch (...)
            {
                errors[i] = std::current_exception();
            }
        }
    };
    const int n_workers = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    if (n_workers == 1)
        worker();
    else
    {
        std::vector<std::thread> pool;
        for (int w = 0; w < n_workers; ++w)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
    }
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);
}

void mean_and_se(const std::vector<double> &x, double &mean, double &se)
{
    const auto n = static_cast<double>(x.size());
    mean = 0.0;
    for (double v : x)
        mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : x)
        ss += (v - mean) * (v - mean);
    se = x.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
}

} // namespace

SweepResult sweep_pblock(const SystemConfig &config, const SweepOptions &options)
{
    config.validate();
    if (options.p_grid.empty())
        throw UsageError("sweep_pblock: p_grid is empty");
    for (double p : options.p_grid)
        if (!(p >= 0.0 && p <= 1.0))
            throw DomainError("sweep_pblock: p_grid values must lie in [0, 1]");
    if (options.n_geo < 1 || options.n_trials < 1)
        throw UsageError("sweep_pblock: n_geo and n_trials must be >= 1");
    if (options.schemes.empty())
        throw UsageError("sweep_pblock: no schemes selected");

    // Geometries are shared across the grid.
    std::vector<Problem> problems(options.n_geo);
    parallel_for(problems.size(), options.threads, [&](std::size_t g) {
        Rng rng = make_rng(sweep_geometry_seed(options.master_seed, static_cast<int>(g)));
        GeometricChannel geo = gen_geometry(config, rng);
        problems[g] = options.normalize_noise ? normalized_problem(config, geo) : Problem{config, std::move(geo)};
    });

    const std::size_t n_p = options.p_grid.size();
    const std::size_t n_g = problems.size();
    const std::size_t n_s = options.schemes.size();
    SweepResult res;
    res.rows.resize(n_p * n_g * n_s);

    parallel_for(res.rows.size(), options.threads, [&](std::size_t idx) {
        const std::size_t pi = idx / (n_g * n_s);
        const std::size_t g = (idx / n_s) % n_g;
        const Scheme scheme = options.schemes[idx % n_s];
        const int gi = static_cast<int>(g);

        Problem base = problems[g];
        base.config.set_uniform_blockage(options.p_grid[pi]);
        const Problem prob = scheme_problem(scheme, base);

        BsgdOptions train = options.train;
        if (options.lipschitz_cap)
            train.schedule.lipschitz_cap = lipschitz_constants(prob.config, prob.geo).l_total;

        Rng rng = make_rng(sweep_training_seed(options.master_seed, gi, scheme));
        const BsgdResult trained = train_scheme(scheme, base.config, base.geo, train, rng);

        const std::uint64_t eval_seed = sweep_evaluation_seed(options.master_seed, gi);
        const EvalReport rep = evaluate(trained.state, prob.geo, prob.config, options.n_trials, eval_seed);

        SweepRow &row = res.rows[idx];
        row.p_block = options.p_grid[pi];
        row.scheme = scheme;
        row.geo_index = gi;
        row.outage_avg = rep.outage_avg;
        row.eff_sum_rate = rep.eff_sum_rate;
        row.n_trials = rep.n_trials;
        row.seed = eval_seed;
    });

    for (std::size_t pi = 0; pi < n_p; ++pi)
        for (std::size_t s = 0; s < n_s; ++s)
        {
            std::vector<double> outage, rate;
            for (std::size_t g = 0; g < n_g; ++g)
            {
                const SweepRow &row = res.rows[(pi * n_g + g) * n_s + s];
                outage.push_back(row.outage_avg);
                rate.push_back(row.eff_sum_rate);
            }
            SweepSummary sum;
            sum.p_block = options.p_grid[pi];
            sum.scheme = options.schemes[s];
            sum.n_geo = static_cast<int>(n_g);
            mean_and_se(outage, sum.outage_mean, sum.outage_se);
            mean_and_se(rate, sum.rate_mean, sum.rate_se);
            res.summary.push_back(sum);
        }
    return res;
}

void write_sweep_rows_csv(const std::vector<SweepRow> &rows, std::ostream &out)
{
    const auto old_precision = out.precision(17);
    out << "p_block,scheme,geo_index,outage_avg,eff_sum_rate,n_trials,seed\n";
    for (const auto &r : rows)
        out << r.p_block << ',' << scheme_name(r.scheme) << ',' << r.geo_index << ',' << r.outage_avg << ','
            << r.eff_sum_rate << ',' << r.n_trials << ',' << r.seed << '\n';
    out.precision(old_precision);
}

void write_sweep_summary_csv(const std::vector<SweepSummary> &summary, std::ostream &out)
{
    const auto old_precision = out.precision(17);
    out << "p_block,scheme,n_geo,outage_mean,outage_se,eff_sum_rate_mean,eff_sum_rate_se\n";
    for (const auto &s : summary)
        out << s.p_block << ',' << scheme_name(s.scheme) << ',' << s.n_geo << ',' << s.outage_mean << ','
            << s.outage_se << ',' << s.rate_mean << ',' << s.rate_se << '\n';
    out.precision(old_precision);
}

} // namespace risbeam
