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

#include "risbeam/optimizer.hpp"
#include "risbeam/rng.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>
#include <string>

namespace risbeam
{

namespace
{

cplx unit_phase(cplx z)
{
    const double r = std::abs(z);
    return r > 0.0 ? z / r : cplx(1.0, 0.0);
}

} // namespace

CMatrix project_d(const CMatrix &z, const CMatrix &a, double p_max)
{
    if (a.cols() != z.rows())
        throw StructuralError("project_d: A and Z shapes do not chain");
    const double norm = (a * z).norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw DegenerateError("project_d: A Z is zero or non-finite");
    return z * (std::sqrt(p_max) / norm);
}

CMatrix project_a(const CMatrix &z)
{
    return z.unaryExpr([](cplx v) { return unit_phase(v); });
}

CVector project_e(const CVector &z)
{
    if (z.size() == 0)
        throw StructuralError("project_e: empty vector");
    const cplx last = z[z.size() - 1];
    if (last == cplx(0.0, 0.0) || !std::isfinite(std::abs(last)))
        throw DegenerateError("project_e: reference entry is zero");
    CVector out(z.size());
    for (Eigen::Index m = 0; m + 1 < z.size(); ++m)
        out[m] = unit_phase(z[m] / last);
    out[z.size() - 1] = cplx(1.0, 0.0);
    return out;
}

InitEResult init_e(const ChannelSample &h0, int max_mm_iters, double tol)
{
    const int rows = h0.n_rows();
    CMatrix gram = CMatrix::Zero(rows, rows);
    for (int k = 0; k < h0.n_users(); ++k)
    {
        const CMatrix hk = h0.stacked(k);
        gram.noalias() += hk * hk.adjoint();
    }
    if (gram.cwiseAbs().maxCoeff() == 0.0)
        throw DegenerateError("init_e: channel is zero");

    auto objective = [&](const CVector &e) { return (e.adjoint() * gram * e)(0, 0).real(); };

    InitEResult r;
    r.e = CVector::Ones(rows);
    r.objective.push_back(objective(r.e));
    for (int n = 0; n < max_mm_iters; ++n)
    {
        const CVector z = gram * r.e;
        if (z[rows - 1] == cplx(0.0, 0.0))
            throw DegenerateError("init_e: reference entry of the minorizer vanished");
        r.e = project_e(z);
        ++r.iterations;
        const double prev = r.objective.back();
        r.objective.push_back(objective(r.e));
        if (std::abs(r.objective.back() - prev) <= tol * std::abs(r.objective.back()))
            break;
    }
    return r;
}

CMatrix init_a(const ChannelSample &h0, const CVector &e0, int n_rf, Rng &rng)
{
    const int k_users = h0.n_users();
    if (n_rf < k_users)
        throw StructuralError("init_a: need N_RF >= K");
    CMatrix a(h0.n_tx(), n_rf);
    for (int i = 0; i < k_users; ++i)
    {
        const CVector col = h0.adjoint_apply(i, e0);
        if (col.cwiseAbs().maxCoeff() == 0.0)
            throw DegenerateError("init_a: effective channel of user " + std::to_string(i) + " is zero");
        a.col(i) = project_a(col);
    }
    for (int i = k_users; i < n_rf; ++i)
        for (Eigen::Index m = 0; m < a.rows(); ++m)
            a(m, i) = unit_phase(complex_normal(rng, 1.0));
    return a;
}

CMatrix init_d(const ChannelSample &h0, const CMatrix &a0, const CVector &e0, double p_max)
{
    CMatrix d(a0.cols(), h0.n_users());
    for (int k = 0; k < h0.n_users(); ++k)
        d.col(k) = a0.adjoint() * h0.adjoint_apply(k, e0);
    if ((a0 * d).norm() == 0.0)
        throw DegenerateError("init_d: effective channels are zero");
    return project_d(d, a0, p_max);
}

BeamformingState initialize_state(const SystemConfig &config, const GeometricChannel &geo, Rng &rng,
                                  int max_mm_iters, double mm_tol)
{
    geo.check_against(config);
    const ChannelSample h0 = EquivalentChannelBuilder(geo).unblocked();
    BeamformingState s;
    s.e = init_e(h0, max_mm_iters, mm_tol).e;
    s.a = init_a(h0, s.e, config.n_rf, rng);
    s.d = init_d(h0, s.a, s.e, config.p_max);
    return s;
}

double step_size(const StepSchedule &schedule, long t)
{
    double alpha = schedule.alpha0;
    if (schedule.kind == StepKind::inverse_t)
        alpha = schedule.alpha0 / (1.0 + static_cast<double>(t) / schedule.tau);
    if (schedule.lipschitz_cap)
        alpha = std::min(alpha, 1.0 / *schedule.lipschitz_cap);
    return alpha;
}

BlockageSampler::BlockageSampler(const GeometricChannel &geo, RMatrix p_block)
    : builder_(geo), p_block_(std::move(p_block))
{
    if (p_block_.rows() != builder_.n_users() || p_block_.cols() != builder_.n_paths_bu())
        throw StructuralError("BlockageSampler: p_block must be K x L_BU");
}

ChannelSample BlockageSampler::next(Rng &rng)
{
    return builder_.assemble(sample_blockage(p_block_, rng));
}

TrainingSetSampler::TrainingSetSampler(std::vector<ChannelSample> samples, Order order)
    : samples_(std::move(samples)), order_(order)
{
    if (samples_.empty())
        throw UsageError("TrainingSetSampler: empty training set");
}

ChannelSample TrainingSetSampler::next(Rng &rng)
{
    if (order_ == Order::sequential)
    {
        if (cursor_ >= samples_.size())
            throw SamplerExhausted("training set exhausted after " + std::to_string(samples_.size()) + " samples");
        return samples_[cursor_++];
    }
    const auto idx = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(samples_.size()));
    return samples_[std::min(idx, samples_.size() - 1)];
}

void write_trace_csv(const RunTrace &trace, std::ostream &out)
{
    const auto old_precision = out.precision(17);
    out << "t,objective_rolling,grad_norm_d,grad_norm_a,grad_norm_e,alpha\n";
    for (const auto &r : trace.records)
        out << r.t << ',' << r.objective_rolling << ',' << r.grad_norm_d << ',' << r.grad_norm_a << ','
            << r.grad_norm_e << ',' << r.alpha << '\n';
    out.precision(old_precision);
}

BsgdResult bsgd_outmin(const SurrogateParams &params, double p_max, BeamformingState initial, SampleSource &sampler,
                       const BsgdOptions &options, Rng &rng)
{
    const StopCriteria &stop = options.stop;
    if (stop.t_max < 1 || stop.window < 1 || options.log_stride < 1)
        throw UsageError("bsgd_outmin: t_max, window and log_stride must be >= 1");

    BsgdResult res;
    res.state = std::move(initial);
    BeamformingState &x = res.state;
    if (options.check_feasibility)
        require_feasible(x, p_max);

    std::deque<double> recent;  // last `window` per-sample objectives
    double block_sum = 0.0;
    auto rolling = [&recent] {
        double sum = 0.0;
        for (double v : recent)
            sum += v;
        return sum / static_cast<double>(recent.size());
    };

    for (long t = 1; t <= stop.t_max; ++t)
    {
        const ChannelSample sample = sampler.next(rng);
        const double alpha = step_size(options.schedule, t);

        double objective = 0.0;
        const CMatrix g_d = sum_hinge_gradient(Block::d, x, sample, params, &objective);
        if (options.blocks.d)
            x.d = project_d(x.d - alpha * g_d, x.a, p_max);

        const CMatrix g_a = sum_hinge_gradient(Block::a, x, sample, params);
        if (options.blocks.a)
        {
            x.a = project_a(x.a - alpha * g_a);
            x.d = project_d(x.d, x.a, p_max);
        }

        const CMatrix g_e = sum_hinge_gradient(Block::e, x, sample, params);
        if (options.blocks.e)
            x.e = project_e(x.e - alpha * g_e.col(0));

        recent.push_back(objective);
        if (static_cast<long>(recent.size()) > stop.window)
            recent.pop_front();
        block_sum += objective;
        res.trace.iterations = t;

        bool converged = false;
        if (t % stop.window == 0)
        {
            auto &means = res.trace.window_means;
            means.push_back(block_sum / static_cast<double>(stop.window));
            block_sum = 0.0;
            if (means.size() >= 2)
            {
                const double prev = means[means.size() - 2];
                converged = std::abs(means.back() - prev) <= stop.tol * std::abs(prev);
            }
        }

        if (t % options.log_stride == 0 || t == stop.t_max || converged)
        {
            TraceRecord rec;
            rec.t = t;
            rec.objective_rolling = rolling();
            rec.grad_norm_d = g_d.norm();
            rec.grad_norm_a = g_a.norm();
            rec.grad_norm_e = g_e.norm();
            rec.alpha = alpha;
            res.trace.records.push_back(rec);
            if (options.check_feasibility)
                require_feasible(x, p_max);
        }
        if (converged)
        {
            res.trace.converged = true;
            break;
        }
    }
    if (options.check_feasibility)
        require_feasible(x, p_max);
    return res;
}

BsgdResult bsgd_outmin(const SystemConfig &config, const GeometricChannel &geo, const BsgdOptions &options, Rng &rng)
{
    config.validate();
    BeamformingState init = initialize_state(config, geo, rng);
    BlockageSampler sampler(geo, config.p_block);
    return bsgd_outmin(SurrogateParams::from(config), config.p_max, std::move(init), sampler, options, rng);
}

} // namespace risbeam
