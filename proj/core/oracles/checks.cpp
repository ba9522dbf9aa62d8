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

#include "checks.hpp"
#include "oracles.hpp"

#include <risbeam/linalg.hpp>
#include <risbeam/rng.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace risbeam::oracle
{

namespace
{

constexpr Block kBlocks[] = {Block::d, Block::a, Block::e};

double rel_diff(const CMatrix &got, const CMatrix &ref)
{
    const double scale = std::max(ref.norm(), 1e-300);
    return (got - ref).norm() / scale;
}

double rel_diff(double got, double ref) { return std::abs(got - ref) / std::max(std::abs(ref), 1e-300); }

void record(CheckResult &r, double err, double tol, const std::string &what)
{
    ++r.checked;
    r.worst = std::max(r.worst, err);
    if (!(err <= tol) && r.pass)
    {
        r.pass = false;
        std::ostringstream os;
        os << what << ": error " << err << " exceeds " << tol;
        r.detail = os.str();
    }
}

void summarize(CheckResult &r, const std::string &unit)
{
    if (r.pass)
    {
        std::ostringstream os;
        os << r.checked << ' ' << unit << ", worst " << r.worst;
        r.detail = os.str();
    }
}

double block_norm(const BeamformingState &s, Block b)
{
    switch (b)
    {
    case Block::d:
        return s.d.norm();
    case Block::a:
        return s.a.norm();
    case Block::e:
        break;
    }
    return s.e.norm();
}

CMatrix random_like(const BeamformingState &s, Block b, Rng &rng)
{
    CMatrix m;
    switch (b)
    {
    case Block::d:
        m = random_matrix(s.d.rows(), s.d.cols(), rng);
        break;
    case Block::a:
        m = random_matrix(s.a.rows(), s.a.cols(), rng);
        break;
    case Block::e:
        m = random_matrix(s.e.size(), 1, rng);
        break;
    }
    return m / m.norm();
}

BeamformingState random_state_for(const Problem &p, Rng &rng)
{
    return random_feasible_state(p.config.n_tx, p.config.n_rf, p.config.n_users, p.config.e_length(),
                                 p.config.p_max, rng);
}

} // namespace

Problem random_problem(int n_tx, int n_ris, int m_rows, int m_cols, int n_paths_bu, double p, Rng &rng)
{
    SystemConfig cfg = tiny_config(n_tx, n_ris, m_rows, m_cols, n_paths_bu);
    cfg.set_uniform_blockage(p);
    const GeometricChannel geo = gen_geometry(cfg, rng);
    return normalized_problem(cfg, geo);
}

CheckResult check_gradients_fd(int n_states, std::uint64_t seed, double rel_tol, double kink_gap)
{
    CheckResult r;
    Rng rng = make_rng(seed);
    const Problem prob = random_problem(8, 1, 2, 2, 3, 0.5, rng);
    const EquivalentChannelBuilder builder(prob.geo);
    const double eps = prob.config.epsilon;
    long skipped = 0;
    for (int i = 0; i < n_states; ++i)
    {
        const BeamformingState x = random_state_for(prob, rng);
        const ChannelSample sample = builder.assemble(sample_blockage(prob.config.p_block, rng));
        for (int k = 0; k < prob.config.n_users; ++k)
        {
            const double s0 = sinr(x, sample, k, 1.0);
            if (!(s0 > 0.0))
                continue;
            // Cycle the target margin through the three hinge branches.
            double m_target = 0.0;
            switch ((i + k) % 3)
            {
            case 0:
                m_target = -0.5;
                break;
            case 1:
                m_target = eps * (0.2 + 0.6 * uniform01(rng));
                break;
            default:
                m_target = 0.1 + 0.8 * uniform01(rng);
                break;
            }
            const double omega = s0 / (1.0 - m_target);
            const double m = 1.0 - s0 / omega;
            if (std::abs(m) <= kink_gap || std::abs(m - eps) <= kink_gap)
            {
                ++skipped;
                continue;
            }
            const StateFunction u = [&](const BeamformingState &s) {
                return hinge(omega, eps, sinr(s, sample, k, 1.0));
            };
            for (Block b : kBlocks)
            {
                const CMatrix g = grad_hinge_block(b, x, sample, k, omega, eps, 1.0);
                const CMatrix delta = random_like(x, b, rng);
                const double t = 1e-6 * std::max(1.0, block_norm(x, b));
                const double fd = fd_directional(u, x, b, delta, t);
                const double an = wirtinger_directional(g, delta);
                const double err = std::abs(fd - an) / std::max(std::abs(an), 1e-12);
                record(r, err, rel_tol, std::string("block ") + std::string(block_name(b)));
            }
        }
    }
    summarize(r, "directional derivatives (" + std::to_string(skipped) + " near-kink points skipped)");
    return r;
}

CheckResult check_kronecker(int n_instances, std::uint64_t seed, double rel_tol)
{
    CheckResult r;
    Rng rng = make_rng(seed);
    for (int i = 0; i < n_instances; ++i)
    {
        const int n_tx = 2 + i % 3;  // 2..4
        const int m_cols = 1 + i % 2;
        const int m_rows = 1 + (i / 2) % 2;  // UM + 1 <= 5
        const Problem prob = random_problem(n_tx, 1, m_rows, m_cols, 2, 0.5, rng);
        const BlockageDraw draw = sample_blockage(prob.config.p_block, rng);
        const ChannelSample sample = EquivalentChannelBuilder(prob.geo).assemble(draw);
        const auto h = stacked_channels(prob.geo, draw.gamma);
        const BeamformingState x = random_state_for(prob, rng);
        for (int k = 0; k < prob.config.n_users; ++k)
        {
            record(r, rel_diff(sample.stacked(k), h[static_cast<std::size_t>(k)]), rel_tol, "stacked channel");
            const double direct = direct_sinr(x, h[static_cast<std::size_t>(k)], k, 1.0);
            record(r, rel_diff(sinr(x, sample, k, 1.0), direct), rel_tol, "sinr");
            for (Block b : kBlocks)
            {
                const QuadraticForm f = kronecker_form(b, x, h[static_cast<std::size_t>(k)], k);
                record(r, rel_diff(form_sinr(f, 1.0), direct), rel_tol,
                       std::string("quadratic form, block ") + std::string(block_name(b)));
                record(r, rel_diff(grad_sinr_block(b, x, sample, k, 1.0), form_gradient(b, x, f, 1.0)), rel_tol,
                       std::string("gradient, block ") + std::string(block_name(b)));
            }
        }
    }
    summarize(r, "comparisons");
    return r;
}

CheckResult check_projections(int n_candidates, std::uint64_t seed, double tol)
{
    CheckResult r;
    Rng rng = make_rng(seed);
    for (int i = 0; i < n_candidates; ++i)
    {
        // D
        const CMatrix a = random_matrix(8, 2, rng).unaryExpr([](cplx z) { return z / std::abs(z); });
        const double p_max = 0.1 + 10.0 * uniform01(rng);
        const CMatrix z_d = random_matrix(2, 2, rng) * std::exp(4.0 * (uniform01(rng) - 0.5));
        const CMatrix d = project_d(z_d, a, p_max);
        record(r, rel_diff((a * d).squaredNorm(), p_max), tol, "project_d power");
        record(r, rel_diff(project_d(d, a, p_max), d), tol, "project_d idempotency");

        // A, with occasional exact zeros
        CMatrix z_a = random_matrix(8, 2, rng);
        if (i % 10 == 0)
            z_a(i % 8, 0) = 0.0;
        const CMatrix pa = project_a(z_a);
        double mod_dev = 0.0;
        double nearest_gap = 0.0;
        for (Eigen::Index n = 0; n < pa.size(); ++n)
        {
            const cplx z = z_a(n);
            const cplx y = pa(n);
            mod_dev = std::max(mod_dev, std::abs(std::abs(y) - 1.0));
            // Closest unit-modulus point is at distance | |z| - 1 |; a
            // 1-D scan over the circle must not find anything closer.
            const double dist = std::abs(z - y);
            nearest_gap = std::max(nearest_gap, std::abs(dist - std::abs(std::abs(z) - 1.0)));
            for (int s = 0; s < 64; ++s)
            {
                const double d_scan = std::abs(z - std::polar(1.0, 2.0 * kPi * s / 64.0));
                nearest_gap = std::max(nearest_gap, dist - d_scan);
            }
        }
        record(r, mod_dev, tol, "project_a modulus");
        record(r, nearest_gap, tol, "project_a nearest point");
        record(r, (project_a(pa) - pa).cwiseAbs().maxCoeff(), tol, "project_a idempotency");

        // e
        const CVector z_e = random_matrix(9, 1, rng).col(0);
        const CVector pe = project_e(z_e);
        record(r, pe[8] == cplx(1.0, 0.0) ? 0.0 : 1.0, 0.0, "project_e last entry");
        record(r, (pe.cwiseAbs().array() - 1.0).abs().maxCoeff(), tol, "project_e modulus");
        record(r, (project_e(pe) - pe).cwiseAbs().maxCoeff(), tol, "project_e idempotency");
        const cplx c = complex_normal(rng, 1.0) * std::exp(3.0 * (uniform01(rng) - 0.5));
        record(r, (project_e(c * z_e) - pe).cwiseAbs().maxCoeff(), tol, "project_e gauge invariance");
    }
    summarize(r, "assertions");
    return r;
}

CheckResult check_unbiasedness(int t, std::uint64_t seed, double rel_tol)
{
    CheckResult r;
    Rng rng = make_rng(seed);
    Problem prob = random_problem(8, 1, 2, 2, 3, 0.5, rng);
    const auto samples = training_set(prob.geo, prob.config, t, rng);
    const BeamformingState x = random_state_for(prob, rng);
    // Targets above the typical SINR so most terms are active.
    const RVector s0 = sinr_all(x, samples.front(), prob.config.noise_power);
    prob.config.sinr_targets.assign(prob.config.sinr_targets.size(), 2.0 * s0.maxCoeff() + 1.0);
    const SurrogateParams params = SurrogateParams::from(prob.config);
    for (Block b : kBlocks)
    {
        CMatrix ref;
        for (const auto &sample : samples)
            for (int k = 0; k < params.n_users(); ++k)
            {
                const CMatrix g = grad_hinge_block(b, x, sample, k, params.omega[k], params.epsilon, 1.0);
                ref = ref.size() ? CMatrix(ref + g) : g;
            }
        ref /= static_cast<double>(samples.size());
        if (ref.norm() == 0.0)
        {
            record(r, 1.0, 0.0, std::string("degenerate reference, block ") + std::string(block_name(b)));
            continue;
        }
        record(r, rel_diff(empirical_risk_gradient(b, x, samples, params), ref), rel_tol,
               std::string("block ") + std::string(block_name(b)));
    }
    summarize(r, "blocks");
    return r;
}

CheckResult check_lipschitz(int n_instances, int n_points, std::uint64_t seed)
{
    CheckResult r;
    Rng rng = make_rng(seed);
    double worst_ratio = 0.0;
    for (int i = 0; i < n_instances; ++i)
    {
        Problem prob = random_problem(4, 1, 1, 2, 2, 0.5, rng);
        // Pick omega near the SINR of a random beam so the hinge is active.
        {
            const BeamformingState probe = random_state_for(prob, rng);
            const ChannelSample s = EquivalentChannelBuilder(prob.geo).unblocked();
            const double level = std::max(sinr_all(probe, s, prob.config.noise_power).maxCoeff(), 1e-3);
            prob.config.sinr_targets.assign(prob.config.sinr_targets.size(), level);
        }
        const LipschitzConstants lc = lipschitz_constants(prob.config, prob.geo);
        const EquivalentChannelBuilder builder(prob.geo);
        const double eps = prob.config.epsilon;
        for (int pt = 0; pt < n_points; ++pt)
        {
            const BeamformingState x = random_state_for(prob, rng);
            const ChannelSample sample = builder.assemble(sample_blockage(prob.config.p_block, rng));
            for (int k = 0; k < prob.config.n_users; ++k)
            {
                const double omega = prob.config.sinr_targets[k];
                for (Block b : kBlocks)
                {
                    const StateGradient grad = [&](const BeamformingState &s) {
                        return grad_hinge_block(b, s, sample, k, omega, eps, 1.0);
                    };
                    const double t = 1e-6 * std::max(1.0, block_norm(x, b));
                    const double est = fd_hessian_spectral(grad, x, b, rng, t, 40);
                    const double ratio = est / lc.l_total;
                    worst_ratio = std::max(worst_ratio, ratio);
                    record(r, ratio, 1.0 + 1e-6, std::string("block ") + std::string(block_name(b)));
                }
            }
        }
    }
    r.worst = worst_ratio;
    summarize(r, "Hessian spectral estimates (worst estimate / l_total)");
    return r;
}

CheckResult check_init_monotone(int n_instances, std::uint64_t seed, double tol)
{
    CheckResult r;
    Rng rng = make_rng(seed);
    for (int i = 0; i < n_instances; ++i)
    {
        const Problem prob = random_problem(8, 2, 2, 2, 3, 0.0, rng);
        const InitEResult res = init_e(EquivalentChannelBuilder(prob.geo).unblocked(), 100, 1e-14);
        for (std::size_t n = 1; n < res.objective.size(); ++n)
        {
            const double drop = (res.objective[n - 1] - res.objective[n]) / std::abs(res.objective[n - 1]);
            record(r, std::max(drop, 0.0), tol, "MM iterate " + std::to_string(n));
        }
    }
    summarize(r, "MM steps (worst relative decrease)");
    return r;
}

CheckResult check_exhaustive_outage(long n_trials, std::uint64_t seed, double n_se)
{
    CheckResult r;
    Rng rng = make_rng(seed);
    Problem prob = random_problem(4, 1, 1, 2, 2, 0.4, rng);
    const BeamformingState x = random_state_for(prob, rng);

    // Target between the middle pattern SINRs of each user so the outage
    // probability is strictly inside (0, 1).
    const int k_users = prob.config.n_users;
    const int l_paths = prob.config.n_paths_bu;
    for (int k = 0; k < k_users; ++k)
    {
        std::vector<double> values;
        for (int mask = 0; mask < (1 << l_paths); ++mask)
        {
            Eigen::MatrixXi gamma = Eigen::MatrixXi::Ones(k_users, l_paths);
            for (int l = 0; l < l_paths; ++l)
                gamma(k, l) = (mask >> l) & 1;
            values.push_back(direct_sinr(x, stacked_channels(prob.geo, gamma)[static_cast<std::size_t>(k)], k, 1.0));
        }
        std::sort(values.begin(), values.end());
        const std::size_t mid = values.size() / 2;
        prob.config.sinr_targets[k] = std::sqrt(std::max(values[mid - 1], 1e-12) * std::max(values[mid], 1e-12));
    }

    const std::vector<double> exact = exhaustive_outage(x, prob.geo, prob.config);
    const EvalReport mc = evaluate(x, prob.geo, prob.config, n_trials, derive_seed(seed, {stream::evaluation}));
    double var_sum = 0.0;
    double exact_avg = 0.0;
    for (int k = 0; k < k_users; ++k)
    {
        const double q = exact[static_cast<std::size_t>(k)];
        const double se = binomial_std_error(q, n_trials);
        const double z = se > 0.0 ? std::abs(mc.outage[k] - q) / se : (mc.outage[k] == q ? 0.0 : 1e300);
        record(r, z, n_se, "user " + std::to_string(k) + " outage z-score");
        var_sum += se * se;
        exact_avg += q / k_users;
    }
    const double se_avg = std::sqrt(var_sum) / k_users;
    record(r, std::abs(mc.outage_avg - exact_avg) / se_avg, n_se, "average outage z-score");
    std::ostringstream os;
    if (r.pass)
    {
        os << "exact " << exact_avg << ", Monte Carlo " << mc.outage_avg << ", worst |z| " << r.worst;
        r.detail = os.str();
    }
    return r;
}

CheckResult check_power_iteration(int n_instances, std::uint64_t seed, double rel_tol)
{
    CheckResult r;
    Rng rng = make_rng(seed);
    for (int i = 0; i < n_instances; ++i)
    {
        const CMatrix f = random_matrix(6, 4, rng);
        record(r, rel_diff(lambda_max_psd(f), dense_lambda_max(f)), rel_tol, "lambda_max");
    }
    summarize(r, "matrices");
    return r;
}

} // namespace risbeam::oracle
