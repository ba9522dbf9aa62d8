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

#include "risbeam/surrogate.hpp"

#include "risbeam/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace risbeam
{

FeasibilityReport check_feasibility(const BeamformingState &state, double p_max, const FeasibilityTolerance &tol)
{
    FeasibilityReport r;
    const double power = (state.a * state.d).squaredNorm();
    r.power_rel_excess = (power - p_max) / p_max;
    r.a_modulus_dev = state.a.size() ? (state.a.cwiseAbs().array() - 1.0).abs().maxCoeff() : 0.0;
    const Eigen::Index um = state.e.size() - 1;
    r.e_modulus_dev = um > 0 ? (state.e.head(um).cwiseAbs().array() - 1.0).abs().maxCoeff() : 0.0;
    r.e_last_is_one = state.e.size() > 0 && state.e[um] == cplx(1.0, 0.0);
    r.ok = r.power_rel_excess <= tol.power_rel && r.a_modulus_dev <= tol.modulus && r.e_modulus_dev <= tol.modulus &&
           r.e_last_is_one;
    return r;
}

void require_feasible(const BeamformingState &state, double p_max, const FeasibilityTolerance &tol)
{
    if (state.a.cols() != state.d.rows())
        throw ContractError("beamforming state: A and D shapes do not chain");
    const FeasibilityReport r = check_feasibility(state, p_max, tol);
    if (!r.ok)
        throw ContractError("beamforming state is infeasible (power excess " + std::to_string(r.power_rel_excess) +
                            ", |A| deviation " + std::to_string(r.a_modulus_dev) + ", |e| deviation " +
                            std::to_string(r.e_modulus_dev) + ", e_last == 1: " + (r.e_last_is_one ? "yes" : "no") +
                            ")");
}

void check_shapes(const BeamformingState &state, const ChannelSample &sample)
{
    if (state.a.rows() != sample.n_tx())
        throw StructuralError("A has " + std::to_string(state.a.rows()) + " rows, channel has " +
                              std::to_string(sample.n_tx()) + " antennas");
    if (state.a.cols() != state.d.rows())
        throw StructuralError("A and D shapes do not chain");
    if (state.d.cols() != sample.n_users())
        throw StructuralError("D has " + std::to_string(state.d.cols()) + " streams, channel has " +
                              std::to_string(sample.n_users()) + " users");
    if (state.e.size() != sample.n_rows())
        throw StructuralError("e has length " + std::to_string(state.e.size()) + ", channel has " +
                              std::to_string(sample.n_rows()) + " rows");
}

namespace
{

// Per-user quantities shared by SINR and all three block gradients.
struct UserTerms
{
    CVector b;        // H_k^H e
    CVector f;        // A^H b
    CVector c;        // c_i = f^H d_i, length K
    double v = 0.0;   // interference + noise
    double sinr = 0.0;
    CVector w;        // d sinr / d c-weights, see weights()
};

UserTerms user_terms(const BeamformingState &s, const ChannelSample &sample, int k, double noise)
{
    UserTerms t;
    t.b = sample.adjoint_apply(k, s.e);
    t.f = s.a.adjoint() * t.b;
    t.c = (t.f.adjoint() * s.d).transpose();
    const double sig = std::norm(t.c[k]);
    t.v = t.c.squaredNorm() - sig + noise;
    t.sinr = sig / t.v;
    // Gradient weights: w_k = c_kk / v, w_i = -(sinr / v) c_ki for i != k.
    t.w = (-t.sinr / t.v) * t.c;
    t.w[k] = t.c[k] / t.v;
    return t;
}

void check_user(const ChannelSample &sample, int k)
{
    if (k < 0 || k >= sample.n_users())
        throw StructuralError("user index " + std::to_string(k) + " out of range");
}

// Contribution scale * d sinr_k / d conj(block), accumulated into `out`.
void accumulate_sinr_grad(Block block, const BeamformingState &s, const ChannelSample &sample, int k,
                          const UserTerms &t, double scale, CMatrix &out)
{
    switch (block)
    {
    case Block::d:
        out.noalias() += scale * t.f * t.w.transpose();
        break;
    case Block::a:
        out.noalias() += scale * t.b * (s.d * t.w.conjugate()).adjoint();
        break;
    case Block::e:
        out.noalias() += scale * sample.apply(k, s.a * s.d) * t.w.conjugate();
        break;
    }
}

CMatrix zeros_like(Block block, const BeamformingState &s)
{
    switch (block)
    {
    case Block::d:
        return CMatrix::Zero(s.d.rows(), s.d.cols());
    case Block::a:
        return CMatrix::Zero(s.a.rows(), s.a.cols());
    case Block::e:
        break;
    }
    return CMatrix::Zero(s.e.size(), 1);
}

} // namespace

EffectiveLink effective_link(const BeamformingState &state, const ChannelSample &sample,
                             const std::vector<double> &noise)
{
    check_shapes(state, sample);
    const int k_users = sample.n_users();
    if (static_cast<int>(noise.size()) != k_users)
        throw StructuralError("need one noise power per user");
    EffectiveLink link;
    link.c.resize(k_users, k_users);
    link.v.resize(k_users);
    for (int k = 0; k < k_users; ++k)
    {
        const CVector f = state.a.adjoint() * sample.adjoint_apply(k, state.e);
        link.c.row(k) = f.adjoint() * state.d;
        link.v[k] = link.c.row(k).squaredNorm() - std::norm(link.c(k, k)) + noise[k];
    }
    return link;
}

double sinr(const BeamformingState &state, const ChannelSample &sample, int k, double noise)
{
    check_shapes(state, sample);
    check_user(sample, k);
    return user_terms(state, sample, k, noise).sinr;
}

RVector sinr_all(const BeamformingState &state, const ChannelSample &sample, const std::vector<double> &noise)
{
    const EffectiveLink link = effective_link(state, sample, noise);
    RVector out(link.v.size());
    for (Eigen::Index k = 0; k < out.size(); ++k)
        out[k] = std::norm(link.c(k, k)) / link.v[k];
    return out;
}

double hinge(double omega, double eps, double sinr_value)
{
    const double m = 1.0 - sinr_value / omega;
    if (m < 0.0)
        return 0.0;
    if (m <= eps)
        return m * m / (2.0 * eps);
    return m - 0.5 * eps;
}

double hinge_derivative(double omega, double eps, double sinr_value)
{
    const double m = 1.0 - sinr_value / omega;
    if (m < 0.0)
        return 0.0;
    if (m <= eps)
        return (sinr_value / omega - 1.0) / (eps * omega);
    return -1.0 / omega;
}

std::string_view block_name(Block b) noexcept
{
    switch (b)
    {
    case Block::d:
        return "D";
    case Block::a:
        return "A";
    case Block::e:
        return "e";
    }
    return "?";
}

CMatrix grad_sinr_block(Block block, const BeamformingState &state, const ChannelSample &sample, int k, double noise)
{
    check_shapes(state, sample);
    check_user(sample, k);
    CMatrix g = zeros_like(block, state);
    accumulate_sinr_grad(block, state, sample, k, user_terms(state, sample, k, noise), 1.0, g);
    return g;
}

CMatrix grad_hinge_block(Block block, const BeamformingState &state, const ChannelSample &sample, int k,
                         double omega, double eps, double noise)
{
    check_shapes(state, sample);
    check_user(sample, k);
    CMatrix g = zeros_like(block, state);
    const UserTerms t = user_terms(state, sample, k, noise);
    const double scale = hinge_derivative(omega, eps, t.sinr);
    if (scale != 0.0)
        accumulate_sinr_grad(block, state, sample, k, t, scale, g);
    return g;
}

SurrogateParams SurrogateParams::from(const SystemConfig &config)
{
    return {config.sinr_targets, config.noise_power, config.epsilon};
}

double sample_objective(const BeamformingState &state, const ChannelSample &sample, const SurrogateParams &params)
{
    check_shapes(state, sample);
    double total = 0.0;
    for (int k = 0; k < sample.n_users(); ++k)
        total += hinge(params.omega[k], params.epsilon, user_terms(state, sample, k, params.noise[k]).sinr);
    return total;
}

CMatrix sum_hinge_gradient(Block block, const BeamformingState &state, const ChannelSample &sample,
                           const SurrogateParams &params, double *objective)
{
    check_shapes(state, sample);
    if (params.n_users() != sample.n_users() || static_cast<int>(params.noise.size()) != sample.n_users())
        throw StructuralError("surrogate parameters do not match the user count");
    CMatrix g = zeros_like(block, state);
    double total = 0.0;
    // Users are reduced in index order so results are bit-reproducible.
    for (int k = 0; k < sample.n_users(); ++k)
    {
        const UserTerms t = user_terms(state, sample, k, params.noise[k]);
        total += hinge(params.omega[k], params.epsilon, t.sinr);
        const double scale = hinge_derivative(params.omega[k], params.epsilon, t.sinr);
        if (scale != 0.0)
            accumulate_sinr_grad(block, state, sample, k, t, scale, g);
    }
    if (objective)
        *objective = total;
    return g;
}

double empirical_risk(const BeamformingState &state, const std::vector<ChannelSample> &samples,
                      const SurrogateParams &params)
{
    if (samples.empty())
        throw UsageError("empirical_risk: empty sample list");
    double total = 0.0;
    for (const auto &s : samples)
        total += sample_objective(state, s, params);
    return total / static_cast<double>(samples.size());
}

CMatrix empirical_risk_gradient(Block block, const BeamformingState &state, const std::vector<ChannelSample> &samples,
                                const SurrogateParams &params)
{
    if (samples.empty())
        throw UsageError("empirical_risk_gradient: empty sample list");
    CMatrix g = zeros_like(block, state);
    for (const auto &s : samples)
        g += sum_hinge_gradient(block, state, s, params);
    return g / static_cast<double>(samples.size());
}

LipschitzConstants lipschitz_constants(const SystemConfig &config, const GeometricChannel &geo)
{
    config.validate();
    geo.check_against(config);
    const EquivalentChannelBuilder builder(geo);
    const ChannelSample h0 = builder.unblocked();

    LipschitzConstants lc;
    lc.h.resize(config.n_users);
    for (int k = 0; k < config.n_users; ++k)
    {
        double reflected = 0.0;
        if (h0.n_ris_rows() > 0 && h0.ris_rows(k).cwiseAbs2().maxCoeff() > 0.0)
            reflected = lambda_max_psd(h0.ris_rows(k));
        const double direct = lambda_max_psd(builder.direct_steering(k)) * builder.direct_gains(k).squaredNorm() /
                              static_cast<double>(config.n_paths_bu);
        lc.h[k] = reflected + direct;
    }
    lc.lambda = *std::max_element(lc.h.begin(), lc.h.end());
    if (!(lc.lambda > 0.0))
        throw DomainError("lipschitz_constants: channel is identically zero");

    const double rows = static_cast<double>(config.e_length());
    const double p = config.p_max;
    const double n_nrf = static_cast<double>(config.n_tx) * config.n_rf;
    const double omega = *std::min_element(config.sinr_targets.begin(), config.sinr_targets.end());
    const double s2 = *std::min_element(config.noise_power.begin(), config.noise_power.end());
    const double s4 = s2 * s2;
    const double eps = config.epsilon;

    lc.a = rows * p * p * lc.lambda * lc.lambda;
    lc.b = rows * p * lc.lambda;
    const double a = lc.a;
    const double b = lc.b;

    const double quad = 1.0 / (omega * omega * eps * s4);
    lc.l_e1 = quad * ((2.0 + 5.0 * omega) * a - 4.0 * a * b / s2 + 6.0 * a * b * b / s4);
    lc.l_a1 = quad * b * b / n_nrf * (2.0 + (5.0 * omega - 4.0 * b) / s2 + 6.0 * b * b / s4);
    lc.l_d1 = quad * n_nrf * b * b / p * (2.0 + omega + 6.0 * b * b / s4);

    lc.l_e2 = 5.0 * a / (omega * s4);
    lc.l_a2 = 5.0 * b * b / (omega * s4 * n_nrf);
    lc.l_d2 = b * b * n_nrf / (omega * s4 * p);

    lc.l_total = std::max({lc.l_e1, lc.l_a1, lc.l_d1, lc.l_e2, lc.l_a2, lc.l_d2});
    return lc;
}

} // namespace risbeam
