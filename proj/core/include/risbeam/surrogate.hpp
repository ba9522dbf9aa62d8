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

#ifndef RISBEAM_SURROGATE_HPP
#define RISBEAM_SURROGATE_HPP

#include "risbeam/channel.hpp"
#include "risbeam/config.hpp"
#include "risbeam/types.hpp"

#include <string_view>
#include <vector>

namespace risbeam
{

// Optimization variables: digital precoder D (N_RF x K), analog precoder
// A (N x N_RF, unit-modulus entries) and reflection vector e (UM + 1, unit
// modulus with the last entry pinned to 1).
struct BeamformingState
{
    CMatrix d;
    CMatrix a;
    CVector e;
};

struct FeasibilityTolerance
{
    double power_rel = 1e-9;
    double modulus = 1e-12;
};

struct FeasibilityReport
{
    double power_rel_excess = 0.0;   // (||AD||_F^2 - P_max) / P_max
    double a_modulus_dev = 0.0;      // max | |A_mn| - 1 |
    double e_modulus_dev = 0.0;      // max | |e_m| - 1 | over m <= UM
    bool e_last_is_one = false;
    bool ok = false;
};

FeasibilityReport check_feasibility(const BeamformingState &state, double p_max, const FeasibilityTolerance &tol = {});

/// Throws ContractError when `state` is infeasible or misshapen for `sample`.
void require_feasible(const BeamformingState &state, double p_max, const FeasibilityTolerance &tol = {});

/// Throws StructuralError when the state's shapes do not fit the sample.
void check_shapes(const BeamformingState &state, const ChannelSample &sample);

// Received amplitudes c(k, i) = e^H H_k A d_i and interference-plus-noise
// v_k = sum_{i != k} |c(k, i)|^2 + sigma_k^2.
struct EffectiveLink
{
    CMatrix c;
    RVector v;
};

EffectiveLink effective_link(const BeamformingState &state, const ChannelSample &sample,
                             const std::vector<double> &noise);

double sinr(const BeamformingState &state, const ChannelSample &sample, int k, double noise);

RVector sinr_all(const BeamformingState &state, const ChannelSample &sample, const std::vector<double> &noise);

// ---- Smooth hinge ----------------------------------------------------------

/// Smooth hinge of the outage margin m = 1 - sinr / omega:
///   0 for m < 0,  m^2 / (2 eps) for 0 <= m <= eps,  m - eps / 2 for m > eps.
double hinge(double omega, double eps, double sinr_value);

/// d hinge / d sinr.
double hinge_derivative(double omega, double eps, double sinr_value);

// ---- Gradients -------------------------------------------------------------

enum class Block
{
    d,
    a,
    e
};

std::string_view block_name(Block b) noexcept;

/// Conjugate (Wirtinger) gradient d sinr_k / d conj(x) for the chosen block,
/// shaped like the block (e is returned as a (UM + 1) x 1 matrix).
/// Uses the rank structure of the quadratic forms; nothing of size
/// (N N_RF)^2 is ever formed.
CMatrix grad_sinr_block(Block block, const BeamformingState &state, const ChannelSample &sample, int k,
                        double noise);

/// Conjugate gradient of hinge(omega, eps, sinr_k).
CMatrix grad_hinge_block(Block block, const BeamformingState &state, const ChannelSample &sample, int k,
                         double omega, double eps, double noise);

// Per-user parameters of the surrogate objective.
struct SurrogateParams
{
    std::vector<double> omega;
    std::vector<double> noise;
    double epsilon = 0.01;

    static SurrogateParams from(const SystemConfig &config);
    int n_users() const noexcept { return static_cast<int>(omega.size()); }
};

/// sum_k hinge(omega_k, eps, sinr_k) on one sample.
double sample_objective(const BeamformingState &state, const ChannelSample &sample, const SurrogateParams &params);

/// sum_k grad_hinge_block(..., k, ...) on one sample, sharing the per-user
/// intermediates. If `objective` is non-null it receives sample_objective().
CMatrix sum_hinge_gradient(Block block, const BeamformingState &state, const ChannelSample &sample,
                           const SurrogateParams &params, double *objective = nullptr);

/// (1/T) sum_t sum_k hinge(omega_k, eps, sinr_k(state, sample_t)).
/// Throws UsageError on an empty sample list.
double empirical_risk(const BeamformingState &state, const std::vector<ChannelSample> &samples,
                      const SurrogateParams &params);

/// Conjugate gradient of empirical_risk() with respect to one block.
CMatrix empirical_risk_gradient(Block block, const BeamformingState &state, const std::vector<ChannelSample> &samples,
                                const SurrogateParams &params);

// ---- Step-size bound -------------------------------------------------------

struct LipschitzConstants
{
    std::vector<double> h;  // per-user channel-gain bound h_k
    double lambda = 0.0;    // max_k h_k
    double a = 0.0;
    double b = 0.0;
    double l_e1 = 0.0;
    double l_a1 = 0.0;
    double l_d1 = 0.0;
    double l_e2 = 0.0;
    double l_a2 = 0.0;
    double l_d2 = 0.0;
    double l_total = 0.0;
};

/// Uniform curvature bound of the per-user surrogate over the feasible set:
///   h_k = lambda_max(R_k^H R_k) + lambda_max(G_k^H G_k) ||g_k||^2 / L_BU,
///   a = (UM+1) P^2 lambda^2,  b = (UM+1) P lambda,  lambda = max_k h_k,
/// followed by the six block constants evaluated at the worst-case
/// omega = min_k omega_k and sigma^2 = min_k sigma_k^2. The quadratic-branch
/// constants (l_*1) and linear-branch constants (l_*2) are both reported;
/// l_total is the maximum of all six.
/// Throws DomainError when every channel is zero.
LipschitzConstants lipschitz_constants(const SystemConfig &config, const GeometricChannel &geo);

} // namespace risbeam

#endif
