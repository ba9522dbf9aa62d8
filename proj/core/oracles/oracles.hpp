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

// Reference implementations used to check the library. Everything here is
// written for clarity over speed: channels are rebuilt entry by entry from the
// path lists and the quadratic forms are materialized as dense Kronecker
// products.

#ifndef RISBEAM_ORACLES_HPP
#define RISBEAM_ORACLES_HPP

#include <risbeam/channel.hpp>
#include <risbeam/config.hpp>
#include <risbeam/surrogate.hpp>

#include <functional>
#include <vector>

namespace risbeam::oracle
{

/// H_k for every user, assembled with scalar loops from `geo` and `gamma`.
std::vector<CMatrix> stacked_channels(const GeometricChannel &geo, const Eigen::MatrixXi &gamma);

// SINR of user k as x^H Q x / (x^H Qbar x + sigma^2) with x the vectorized block.
struct QuadraticForm
{
    CVector x;
    CMatrix q;
    CMatrix q_bar;
};

QuadraticForm kronecker_form(Block block, const BeamformingState &state, const CMatrix &h_k, int k);

double form_sinr(const QuadraticForm &f, double noise);

/// Q x / v - (x^H Q x / v^2) Qbar x, reshaped to the block's shape.
CMatrix form_gradient(Block block, const BeamformingState &state, const QuadraticForm &f, double noise);

/// Direct SINR from the definition |e^H H_k A d_k|^2 / (sum_{i!=k} |.|^2 + sigma^2).
double direct_sinr(const BeamformingState &state, const CMatrix &h_k, int k, double noise);

using StateFunction = std::function<double(const BeamformingState &)>;
using StateGradient = std::function<CMatrix(const BeamformingState &)>;

/// Moves one block of `state` by t * delta.
BeamformingState perturb(const BeamformingState &state, Block block, const CMatrix &delta, double t);

/// Central difference [f(x + t delta) - f(x - t delta)] / (2 t) along one block.
double fd_directional(const StateFunction &f, const BeamformingState &state, Block block, const CMatrix &delta,
                      double t);

/// 2 Re <g, delta>.
double wirtinger_directional(const CMatrix &g, const CMatrix &delta);

/// Largest |eigenvalue| of the real-linear map delta -> D grad[delta] on one
/// block, via power iteration on central differences of `grad`.
double fd_hessian_spectral(const StateGradient &grad, const BeamformingState &state, Block block, Rng &rng,
                           double t = 1e-6, int iters = 60);

/// Exact per-user outage probabilities P(SINR_k <= omega_k) by enumerating all
/// 2^(K L_BU) blockage patterns.
std::vector<double> exhaustive_outage(const BeamformingState &state, const GeometricChannel &geo,
                                      const SystemConfig &config);

/// Largest eigenvalue of F^H F from a dense self-adjoint eigensolver.
double dense_lambda_max(const CMatrix &f);

/// Random point of the feasible set.
BeamformingState random_feasible_state(int n_tx, int n_rf, int n_users, int e_length, double p_max, Rng &rng);

/// Random complex matrix with i.i.d. CN(0, 1) entries.
CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng &rng);

/// Small scenario used by the oracle checks: N = n_tx, K = N_RF = 2, one
/// RIS of m_rows x m_cols, noise normalized to 1.
SystemConfig tiny_config(int n_tx, int n_ris, int m_rows, int m_cols, int n_paths_bu = 2);

} // namespace risbeam::oracle

#endif
