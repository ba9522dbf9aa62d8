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

// Randomized property checks built on the reference implementations. Each
// returns the worst observed discrepancy next to a pass flag so callers can
// print a one-line verdict.

#ifndef RISBEAM_CHECKS_HPP
#define RISBEAM_CHECKS_HPP

#include <risbeam/evaluation.hpp>

#include <cstdint>
#include <string>

namespace risbeam::oracle
{

struct CheckResult
{
    bool pass = true;
    double worst = 0.0;   // largest discrepancy measure seen
    long checked = 0;     // number of comparisons made
    std::string detail;   // first failure, or a summary
};

/// Noise-normalized random geometry with K = N_RF = 2 under uniform blockage p.
Problem random_problem(int n_tx, int n_ris, int m_rows, int m_cols, int n_paths_bu, double p, Rng &rng);

/// Central differences of every user's surrogate against 2 Re<grad, delta>
/// for all three blocks (N = 8, U = 1, M = 4). Targets omega_k are drawn so
/// the margin lands in each hinge branch; points within `kink_gap` of a
/// breakpoint are skipped.
CheckResult check_gradients_fd(int n_states, std::uint64_t seed, double rel_tol = 1e-5, double kink_gap = 1e-4);

/// Factored SINR and SINR gradients against materialized Kronecker forms on
/// instances with N <= 4, UM + 1 <= 5.
CheckResult check_kronecker(int n_instances, std::uint64_t seed, double rel_tol = 1e-10);

/// Idempotency, feasibility, gauge invariance, full power and the
/// nearest-point property of the three projections.
CheckResult check_projections(int n_candidates, std::uint64_t seed, double tol = 1e-12);

/// Mean per-sample gradient over a fixed training set of size T against
/// empirical_risk_gradient().
CheckResult check_unbiasedness(int t, std::uint64_t seed, double rel_tol = 1e-12);

/// Finite-difference Hessian spectral estimates of each user's surrogate,
/// per block, never exceed l_total (beyond 1e-6 l_total).
CheckResult check_lipschitz(int n_instances, int n_points, std::uint64_t seed);

/// init_e objective is nondecreasing over all MM iterates.
CheckResult check_init_monotone(int n_instances, std::uint64_t seed, double tol = 1e-9);

/// Monte Carlo outage at n_trials against exhaustive 2^(K L_BU) enumeration
/// (L_BU = 2, K = 2), within `n_se` binomial standard errors.
CheckResult check_exhaustive_outage(long n_trials, std::uint64_t seed, double n_se = 3.0);

/// Power iteration against the dense eigensolver on random F.
CheckResult check_power_iteration(int n_instances, std::uint64_t seed, double rel_tol = 1e-8);

} // namespace risbeam::oracle

#endif
