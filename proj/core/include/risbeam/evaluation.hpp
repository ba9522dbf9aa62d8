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

#ifndef RISBEAM_EVALUATION_HPP
#define RISBEAM_EVALUATION_HPP

#include "risbeam/channel.hpp"
#include "risbeam/config.hpp"
#include "risbeam/optimizer.hpp"
#include "risbeam/surrogate.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace risbeam
{

// ---- Monte Carlo metrics ---------------------------------------------------

struct EvalReport
{
    std::vector<double> outage;    // per user, fraction of trials with SINR <= omega
    std::vector<double> eff_rate;  // per user, mean of the 0-extended log2(1 + SINR)
    double outage_avg = 0.0;
    double eff_sum_rate = 0.0;
    long n_trials = 0;
    std::uint64_t seed = 0;
};

/// Draws `n_trials` blockage realizations of `geo` under config.p_block from
/// a generator seeded with `seed`. A trial with SINR_k <= omega_k is an outage
/// for user k and contributes 0 to its rate; otherwise it contributes
/// log2(1 + SINR_k). Throws UsageError if n_trials < 1 and ContractError if
/// `state` is infeasible.
EvalReport evaluate(const BeamformingState &state, const GeometricChannel &geo, const SystemConfig &config,
                    long n_trials, std::uint64_t seed);

/// Binomial standard error sqrt(q (1 - q) / n).
double binomial_std_error(double q, long n) noexcept;

// ---- Schemes ---------------------------------------------------------------

enum class Scheme
{
    bsgd_robust,
    ris_non_robust,
    ris_random,
    non_ris
};

inline constexpr Scheme kAllSchemes[] = {Scheme::bsgd_robust, Scheme::ris_non_robust, Scheme::ris_random,
                                         Scheme::non_ris};

std::string scheme_name(Scheme scheme);
/// Inverse of scheme_name(). Throws UsageError on an unknown name.
Scheme scheme_from_name(const std::string &name);

// A configuration paired with the geometry it was drawn for.
struct Problem
{
    SystemConfig config;
    GeometricChannel geo;
};

/// Divides every user's gains by sigma_k and sets all noise powers to 1.
Problem normalized_problem(const SystemConfig &config, const GeometricChannel &geo);

/// The channel a scheme is trained and evaluated on: the RIS-free reduction
/// (U = 0, e = [1]) for Scheme::non_ris, the input otherwise.
Problem scheme_problem(Scheme scheme, const Problem &problem);

/// e with i.i.d. uniform phases (last entry 1) held fixed; D and A trained on
/// fresh blockage draws.
BsgdResult baseline_ris_random(const SystemConfig &config, const GeometricChannel &geo, const BsgdOptions &options,
                               Rng &rng);

/// Full BSGD run on the unblocked channel only (p_block treated as 0).
BsgdResult baseline_non_robust(const SystemConfig &config, const GeometricChannel &geo, const BsgdOptions &options,
                               Rng &rng);

/// BSGD over D and A on the direct links only.
BsgdResult baseline_no_ris(const SystemConfig &config, const GeometricChannel &geo, const BsgdOptions &options,
                           Rng &rng);

/// Dispatches to bsgd_outmin() or one of the baselines.
BsgdResult train_scheme(Scheme scheme, const SystemConfig &config, const GeometricChannel &geo,
                        const BsgdOptions &options, Rng &rng);

// ---- Blockage-probability sweep -------------------------------------------

struct SweepOptions
{
    std::vector<double> p_grid{0.1, 0.3, 0.5, 0.7, 0.9};
    int n_geo = 20;
    long n_trials = 2000;
    BsgdOptions train;
    bool normalize_noise = true;
    bool lipschitz_cap = false;  // cap steps at 1/l_total of each geometry
    std::vector<Scheme> schemes{std::begin(kAllSchemes), std::end(kAllSchemes)};
    std::uint64_t master_seed = 1;
    int threads = 1;
};

struct SweepRow
{
    double p_block = 0.0;
    Scheme scheme = Scheme::bsgd_robust;
    int geo_index = 0;
    double outage_avg = 0.0;
    double eff_sum_rate = 0.0;
    long n_trials = 0;
    std::uint64_t seed = 0;  // evaluation seed
};

struct SweepSummary
{
    double p_block = 0.0;
    Scheme scheme = Scheme::bsgd_robust;
    int n_geo = 0;
    double outage_mean = 0.0;
    double outage_se = 0.0;
    double rate_mean = 0.0;
    double rate_se = 0.0;
};

struct SweepResult
{
    std::vector<SweepRow> rows;          // ordered by (p index, geometry, scheme)
    std::vector<SweepSummary> summary;   // ordered by (p index, scheme)
};

/// Trains and evaluates every scheme on `n_geo` independent geometries per
/// grid point. Geometry g and its evaluation draws depend only on
/// (master_seed, g), so all grid points and schemes share them. Results do
/// not depend on `threads`.
SweepResult sweep_pblock(const SystemConfig &config, const SweepOptions &options);

/// Seeds used by sweep_pblock() for geometry g.
std::uint64_t sweep_geometry_seed(std::uint64_t master, int geo_index) noexcept;
std::uint64_t sweep_evaluation_seed(std::uint64_t master, int geo_index) noexcept;
std::uint64_t sweep_training_seed(std::uint64_t master, int geo_index, Scheme scheme) noexcept;

/// `p_block,scheme,geo_index,outage_avg,eff_sum_rate,n_trials,seed`
void write_sweep_rows_csv(const std::vector<SweepRow> &rows, std::ostream &out);
/// `p_block,scheme,n_geo,outage_mean,outage_se,eff_sum_rate_mean,eff_sum_rate_se`
void write_sweep_summary_csv(const std::vector<SweepSummary> &summary, std::ostream &out);

} // namespace risbeam

#endif
