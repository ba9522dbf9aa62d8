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

#ifndef RISBEAM_CONFIG_HPP
#define RISBEAM_CONFIG_HPP

#include "risbeam/types.hpp"

#include <vector>

namespace risbeam
{

struct Point2
{
    double x = 0.0;
    double y = 0.0;
};

double distance(const Point2 &a, const Point2 &b) noexcept;

// Large-scale fading law PL = -c0_db - 10 * exponent * log10(D) - zeta [dB],
// zeta ~ N(0, shadowing_std_db^2).
struct PathLossParams
{
    double c0_db = 61.4;
    double exponent = 2.0;
    double shadowing_std_db = 5.8;
};

struct Deployment
{
    Point2 bs{0.0, 0.0};
    std::vector<Point2> ris;      // one entry per RIS
    Point2 user_center{50.0, 0.0};
    double user_radius = 5.0;
};

// Scalars of one scenario. Every quantity is in SI units (watts, meters, radians).
struct SystemConfig
{
    int n_tx = 32;    // BS antennas N (ULA)
    int n_rf = 2;     // RF chains N_RF
    int n_users = 2;  // K
    int n_ris = 2;    // U (0 disables the reflected links)
    int m_rows = 8;   // RIS UPA rows
    int m_cols = 8;   // RIS UPA columns

    double p_max = 5.0;
    std::vector<double> noise_power;   // sigma_k^2 per user [W]
    std::vector<double> sinr_targets;  // omega_k per user
    double epsilon = 0.01;             // hinge smoothing width

    RMatrix p_block;                   // K x L_BU blockage probabilities

    int n_paths_bu = 5;
    int n_paths_bi = 5;
    int n_paths_iu = 5;

    Deployment deployment;
    PathLossParams pathloss_bu{61.4, 3.3, 5.8};
    PathLossParams pathloss_bi{61.4, 2.0, 5.8};
    PathLossParams pathloss_iu{61.4, 2.0, 5.8};

    int m_per_ris() const noexcept { return m_rows * m_cols; }
    int n_ris_elements() const noexcept { return n_ris * m_per_ris(); }
    int e_length() const noexcept { return n_ris_elements() + 1; }

    // Throws ConfigError naming the first violated field.
    void validate() const;

    // Sets every p_{k,l} to p.
    void set_uniform_blockage(double p);
};

/// Library version string, e.g. "0.1.0".
const char *version() noexcept;

double dbm_to_watts(double dbm) noexcept;
double watts_to_dbm(double watts) noexcept;

/// Required SINR for a target rate R [bit/s/Hz]: omega = 2^R - 1.
double sinr_for_rate(double rate_bps_hz) noexcept;

/// Full-scale scenario: N = 32, M = 64 (8 x 8), K = N_RF = U = 2, P_max = 5 W,
/// sigma^2 = -100 dBm, omega = 1, L_BU = L_BI = L_IU = 5, BS at the origin,
/// RISs at (40, +-10) m, users in a 5 m disc around (50, 0) m.
SystemConfig full_scale_scenario(double p_block = 0.5);

/// Reduced scenario used for quick runs: N = 16, M = 16 (4 x 4), otherwise
/// as full_scale_scenario().
SystemConfig desk_scenario(double p_block = 0.5);

} // namespace risbeam

#endif
