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

#include "risbeam/config.hpp"

#include <cmath>
#include <string>

namespace risbeam
{

double distance(const Point2 &a, const Point2 &b) noexcept
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

const char *version() noexcept { return RISBEAM_VERSION; }

double dbm_to_watts(double dbm) noexcept
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double watts_to_dbm(double watts) noexcept
{
    return 10.0 * std::log10(watts) + 30.0;
}

double sinr_for_rate(double rate_bps_hz) noexcept
{
    return std::exp2(rate_bps_hz) - 1.0;
}

namespace
{

void require(bool ok, const char *key, const std::string &msg)
{
    if (!ok)
        throw ConfigError(key, msg);
}

void validate_pathloss(const PathLossParams &p, const char *key)
{
    require(std::isfinite(p.c0_db) && std::isfinite(p.exponent), key, "non-finite path-loss parameter");
    require(p.shadowing_std_db >= 0.0, key, "shadowing std must be >= 0");
}

} // namespace

void SystemConfig::validate() const
{
    require(n_tx >= 1, "n_tx", "must be >= 1");
    require(n_rf >= 1, "n_rf", "must be >= 1");
    require(n_users >= 1, "n_users", "must be >= 1");
    require(n_users <= n_rf, "n_rf", "need K <= N_RF");
    require(n_rf <= n_tx, "n_rf", "need N_RF <= N");
    require(n_ris >= 0, "n_ris", "must be >= 0");
    require(m_rows >= 1 && m_cols >= 1, "m_rows", "RIS dimensions must be >= 1");
    require(p_max > 0.0 && std::isfinite(p_max), "p_max", "must be > 0");
    require(epsilon > 0.0 && epsilon < 1.0, "epsilon", "must lie in (0, 1)");
    require(static_cast<int>(noise_power.size()) == n_users, "noise_power", "need one value per user");
    for (double s : noise_power)
        require(s > 0.0 && std::isfinite(s), "noise_power", "must be > 0");
    require(static_cast<int>(sinr_targets.size()) == n_users, "sinr_targets", "need one value per user");
    for (double w : sinr_targets)
        require(w > 0.0 && std::isfinite(w), "sinr_targets", "must be > 0");
    require(n_paths_bu >= 1, "n_paths_bu", "must be >= 1");
    require(n_paths_bi >= 1, "n_paths_bi", "must be >= 1");
    require(n_paths_iu >= 1, "n_paths_iu", "must be >= 1");
    require(p_block.rows() == n_users && p_block.cols() == n_paths_bu, "p_block", "must be K x L_BU");
    for (Eigen::Index i = 0; i < p_block.size(); ++i)
    {
        const double p = p_block.data()[i];
        require(p >= 0.0 && p <= 1.0, "p_block", "probabilities must lie in [0, 1]");
    }
    require(static_cast<int>(deployment.ris.size()) == n_ris, "geometry.ris", "need one position per RIS");
    require(deployment.user_radius >= 0.0, "geometry.user_radius", "must be >= 0");
    validate_pathloss(pathloss_bu, "pathloss.bu");
    validate_pathloss(pathloss_bi, "pathloss.bi");
    validate_pathloss(pathloss_iu, "pathloss.iu");
}

void SystemConfig::set_uniform_blockage(double p)
{
    p_block = RMatrix::Constant(n_users, n_paths_bu, p);
}

SystemConfig full_scale_scenario(double p_block)
{
    SystemConfig c;
    c.n_tx = 32;
    c.n_rf = 2;
    c.n_users = 2;
    c.n_ris = 2;
    c.m_rows = 8;
    c.m_cols = 8;
    c.p_max = 5.0;
    c.noise_power.assign(c.n_users, dbm_to_watts(-100.0));
    c.sinr_targets.assign(c.n_users, sinr_for_rate(1.0));
    c.epsilon = 0.01;
    c.n_paths_bu = c.n_paths_bi = c.n_paths_iu = 5;
    c.deployment.bs = {0.0, 0.0};
    c.deployment.ris = {{40.0, 10.0}, {40.0, -10.0}};
    c.deployment.user_center = {50.0, 0.0};
    c.deployment.user_radius = 5.0;
    c.set_uniform_blockage(p_block);
    return c;
}

SystemConfig desk_scenario(double p_block)
{
    SystemConfig c = full_scale_scenario(p_block);
    c.n_tx = 16;
    c.m_rows = 4;
    c.m_cols = 4;
    return c;
}

} // namespace risbeam
