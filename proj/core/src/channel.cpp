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

#include "risbeam/channel.hpp"
#include "risbeam/rng.hpp"

#include <cmath>
#include <string>

namespace risbeam
{

CVector ula_steering(double theta, int n)
{
    CVector a(n);
    const double s = std::sin(theta);
    for (int i = 0; i < n; ++i)
        a[i] = std::polar(1.0, kPi * i * s);
    return a;
}

CVector upa_steering(double theta, double phi, int m_rows, int m_cols)
{
    const double sv = std::sin(theta) * std::sin(phi);
    const double sh = std::cos(theta);
    CVector a(static_cast<Eigen::Index>(m_rows) * m_cols);
    for (int p = 0; p < m_rows; ++p)
        for (int q = 0; q < m_cols; ++q)
            a[p * m_cols + q] = std::polar(1.0, kPi * (p * sv + q * sh));
    return a;
}

double pathloss_variance(double link_distance, const PathLossParams &params)
{
    if (!(link_distance > 0.0))
        throw DomainError("link distance must be > 0, got " + std::to_string(link_distance));
    const double pl_db = -params.c0_db - 10.0 * params.exponent * std::log10(link_distance);
    return std::pow(10.0, pl_db / 10.0);
}

cplx draw_pathloss_gain(double link_distance, const PathLossParams &params, Rng &rng)
{
    const double mean = pathloss_variance(link_distance, params);
    const double zeta = params.shadowing_std_db * standard_normal(rng);
    return complex_normal(rng, mean * std::pow(10.0, -zeta / 10.0));
}

void GeometricChannel::check_against(const SystemConfig &config) const
{
    auto fail = [](const std::string &what) { throw StructuralError("geometric channel: " + what); };
    if (n_tx != config.n_tx || m_rows != config.m_rows || m_cols != config.m_cols)
        fail("array dimensions differ from config");
    if (n_users() != config.n_users || n_ris() != config.n_ris)
        fail("user/RIS count differs from config");
    for (const auto &paths : bu_paths)
        if (static_cast<int>(paths.size()) != config.n_paths_bu)
            fail("BS-user path count differs from L_BU");
    for (const auto &paths : bi_paths)
        if (static_cast<int>(paths.size()) != config.n_paths_bi)
            fail("BS-RIS path count differs from L_BI");
    if (static_cast<int>(iu_paths.size()) != config.n_ris)
        fail("RIS-user link list has wrong RIS count");
    for (const auto &per_ris : iu_paths)
    {
        if (static_cast<int>(per_ris.size()) != config.n_users)
            fail("RIS-user link list has wrong user count");
        for (const auto &paths : per_ris)
            if (static_cast<int>(paths.size()) != config.n_paths_iu)
                fail("RIS-user path count differs from L_IU");
    }
}

namespace
{

double uniform(Rng &rng, double lo, double hi)
{
    return lo + (hi - lo) * uniform01(rng);
}

constexpr double kAzimuthSpan = kPi / 2.0;
constexpr double kElevationSpan = kPi / 4.0;

} // namespace

GeometricChannel gen_geometry(const SystemConfig &config, Rng &rng)
{
    config.validate();
    const Deployment &dep = config.deployment;

    GeometricChannel geo;
    geo.n_tx = config.n_tx;
    geo.m_rows = config.m_rows;
    geo.m_cols = config.m_cols;

    geo.user_positions.resize(config.n_users);
    for (auto &pos : geo.user_positions)
    {
        const double r = dep.user_radius * std::sqrt(uniform01(rng));
        const double ang = uniform(rng, -kPi, kPi);
        pos = {dep.user_center.x + r * std::cos(ang), dep.user_center.y + r * std::sin(ang)};
    }

    geo.bu_paths.resize(config.n_users);
    for (int k = 0; k < config.n_users; ++k)
    {
        const double d = distance(dep.bs, geo.user_positions[k]);
        for (int l = 0; l < config.n_paths_bu; ++l)
        {
            BuPath p;
            p.aod = uniform(rng, -kAzimuthSpan, kAzimuthSpan);
            p.gain = draw_pathloss_gain(d, config.pathloss_bu, rng);
            geo.bu_paths[k].push_back(p);
        }
    }

    geo.bi_paths.resize(config.n_ris);
    for (int u = 0; u < config.n_ris; ++u)
    {
        const double d = distance(dep.bs, dep.ris[u]);
        for (int l = 0; l < config.n_paths_bi; ++l)
        {
            BiPath p;
            p.aoa_az = uniform(rng, -kAzimuthSpan, kAzimuthSpan);
            p.aoa_el = uniform(rng, -kElevationSpan, kElevationSpan);
            p.aod = uniform(rng, -kAzimuthSpan, kAzimuthSpan);
            p.gain = draw_pathloss_gain(d, config.pathloss_bi, rng);
            geo.bi_paths[u].push_back(p);
        }
    }

    geo.iu_paths.assign(config.n_ris, std::vector<std::vector<IuPath>>(config.n_users));
    for (int u = 0; u < config.n_ris; ++u)
        for (int k = 0; k < config.n_users; ++k)
        {
            const double d = distance(dep.ris[u], geo.user_positions[k]);
            for (int l = 0; l < config.n_paths_iu; ++l)
            {
                IuPath p;
                p.aod_az = uniform(rng, -kAzimuthSpan, kAzimuthSpan);
                p.aod_el = uniform(rng, -kElevationSpan, kElevationSpan);
                p.gain = draw_pathloss_gain(d, config.pathloss_iu, rng);
                geo.iu_paths[u][k].push_back(p);
            }
        }
    return geo;
}

GeometricChannel normalize_noise(const GeometricChannel &geo, const std::vector<double> &noise_power)
{
    if (static_cast<int>(noise_power.size()) != geo.n_users())
        throw StructuralError("normalize_noise: need one noise power per user");
    GeometricChannel out = geo;
    for (int k = 0; k < geo.n_users(); ++k)
    {
        if (!(noise_power[k] > 0.0))
            throw DomainError("normalize_noise: noise power must be > 0");
        const double s = 1.0 / std::sqrt(noise_power[k]);
        for (auto &p : out.bu_paths[k])
            p.gain *= s;
        for (auto &per_ris : out.iu_paths)
            for (auto &p : per_ris[k])
                p.gain *= s;
    }
    return out;
}

GeometricChannel without_ris(const GeometricChannel &geo)
{
    GeometricChannel out = geo;
    out.bi_paths.clear();
    out.iu_paths.clear();
    return out;
}

BlockageDraw sample_blockage(const RMatrix &p_block, Rng &rng)
{
    BlockageDraw draw;
    draw.gamma.resize(p_block.rows(), p_block.cols());
    for (Eigen::Index k = 0; k < p_block.rows(); ++k)
        for (Eigen::Index l = 0; l < p_block.cols(); ++l)
            draw.gamma(k, l) = uniform01(rng) >= p_block(k, l) ? 1 : 0;
    return draw;
}

BlockageDraw sample_blockage(const SystemConfig &config, Rng &rng)
{
    return sample_blockage(config.p_block, rng);
}

BlockageDraw no_blockage(int n_users, int n_paths_bu)
{
    return {Eigen::MatrixXi::Ones(n_users, n_paths_bu)};
}

// ---- ChannelSample -------------------------------------------------------

ChannelSample::ChannelSample(std::shared_ptr<const std::vector<CMatrix>> ris_rows, std::vector<CVector> direct)
    : ris_rows_(std::move(ris_rows)), direct_(std::move(direct))
{
    if (!ris_rows_)
        throw StructuralError("ChannelSample: null reflected-row block");
    if (!ris_rows_->empty() && ris_rows_->size() != direct_.size())
        throw StructuralError("ChannelSample: reflected rows and direct links disagree on K");
    for (const auto &h : direct_)
        if (h.size() != direct_.front().size())
            throw StructuralError("ChannelSample: direct links have different lengths");
    for (const auto &r : *ris_rows_)
        if (r.cols() != n_tx() || r.rows() != ris_rows_->front().rows())
            throw StructuralError("ChannelSample: reflected-row block has inconsistent shape");
}

CMatrix ChannelSample::stacked(int k) const
{
    const int um = n_ris_rows();
    CMatrix h(um + 1, n_tx());
    if (um > 0)
        h.topRows(um) = ris_rows(k);
    h.row(um) = direct(k).adjoint();
    return h;
}

CVector ChannelSample::adjoint_apply(int k, const CVector &e) const
{
    const int um = n_ris_rows();
    if (e.size() != um + 1)
        throw StructuralError("ChannelSample::adjoint_apply: e has length " + std::to_string(e.size()) +
                              ", expected " + std::to_string(um + 1));
    CVector out = direct(k) * e[um];
    if (um > 0)
        out.noalias() += ris_rows(k).adjoint() * e.head(um);
    return out;
}

CMatrix ChannelSample::apply(int k, const CMatrix &x) const
{
    if (x.rows() != n_tx())
        throw StructuralError("ChannelSample::apply: operand has wrong row count");
    const int um = n_ris_rows();
    CMatrix out(um + 1, x.cols());
    if (um > 0)
        out.topRows(um).noalias() = ris_rows(k) * x;
    out.row(um).noalias() = direct(k).adjoint() * x;
    return out;
}

// ---- EquivalentChannelBuilder ------------------------------------------

EquivalentChannelBuilder::EquivalentChannelBuilder(const GeometricChannel &geo)
{
    const int n = geo.n_tx;
    const int m = geo.m_per_ris();
    const int n_ris = geo.n_ris();
    const int k_users = geo.n_users();
    if (n < 1)
        throw StructuralError("geometric channel has no BS antennas");
    if (static_cast<int>(geo.iu_paths.size()) != n_ris)
        throw StructuralError("geometric channel: RIS-user list does not match RIS count");

    h_bi_ = CMatrix::Zero(static_cast<Eigen::Index>(n_ris) * m, n);
    for (int u = 0; u < n_ris; ++u)
    {
        const auto &paths = geo.bi_paths[u];
        const double norm = std::sqrt(1.0 / static_cast<double>(paths.size()));
        auto block = h_bi_.middleRows(static_cast<Eigen::Index>(u) * m, m);
        for (const auto &p : paths)
            block.noalias() += (norm * p.gain) * upa_steering(p.aoa_az, p.aoa_el, geo.m_rows, geo.m_cols) *
                               ula_steering(p.aod, n).adjoint();
    }

    auto rows = std::make_shared<std::vector<CMatrix>>();
    h_iu_.resize(k_users);
    for (int k = 0; k < k_users; ++k)
    {
        CVector hk = CVector::Zero(static_cast<Eigen::Index>(n_ris) * m);
        for (int u = 0; u < n_ris; ++u)
        {
            if (static_cast<int>(geo.iu_paths[u].size()) != k_users)
                throw StructuralError("geometric channel: RIS-user list does not match user count");
            const auto &paths = geo.iu_paths[u][k];
            const double norm = std::sqrt(1.0 / static_cast<double>(paths.size()));
            auto seg = hk.segment(static_cast<Eigen::Index>(u) * m, m);
            for (const auto &p : paths)
                seg += (norm * p.gain) * upa_steering(p.aod_az, p.aod_el, geo.m_rows, geo.m_cols);
        }
        h_iu_[k] = hk;
        if (n_ris > 0)
            rows->push_back(hk.conjugate().asDiagonal() * h_bi_);
    }
    ris_rows_ = std::move(rows);

    direct_paths_.resize(k_users);
    g_steer_.resize(k_users);
    g_gain_.resize(k_users);
    for (int k = 0; k < k_users; ++k)
    {
        const auto &paths = geo.bu_paths[k];
        const auto n_paths = static_cast<Eigen::Index>(paths.size());
        const double norm = std::sqrt(1.0 / static_cast<double>(n_paths));
        g_steer_[k].resize(n, n_paths);
        g_gain_[k].resize(n_paths);
        for (Eigen::Index l = 0; l < n_paths; ++l)
        {
            g_steer_[k].col(l) = ula_steering(paths[l].aod, n);
            g_gain_[k][l] = paths[l].gain;
            direct_paths_[k].push_back((norm * paths[l].gain) * g_steer_[k].col(l));
        }
    }
}

ChannelSample EquivalentChannelBuilder::assemble(const BlockageDraw &draw) const
{
    if (draw.gamma.rows() != n_users() || draw.gamma.cols() != n_paths_bu())
        throw StructuralError("blockage draw shape does not match K x L_BU");
    std::vector<CVector> direct(n_users());
    for (int k = 0; k < n_users(); ++k)
    {
        direct[k] = CVector::Zero(direct_paths_[k].front().size());
        for (int l = 0; l < n_paths_bu(); ++l)
            if (draw.gamma(k, l) != 0)
                direct[k] += direct_paths_[k][l];
    }
    return ChannelSample(ris_rows_, std::move(direct));
}

ChannelSample EquivalentChannelBuilder::unblocked() const
{
    return assemble(no_blockage(n_users(), n_paths_bu()));
}

ChannelSample assemble_equivalent(const GeometricChannel &geo, const BlockageDraw &draw)
{
    return EquivalentChannelBuilder(geo).assemble(draw);
}

std::vector<ChannelSample> training_set(const GeometricChannel &geo, const SystemConfig &config, int t, Rng &rng)
{
    if (t < 1)
        throw UsageError("training_set: T must be >= 1");
    geo.check_against(config);
    const EquivalentChannelBuilder builder(geo);
    std::vector<ChannelSample> out;
    out.reserve(t);
    for (int i = 0; i < t; ++i)
        out.push_back(builder.assemble(sample_blockage(config, rng)));
    return out;
}

} // namespace risbeam
