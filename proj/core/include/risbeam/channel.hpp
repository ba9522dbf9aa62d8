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

#ifndef RISBEAM_CHANNEL_HPP
#define RISBEAM_CHANNEL_HPP

#include "risbeam/config.hpp"
#include "risbeam/types.hpp"

#include <memory>
#include <vector>

namespace risbeam
{

// ---- Array responses ----------------------------------------------------

/// Half-wavelength ULA response: entry i is exp(j*pi*i*sin(theta)).
CVector ula_steering(double theta, int n);

/// Half-wavelength UPA response, entry (p, q) at index p*m_cols + q equal to
/// exp(j*pi*(p*sin(theta)*sin(phi) + q*cos(theta))). This is the Kronecker
/// product of a vertical factor (length m_rows) and a horizontal factor
/// (length m_cols).
CVector upa_steering(double theta, double phi, int m_rows, int m_cols);

// ---- Large-scale fading -------------------------------------------------

/// Mean path gain 10^(PL/10) with shadowing zeta set to zero.
double pathloss_variance(double link_distance, const PathLossParams &params);

/// Draws g ~ CN(0, 10^(PL/10)) with a fresh shadowing realization.
/// Throws DomainError for a nonpositive distance.
cplx draw_pathloss_gain(double link_distance, const PathLossParams &params, Rng &rng);

// ---- Geometry -----------------------------------------------------------

struct BuPath
{
    cplx gain;
    double aod = 0.0;
};

struct IuPath
{
    cplx gain;
    double aod_az = 0.0;
    double aod_el = 0.0;
};

struct BiPath
{
    cplx gain;
    double aoa_az = 0.0;
    double aoa_el = 0.0;
    double aod = 0.0;
};

// Deterministic skeleton of all links for one placement of users.
struct GeometricChannel
{
    int n_tx = 0;
    int m_rows = 0;
    int m_cols = 0;
    std::vector<Point2> user_positions;
    std::vector<std::vector<BuPath>> bu_paths;               // [k][l]
    std::vector<std::vector<std::vector<IuPath>>> iu_paths;  // [u][k][l]
    std::vector<std::vector<BiPath>> bi_paths;               // [u][l]

    int n_users() const noexcept { return static_cast<int>(bu_paths.size()); }
    int n_ris() const noexcept { return static_cast<int>(bi_paths.size()); }
    int m_per_ris() const noexcept { return m_rows * m_cols; }
    int n_paths_bu() const noexcept { return bu_paths.empty() ? 0 : static_cast<int>(bu_paths.front().size()); }

    // Throws StructuralError if list lengths disagree with `config`.
    void check_against(const SystemConfig &config) const;
};

/// Draws user positions (uniform in the deployment disc), path angles
/// (azimuths/AoDs uniform on [-pi/2, pi/2], elevations uniform on [-pi/4, pi/4])
/// and path gains from the distance-dependent path-loss law.
GeometricChannel gen_geometry(const SystemConfig &config, Rng &rng);

/// Scales user k's direct and RIS-user gains by 1/sigma_k. SINR values are
/// unchanged when the noise powers are simultaneously set to 1.
GeometricChannel normalize_noise(const GeometricChannel &geo, const std::vector<double> &noise_power);

/// Same channel with every RIS removed (U = 0).
GeometricChannel without_ris(const GeometricChannel &geo);

// ---- Blockage ----------------------------------------------------------

// gamma(k, l) = 1 if path l of user k is unobstructed, 0 if blocked.
struct BlockageDraw
{
    Eigen::MatrixXi gamma;
};

/// gamma = 0 with probability p_block(k, l), independently over (k, l).
/// Implemented as gamma = (u >= p) with u ~ U[0, 1), so draws sharing an
/// engine state are coupled monotonically across p.
BlockageDraw sample_blockage(const SystemConfig &config, Rng &rng);
BlockageDraw sample_blockage(const RMatrix &p_block, Rng &rng);

BlockageDraw no_blockage(int n_users, int n_paths_bu);

// ---- Equivalent channels -------------------------------------------------

// One blockage realization of the stacked per-user channels
//   H_k = [ diag(h_{i,k}^H) H_bi ; h_{b,k}^H ]  of shape (UM + 1) x N.
// The UM reflected rows do not depend on blockage and are shared between all
// samples built from the same geometry.
class ChannelSample
{
  public:
    ChannelSample() = default;
    ChannelSample(std::shared_ptr<const std::vector<CMatrix>> ris_rows, std::vector<CVector> direct);

    int n_users() const noexcept { return static_cast<int>(direct_.size()); }
    int n_tx() const noexcept { return direct_.empty() ? 0 : static_cast<int>(direct_.front().size()); }
    int n_rows() const noexcept { return n_ris_rows() + 1; }
    int n_ris_rows() const noexcept { return ris_rows_->empty() ? 0 : static_cast<int>(ris_rows_->front().rows()); }

    /// diag(h_{i,k}^H) H_bi, shape UM x N.
    const CMatrix &ris_rows(int k) const { return (*ris_rows_)[k]; }
    /// h_{b,k}, length N. The last row of H_k is its conjugate transpose.
    const CVector &direct(int k) const { return direct_[k]; }

    /// Materialized H_k.
    CMatrix stacked(int k) const;
    /// H_k^H e.
    CVector adjoint_apply(int k, const CVector &e) const;
    /// H_k X.
    CMatrix apply(int k, const CMatrix &x) const;

    bool shares_ris_rows_with(const ChannelSample &other) const noexcept { return ris_rows_ == other.ris_rows_; }

  private:
    std::shared_ptr<const std::vector<CMatrix>> ris_rows_ = std::make_shared<const std::vector<CMatrix>>();
    std::vector<CVector> direct_;
};

// Precomputes the blockage-independent parts of a GeometricChannel so that
// repeated sampling only touches the direct links.
class EquivalentChannelBuilder
{
  public:
    explicit EquivalentChannelBuilder(const GeometricChannel &geo);

    ChannelSample assemble(const BlockageDraw &draw) const;
    ChannelSample unblocked() const;

    int n_users() const noexcept { return static_cast<int>(direct_paths_.size()); }
    int n_paths_bu() const noexcept { return direct_paths_.empty() ? 0 : static_cast<int>(direct_paths_.front().size()); }

    /// H_bi stacked over RISs, shape UM x N.
    const CMatrix &h_bi() const noexcept { return h_bi_; }
    /// h_{i,k} stacked over RISs, length UM.
    const CVector &h_iu(int k) const { return h_iu_[k]; }
    /// G_k = [a_L(theta_{k,1}), ..., a_L(theta_{k,L})], shape N x L_BU.
    const CMatrix &direct_steering(int k) const { return g_steer_[k]; }
    /// g_k = [g_{k,1}, ..., g_{k,L}].
    const CVector &direct_gains(int k) const { return g_gain_[k]; }

  private:
    CMatrix h_bi_;
    std::vector<CMatrix> g_steer_;
    std::vector<CVector> g_gain_;
    std::vector<CVector> h_iu_;
    std::shared_ptr<const std::vector<CMatrix>> ris_rows_;
    std::vector<std::vector<CVector>> direct_paths_;  // sqrt(1/L) g a_L(theta), [k][l]
};

/// h_{b,k} = sqrt(1/L_BU) sum_l gamma_{k,l} g_{k,l} a_L(theta_{k,l}) stacked
/// under the reflected rows. Throws StructuralError on a shape mismatch.
ChannelSample assemble_equivalent(const GeometricChannel &geo, const BlockageDraw &draw);

/// T independent blockage draws of `geo` under config.p_block.
std::vector<ChannelSample> training_set(const GeometricChannel &geo, const SystemConfig &config, int t, Rng &rng);

} // namespace risbeam

#endif
