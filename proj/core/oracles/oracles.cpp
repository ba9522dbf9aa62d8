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

#include "oracles.hpp"

#include <risbeam/rng.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>

namespace risbeam::oracle
{

namespace
{

cplx ula_entry(double theta, int i) { return std::exp(kImag * (kPi * i * std::sin(theta))); }

cplx upa_entry(double theta, double phi, int cols, int idx)
{
    const int p = idx / cols;
    const int q = idx % cols;
    return std::exp(kImag * (kPi * (p * std::sin(theta) * std::sin(phi) + q * std::cos(theta))));
}

// Column-major vectorization.
CVector vec(const CMatrix &m) { return Eigen::Map<const CVector>(m.data(), m.size()); }

CMatrix unvec(const CVector &v, Eigen::Index rows, Eigen::Index cols)
{
    return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

CMatrix kron(const CMatrix &a, const CMatrix &b)
{
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CMatrix& block_of(BeamformingState &s, Block block, CMatrix &e_tmp)
{
    switch (block)
    {
    case Block::d:
        return s.d;
    case Block::a:
        return s.a;
    case Block::e:
        break;
    }
    e_tmp = s.e;
    return e_tmp;
}

} // namespace

std::vector<CMatrix> stacked_channels(const GeometricChannel &geo, const Eigen::MatrixXi &gamma)
{
    const int n = geo.n_tx;
    const int m = geo.m_rows * geo.m_cols;
    const int n_ris = static_cast<int>(geo.bi_paths.size());
    const int um = n_ris * m;
    const int k_users = static_cast<int>(geo.bu_paths.size());

    CMatrix h_bi = CMatrix::Zero(um, n);
    for (int u = 0; u < n_ris; ++u)
    {
        const double norm = std::sqrt(1.0 / static_cast<double>(geo.bi_paths[u].size()));
        for (const auto &p : geo.bi_paths[u])
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < n; ++c)
                    h_bi(u * m + r, c) +=
                        norm * p.gain * upa_entry(p.aoa_az, p.aoa_el, geo.m_cols, r) * std::conj(ula_entry(p.aod, c));
    }

    std::vector<CMatrix> out;
    for (int k = 0; k < k_users; ++k)
    {
        CMatrix h(um + 1, n);
        for (int u = 0; u < n_ris; ++u)
        {
            const auto &paths = geo.iu_paths[u][k];
            const double norm = std::sqrt(1.0 / static_cast<double>(paths.size()));
            for (int r = 0; r < m; ++r)
            {
                cplx hik = 0.0;
                for (const auto &p : paths)
                    hik += norm * p.gain * upa_entry(p.aod_az, p.aod_el, geo.m_cols, r);
                for (int c = 0; c < n; ++c)
                    h(u * m + r, c) = std::conj(hik) * h_bi(u * m + r, c);
            }
        }
        const auto &paths = geo.bu_paths[k];
        const double norm = std::sqrt(1.0 / static_cast<double>(paths.size()));
        for (int c = 0; c < n; ++c)
        {
            cplx hb = 0.0;
            for (std::size_t l = 0; l < paths.size(); ++l)
                hb += norm * static_cast<double>(gamma(k, static_cast<Eigen::Index>(l))) * paths[l].gain *
                      ula_entry(paths[l].aod, c);
            h(um, c) = std::conj(hb);
        }
        out.push_back(std::move(h));
    }
    return out;
}

QuadraticForm kronecker_form(Block block, const BeamformingState &state, const CMatrix &h_k, int k)
{
    const auto n_users = state.d.cols();
    const CMatrix e_row = state.e.adjoint();  // 1 x (UM+1)
    QuadraticForm f;
    std::vector<CVector> q(static_cast<std::size_t>(n_users));
    for (Eigen::Index i = 0; i < n_users; ++i)
    {
        CMatrix row;  // q_i^H, so that c_{k,i} = q_i^H x
        switch (block)
        {
        case Block::e:
            row = (h_k * state.a * state.d.col(i)).adjoint();
            break;
        case Block::a:
            row = kron(state.d.col(i).transpose(), e_row * h_k);
            break;
        case Block::d:
        {
            CMatrix unit = CMatrix::Zero(1, n_users);
            unit(0, i) = 1.0;
            row = kron(unit, e_row * h_k * state.a);
            break;
        }
        }
        q[static_cast<std::size_t>(i)] = row.adjoint();
    }
    switch (block)
    {
    case Block::e:
        f.x = state.e;
        break;
    case Block::a:
        f.x = vec(state.a);
        break;
    case Block::d:
        f.x = vec(state.d);
        break;
    }
    const auto dim = f.x.size();
    f.q = q[static_cast<std::size_t>(k)] * q[static_cast<std::size_t>(k)].adjoint();
    f.q_bar = CMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < n_users; ++i)
        if (i != k)
            f.q_bar += q[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(i)].adjoint();
    return f;
}

double form_sinr(const QuadraticForm &f, double noise)
{
    const double num = (f.x.adjoint() * f.q * f.x)(0, 0).real();
    const double den = (f.x.adjoint() * f.q_bar * f.x)(0, 0).real() + noise;
    return num / den;
}

CMatrix form_gradient(Block block, const BeamformingState &state, const QuadraticForm &f, double noise)
{
    const double num = (f.x.adjoint() * f.q * f.x)(0, 0).real();
    const double v = (f.x.adjoint() * f.q_bar * f.x)(0, 0).real() + noise;
    const CVector g = f.q * f.x / v - (num / (v * v)) * (f.q_bar * f.x);
    switch (block)
    {
    case Block::d:
        return unvec(g, state.d.rows(), state.d.cols());
    case Block::a:
        return unvec(g, state.a.rows(), state.a.cols());
    case Block::e:
        break;
    }
    return g;
}

double direct_sinr(const BeamformingState &state, const CMatrix &h_k, int k, double noise)
{
    double signal = 0.0;
    double interference = noise;
    for (Eigen::Index i = 0; i < state.d.cols(); ++i)
    {
        const cplx c = (state.e.adjoint() * h_k * state.a * state.d.col(i))(0, 0);
        (i == k ? signal : interference) += std::norm(c);
    }
    return signal / interference;
}

BeamformingState perturb(const BeamformingState &state, Block block, const CMatrix &delta, double t)
{
    BeamformingState s = state;
    switch (block)
    {
    case Block::d:
        s.d += t * delta;
        break;
    case Block::a:
        s.a += t * delta;
        break;
    case Block::e:
        s.e += t * delta.col(0);
        break;
    }
    return s;
}

double fd_directional(const StateFunction &f, const BeamformingState &state, Block block, const CMatrix &delta,
                      double t)
{
    return (f(perturb(state, block, delta, t)) - f(perturb(state, block, delta, -t))) / (2.0 * t);
}

double wirtinger_directional(const CMatrix &g, const CMatrix &delta)
{
    return 2.0 * (g.array().conjugate() * delta.array()).sum().real();
}

double fd_hessian_spectral(const StateGradient &grad, const BeamformingState &state, Block block, Rng &rng,
                           double t, int iters)
{
    CMatrix e_tmp;
    BeamformingState copy = state;
    const CMatrix &x = block_of(copy, block, e_tmp);
    CMatrix delta = random_matrix(x.rows(), x.cols(), rng);
    delta /= delta.norm();
    double estimate = 0.0;
    for (int it = 0; it < iters; ++it)
    {
        const CMatrix hv = (grad(perturb(state, block, delta, t)) - grad(perturb(state, block, delta, -t))) / (2.0 * t);
        estimate = hv.norm();
        if (estimate == 0.0)
            break;
        delta = hv / estimate;
    }
    return estimate;
}

std::vector<double> exhaustive_outage(const BeamformingState &state, const GeometricChannel &geo,
                                      const SystemConfig &config)
{
    const int k_users = config.n_users;
    const int l_paths = config.n_paths_bu;
    const int bits = k_users * l_paths;
    std::vector<double> outage(static_cast<std::size_t>(k_users), 0.0);
    for (long mask = 0; mask < (1L << bits); ++mask)
    {
        Eigen::MatrixXi gamma(k_users, l_paths);
        double prob = 1.0;
        for (int k = 0; k < k_users; ++k)
            for (int l = 0; l < l_paths; ++l)
            {
                const int bit = static_cast<int>((mask >> (k * l_paths + l)) & 1L);
                gamma(k, l) = bit;
                prob *= bit ? 1.0 - config.p_block(k, l) : config.p_block(k, l);
            }
        if (prob == 0.0)
            continue;
        const auto h = stacked_channels(geo, gamma);
        for (int k = 0; k < k_users; ++k)
            if (direct_sinr(state, h[static_cast<std::size_t>(k)], k, config.noise_power[k]) <=
                config.sinr_targets[k])
                outage[static_cast<std::size_t>(k)] += prob;
    }
    return outage;
}

double dense_lambda_max(const CMatrix &f)
{
    const CMatrix gram = f.adjoint() * f;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(gram, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().maxCoeff();
}

CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng &rng)
{
    CMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
            m(i, j) = complex_normal(rng, 1.0);
    return m;
}

BeamformingState random_feasible_state(int n_tx, int n_rf, int n_users, int e_length, double p_max, Rng &rng)
{
    BeamformingState s;
    s.a = random_matrix(n_tx, n_rf, rng).unaryExpr([](cplx z) { return z / std::abs(z); });
    s.d = random_matrix(n_rf, n_users, rng);
    s.d *= std::sqrt(p_max) / (s.a * s.d).norm();
    s.e = random_matrix(e_length, 1, rng).col(0).unaryExpr([](cplx z) { return z / std::abs(z); });
    s.e[e_length - 1] = 1.0;
    return s;
}

SystemConfig tiny_config(int n_tx, int n_ris, int m_rows, int m_cols, int n_paths_bu)
{
    SystemConfig c = full_scale_scenario(0.5);
    c.n_tx = n_tx;
    c.n_ris = n_ris;
    c.m_rows = m_rows;
    c.m_cols = m_cols;
    c.n_paths_bu = n_paths_bu;
    c.n_paths_bi = 2;
    c.n_paths_iu = 2;
    c.deployment.ris.resize(static_cast<std::size_t>(n_ris), Point2{40.0, 10.0});
    c.set_uniform_blockage(0.5);
    return c;
}

} // namespace risbeam::oracle
