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

#include "support.hpp"

#include <cmath>

namespace risbeam
{
namespace
{

TEST(Steering, UlaBroadsideIsAllOnes)
{
    const CVector a = ula_steering(0.0, 4);
    EXPECT_LT((a - CVector::Ones(4)).norm(), 1e-15);
}

TEST(Steering, UlaEndfireAlternates)
{
    const CVector a = ula_steering(kPi / 2.0, 2);
    EXPECT_NEAR(std::abs(a[0] - cplx(1.0, 0.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(a[1] - cplx(-1.0, 0.0)), 0.0, 1e-15);
}

TEST(Steering, UlaIsGeometricProgression)
{
    const CVector a = ula_steering(0.3, 8);
    for (int i = 0; i < 8; ++i)
        EXPECT_NEAR(std::abs(a[i]), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(a[2] - a[1] * a[1]), 0.0, 1e-14);
    EXPECT_NEAR(a.squaredNorm(), 8.0, 1e-12);
}

TEST(Steering, UpaDegenerateAnglesGiveOnes)
{
    const CVector a = upa_steering(kPi / 2.0, 0.0, 2, 2);
    EXPECT_LT((a - CVector::Ones(4)).norm(), 1e-15);
    const CVector single = upa_steering(0.7, -0.2, 1, 1);
    ASSERT_EQ(single.size(), 1);
    EXPECT_EQ(single[0], cplx(1.0, 0.0));
}

TEST(Steering, UpaFactorsAsKronecker)
{
    const double theta = 0.4;
    const double phi = 1.1;
    const CVector a = upa_steering(theta, phi, 2, 3);
    ASSERT_EQ(a.size(), 6);
    for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 3; ++q)
        {
            const cplx col = std::exp(kImag * (kPi * p * std::sin(theta) * std::sin(phi)));
            const cplx row = std::exp(kImag * (kPi * q * std::cos(theta)));
            EXPECT_NEAR(std::abs(a[p * 3 + q] - col * row), 0.0, 1e-14);
        }
}

TEST(PathLoss, KnownVariance)
{
    const PathLossParams pl{60.0, 2.0, 0.0};
    EXPECT_NEAR(pathloss_variance(10.0, pl) / 1e-8, 1.0, 1e-12);
}

TEST(PathLoss, UnitDistanceDropsExponent)
{
    const PathLossParams pl{61.4, 3.7, 0.0};
    EXPECT_NEAR(pathloss_variance(1.0, pl) / std::pow(10.0, -6.14), 1.0, 1e-12);
}

TEST(PathLoss, EmpiricalVarianceMatches)
{
    const PathLossParams pl{60.0, 2.0, 0.0};
    Rng rng = make_rng(11);
    const int n = 100000;
    double power = 0.0;
    for (int i = 0; i < n; ++i)
        power += std::norm(draw_pathloss_gain(10.0, pl, rng));
    EXPECT_NEAR(power / n / 1e-8, 1.0, 0.05);
}

TEST(PathLoss, NonpositiveDistanceRejected)
{
    Rng rng = make_rng(1);
    EXPECT_THROW(draw_pathloss_gain(0.0, PathLossParams{}, rng), DomainError);
    EXPECT_THROW(pathloss_variance(-1.0, PathLossParams{}), DomainError);
}

TEST(Geometry, FullScaleLayout)
{
    const SystemConfig cfg = full_scale_scenario(0.5);
    EXPECT_EQ(cfg.n_tx, 32);
    EXPECT_EQ(cfg.m_per_ris(), 64);
    EXPECT_EQ(cfg.n_users, 2);
    EXPECT_EQ(cfg.n_rf, 2);
    EXPECT_EQ(cfg.n_ris, 2);
    EXPECT_DOUBLE_EQ(cfg.p_max, 5.0);
    EXPECT_NEAR(cfg.noise_power[0], 1e-13, 1e-25);
    ASSERT_EQ(cfg.deployment.ris.size(), 2u);
    EXPECT_DOUBLE_EQ(cfg.deployment.ris[0].x, 40.0);
    EXPECT_DOUBLE_EQ(cfg.deployment.ris[0].y, 10.0);
    EXPECT_DOUBLE_EQ(cfg.deployment.ris[1].y, -10.0);
    EXPECT_DOUBLE_EQ(cfg.deployment.user_center.x, 50.0);
    EXPECT_DOUBLE_EQ(cfg.deployment.user_radius, 5.0);

    Rng rng = make_rng(5);
    const GeometricChannel geo = gen_geometry(cfg, rng);
    for (const auto &user : geo.bu_paths)
        EXPECT_EQ(user.size(), 5u);
    for (const auto &ris : geo.bi_paths)
        EXPECT_EQ(ris.size(), 5u);
    for (const auto &ris : geo.iu_paths)
        for (const auto &user : ris)
            EXPECT_EQ(user.size(), 5u);
    for (const auto &p : geo.user_positions)
        EXPECT_LE(distance(p, cfg.deployment.user_center), cfg.deployment.user_radius + 1e-12);
    EXPECT_NO_THROW(geo.check_against(cfg));
}

TEST(Geometry, AnglesWithinRanges)
{
    const SystemConfig cfg = desk_scenario(0.5);
    Rng rng = make_rng(9);
    const GeometricChannel geo = gen_geometry(cfg, rng);
    for (const auto &user : geo.bu_paths)
        for (const auto &p : user)
            EXPECT_LE(std::abs(p.aod), kPi / 2.0);
    for (const auto &ris : geo.bi_paths)
        for (const auto &p : ris)
        {
            EXPECT_LE(std::abs(p.aoa_az), kPi / 2.0);
            EXPECT_LE(std::abs(p.aoa_el), kPi / 4.0);
            EXPECT_LE(std::abs(p.aod), kPi / 2.0);
        }
}

TEST(Geometry, SameSeedIsBitIdentical)
{
    const SystemConfig cfg = desk_scenario(0.5);
    Rng a = make_rng(77);
    Rng b = make_rng(77);
    const GeometricChannel ga = gen_geometry(cfg, a);
    const GeometricChannel gb = gen_geometry(cfg, b);
    const ChannelSample sa = EquivalentChannelBuilder(ga).unblocked();
    const ChannelSample sb = EquivalentChannelBuilder(gb).unblocked();
    for (int k = 0; k < cfg.n_users; ++k)
        EXPECT_TRUE(sa.stacked(k) == sb.stacked(k));
    EXPECT_EQ(ga.user_positions[1].x, gb.user_positions[1].x);
}

TEST(Geometry, ShapeMismatchDetected)
{
    SystemConfig cfg = desk_scenario(0.5);
    Rng rng = make_rng(1);
    const GeometricChannel geo = gen_geometry(cfg, rng);
    cfg.n_paths_bu = 4;
    cfg.set_uniform_blockage(0.5);
    EXPECT_THROW(geo.check_against(cfg), StructuralError);
}

TEST(Blockage, ExtremeProbabilities)
{
    RMatrix p0 = RMatrix::Zero(2, 5);
    RMatrix p1 = RMatrix::Ones(2, 5);
    Rng rng = make_rng(2);
    for (int i = 0; i < 50; ++i)
    {
        EXPECT_EQ(sample_blockage(p0, rng).gamma.sum(), 10);
        EXPECT_EQ(sample_blockage(p1, rng).gamma.sum(), 0);
    }
}

TEST(Blockage, EmpiricalRate)
{
    const RMatrix p = RMatrix::Constant(1, 1, 0.3);
    Rng rng = make_rng(4);
    long open = 0;
    const long n = 100000;
    for (long i = 0; i < n; ++i)
        open += sample_blockage(p, rng).gamma(0, 0);
    const double mean = static_cast<double>(open) / n;
    EXPECT_GE(mean, 0.695);
    EXPECT_LE(mean, 0.705);
}

TEST(Blockage, MonotoneCouplingAcrossProbabilities)
{
    Rng a = make_rng(8);
    Rng b = make_rng(8);
    for (int i = 0; i < 1000; ++i)
    {
        const auto lo = sample_blockage(RMatrix::Constant(2, 5, 0.2), a).gamma;
        const auto hi = sample_blockage(RMatrix::Constant(2, 5, 0.6), b).gamma;
        EXPECT_TRUE((hi.array() <= lo.array()).all());
    }
}

TEST(Assembly, UnblockedMatchesAllOnesDraw)
{
    const Problem p = test::small_problem(3);
    const EquivalentChannelBuilder builder(p.geo);
    const ChannelSample h0 = builder.unblocked();
    const ChannelSample h1 = builder.assemble(no_blockage(2, p.config.n_paths_bu));
    const auto ref = oracle::stacked_channels(p.geo, Eigen::MatrixXi::Ones(2, p.config.n_paths_bu));
    for (int k = 0; k < 2; ++k)
    {
        EXPECT_LT((h0.stacked(k) - h1.stacked(k)).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LT(test::rel(h0.stacked(k), ref[k]), 1e-12);
    }
}

TEST(Assembly, FullBlockageZeroesDirectRowOnly)
{
    const Problem p = test::small_problem(4);
    const EquivalentChannelBuilder builder(p.geo);
    const ChannelSample h0 = builder.unblocked();
    BlockageDraw none{Eigen::MatrixXi::Zero(2, p.config.n_paths_bu)};
    const ChannelSample hb = builder.assemble(none);
    for (int k = 0; k < 2; ++k)
    {
        const CMatrix s = hb.stacked(k);
        EXPECT_EQ(s.row(s.rows() - 1).norm(), 0.0);
        EXPECT_TRUE(s.topRows(s.rows() - 1) == h0.stacked(k).topRows(s.rows() - 1));
    }
}

TEST(Assembly, ScalarChannelByHand)
{
    GeometricChannel geo;
    geo.n_tx = 1;
    geo.m_rows = 1;
    geo.m_cols = 1;
    geo.user_positions = {{50.0, 0.0}};
    const cplx g_b(0.3, -0.4);
    const cplx g_bi(1.5, 0.5);
    const cplx g_iu(-0.2, 0.7);
    geo.bu_paths = {{BuPath{g_b, 0.9}}};
    geo.bi_paths = {{BiPath{g_bi, 0.1, 0.2, 0.3}}};
    geo.iu_paths = {{{IuPath{g_iu, -0.4, 0.5}}}};
    const ChannelSample s = EquivalentChannelBuilder(geo).unblocked();
    const CMatrix h = s.stacked(0);
    ASSERT_EQ(h.rows(), 2);
    ASSERT_EQ(h.cols(), 1);
    EXPECT_NEAR(std::abs(h(0, 0) - std::conj(g_iu) * g_bi), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(h(1, 0) - std::conj(g_b)), 0.0, 1e-15);
}

TEST(Assembly, ReflectedRowsSharedAcrossSamples)
{
    const Problem p = test::small_problem(5);
    Rng rng = make_rng(6);
    const auto set = training_set(p.geo, p.config, 20, rng);
    for (const auto &s : set)
    {
        EXPECT_TRUE(s.shares_ris_rows_with(set.front()));
        for (int k = 0; k < 2; ++k)
            EXPECT_TRUE(s.ris_rows(k) == set.front().ris_rows(k));
    }
}

TEST(Assembly, MeanDirectLinkScalesWithOpenProbability)
{
    Problem p = test::small_problem(6, 0.3);
    const EquivalentChannelBuilder builder(p.geo);
    const CVector ref = builder.unblocked().direct(0);
    Rng rng = make_rng(7);
    CVector mean = CVector::Zero(ref.size());
    const int n = 20000;
    for (int i = 0; i < n; ++i)
        mean += builder.assemble(sample_blockage(p.config.p_block, rng)).direct(0);
    mean /= static_cast<double>(n);
    EXPECT_LT((mean - 0.7 * ref).norm() / (0.7 * ref.norm()), 0.03);
}

TEST(TrainingSet, NoBlockageGivesIdenticalSamples)
{
    const Problem p = test::small_problem(7, 0.0);
    Rng rng = make_rng(8);
    const auto set = training_set(p.geo, p.config, 5, rng);
    const ChannelSample h0 = EquivalentChannelBuilder(p.geo).unblocked();
    for (const auto &s : set)
        for (int k = 0; k < 2; ++k)
            EXPECT_TRUE(s.stacked(k) == h0.stacked(k));
}

TEST(TrainingSet, SingletonAndInvalidSize)
{
    const Problem p = test::small_problem(8);
    Rng rng = make_rng(9);
    EXPECT_EQ(training_set(p.geo, p.config, 1, rng).size(), 1u);
    EXPECT_THROW(training_set(p.geo, p.config, 0, rng), UsageError);
}

TEST(TrainingSet, FullyBlockedFractionMatchesIndependence)
{
    Problem p = test::small_problem(10, 0.5, 8, 1, 2, 2, 5);
    Rng rng = make_rng(10);
    const int t = 1000;
    const auto set = training_set(p.geo, p.config, t, rng);
    int blocked = 0;
    for (const auto &s : set)
        blocked += s.direct(0).norm() == 0.0 ? 1 : 0;
    const double q = std::pow(0.5, 5);
    const double se = std::sqrt(q * (1.0 - q) / t);
    EXPECT_NEAR(static_cast<double>(blocked) / t, q, 4.0 * se);
}

TEST(Normalization, SinrInvariant)
{
    const SystemConfig cfg = desk_scenario(0.5);
    Rng rng = make_rng(12);
    const GeometricChannel raw = gen_geometry(cfg, rng);
    const Problem norm = normalized_problem(cfg, raw);
    const BeamformingState x = test::random_state(norm, rng);
    const BlockageDraw draw = sample_blockage(cfg.p_block, rng);
    const ChannelSample a = EquivalentChannelBuilder(raw).assemble(draw);
    const ChannelSample b = EquivalentChannelBuilder(norm.geo).assemble(draw);
    for (int k = 0; k < cfg.n_users; ++k)
        EXPECT_NEAR(sinr(x, a, k, cfg.noise_power[k]) / sinr(x, b, k, 1.0), 1.0, 1e-9);
}

TEST(Normalization, WithoutRisKeepsDirectLinks)
{
    const Problem p = test::small_problem(13);
    const GeometricChannel bare = without_ris(p.geo);
    EXPECT_EQ(bare.n_ris(), 0);
    const ChannelSample a = EquivalentChannelBuilder(p.geo).unblocked();
    const ChannelSample b = EquivalentChannelBuilder(bare).unblocked();
    EXPECT_EQ(b.n_rows(), 1);
    for (int k = 0; k < 2; ++k)
        EXPECT_TRUE(a.direct(k) == b.direct(k));
}

} // namespace
} // namespace risbeam
