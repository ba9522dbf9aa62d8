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
#include <set>

namespace risbeam
{
namespace
{

TEST(Rng, SameSeedSameStream)
{
    Rng a = make_rng(42);
    Rng b = make_rng(42);
    for (int i = 0; i < 100; ++i)
        EXPECT_EQ(uniform01(a), uniform01(b));
}

TEST(Rng, DerivedSeedsAreDistinct)
{
    std::set<std::uint64_t> seen;
    for (std::uint64_t g = 0; g < 200; ++g)
        for (std::uint64_t s = 0; s < 4; ++s)
            seen.insert(derive_seed(7, {g, s}));
    EXPECT_EQ(seen.size(), 800u);
    EXPECT_NE(derive_seed(7, {1, 2}), derive_seed(7, {2, 1}));
    EXPECT_NE(derive_seed(7, {1}), derive_seed(8, {1}));
}

TEST(Rng, UniformInUnitInterval)
{
    Rng rng = make_rng(1);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i)
    {
        const double u = uniform01(rng);
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / n, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Rng, ComplexNormalMoments)
{
    Rng rng = make_rng(3);
    const int n = 100000;
    cplx mean = 0.0;
    double power = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const cplx z = complex_normal(rng, 2.5);
        mean += z;
        power += std::norm(z);
    }
    EXPECT_LT(std::abs(mean / static_cast<double>(n)), 0.02);
    EXPECT_NEAR(power / n, 2.5, 0.05);
}

} // namespace
} // namespace risbeam
