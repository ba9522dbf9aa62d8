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

#ifndef RISBEAM_TEST_SUPPORT_HPP
#define RISBEAM_TEST_SUPPORT_HPP

#include <checks.hpp>
#include <oracles.hpp>

#include <risbeam/evaluation.hpp>
#include <risbeam/rng.hpp>

#include <gtest/gtest.h>

namespace risbeam::test
{

// Relative Frobenius distance.
inline double rel(const CMatrix &got, const CMatrix &ref) { return (got - ref).norm() / ref.norm(); }

inline Problem small_problem(std::uint64_t seed, double p = 0.5, int n_tx = 8, int n_ris = 1, int m_rows = 2,
                             int m_cols = 2, int n_paths_bu = 3)
{
    Rng rng = make_rng(seed);
    return oracle::random_problem(n_tx, n_ris, m_rows, m_cols, n_paths_bu, p, rng);
}

inline BeamformingState random_state(const Problem &p, Rng &rng)
{
    return oracle::random_feasible_state(p.config.n_tx, p.config.n_rf, p.config.n_users, p.config.e_length(),
                                         p.config.p_max, rng);
}

} // namespace risbeam::test

#endif
