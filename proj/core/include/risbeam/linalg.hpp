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

#ifndef RISBEAM_LINALG_HPP
#define RISBEAM_LINALG_HPP

#include "risbeam/types.hpp"

namespace risbeam
{

struct PowerIterationOptions
{
    double rel_tol = 1e-13;
    int max_iter = 10000;
};

/// Largest eigenvalue of F^H F by power iteration from a fixed start vector.
/// Never forms F^H F. Throws DegenerateError for an all-zero F and
/// ConvergenceError (carrying the last iterate) when the cap is reached.
double lambda_max_psd(const CMatrix &f, const PowerIterationOptions &opts = {});

} // namespace risbeam

#endif
