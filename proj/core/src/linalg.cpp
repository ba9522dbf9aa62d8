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

#include "risbeam/linalg.hpp"

#include <cmath>

namespace risbeam
{

double lambda_max_psd(const CMatrix &f, const PowerIterationOptions &opts)
{
    if (f.size() == 0 || f.cwiseAbs2().maxCoeff() == 0.0)
        throw DegenerateError("lambda_max_psd: matrix is zero");

    // Deterministic start with irregular phases and magnitudes so that it is
    // not orthogonal to the dominant eigenvector for structured inputs.
    const Eigen::Index n = f.cols();
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v[i] = std::polar(1.0 + 0.1 * std::sqrt(static_cast<double>(i) + 1.0), 0.7 * static_cast<double>(i * i) + 0.3);
    v.normalize();

    double lambda = 0.0;
    for (int it = 0; it < opts.max_iter; ++it)
    {
        const CVector fv = f * v;
        CVector w = f.adjoint() * fv;
        const double next = fv.squaredNorm();  // Rayleigh quotient v^H F^H F v
        const double wn = w.norm();
        if (wn == 0.0)
        {
            // Start vector in the null space; restart from a unit basis vector.
            v = CVector::Unit(n, it % n);
            continue;
        }
        v = w / wn;
        if (it > 0 && std::abs(next - lambda) <= opts.rel_tol * next)
            return next;
        lambda = next;
    }
    throw ConvergenceError("lambda_max_psd: iteration cap reached", v, lambda);
}

} // namespace risbeam
