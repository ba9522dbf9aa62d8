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

#include "risbeam_cli/experiment.hpp"

#include <checks.hpp>

#include <functional>
#include <ostream>
#include <utility>
#include <vector>

namespace risbeam::cli
{

bool selftest(std::uint64_t seed, std::ostream &log)
{
    using namespace risbeam::oracle;
    const std::vector<std::pair<const char *, std::function<CheckResult()>>> checks = {
        {"kronecker equivalence", [&] { return check_kronecker(20, seed); }},
        {"finite-difference gradients", [&] { return check_gradients_fd(20, seed + 1); }},
        {"projections", [&] { return check_projections(200, seed + 2); }},
        {"unbiased stochastic gradient", [&] { return check_unbiasedness(16, seed + 3); }},
        {"initialization monotonicity", [&] { return check_init_monotone(10, seed + 4); }},
        {"exhaustive outage", [&] { return check_exhaustive_outage(20000, seed + 5); }},
        {"power iteration", [&] { return check_power_iteration(10, seed + 6); }},
    };
    bool ok = true;
    for (const auto &[name, fn] : checks)
    {
        CheckResult r;
        try
        {
            r = fn();
        }
        catch (const std::exception &e)
        {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        log << (r.pass ? "PASS " : "FAIL ") << name << " (" << r.detail << ")\n";
        ok = ok && r.pass;
    }
    return ok;
}

} // namespace risbeam::cli
