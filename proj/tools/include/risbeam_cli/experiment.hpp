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

#ifndef RISBEAM_CLI_EXPERIMENT_HPP
#define RISBEAM_CLI_EXPERIMENT_HPP

#include <risbeam/config.hpp>
#include <risbeam/evaluation.hpp>
#include <risbeam/optimizer.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace risbeam::cli
{

enum class Mode
{
    train,
    eval,
    sweep,
    selftest
};

std::string mode_name(Mode mode);
Mode mode_from_name(const std::string &name);

struct ExperimentConfig
{
    SystemConfig system;
    Mode mode = Mode::train;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    int threads = 1;

    // training
    BsgdOptions train;
    bool normalize_noise = true;
    bool lipschitz_cap = false;
    Scheme scheme = Scheme::bsgd_robust;  // train mode
    int geo_index = 0;                    // train/eval geometry

    // evaluation and sweeps
    long n_trials = 2000;
    int n_geo = 20;
    std::vector<double> p_grid{0.1, 0.3, 0.5, 0.7, 0.9};
    std::vector<Scheme> schemes{std::begin(kAllSchemes), std::end(kAllSchemes)};
    std::string state_path;     // eval mode input
    std::string geometry_path;  // eval mode input

    SweepOptions sweep_options() const;
};

/// Parses a JSON experiment document and applies `overrides` ("dotted.key=value",
/// value read as JSON, or as a string when it is not valid JSON). Unknown keys
/// and invalid values raise ConfigError naming the dotted key.
ExperimentConfig parse_experiment(const std::string &document, const std::vector<std::string> &overrides = {});

/// Reads and parses a file. I/O failures name the path.
ExperimentConfig load_experiment(const std::string &path, const std::vector<std::string> &overrides = {});

/// Fully resolved configuration in the input format. `threads` is omitted
/// because it does not affect results.
std::string experiment_to_json(const ExperimentConfig &config);

/// Executes the configured mode, writing artifacts under config.out_dir.
/// Progress lines go to `log`. Returns the process exit status.
int run(const ExperimentConfig &config, std::ostream &log);

/// Oracle checks on tiny instances. Prints one PASS/FAIL line per check and
/// returns true when all pass.
bool selftest(std::uint64_t seed, std::ostream &log);

} // namespace risbeam::cli

#endif
