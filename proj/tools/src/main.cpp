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

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

int main(int argc, char **argv)
{
    CLI::App app{"Robust hybrid beamforming for RIS-aided mmWave links under random blockages"};
    std::string config_path;
    std::string mode;
    std::uint64_t seed = 0;
    std::string out_dir;
    int threads = 0;
    std::vector<std::string> overrides;

    app.add_option("--config", config_path, "JSON experiment file")->check(CLI::ExistingFile);
    app.add_option("--mode", mode, "train, eval, sweep or selftest")
        ->check(CLI::IsMember({"train", "eval", "sweep", "selftest"}));
    auto *seed_opt = app.add_option("--seed", seed, "master seed (overrides the file)");
    app.add_option("--out", out_dir, "output directory (overrides the file)");
    app.add_option("--threads", threads, "worker threads; results do not depend on it")->check(CLI::PositiveNumber);
    app.add_option("--set", overrides, "override a config entry, e.g. --set sweep.n_geo=5")->take_all();
    app.set_version_flag("--version", risbeam::version());
    CLI11_PARSE(app, argc, argv);

    try
    {
        std::vector<std::string> all = overrides;
        if (!mode.empty())
            all.push_back("mode=" + nlohmann::json(mode).dump());
        if (*seed_opt)
            all.push_back("seed=" + std::to_string(seed));
        if (!out_dir.empty())
            all.push_back("output_dir=" + nlohmann::json(out_dir).dump());
        if (threads > 0)
            all.push_back("threads=" + std::to_string(threads));

        const risbeam::cli::ExperimentConfig cfg = config_path.empty()
                                                       ? risbeam::cli::parse_experiment("{}", all)
                                                       : risbeam::cli::load_experiment(config_path, all);
        return risbeam::cli::run(cfg, std::cout);
    }
    catch (const risbeam::ConfigError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
