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

#include <risbeam/io.hpp>
#include <risbeam_cli/experiment.hpp>

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace risbeam::cli
{
namespace
{

namespace fs = std::filesystem;
using nlohmann::json;

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string &name)
{
    const fs::path dir = fs::temp_directory_path() / ("risbeam_test_" + name);
    fs::remove_all(dir);
    return dir;
}

// Small enough for a unit test: 8 antennas, one 2 x 2 surface, short runs.
const std::vector<std::string> kTiny = {
    "system.n_tx=8",           "system.n_ris=1",        "system.m_rows=2",     "system.m_cols=2",
    "system.geometry.ris=[[40, 10]]", "train.stop.t_max=200", "train.stop.window=50", "train.log_stride=50",
    "evaluation.n_trials=200", "sweep.n_geo=2",         "sweep.p_grid=[0.3, 0.7]"};

std::vector<std::string> tiny_with(std::vector<std::string> extra)
{
    std::vector<std::string> all = kTiny;
    all.insert(all.end(), extra.begin(), extra.end());
    return all;
}

std::string config_error_key(const std::string &doc, const std::vector<std::string> &overrides = {})
{
    try
    {
        parse_experiment(doc, overrides);
    }
    catch (const ConfigError &e)
    {
        return e.key();
    }
    return "";
}

TEST(Parse, DefaultsAreFullScale)
{
    const ExperimentConfig x = parse_experiment("{}");
    EXPECT_EQ(x.mode, Mode::train);
    EXPECT_EQ(x.system.n_tx, 32);
    EXPECT_EQ(x.system.m_per_ris(), 64);
    EXPECT_EQ(x.system.n_users, 2);
    EXPECT_EQ(x.system.n_rf, 2);
    EXPECT_EQ(x.system.n_ris, 2);
    EXPECT_DOUBLE_EQ(x.system.sinr_targets[0], 1.0);
    EXPECT_DOUBLE_EQ(x.system.p_max, 5.0);
}

TEST(Parse, ShippedConfigsLoad)
{
    const ExperimentConfig desk = load_experiment(std::string(RISBEAM_CONFIG_DIR) + "/desk_scale.json");
    EXPECT_EQ(desk.mode, Mode::sweep);
    EXPECT_EQ(desk.system.n_tx, 16);
    EXPECT_EQ(desk.schemes.size(), 4u);
    const ExperimentConfig full = load_experiment(std::string(RISBEAM_CONFIG_DIR) + "/full_scale.json");
    EXPECT_EQ(full.system.n_tx, 32);
    EXPECT_EQ(full.system.m_per_ris(), 64);
    EXPECT_EQ(full.system.n_users, 2);
    EXPECT_NEAR(full.system.sinr_targets[1], 1.0, 1e-15);
}

TEST(Parse, UnitConversions)
{
    const ExperimentConfig x = parse_experiment(R"({"system": {"noise_dbm": -100, "rate_target_bps_hz": 2}})");
    EXPECT_NEAR(x.system.noise_power[0] / 1e-13, 1.0, 1e-12);
    EXPECT_NEAR(x.system.sinr_targets[1], 3.0, 1e-12);
    const ExperimentConfig y = parse_experiment(R"({"system": {"noise_power_w": [1e-12, 2e-12], "sinr_target": 4}})");
    EXPECT_DOUBLE_EQ(y.system.noise_power[1], 2e-12);
    EXPECT_DOUBLE_EQ(y.system.sinr_targets[0], 4.0);
}

TEST(Parse, BlockageScalarAndMatrix)
{
    const ExperimentConfig a = parse_experiment(R"({"system": {"p_block": 0.25}})");
    EXPECT_EQ(a.system.p_block.rows(), 2);
    EXPECT_EQ(a.system.p_block.cols(), 5);
    EXPECT_TRUE((a.system.p_block.array() == 0.25).all());
    const ExperimentConfig b =
        parse_experiment(R"({"system": {"n_paths_bu": 2, "p_block": [[0.1, 0.2], [0.3, 0.4]]}})");
    EXPECT_DOUBLE_EQ(b.system.p_block(1, 0), 0.3);
    EXPECT_EQ(config_error_key(R"({"system": {"p_block": [[0.1]]}})"), "system.p_block");
}

TEST(Parse, ErrorsNameTheKey)
{
    EXPECT_EQ(config_error_key(R"({"system": {"bogus": 1}})"), "system.bogus");
    EXPECT_EQ(config_error_key(R"({"train": {"stop": {"t_max": "many"}}})"), "train.stop.t_max");
    EXPECT_EQ(config_error_key(R"({"system": {"n_rf": 1}})"), "system.n_rf");
    EXPECT_EQ(config_error_key(R"({"system": {"noise_dbm": -90, "noise_power_w": 1e-12}})"), "system.noise_dbm");
    EXPECT_EQ(config_error_key(R"({"sweep": {"p_grid": [0.5, 2]}})"), "sweep.p_grid");
    EXPECT_EQ(config_error_key(R"({"sweep": {"schemes": ["magic"]}})"), "sweep.schemes");
    EXPECT_EQ(config_error_key(R"({"mode": "dance"})"), "mode");
    EXPECT_EQ(config_error_key("{]"), "<document>");
    EXPECT_EQ(config_error_key("{}", {"novalue"}), "novalue");
}

TEST(Parse, OverridesUseDottedKeys)
{
    const ExperimentConfig x =
        parse_experiment("{}", {"system.n_tx=12", "train.scheme=non_ris", "output_dir=somewhere", "seed=9"});
    EXPECT_EQ(x.system.n_tx, 12);
    EXPECT_EQ(x.scheme, Scheme::non_ris);
    EXPECT_EQ(x.out_dir, "somewhere");
    EXPECT_EQ(x.seed, 9u);
}

TEST(Parse, ResolvedJsonRoundTrips)
{
    const ExperimentConfig x = parse_experiment("{}", tiny_with({"train.schedule.kind=\"constant\"", "threads=3"}));
    const std::string text = experiment_to_json(x);
    EXPECT_EQ(json::parse(text).count("threads"), 0u);
    const ExperimentConfig y = parse_experiment(text);
    EXPECT_EQ(experiment_to_json(y), text);
    EXPECT_EQ(y.train.schedule.kind, StepKind::constant);
    EXPECT_EQ(y.system.deployment.ris.size(), 1u);
}

TEST(Modes, NamesRoundTrip)
{
    for (Mode m : {Mode::train, Mode::eval, Mode::sweep, Mode::selftest})
        EXPECT_EQ(mode_from_name(mode_name(m)), m);
}

TEST(Run, TrainThenEvaluate)
{
    const fs::path dir = scratch("train");
    std::ostringstream log;
    const ExperimentConfig train = parse_experiment("{}", tiny_with({"output_dir=" + json(dir.string()).dump()}));
    ASSERT_EQ(run(train, log), 0);
    for (const char *f : {"trace.csv", "eval_report.csv", "state.json", "geometry.json", "manifest.json"})
        EXPECT_TRUE(fs::exists(dir / f)) << f;

    const std::string trace = slurp(dir / "trace.csv");
    EXPECT_EQ(trace.rfind("t,objective_rolling,", 0), 0u);
    EXPECT_EQ(trace.find('\r'), std::string::npos);

    const json manifest = json::parse(slurp(dir / "manifest.json"));
    EXPECT_EQ(manifest["version"], version());
    EXPECT_EQ(manifest["seed"], 1);
    EXPECT_EQ(manifest["noise_scale"].size(), 2u);
    EXPECT_EQ(manifest["config"]["system"]["n_tx"], 8);

    const fs::path eval_dir = scratch("eval");
    const ExperimentConfig eval = parse_experiment(
        "{}", tiny_with({"mode=eval", "output_dir=" + json(eval_dir.string()).dump(),
                         "evaluation.state=" + json((dir / "state.json").string()).dump(),
                         "evaluation.geometry=" + json((dir / "geometry.json").string()).dump()}));
    ASSERT_EQ(run(eval, log), 0);
    const std::string report = slurp(eval_dir / "eval_report.csv");
    EXPECT_EQ(report.rfind("user,outage,eff_rate,n_trials,seed\n", 0), 0u);
    EXPECT_NE(report.find("\nall,"), std::string::npos);
    fs::remove_all(dir);
    fs::remove_all(eval_dir);
}

TEST(Run, EvalNeedsInputs)
{
    std::ostringstream log;
    const ExperimentConfig x = parse_experiment("{}", tiny_with({"mode=eval", "output_dir=" + json(scratch("noinput").string()).dump()}));
    EXPECT_THROW(run(x, log), ConfigError);
}

TEST(Run, SweepIsThreadInvariant)
{
    std::ostringstream log;
    const fs::path a = scratch("sweep1");
    const fs::path b = scratch("sweep3");
    ASSERT_EQ(run(parse_experiment("{}", tiny_with({"mode=sweep", "output_dir=" + json(a.string()).dump()})), log), 0);
    ASSERT_EQ(
        run(parse_experiment("{}", tiny_with({"mode=sweep", "threads=3", "output_dir=" + json(b.string()).dump()})),
            log),
        0);
    for (const char *f : {"sweep_rows.csv", "sweep_summary.csv", "manifest.json"})
        EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
    const std::string rows = slurp(a / "sweep_rows.csv");
    EXPECT_EQ(std::count(rows.begin(), rows.end(), '\n'), 1 + 2 * 2 * 4);
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Run, SelftestPasses)
{
    std::ostringstream log;
    EXPECT_TRUE(selftest(3, log)) << log.str();
    EXPECT_EQ(log.str().find("FAIL"), std::string::npos);
}

} // namespace
} // namespace risbeam::cli
