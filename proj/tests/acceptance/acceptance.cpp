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

// Acceptance runner. Prints one PASS/FAIL line per criterion and exits
// nonzero when any of them fails.

#include <checks.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using risbeam::oracle::CheckResult;

namespace
{

struct Verdict
{
    bool pass = false;
    std::string detail;
};

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string quote(const std::string &s)
{
    std::string out = "'";
    for (char c : s)
        out += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return out + "'";
}

// Runs the command-line tool, sending its output to `log`.
bool run_tool(const std::string &tool, const std::string &config, const std::vector<std::string> &args,
              const fs::path &log)
{
    std::string cmd = quote(tool) + " --config " + quote(config);
    for (const auto &a : args)
        cmd += " " + quote(a);
    cmd += " > " + quote(log.string()) + " 2>&1";
    return std::system(cmd.c_str()) == 0;
}

std::vector<std::map<std::string, std::string>> read_csv(const fs::path &p)
{
    std::ifstream in(p);
    std::string line;
    std::vector<std::string> header;
    std::vector<std::map<std::string, std::string>> rows;
    auto split = [](const std::string &s) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ','))
            out.push_back(cell);
        return out;
    };
    if (std::getline(in, line))
        header = split(line);
    while (std::getline(in, line))
    {
        const auto cells = split(line);
        std::map<std::string, std::string> row;
        for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i)
            row[header[i]] = cells[i];
        rows.push_back(std::move(row));
    }
    return rows;
}

Verdict from_check(const CheckResult &r)
{
    std::ostringstream os;
    os << "worst " << std::setprecision(3) << r.worst << " over " << r.checked << " comparisons";
    if (!r.pass)
        os << "; " << r.detail;
    return {r.pass, os.str()};
}

struct SweepPoint
{
    double outage = 0.0;
    double rate = 0.0;
};

Verdict trend(const fs::path &dir)
{
    // p -> scheme -> means
    std::map<double, std::map<std::string, SweepPoint>> grid;
    for (const auto &row : read_csv(dir / "sweep_summary.csv"))
    {
        SweepPoint &pt = grid[std::stod(row.at("p_block"))][row.at("scheme")];
        pt.outage = std::stod(row.at("outage_mean"));
        pt.rate = std::stod(row.at("eff_sum_rate_mean"));
    }
    if (grid.empty())
        return {false, "sweep_summary.csv is empty"};

    bool ok = true;
    std::ostringstream os;
    os << std::fixed << std::setprecision(4);
    double prev_non_ris = -1.0;
    for (const auto &[p, schemes] : grid)
    {
        const SweepPoint robust = schemes.at("bsgd_robust");
        const SweepPoint naive = schemes.at("ris_non_robust");
        const SweepPoint random = schemes.at("ris_random");
        const SweepPoint bare = schemes.at("non_ris");

        std::vector<std::string> broken;
        if (!(robust.outage <= naive.outage))
            broken.push_back("robust<=non_robust");
        if (!(naive.outage <= bare.outage))
            broken.push_back("non_robust<=non_ris");
        for (const auto &[name, pt] : {std::pair{"non_robust", naive}, {"random", random}, {"non_ris", bare}})
            if (!(robust.rate >= pt.rate))
                broken.push_back(std::string("rate>=") + name);
        if (!(bare.outage > prev_non_ris))
            broken.push_back("non_ris increasing");
        prev_non_ris = bare.outage;
        ok = ok && broken.empty();

        os << "\n    p=" << std::setprecision(1) << p << std::setprecision(4) << " outage robust " << robust.outage
           << " non_robust " << naive.outage << " random " << random.outage << " non_ris " << bare.outage
           << " | rate robust " << robust.rate << " non_robust " << naive.rate << " random " << random.rate
           << " non_ris " << bare.rate;
        if (!broken.empty())
        {
            os << " | violated:";
            for (const auto &b : broken)
                os << ' ' << b;
        }
    }
    return {ok, os.str()};
}

// Means of consecutive non-overlapping windows, read from rolling values at
// multiples of the window length.
std::vector<double> window_means(const fs::path &trace, long window)
{
    std::vector<double> out;
    for (const auto &row : read_csv(trace))
        if (std::stol(row.at("t")) % window == 0)
            out.push_back(std::stod(row.at("objective_rolling")));
    return out;
}

double variance(const std::vector<double> &x)
{
    double mean = 0.0;
    for (double v : x)
        mean += v;
    mean /= static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x)
        ss += (v - mean) * (v - mean);
    return x.size() > 1 ? ss / static_cast<double>(x.size() - 1) : 0.0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"acceptance criteria"};
    std::string tool;
    std::string config;
    std::string work = "acceptance_work";
    std::uint64_t seed = 20240601;
    app.add_option("--tool", tool, "path to the risbeam executable")->required();
    app.add_option("--config", config, "desk-scale experiment file")->required()->check(CLI::ExistingFile);
    app.add_option("--work", work, "scratch directory");
    app.add_option("--seed", seed, "seed of the randomized checks");
    CLI11_PARSE(app, argc, argv);

    fs::create_directories(work);
    const fs::path root(work);
    int failures = 0;

    auto criterion = [&](int id, const std::string &name, const std::function<Verdict()> &body) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try
        {
            v = body();
        }
        catch (const std::exception &e)
        {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failures += v.pass ? 0 : 1;
        std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << id << " " << name << " (" << std::fixed
                  << std::setprecision(1) << secs << " s) " << v.detail << std::endl;
    };

    criterion(1, "gradient finite differences", [&] { return from_check(risbeam::oracle::check_gradients_fd(50, seed)); });
    criterion(2, "kronecker forms", [&] { return from_check(risbeam::oracle::check_kronecker(100, seed + 1)); });
    criterion(3, "projections", [&] { return from_check(risbeam::oracle::check_projections(1000, seed + 2)); });
    criterion(4, "gradient unbiasedness", [&] { return from_check(risbeam::oracle::check_unbiasedness(64, seed + 3)); });
    criterion(5, "curvature bound", [&] { return from_check(risbeam::oracle::check_lipschitz(20, 100, seed + 4)); });
    criterion(6, "init monotonicity", [&] { return from_check(risbeam::oracle::check_init_monotone(100, seed + 5)); });
    criterion(7, "exhaustive outage", [&] { return from_check(risbeam::oracle::check_exhaustive_outage(100000, seed + 6)); });

    const fs::path sweep1 = root / "sweep_threads1";
    bool sweep1_ok = false;
    criterion(8, "desk-scale trend", [&] {
        fs::remove_all(sweep1);
        sweep1_ok = run_tool(tool, config, {"--mode", "sweep", "--threads", "1", "--out", sweep1.string()},
                             root / "sweep_threads1.log");
        if (!sweep1_ok)
            return Verdict{false, "sweep failed, see " + (root / "sweep_threads1.log").string()};
        return trend(sweep1);
    });

    criterion(9, "training traces", [&] {
        std::ostringstream os;
        bool ok = true;
        os << std::setprecision(4);
        for (const double p : {0.1, 0.9})
        {
            const fs::path dir = root / (p < 0.5 ? "trace_p01" : "trace_p09");
            fs::remove_all(dir);
            std::ostringstream set;
            set << "system.p_block=" << p;
            if (!run_tool(tool, config,
                          {"--mode", "train", "--out", dir.string(), "--set", set.str(), "train.geo_index=0",
                           "train.scheme=bsgd_robust"},
                          dir.string() + ".log"))
                return Verdict{false, "training failed at p=" + std::to_string(p)};
            const auto means = window_means(dir / "trace.csv", 500);
            if (means.size() < 2)
                return Verdict{false, "fewer than two windows at p=" + std::to_string(p)};
            const double first = means.front();
            const double last = means.back();
            const double var = variance(means);
            bool pass_p = false;
            if (p < 0.5)
                pass_p = last < 0.5 * first;
            else
                pass_p = last < first && var > 0.0;
            ok = ok && pass_p;
            os << "\n    p=" << p << " windows " << means.size() << " first " << first << " last " << last
               << " variance " << var << (pass_p ? "" : " (violated)");
        }
        return Verdict{ok, os.str()};
    });

    criterion(10, "reproducibility across thread counts", [&] {
        if (!sweep1_ok)
            return Verdict{false, "reference sweep missing"};
        const fs::path sweep4 = root / "sweep_threads4";
        fs::remove_all(sweep4);
        if (!run_tool(tool, config, {"--mode", "sweep", "--threads", "4", "--out", sweep4.string()},
                      root / "sweep_threads4.log"))
            return Verdict{false, "sweep with 4 threads failed"};
        std::string diff;
        for (const char *f : {"sweep_rows.csv", "sweep_summary.csv", "manifest.json"})
            if (slurp(sweep1 / f) != slurp(sweep4 / f) || slurp(sweep1 / f).empty())
                diff += std::string(" ") + f;
        if (!diff.empty())
            return Verdict{false, "differs:" + diff};
        return Verdict{true, "sweep_rows.csv, sweep_summary.csv and manifest.json identical"};
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
