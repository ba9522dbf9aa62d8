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

#include <risbeam/io.hpp>
#include <risbeam/rng.hpp>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace risbeam::cli
{

using nlohmann::json;

std::string mode_name(Mode mode)
{
    switch (mode)
    {
    case Mode::train:
        return "train";
    case Mode::eval:
        return "eval";
    case Mode::sweep:
        return "sweep";
    case Mode::selftest:
        return "selftest";
    }
    return "unknown";
}

Mode mode_from_name(const std::string &name)
{
    for (Mode m : {Mode::train, Mode::eval, Mode::sweep, Mode::selftest})
        if (mode_name(m) == name)
            return m;
    throw ConfigError("mode", "expected one of train, eval, sweep, selftest; got '" + name + "'");
}

SweepOptions ExperimentConfig::sweep_options() const
{
    SweepOptions o;
    o.p_grid = p_grid;
    o.n_geo = n_geo;
    o.n_trials = n_trials;
    o.train = train;
    o.normalize_noise = normalize_noise;
    o.lipschitz_cap = lipschitz_cap;
    o.schemes = schemes;
    o.master_seed = seed;
    o.threads = threads;
    return o;
}

namespace
{

// Read view of one JSON object that remembers which keys were consumed so
// leftovers can be reported as unknown.
class Section
{
  public:
    Section(const json &j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
            throw ConfigError(path_.empty() ? "<document>" : path_, "expected an object");
    }

    std::string key(const std::string &k) const { return path_.empty() ? k : path_ + "." + k; }

    bool has(const std::string &k)
    {
        seen_.insert(k);
        return j_.contains(k);
    }

    const json &raw(const std::string &k)
    {
        seen_.insert(k);
        return j_.at(k);
    }

    template <class T>
    void read(const std::string &k, T &dst)
    {
        if (!has(k))
            return;
        try
        {
            dst = j_.at(k).get<T>();
        }
        catch (const json::exception &)
        {
            throw ConfigError(key(k), "wrong type");
        }
    }

    Section sub(const std::string &k) { return Section(raw(k), key(k)); }

    void finish() const
    {
        for (const auto &item : j_.items())
            if (!seen_.count(item.key()))
                throw ConfigError(key(item.key()), "unknown key");
    }

  private:
    const json &j_;
    std::string path_;
    std::set<std::string> seen_;
};

// Scalar broadcast to n entries, or an array of exactly n numbers.
std::vector<double> per_user(const json &v, int n, const std::string &key)
{
    if (v.is_number())
        return std::vector<double>(static_cast<std::size_t>(n), v.get<double>());
    if (!v.is_array() || static_cast<int>(v.size()) != n)
        throw ConfigError(key, "expected a number or an array of " + std::to_string(n) + " numbers");
    std::vector<double> out;
    for (const auto &x : v)
    {
        if (!x.is_number())
            throw ConfigError(key, "expected numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

Point2 point(const json &v, const std::string &key)
{
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ConfigError(key, "expected [x, y]");
    return {v[0].get<double>(), v[1].get<double>()};
}

void read_pathloss(Section s, PathLossParams &p)
{
    s.read("c0_db", p.c0_db);
    s.read("exponent", p.exponent);
    s.read("shadowing_std_db", p.shadowing_std_db);
    s.finish();
}

void read_system(Section s, SystemConfig &c)
{
    s.read("n_tx", c.n_tx);
    s.read("n_rf", c.n_rf);
    s.read("n_users", c.n_users);
    s.read("n_ris", c.n_ris);
    s.read("m_rows", c.m_rows);
    s.read("m_cols", c.m_cols);
    s.read("p_max_w", c.p_max);
    s.read("epsilon", c.epsilon);
    s.read("n_paths_bu", c.n_paths_bu);
    s.read("n_paths_bi", c.n_paths_bi);
    s.read("n_paths_iu", c.n_paths_iu);
    if (c.n_users < 1)
        throw ConfigError(s.key("n_users"), "must be >= 1");
    if (c.n_paths_bu < 1)
        throw ConfigError(s.key("n_paths_bu"), "must be >= 1");

    const bool dbm = s.has("noise_dbm");
    const bool watts = s.has("noise_power_w");
    if (dbm && watts)
        throw ConfigError(s.key("noise_dbm"), "give either noise_dbm or noise_power_w, not both");
    if (dbm)
    {
        c.noise_power = per_user(s.raw("noise_dbm"), c.n_users, s.key("noise_dbm"));
        for (double &v : c.noise_power)
            v = dbm_to_watts(v);
    }
    else if (watts)
        c.noise_power = per_user(s.raw("noise_power_w"), c.n_users, s.key("noise_power_w"));
    else
        c.noise_power.resize(static_cast<std::size_t>(c.n_users), c.noise_power.empty() ? 0.0 : c.noise_power[0]);

    const bool sinr = s.has("sinr_target");
    const bool rate = s.has("rate_target_bps_hz");
    if (sinr && rate)
        throw ConfigError(s.key("sinr_target"), "give either sinr_target or rate_target_bps_hz, not both");
    if (sinr)
        c.sinr_targets = per_user(s.raw("sinr_target"), c.n_users, s.key("sinr_target"));
    else if (rate)
    {
        c.sinr_targets = per_user(s.raw("rate_target_bps_hz"), c.n_users, s.key("rate_target_bps_hz"));
        for (double &v : c.sinr_targets)
            v = sinr_for_rate(v);
    }
    else
        c.sinr_targets.resize(static_cast<std::size_t>(c.n_users), c.sinr_targets.empty() ? 1.0 : c.sinr_targets[0]);

    c.set_uniform_blockage(c.p_block.size() > 0 ? c.p_block(0, 0) : 0.5);
    if (s.has("p_block"))
    {
        const json &v = s.raw("p_block");
        const std::string key = s.key("p_block");
        if (v.is_number())
            c.set_uniform_blockage(v.get<double>());
        else
        {
            if (!v.is_array() || static_cast<int>(v.size()) != c.n_users)
                throw ConfigError(key, "expected a number or a K x L_BU matrix");
            for (int k = 0; k < c.n_users; ++k)
            {
                const auto row = per_user(v[static_cast<std::size_t>(k)], c.n_paths_bu, key);
                for (int l = 0; l < c.n_paths_bu; ++l)
                    c.p_block(k, l) = row[static_cast<std::size_t>(l)];
            }
        }
    }

    if (s.has("geometry"))
    {
        Section g = s.sub("geometry");
        if (g.has("bs"))
            c.deployment.bs = point(g.raw("bs"), g.key("bs"));
        if (g.has("ris"))
        {
            const json &v = g.raw("ris");
            if (!v.is_array())
                throw ConfigError(g.key("ris"), "expected a list of [x, y]");
            c.deployment.ris.clear();
            for (const auto &p : v)
                c.deployment.ris.push_back(point(p, g.key("ris")));
        }
        if (g.has("user_center"))
            c.deployment.user_center = point(g.raw("user_center"), g.key("user_center"));
        g.read("user_radius", c.deployment.user_radius);
        g.finish();
    }
    if (s.has("pathloss"))
    {
        Section p = s.sub("pathloss");
        if (p.has("bu"))
            read_pathloss(p.sub("bu"), c.pathloss_bu);
        if (p.has("bi"))
            read_pathloss(p.sub("bi"), c.pathloss_bi);
        if (p.has("iu"))
            read_pathloss(p.sub("iu"), c.pathloss_iu);
        p.finish();
    }
    s.finish();

    try
    {
        c.validate();
    }
    catch (const ConfigError &e)
    {
        throw ConfigError(s.key(e.key()), e.message());
    }
}

void read_train(Section s, ExperimentConfig &x)
{
    if (s.has("schedule"))
    {
        Section sc = s.sub("schedule");
        std::string kind = x.train.schedule.kind == StepKind::constant ? "constant" : "inverse_t";
        sc.read("kind", kind);
        if (kind == "constant")
            x.train.schedule.kind = StepKind::constant;
        else if (kind == "inverse_t")
            x.train.schedule.kind = StepKind::inverse_t;
        else
            throw ConfigError(sc.key("kind"), "expected constant or inverse_t");
        sc.read("alpha0", x.train.schedule.alpha0);
        sc.read("tau", x.train.schedule.tau);
        sc.read("lipschitz_cap", x.lipschitz_cap);
        sc.finish();
        if (!(x.train.schedule.alpha0 > 0.0))
            throw ConfigError(sc.key("alpha0"), "must be > 0");
        if (!(x.train.schedule.tau > 0.0))
            throw ConfigError(sc.key("tau"), "must be > 0");
    }
    if (s.has("stop"))
    {
        Section st = s.sub("stop");
        st.read("t_max", x.train.stop.t_max);
        st.read("window", x.train.stop.window);
        st.read("tol", x.train.stop.tol);
        st.finish();
        if (x.train.stop.t_max < 1)
            throw ConfigError(st.key("t_max"), "must be >= 1");
        if (x.train.stop.window < 1)
            throw ConfigError(st.key("window"), "must be >= 1");
        if (!(x.train.stop.tol >= 0.0))
            throw ConfigError(st.key("tol"), "must be >= 0");
    }
    s.read("log_stride", x.train.log_stride);
    if (x.train.log_stride < 1)
        throw ConfigError(s.key("log_stride"), "must be >= 1");
    s.read("normalize_noise", x.normalize_noise);
    s.read("check_feasibility", x.train.check_feasibility);
    if (s.has("scheme"))
    {
        std::string name;
        s.read("scheme", name);
        try
        {
            x.scheme = scheme_from_name(name);
        }
        catch (const UsageError &e)
        {
            throw ConfigError(s.key("scheme"), e.what());
        }
    }
    s.read("geo_index", x.geo_index);
    if (x.geo_index < 0)
        throw ConfigError(s.key("geo_index"), "must be >= 0");
    s.finish();
}

void read_evaluation(Section s, ExperimentConfig &x)
{
    s.read("n_trials", x.n_trials);
    if (x.n_trials < 1)
        throw ConfigError(s.key("n_trials"), "must be >= 1");
    s.read("state", x.state_path);
    s.read("geometry", x.geometry_path);
    s.finish();
}

void read_sweep(Section s, ExperimentConfig &x)
{
    s.read("p_grid", x.p_grid);
    for (double p : x.p_grid)
        if (!(p >= 0.0 && p <= 1.0))
            throw ConfigError(s.key("p_grid"), "values must lie in [0, 1]");
    s.read("n_geo", x.n_geo);
    if (x.n_geo < 1)
        throw ConfigError(s.key("n_geo"), "must be >= 1");
    if (s.has("schemes"))
    {
        std::vector<std::string> names;
        s.read("schemes", names);
        if (names.empty())
            throw ConfigError(s.key("schemes"), "must not be empty");
        x.schemes.clear();
        for (const auto &n : names)
        {
            try
            {
                x.schemes.push_back(scheme_from_name(n));
            }
            catch (const UsageError &e)
            {
                throw ConfigError(s.key("schemes"), e.what());
            }
        }
    }
    s.finish();
}

// Sets doc[a][b]...[z] = value for "a.b...z=value".
void apply_override(json &doc, const std::string &assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError(assignment, "override must look like key=value");
    const std::string path = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    json value;
    try
    {
        value = json::parse(text);
    }
    catch (const json::exception &)
    {
        value = text;
    }
    json *node = &doc;
    std::stringstream ss(path);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.'))
        parts.push_back(part);
    for (std::size_t i = 0; i < parts.size(); ++i)
    {
        if (parts[i].empty())
            throw ConfigError(path, "empty key segment");
        if (node->is_null())
            *node = json::object();
        if (!node->is_object())
            throw ConfigError(path, "cannot descend into a non-object");
        if (i + 1 == parts.size())
            (*node)[parts[i]] = value;
        else
            node = &(*node)[parts[i]];
    }
}

json pathloss_json(const PathLossParams &p)
{
    return {{"c0_db", p.c0_db}, {"exponent", p.exponent}, {"shadowing_std_db", p.shadowing_std_db}};
}

json resolved_json(const ExperimentConfig &x)
{
    const SystemConfig &c = x.system;
    json p_block = json::array();
    for (Eigen::Index k = 0; k < c.p_block.rows(); ++k)
    {
        json row = json::array();
        for (Eigen::Index l = 0; l < c.p_block.cols(); ++l)
            row.push_back(c.p_block(k, l));
        p_block.push_back(row);
    }
    json ris = json::array();
    for (const auto &r : c.deployment.ris)
        ris.push_back({r.x, r.y});
    json schemes = json::array();
    for (Scheme s : x.schemes)
        schemes.push_back(scheme_name(s));

    json j;
    j["mode"] = mode_name(x.mode);
    j["seed"] = x.seed;
    j["output_dir"] = x.out_dir;
    j["system"] = {
        {"n_tx", c.n_tx},
        {"n_rf", c.n_rf},
        {"n_users", c.n_users},
        {"n_ris", c.n_ris},
        {"m_rows", c.m_rows},
        {"m_cols", c.m_cols},
        {"p_max_w", c.p_max},
        {"noise_power_w", c.noise_power},
        {"sinr_target", c.sinr_targets},
        {"epsilon", c.epsilon},
        {"p_block", p_block},
        {"n_paths_bu", c.n_paths_bu},
        {"n_paths_bi", c.n_paths_bi},
        {"n_paths_iu", c.n_paths_iu},
        {"geometry",
         {{"bs", {c.deployment.bs.x, c.deployment.bs.y}},
          {"ris", ris},
          {"user_center", {c.deployment.user_center.x, c.deployment.user_center.y}},
          {"user_radius", c.deployment.user_radius}}},
        {"pathloss",
         {{"bu", pathloss_json(c.pathloss_bu)}, {"bi", pathloss_json(c.pathloss_bi)},
          {"iu", pathloss_json(c.pathloss_iu)}}},
    };
    j["train"] = {
        {"schedule",
         {{"kind", x.train.schedule.kind == StepKind::constant ? "constant" : "inverse_t"},
          {"alpha0", x.train.schedule.alpha0},
          {"tau", x.train.schedule.tau},
          {"lipschitz_cap", x.lipschitz_cap}}},
        {"stop", {{"t_max", x.train.stop.t_max}, {"window", x.train.stop.window}, {"tol", x.train.stop.tol}}},
        {"log_stride", x.train.log_stride},
        {"normalize_noise", x.normalize_noise},
        {"check_feasibility", x.train.check_feasibility},
        {"scheme", scheme_name(x.scheme)},
        {"geo_index", x.geo_index},
    };
    j["evaluation"] = {{"n_trials", x.n_trials}, {"state", x.state_path}, {"geometry", x.geometry_path}};
    j["sweep"] = {{"p_grid", x.p_grid}, {"n_geo", x.n_geo}, {"schemes", schemes}};
    return j;
}

void write_manifest(const ExperimentConfig &x, const std::filesystem::path &dir)
{
    json noise_scale = json::array();
    for (double s2 : x.system.noise_power)
        noise_scale.push_back(x.normalize_noise ? std::sqrt(s2) : 1.0);
    json m;
    // Manifests of runs that differ only in where they were written compare equal.
    m["config"] = resolved_json(x);
    m["config"].erase("output_dir");
    m["version"] = version();
    m["seed"] = x.seed;
    // Channel gains of user k were divided by noise_scale[k] before training.
    m["noise_scale"] = noise_scale;
    auto out = open_output(dir / "manifest.json");
    out << m.dump(2) << '\n';
}

void write_eval_report(const EvalReport &r, std::ostream &out)
{
    const auto old = out.precision(17);
    out << "user,outage,eff_rate,n_trials,seed\n";
    for (std::size_t k = 0; k < r.outage.size(); ++k)
        out << k << ',' << r.outage[k] << ',' << r.eff_rate[k] << ',' << r.n_trials << ',' << r.seed << '\n';
    out << "all," << r.outage_avg << ',' << r.eff_sum_rate << ',' << r.n_trials << ',' << r.seed << '\n';
    out.precision(old);
}

int run_train(const ExperimentConfig &x, const std::filesystem::path &dir, std::ostream &log)
{
    Rng geo_rng = make_rng(sweep_geometry_seed(x.seed, x.geo_index));
    const GeometricChannel raw = gen_geometry(x.system, geo_rng);
    const Problem base = x.normalize_noise ? normalized_problem(x.system, raw) : Problem{x.system, raw};
    const Problem prob = scheme_problem(x.scheme, base);

    BsgdOptions opts = x.train;
    if (x.lipschitz_cap)
        opts.schedule.lipschitz_cap = lipschitz_constants(prob.config, prob.geo).l_total;

    Rng rng = make_rng(sweep_training_seed(x.seed, x.geo_index, x.scheme));
    log << "training " << scheme_name(x.scheme) << " on geometry " << x.geo_index << '\n';
    const BsgdResult res = train_scheme(x.scheme, base.config, base.geo, opts, rng);
    log << "  iterations " << res.trace.iterations << (res.trace.converged ? " (converged)" : " (t_max reached)")
        << '\n';

    const std::uint64_t eval_seed = sweep_evaluation_seed(x.seed, x.geo_index);
    const EvalReport rep = evaluate(res.state, prob.geo, prob.config, x.n_trials, eval_seed);
    log << "  outage " << rep.outage_avg << ", effective sum rate " << rep.eff_sum_rate << '\n';

    {
        auto out = open_output(dir / "trace.csv");
        write_trace_csv(res.trace, out);
    }
    {
        auto out = open_output(dir / "eval_report.csv");
        write_eval_report(rep, out);
    }
    {
        auto out = open_output(dir / "state.json");
        save_state(res.state, out);
    }
    {
        auto out = open_output(dir / "geometry.json");
        save_geometry(x.scheme == Scheme::non_ris ? without_ris(raw) : raw, out);
    }
    write_manifest(x, dir);
    return 0;
}

int run_eval(const ExperimentConfig &x, const std::filesystem::path &dir, std::ostream &log)
{
    if (x.state_path.empty() || x.geometry_path.empty())
        throw ConfigError("evaluation.state", "eval mode needs evaluation.state and evaluation.geometry");
    BeamformingState state;
    GeometricChannel geo;
    {
        auto in = open_input(x.state_path);
        state = load_state(in);
    }
    {
        auto in = open_input(x.geometry_path);
        geo = load_geometry(in);
    }
    SystemConfig cfg = x.system;
    if (geo.n_ris() == 0)
    {
        cfg.n_ris = 0;
        cfg.deployment.ris.clear();
    }
    const EvalReport rep = evaluate(state, geo, cfg, x.n_trials, derive_seed(x.seed, {stream::evaluation}));
    log << "outage " << rep.outage_avg << ", effective sum rate " << rep.eff_sum_rate << '\n';
    {
        auto out = open_output(dir / "eval_report.csv");
        write_eval_report(rep, out);
    }
    write_manifest(x, dir);
    return 0;
}

int run_sweep(const ExperimentConfig &x, const std::filesystem::path &dir, std::ostream &log)
{
    if (x.p_grid.empty())
        throw ConfigError("sweep.p_grid", "must not be empty in sweep mode");
    log << "sweep: " << x.p_grid.size() << " blockage probabilities x " << x.n_geo << " geometries x "
        << x.schemes.size() << " schemes\n";
    const SweepResult res = sweep_pblock(x.system, x.sweep_options());
    {
        auto out = open_output(dir / "sweep_rows.csv");
        write_sweep_rows_csv(res.rows, out);
    }
    {
        auto out = open_output(dir / "sweep_summary.csv");
        write_sweep_summary_csv(res.summary, out);
    }
    write_manifest(x, dir);
    for (const auto &s : res.summary)
        log << "  p=" << s.p_block << ' ' << scheme_name(s.scheme) << " outage " << s.outage_mean << " rate "
            << s.rate_mean << '\n';
    return 0;
}

} // namespace

ExperimentConfig parse_experiment(const std::string &document, const std::vector<std::string> &overrides)
{
    json doc;
    try
    {
        doc = json::parse(document);
    }
    catch (const json::exception &e)
    {
        throw ConfigError("<document>", e.what());
    }
    for (const auto &o : overrides)
        apply_override(doc, o);

    ExperimentConfig x;
    x.system = full_scale_scenario(0.5);
    Section top(doc, "");
    if (top.has("mode"))
    {
        std::string m;
        top.read("mode", m);
        x.mode = mode_from_name(m);
    }
    top.read("seed", x.seed);
    top.read("output_dir", x.out_dir);
    top.read("threads", x.threads);
    if (x.threads < 1)
        throw ConfigError("threads", "must be >= 1");
    if (top.has("system"))
        read_system(top.sub("system"), x.system);
    if (top.has("train"))
        read_train(top.sub("train"), x);
    if (top.has("evaluation"))
        read_evaluation(top.sub("evaluation"), x);
    if (top.has("sweep"))
        read_sweep(top.sub("sweep"), x);
    top.finish();
    return x;
}

ExperimentConfig load_experiment(const std::string &path, const std::vector<std::string> &overrides)
{
    auto in = open_input(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_experiment(ss.str(), overrides);
}

std::string experiment_to_json(const ExperimentConfig &config) { return resolved_json(config).dump(2) + "\n"; }

int run(const ExperimentConfig &config, std::ostream &log)
{
    if (config.mode == Mode::selftest)
        return selftest(config.seed, log) ? 0 : 1;

    const std::filesystem::path dir(config.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());

    switch (config.mode)
    {
    case Mode::train:
        return run_train(config, dir, log);
    case Mode::eval:
        return run_eval(config, dir, log);
    case Mode::sweep:
        return run_sweep(config, dir, log);
    case Mode::selftest:
        break;
    }
    return 0;
}

} // namespace risbeam::cli
