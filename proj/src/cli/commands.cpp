// Copyright 2026 The qobath Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qob/cli/commands.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qob/analytic.hpp"
#include "qob/heom.hpp"
#include "qob/nonmarkov.hpp"
#include "qob/parallel.hpp"

namespace qob::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

void check_run_config(const RunConfig& cfg) {
    cfg.params.validate();
    if (cfg.record_every < 1) throw ConfigError("record_every must be >= 1");
    if (cfg.n_samples < 1) throw ConfigError("n_samples must be >= 1");
    if (!(cfg.t_c > 0.0)) throw ConfigError("t_c must be > 0");
    if (!(cfg.converge_tol > 0.0)) throw ConfigError("converge_tol must be > 0");
}

// Hierarchy depth to use for a run over [0, horizon].
SystemParams resolve_depth(const RunConfig& cfg, double horizon) {
    SystemParams p = cfg.params;
    if (!cfg.auto_depth) return p;
    p.t_max = horizon;
    p.hierarchy_depth = converge_depth(p, qubit::excited(), cfg.converge_tol, {0, 2, 30, 10}).depth;
    return p;
}

Trajectory run_dynamics(const RunConfig& cfg, SystemParams& resolved) {
    const SystemParams& p = cfg.params;
    if (cfg.auto_depth) {
        auto r = converge_depth(p, qubit::excited(), cfg.converge_tol, {0, 2, 30, cfg.record_every});
        resolved = p;
        resolved.hierarchy_depth = r.depth;
        return std::move(r.trajectory);
    }
    resolved = p;
    return integrate(init_hierarchy(qubit::excited(), p), p.t_max, p.dt, cfg.record_every);
}

ordered_json sample_json(const NonMarkovSample& s) {
    return {{"theta", s.spec.theta}, {"phi", s.spec.phi}, {"N", s.value}};
}

ordered_json report_json(const NonMarkovReport& r) {
    ordered_json samples = ordered_json::array();
    for (const auto& s : r.samples) samples.push_back(sample_json(s));
    return {{"N", r.best.value},
            {"depth", r.depth},
            {"t_c", r.t_c},
            {"seed", r.seed},
            {"method", "dynamical_map"},
            {"best", sample_json(r.best)},
            {"samples", std::move(samples)}};
}

NonMarkovReport run_nonmarkov(const RunConfig& cfg) {
    const SystemParams p = resolve_depth(cfg, cfg.t_c);
    return nonmarkovianity(p, cfg.t_c, cfg.n_samples, cfg.seed);
}

}  // namespace

ordered_json config_json(const RunConfig& cfg) {
    const SystemParams& p = cfg.params;
    ordered_json derived = {{"zeta", p.zeta()}};
    derived["lambda_over_gamma"] = p.gamma > 0.0 ? ordered_json(p.lambda / p.gamma) : ordered_json();
    derived["eta"] = p.g0 == 0.0 ? 1.0 : renormalization_eta(p.g0, p.omega0);

    ordered_json j;
    j["scenario"] = cfg.scenario ? ordered_json(*cfg.scenario) : ordered_json();
    j["epsilon"] = p.epsilon;
    j["delta"] = p.delta;
    j["omega0"] = p.omega0;
    j["g0"] = p.g0;
    j["alpha"] = p.alpha;
    j["gamma"] = p.gamma;
    j["lambda"] = p.lambda;
    j["n_osc"] = p.n_osc;
    j["depth"] = p.hierarchy_depth;
    j["auto_depth"] = cfg.auto_depth;
    j["converge_tol"] = cfg.converge_tol;
    j["dt"] = p.dt;
    j["t_max"] = p.t_max;
    j["record_every"] = cfg.record_every;
    j["n_samples"] = cfg.n_samples;
    j["seed"] = cfg.seed;
    j["t_c"] = cfg.t_c;
    j["simulate"] = cfg.simulate;
    j["derived"] = std::move(derived);
    return j;
}

double long_time_mean(const Trajectory& tr, double t_max) {
    return window_mean(tr, 0.8 * t_max, t_max);
}

void cmd_dynamics(const RunConfig& cfg, std::ostream& out) {
    check_run_config(cfg);
    SystemParams resolved;
    const Trajectory tr = run_dynamics(cfg, resolved);
    RunConfig used = cfg;
    used.params = resolved;

    out << "# qobath dynamics, initial qubit state |e>\n";
    out << "# config: " << config_json(used).dump() << "\n";
    out << "t,sigma_z,trace_err,purity\n";
    char line[160];
    for (std::size_t i = 0; i < tr.size(); ++i) {
        std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g\n", tr.times[i], tr.sigma_z[i],
                      tr.trace_err[i], tr.purity[i]);
        out << line;
    }
}

void cmd_nonmarkov(const RunConfig& cfg, std::ostream& out) {
    check_run_config(cfg);
    const NonMarkovReport r = run_nonmarkov(cfg);
    RunConfig used = cfg;
    used.params.hierarchy_depth = r.depth;
    ordered_json j = {{"command", "nonmarkov"}, {"config", config_json(used)}};
    j.update(report_json(r));
    out << j.dump(2) << "\n";
}

void cmd_steady(const RunConfig& cfg, std::ostream& out) {
    check_run_config(cfg);
    const SystemParams& p = cfg.params;
    const double eta = p.g0 == 0.0 ? 1.0 : renormalization_eta(p.g0, p.omega0);
    const double prediction = steady_population(p);

    RunConfig used = cfg;
    ordered_json j = {{"command", "steady"}};
    ordered_json result = {{"zeta", p.zeta()}, {"eta", eta}, {"prediction", prediction}};
    if (cfg.simulate) {
        SystemParams resolved;
        const Trajectory tr = run_dynamics(cfg, resolved);
        used.params = resolved;
        const double mean = long_time_mean(tr, p.t_max);
        result["window"] = {0.8 * p.t_max, p.t_max};
        result["simulated_mean"] = mean;
        result["gap"] = std::abs(mean - prediction);
    }
    j["config"] = config_json(used);
    j.update(result);
    out << j.dump(2) << "\n";
}

void cmd_sweep(const RunConfig& cfg, const SweepSpec& sweep, std::ostream& out) {
    if (sweep.values.empty()) throw ConfigError("sweep needs at least one value");
    std::vector<RunConfig> points;
    for (const auto& v : sweep.values) {
        RunConfig c = cfg;
        apply_overrides(c, {{sweep.key, v}});
        check_run_config(c);
        points.push_back(std::move(c));
    }
    const auto reports =
        parallel_map(points.size(), [&](std::size_t k) { return run_nonmarkov(points[k]); });

    ordered_json arr = ordered_json::array();
    bool non_increasing = true;
    for (std::size_t k = 0; k < points.size(); ++k) {
        RunConfig used = points[k];
        used.params.hierarchy_depth = reports[k].depth;
        arr.push_back({{"value", sweep.values[k]},
                       {"N", reports[k].best.value},
                       {"best", sample_json(reports[k].best)},
                       {"config", config_json(used)}});
        if (k > 0 && reports[k].best.value > reports[k - 1].best.value) non_increasing = false;
    }
    ordered_json j = {{"command", "sweep"},
                      {"config", config_json(cfg)},
                      {"key", sweep.key},
                      {"points", std::move(arr)},
                      {"non_increasing", non_increasing}};
    out << j.dump(2) << "\n";
}

namespace {

struct Flags {
    std::string scenario;
    std::string config_path;
    std::string out_path;
    std::vector<std::string> sets;
    std::optional<double> t_max, dt, t_c;
    std::optional<std::string> depth;
    std::optional<int> n_osc, samples;
    std::optional<long long> seed;
    bool simulate = false;
    std::string sweep_key = SweepSpec{}.key;
    std::vector<std::string> sweep_values = SweepSpec{}.values;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--scenario", f.scenario, "named parameter preset");
    sub->add_option("--config", f.config_path, "flat JSON file of key: value pairs");
    sub->add_option("--out", f.out_path, "output file (default stdout)");
    sub->add_option("--set", f.sets, "key=value override (repeatable)")->take_all();
    sub->add_option("--t-max", f.t_max, "integration horizon");
    sub->add_option("--dt", f.dt, "RK4 step");
    sub->add_option("--depth", f.depth, "hierarchy depth L, or 'auto'");
    sub->add_option("--n-osc", f.n_osc, "oscillator Fock truncation");
    sub->add_option("--seed", f.seed, "sampling seed");
    sub->add_option("--samples", f.samples, "number of random state pairs");
    sub->add_option("--t-c", f.t_c, "non-Markovianity window");
}

std::string number_text(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

RunConfig resolve(const Flags& f) {
    std::optional<ConfigFile> file;
    if (!f.config_path.empty()) file = read_config_file(f.config_path);

    RunConfig cfg;
    if (!f.scenario.empty())
        cfg = scenario_preset(f.scenario);
    else if (file && file->scenario)
        cfg = scenario_preset(*file->scenario);

    std::vector<std::pair<std::string, std::string>> kv;
    if (file) kv = file->entries;
    for (const auto& s : f.sets) kv.push_back(parse_assignment(s));
    if (f.t_max) kv.emplace_back("t_max", number_text(*f.t_max));
    if (f.dt) kv.emplace_back("dt", number_text(*f.dt));
    if (f.depth) kv.emplace_back("depth", *f.depth);
    if (f.n_osc) kv.emplace_back("n_osc", std::to_string(*f.n_osc));
    if (f.seed) kv.emplace_back("seed", std::to_string(*f.seed));
    if (f.samples) kv.emplace_back("n_samples", std::to_string(*f.samples));
    if (f.t_c) kv.emplace_back("t_c", number_text(*f.t_c));
    if (f.simulate) kv.emplace_back("simulate", "true");
    apply_overrides(cfg, kv);
    return cfg;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"qobath: qubit-oscillator-bath dynamics with hierarchical equations of motion"};
    app.require_subcommand(1);
    Flags f;
    auto* dyn = app.add_subcommand("dynamics", "<sigma_z(t)> trajectory as CSV");
    auto* nm = app.add_subcommand("nonmarkov", "sampled non-Markovianity as JSON");
    auto* steady = app.add_subcommand("steady", "steady-state prediction (and HEOM check) as JSON");
    auto* sweep = app.add_subcommand("sweep", "non-Markovianity over a parameter list as JSON");
    auto* list = app.add_subcommand("scenarios", "list scenario presets");
    for (auto* sub : {dyn, nm, steady, sweep}) add_common(sub, f);
    steady->add_flag("--simulate", f.simulate, "also run HEOM and report the long-time mean");
    sweep->add_option("--param", f.sweep_key, "key to sweep");
    sweep->add_option("--values", f.sweep_values, "comma-separated values")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (list->parsed()) {
            for (const auto& n : scenario_names()) out << n << "\n";
            return 0;
        }
        const RunConfig cfg = resolve(f);
        std::ofstream file;
        if (!f.out_path.empty()) {
            file.open(f.out_path, std::ios::binary | std::ios::trunc);
            if (!file) throw ConfigError("cannot write to '" + f.out_path + "'");
        }
        std::ostringstream buf;
        if (dyn->parsed()) cmd_dynamics(cfg, buf);
        if (nm->parsed()) cmd_nonmarkov(cfg, buf);
        if (steady->parsed()) cmd_steady(cfg, buf);
        if (sweep->parsed()) cmd_sweep(cfg, {f.sweep_key, f.sweep_values}, buf);
        (f.out_path.empty() ? out : file) << buf.str();
        if (!f.out_path.empty() && !file.flush())
            throw ConfigError("write to '" + f.out_path + "' failed");
        return 0;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidParamsError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidStateError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InvariantBreachError& e) {
        err << "invariant breach: " << e.what() << "\n";
        return 3;
    } catch (const ConvergenceError& e) {
        err << "convergence failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace qob::cli
