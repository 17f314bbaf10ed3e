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

#include "qob/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <limits>
#include <locale>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qob::cli {

namespace {

// fig2* presets: α=2, γ=0.5, Δ=0.5, g0=0.02, λ=0.25, t in [0, 100].
RunConfig fig2(double epsilon, double zeta) {
    RunConfig c;
    SystemParams& p = c.params;
    p.epsilon = epsilon;
    p.delta = 0.5;
    p.gamma = 0.5;
    p.lambda = 0.25;
    p.alpha = 2.0;
    p.n_osc = 8;
    p.hierarchy_depth = 6;
    p.t_max = 100.0;
    if (zeta == 0.0) {
        p.g0 = 0.0;
    } else {
        p.g0 = 0.02;
        p.omega0 = p.g0 / zeta;
    }
    return c;
}

// fig3* presets: γ=0.5, Δ=2, g0=0.02, ζ=0.1, α=2, λ = r γ.
RunConfig fig3(double epsilon, double r, int n_osc, double t_max) {
    RunConfig c;
    SystemParams& p = c.params;
    p.epsilon = epsilon;
    p.delta = 2.0;
    p.gamma = 0.5;
    p.lambda = r * p.gamma;
    p.g0 = 0.02;
    p.omega0 = 0.2;
    p.alpha = 2.0;
    p.n_osc = n_osc;
    p.hierarchy_depth = 8;
    p.t_max = t_max;
    c.t_c = 50.0;
    return c;
}

std::string format_number(double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << v;
    return os.str();
}

const std::map<std::string, RunConfig>& presets() {
    static const std::map<std::string, RunConfig> table = [] {
        std::map<std::string, RunConfig> t;
        for (double z : {0.0, 1.0, 4.0}) t["fig2a-zeta" + format_number(z)] = fig2(0.0, z);
        for (double z : {0.0, 2.0, 4.0}) t["fig2c-zeta" + format_number(z)] = fig2(0.1, z);
        // extra ζ points used for the steady-state comparison
        for (double z : {0.5, 1.0}) t["fig2c-zeta" + format_number(z)] = fig2(0.1, z);
        for (double r : {0.1, 0.3, 0.5, 1.0, 2.0}) {
            const std::string tag = "-lam" + format_number(r);
            t["fig3a" + tag] = fig3(0.0, r, 8, 100.0);
            t["fig3b" + tag] = fig3(0.3, r, 8, 100.0);
            t["fig3c" + tag] = fig3(0.0, r, 4, 50.0);
            t["fig3d" + tag] = fig3(0.3, r, 4, 50.0);
        }
        for (auto& [name, cfg] : t) cfg.scenario = name;
        return t;
    }();
    return table;
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError("value for '" + key + "' is not a number: '" + v + "'");
    return out;
}

long long to_integer(const std::string& key, const std::string& v) {
    long long out = 0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError("value for '" + key + "' is not an integer: '" + v + "'");
    return out;
}

int to_int(const std::string& key, const std::string& v) {
    const long long x = to_integer(key, v);
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
        throw ConfigError("value for '" + key + "' is out of range");
    return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("value for '" + key + "' is not a boolean: '" + v + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"epsilon", [](RunConfig& c, auto& k, auto& v) { c.params.epsilon = to_double(k, v); }},
        {"delta", [](RunConfig& c, auto& k, auto& v) { c.params.delta = to_double(k, v); }},
        {"omega0", [](RunConfig& c, auto& k, auto& v) { c.params.omega0 = to_double(k, v); }},
        {"g0", [](RunConfig& c, auto& k, auto& v) { c.params.g0 = to_double(k, v); }},
        {"alpha", [](RunConfig& c, auto& k, auto& v) { c.params.alpha = to_double(k, v); }},
        {"gamma", [](RunConfig& c, auto& k, auto& v) { c.params.gamma = to_double(k, v); }},
        {"lambda", [](RunConfig& c, auto& k, auto& v) { c.params.lambda = to_double(k, v); }},
        {"n_osc", [](RunConfig& c, auto& k, auto& v) { c.params.n_osc = to_int(k, v); }},
        {"depth",
         [](RunConfig& c, auto& k, auto& v) {
             if (v == "auto") {
                 c.auto_depth = true;
             } else {
                 c.auto_depth = false;
                 c.params.hierarchy_depth = to_int(k, v);
             }
         }},
        {"dt", [](RunConfig& c, auto& k, auto& v) { c.params.dt = to_double(k, v); }},
        {"t_max", [](RunConfig& c, auto& k, auto& v) { c.params.t_max = to_double(k, v); }},
        {"record_every", [](RunConfig& c, auto& k, auto& v) { c.record_every = to_int(k, v); }},
        {"n_samples", [](RunConfig& c, auto& k, auto& v) { c.n_samples = to_int(k, v); }},
        {"seed",
         [](RunConfig& c, auto& k, auto& v) {
             const long long s = to_integer(k, v);
             if (s < 0) throw ConfigError("seed must be non-negative");
             c.seed = static_cast<std::uint64_t>(s);
         }},
        {"t_c", [](RunConfig& c, auto& k, auto& v) { c.t_c = to_double(k, v); }},
        {"simulate", [](RunConfig& c, auto& k, auto& v) { c.simulate = to_bool(k, v); }},
        {"auto_depth", [](RunConfig& c, auto& k, auto& v) { c.auto_depth = to_bool(k, v); }},
        {"converge_tol", [](RunConfig& c, auto& k, auto& v) { c.converge_tol = to_double(k, v); }},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, _] : setters()) k.push_back(name);
        k.push_back("zeta");
        k.push_back("lambda_over_gamma");
        std::sort(k.begin(), k.end());
        return k;
    }();
    return keys;
}

std::vector<std::string> scenario_names() {
    std::vector<std::string> out;
    for (const auto& [name, _] : presets()) out.push_back(name);
    return out;
}

RunConfig scenario_preset(const std::string& name) {
    const auto it = presets().find(name);
    if (it == presets().end()) {
        std::string msg = "unknown scenario '" + name + "'; known:";
        for (const auto& n : scenario_names()) msg += " " + n;
        throw ConfigError(msg);
    }
    return it->second;
}

std::pair<std::string, std::string> parse_assignment(const std::string& s) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("expected key=value, got '" + s + "'");
    return {s.substr(0, eq), s.substr(eq + 1)};
}

void apply_overrides(RunConfig& cfg, const std::vector<std::pair<std::string, std::string>>& kv) {
    std::optional<double> zeta, ratio;
    for (const auto& [key, value] : kv) {
        if (key == "zeta") {
            zeta = to_double(key, value);
            continue;
        }
        if (key == "lambda_over_gamma") {
            ratio = to_double(key, value);
            continue;
        }
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError("unknown parameter '" + key + "'");
        it->second(cfg, key, value);
    }
    if (zeta) {
        if (*zeta < 0.0) throw ConfigError("zeta must be >= 0");
        if (*zeta == 0.0) {
            cfg.params.g0 = 0.0;
        } else {
            if (cfg.params.g0 == 0.0) throw ConfigError("zeta > 0 needs a non-zero g0");
            cfg.params.omega0 = cfg.params.g0 / *zeta;
        }
    }
    if (ratio) cfg.params.lambda = *ratio * cfg.params.gamma;
}

ConfigFile read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config file '" + path + "' must hold a JSON object");

    ConfigFile out;
    for (const auto& [key, value] : j.items()) {
        if (key == "derived") continue;  // informational block of emitted configs
        if (key == "scenario") {
            if (value.is_null()) continue;
            if (!value.is_string()) throw ConfigError("config 'scenario' must be a string");
            out.scenario = value.get<std::string>();
            continue;
        }
        std::string text;
        if (value.is_string()) {
            text = value.get<std::string>();
        } else if (value.is_boolean()) {
            text = value.get<bool>() ? "true" : "false";
        } else if (value.is_number_integer()) {
            text = std::to_string(value.get<long long>());
        } else if (value.is_number()) {
            // shortest round-trip form
            char buf[64];
            const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value.get<double>());
            text.assign(buf, ptr);
        } else {
            throw ConfigError("config key '" + key + "' must be a scalar");
        }
        out.entries.emplace_back(key, text);
    }
    return out;
}

}  // namespace qob::cli
