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

#include "qob/nonmarkov.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "qob/errors.hpp"
#include "qob/parallel.hpp"

namespace qob {

namespace {

double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double sample_value(const std::vector<double>& distances) { return positive_variation(distances); }

}  // namespace

std::vector<StatePairSpec> sample_pair_specs(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<StatePairSpec> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double u = unit_draw(rng);
        const double v = unit_draw(rng);
        out.push_back({std::acos(1.0 - 2.0 * u), 2.0 * std::numbers::pi * v});
    }
    return out;
}

std::array<ComplexMatrix, 4> QubitDynamicalMap::basis_states() {
    const double h = 0.5;
    return {qubit::excited(), qubit::ground(),
            ComplexMatrix{{h, h}, {h, h}},
            ComplexMatrix{{h, cplx{0.0, -h}}, {cplx{0.0, h}, h}}};
}

std::array<double, 4> QubitDynamicalMap::basis_weights(const ComplexMatrix& rho0) {
    // rho = ½(I + x σx + y σy + z σz) and I = P_e + P_g, σz = P_e - P_g,
    // σx = 2P_+ - I, σy = 2P_{+i} - I.
    const double x = 2.0 * rho0(0, 1).real();
    const double y = -2.0 * rho0(0, 1).imag();
    const double z = (rho0(0, 0) - rho0(1, 1)).real();
    return {0.5 * (1.0 - x - y + z), 0.5 * (1.0 - x - y - z), x, y};
}

QubitDynamicalMap::QubitDynamicalMap(const SystemParams& p, double t_c) {
    const auto basis = basis_states();
    auto runs = parallel_map(basis.size(), [&](std::size_t k) {
        return integrate(init_hierarchy(basis[k], p), t_c, p.dt, 1, true);
    });
    times_ = runs[0].times;
    for (std::size_t k = 0; k < basis.size(); ++k) images_[k] = std::move(runs[k].reduced_states);
}

ComplexMatrix QubitDynamicalMap::apply(const ComplexMatrix& rho0, std::size_t i) const {
    const auto w = basis_weights(rho0);
    ComplexMatrix out(2, 2);
    for (std::size_t k = 0; k < 4; ++k) out += images_[k].at(i) * w[k];
    return out;
}

std::vector<double> trace_distance_series(const QubitDynamicalMap& map, const StatePairSpec& spec) {
    const auto [rho1, rho2] = orthogonal_pair(spec);
    std::vector<double> d(map.times().size());
    for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = trace_distance(map.apply(rho1, i), map.apply(rho2, i));
    return d;
}

NonMarkovReport nonmarkovianity(const SystemParams& p, double t_c, int n_samples,
                                std::uint64_t seed, PairEvolution method) {
    if (!(t_c > 0.0)) throw InvalidParamsError("nonmarkovianity: t_c must be > 0");
    if (n_samples < 1) throw InvalidParamsError("nonmarkovianity: n_samples must be >= 1");
    p.validate();

    NonMarkovReport report;
    report.t_c = t_c;
    report.seed = seed;
    report.depth = p.hierarchy_depth;
    const auto specs = sample_pair_specs(static_cast<std::size_t>(n_samples), seed);

    std::vector<double> values;
    if (method == PairEvolution::DynamicalMap) {
        const QubitDynamicalMap map(p, t_c);
        values.reserve(specs.size());
        for (const auto& s : specs) values.push_back(sample_value(trace_distance_series(map, s)));
    } else {
        values = parallel_map(specs.size(), [&](std::size_t k) {
            const auto [rho1, rho2] = orthogonal_pair(specs[k]);
            const auto a = integrate(init_hierarchy(rho1, p), t_c, p.dt, 1, true);
            const auto b = integrate(init_hierarchy(rho2, p), t_c, p.dt, 1, true);
            std::vector<double> d(a.size());
            for (std::size_t i = 0; i < d.size(); ++i)
                d[i] = trace_distance(a.reduced_states[i], b.reduced_states[i]);
            return sample_value(d);
        });
    }

    report.samples.reserve(specs.size());
    for (std::size_t k = 0; k < specs.size(); ++k) {
        report.samples.push_back({specs[k], values[k]});
        if (k == 0 || values[k] > report.best.value) report.best = report.samples.back();
    }
    return report;
}

}  // namespace qob
