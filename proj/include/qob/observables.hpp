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

// observables.hpp: reduced-qubit observables and the trace distance.

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qob/linalg.hpp"

namespace qob {

/// Time series of reduced-qubit observables. All vectors share one length;
/// reduced_states is either empty or the same length.
struct Trajectory {
    std::vector<double> times;
    std::vector<double> sigma_z;
    std::vector<double> trace_err;        // |tr rho_q - 1|
    std::vector<double> purity;           // tr rho_q^2
    std::vector<double> hermiticity_err;  // max |rho_q - rho_q^dagger|
    std::vector<ComplexMatrix> reduced_states;

    std::size_t size() const noexcept { return times.size(); }
    bool empty() const noexcept { return times.empty(); }

    void record(double t, const ComplexMatrix& rho_q, bool keep_state);

    bool operator==(const Trajectory&) const = default;
};

/// Re tr(rho σz). The imaginary part must stay below 1e-9.
double population_difference(const ComplexMatrix& rho_q);

/// ½ Σ|λ_i(rho1 - rho2)|.
double trace_distance(const ComplexMatrix& rho1, const ComplexMatrix& rho2);

/// Bloch angles of the pure state cos(θ/2)|e> + e^{iφ} sin(θ/2)|g>.
struct StatePairSpec {
    double theta = 0.0;  // [0, π]
    double phi = 0.0;    // [0, 2π]
    bool operator==(const StatePairSpec&) const = default;
};

/// Projectors onto |φ> and its orthogonal partner
/// sin(θ/2)|e> - e^{iφ} cos(θ/2)|g>.
std::pair<ComplexMatrix, ComplexMatrix> orthogonal_pair(const StatePairSpec& spec);

/// Σ_i max(0, v[i+1] - v[i]): the exact integral of the positive part of the
/// rate of a piecewise-linear interpolant through v.
double positive_variation(const std::vector<double>& v);

/// max - min of values whose time lies in [t_lo, t_hi].
double window_amplitude(const Trajectory& tr, double t_lo, double t_hi);

/// Mean of sigma_z over t in [t_lo, t_hi].
double window_mean(const Trajectory& tr, double t_lo, double t_hi);

}  // namespace qob
