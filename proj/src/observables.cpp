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

#include "qob/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qob/errors.hpp"

namespace qob {

void Trajectory::record(double t, const ComplexMatrix& rho_q, bool keep_state) {
    times.push_back(t);
    // Imaginary drift here is policed by the integrator's invariant checks.
    sigma_z.push_back((rho_q(0, 0) - rho_q(1, 1)).real());
    trace_err.push_back(std::abs(rho_q.trace() - 1.0));
    purity.push_back((rho_q * rho_q).trace().real());
    hermiticity_err.push_back(hermiticity_error(rho_q));
    if (keep_state) reduced_states.push_back(rho_q);
}

double population_difference(const ComplexMatrix& rho_q) {
    if (rho_q.rows() != 2 || rho_q.cols() != 2)
        throw DimensionError("population_difference: expected a 2x2 matrix");
    const cplx v = rho_q(0, 0) - rho_q(1, 1);
    if (std::abs(v.imag()) >= 1e-9) {
        std::ostringstream os;
        os << "population_difference: imaginary part " << v.imag() << " exceeds 1e-9";
        throw InvalidStateError(os.str());
    }
    return v.real();
}

double trace_distance(const ComplexMatrix& rho1, const ComplexMatrix& rho2) {
    double s = 0.0;
    for (double ev : hermitian_eigenvalues(rho1 - rho2)) s += std::abs(ev);
    return 0.5 * s;
}

std::pair<ComplexMatrix, ComplexMatrix> orthogonal_pair(const StatePairSpec& spec) {
    constexpr double pi = std::numbers::pi;
    if (!(spec.theta >= 0.0 && spec.theta <= pi) || !(spec.phi >= 0.0 && spec.phi <= 2.0 * pi)) {
        std::ostringstream os;
        os << "orthogonal_pair: angles out of range (theta=" << spec.theta << ", phi=" << spec.phi
           << ")";
        throw InvalidStateError(os.str());
    }
    const double c = std::cos(0.5 * spec.theta);
    const double s = std::sin(0.5 * spec.theta);
    const cplx ph = std::polar(1.0, spec.phi);
    const std::vector<cplx> v1{c, ph * s};
    const std::vector<cplx> v2{s, -ph * c};
    return {ComplexMatrix::projector(v1), ComplexMatrix::projector(v2)};
}

double positive_variation(const std::vector<double>& v) {
    double acc = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i) acc += std::max(0.0, v[i] - v[i - 1]);
    return acc;
}

double window_amplitude(const Trajectory& tr, double t_lo, double t_hi) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < tr.size(); ++i) {
        if (tr.times[i] < t_lo - 1e-12 || tr.times[i] > t_hi + 1e-12) continue;
        lo = std::min(lo, tr.sigma_z[i]);
        hi = std::max(hi, tr.sigma_z[i]);
    }
    if (hi < lo) throw DimensionError("window_amplitude: no samples inside the window");
    return hi - lo;
}

double window_mean(const Trajectory& tr, double t_lo, double t_hi) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < tr.size(); ++i) {
        if (tr.times[i] < t_lo - 1e-12 || tr.times[i] > t_hi + 1e-12) continue;
        sum += tr.sigma_z[i];
        ++n;
    }
    if (n == 0) throw DimensionError("window_mean: no samples inside the window");
    return sum / static_cast<double>(n);
}

}  // namespace qob
