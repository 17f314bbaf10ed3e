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

#include "qob/model.hpp"

#include <cmath>
#include <sstream>

#include "qob/errors.hpp"

namespace qob {

void SystemParams::validate() const {
    std::ostringstream os;
    if (g0 != 0.0 && !(omega0 > 0.0)) os << "omega0 must be > 0 when g0 != 0; ";
    if (!(gamma >= 0.0)) os << "gamma must be >= 0; ";
    if (!(lambda > 0.0)) os << "lambda must be > 0; ";
    if (n_osc < 1) os << "n_osc must be >= 1; ";
    if (hierarchy_depth < 0) os << "hierarchy_depth must be >= 0; ";
    if (!(dt > 0.0)) os << "dt must be > 0; ";
    if (!(t_max >= 0.0)) os << "t_max must be >= 0; ";
    for (double v : {epsilon, delta, omega0, g0, alpha, gamma, lambda, dt, t_max})
        if (!std::isfinite(v)) {
            os << "parameters must be finite; ";
            break;
        }
    const auto msg = os.str();
    if (!msg.empty()) throw InvalidParamsError("invalid SystemParams: " + msg);
}

ComplexMatrix annihilation(int n_osc) {
    ComplexMatrix a(n_osc, n_osc);
    for (int n = 1; n < n_osc; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

ComplexMatrix build_h_qo(const SystemParams& p) {
    const auto n = static_cast<std::size_t>(p.n_osc);
    const ComplexMatrix a = annihilation(p.n_osc);
    const ComplexMatrix number = a.adjoint() * a;
    const ComplexMatrix position = a.adjoint() + a;
    const ComplexMatrix id_osc = ComplexMatrix::identity(n);

    // Every term is a real symmetric matrix, so the sum is exactly Hermitian.
    ComplexMatrix h = kron(pauli::z(), id_osc) * (0.5 * p.epsilon);
    h += kron(pauli::x(), id_osc) * (0.5 * p.delta);
    h += kron(pauli::identity(), number) * p.omega0;
    h += kron(pauli::x(), position) * p.g0;
    return h;
}

ComplexMatrix build_system_coupling(int n_osc) {
    if (n_osc < 1) throw InvalidParamsError("build_system_coupling: n_osc must be >= 1");
    return kron(pauli::z(), ComplexMatrix::identity(static_cast<std::size_t>(n_osc)));
}

std::vector<double> coherent_amplitudes(double alpha, int n_osc) {
    if (n_osc < 1) throw InvalidParamsError("coherent_amplitudes: n_osc must be >= 1");
    std::vector<double> c(static_cast<std::size_t>(n_osc));
    c[0] = std::exp(-0.5 * alpha * alpha);
    for (int n = 1; n < n_osc; ++n) c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    return c;
}

ComplexMatrix coherent_state(double alpha, int n_osc) {
    auto c = coherent_amplitudes(alpha, n_osc);
    double norm2 = 0.0;
    for (double v : c) norm2 += v * v;
    const double inv = 1.0 / std::sqrt(norm2);
    std::vector<cplx> v(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) v[k] = c[k] * inv;
    return ComplexMatrix::projector(v);
}

void validate_qubit_state(const ComplexMatrix& rho) {
    if (rho.rows() != 2 || rho.cols() != 2)
        throw InvalidStateError("qubit state must be 2x2");
    const double herm = hermiticity_error(rho);
    if (herm > kHermitianTol) {
        std::ostringstream os;
        os << "qubit state is not Hermitian (deviation " << herm << ")";
        throw InvalidStateError(os.str());
    }
    const cplx tr = rho.trace();
    if (std::abs(tr - 1.0) > 1e-10) {
        std::ostringstream os;
        os << "qubit state trace is " << tr << ", expected 1";
        throw InvalidStateError(os.str());
    }
    const auto ev = hermitian_eigenvalues(rho);
    if (ev.front() < -1e-10) {
        std::ostringstream os;
        os << "qubit state has negative eigenvalue " << ev.front();
        throw InvalidStateError(os.str());
    }
}

ComplexMatrix build_initial_joint_state(const ComplexMatrix& qubit_state, const SystemParams& p) {
    validate_qubit_state(qubit_state);
    return kron(qubit_state, coherent_state(p.alpha, p.n_osc));
}

namespace qubit {
ComplexMatrix excited() { return {{1.0, 0.0}, {0.0, 0.0}}; }
ComplexMatrix ground() { return {{0.0, 0.0}, {0.0, 1.0}}; }
}  // namespace qubit

}  // namespace qob
