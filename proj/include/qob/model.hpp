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

// model.hpp: qubit-oscillator Hamiltonian, bath coupling operator and
// initial states.
//
// Units: hbar = 1, frequencies and times are dimensionless simulation
// units with (frequency unit)·(time unit) = 1. Qubit basis index 0 is the
// excited state |e> (sigma_z = +1), index 1 is |g>.

#pragma once

#include <cstddef>
#include <vector>

#include "qob/linalg.hpp"

namespace qob {

struct SystemParams {
    double epsilon = 0.0;  // qubit bias
    double delta = 0.5;    // tunneling
    double omega0 = 1.0;   // oscillator frequency
    double g0 = 0.0;       // qubit-oscillator coupling
    double alpha = 2.0;    // coherent displacement of the oscillator
    double gamma = 0.5;    // qubit-bath coupling strength
    double lambda = 0.25;  // Lorentzian width
    int n_osc = 8;         // oscillator Fock truncation
    int hierarchy_depth = 8;
    double dt = 0.01;
    double t_max = 100.0;

    /// g0 / omega0; zero when the oscillator is decoupled.
    double zeta() const noexcept { return g0 == 0.0 ? 0.0 : g0 / omega0; }
    std::size_t joint_dim() const noexcept { return 2 * static_cast<std::size_t>(n_osc); }

    /// Throws InvalidParamsError when an invariant does not hold.
    void validate() const;

    bool operator==(const SystemParams&) const = default;
};

ComplexMatrix annihilation(int n_osc);

/// ½ε σz + ½Δ σx + ω0 a†a + g0 σx (a† + a) on qubit ⊗ oscillator.
ComplexMatrix build_h_qo(const SystemParams& p);

/// σz ⊗ I(n_osc): the system side of the qubit-bath coupling.
ComplexMatrix build_system_coupling(int n_osc);

/// Raw truncated coherent amplitudes e^{-α²/2} αⁿ/√(n!), n < n_osc, not renormalized.
std::vector<double> coherent_amplitudes(double alpha, int n_osc);

/// |α><α| truncated to n_osc levels and renormalized to unit trace.
ComplexMatrix coherent_state(double alpha, int n_osc);

/// Throws InvalidStateError unless rho is a 2×2 density matrix within 1e-10.
void validate_qubit_state(const ComplexMatrix& rho);

/// qubit_state ⊗ |α><α|.
ComplexMatrix build_initial_joint_state(const ComplexMatrix& qubit_state, const SystemParams& p);

namespace qubit {
ComplexMatrix excited();  // |e><e|
ComplexMatrix ground();   // |g><g|
}  // namespace qubit

}  // namespace qob
