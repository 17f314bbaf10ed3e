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

// analytic.hpp: closed forms for the Lorentzian bath and the polaron-dressed
// steady state of the biased qubit.

#pragma once

#include "qob/linalg.hpp"
#include "qob/model.hpp"

namespace qob {

/// J(ω) = (1/2π) γλ² / ((ω - Δ)² + λ²)
double spectral_density(double omega, const SystemParams& p);

/// C(t) = ½ γλ e^{-(λ + iΔ)t}, t >= 0.
cplx bath_correlation(double t, const SystemParams& p);

/// η = exp(-2 (g0/ω0)²). Throws InvalidParamsError for ω0 <= 0. In double
/// precision the result underflows to 0 once |g0/ω0| exceeds about 19.3.
double renormalization_eta(double g0, double omega0);

/// <σz(∞)> ≈ -ηε / sqrt(Δ² + (ηε)²). η is 1 when g0 == 0.
/// Throws InvalidParamsError when ε = Δ = 0.
double steady_population(const SystemParams& p);

struct QuadratureResult {
    cplx value;
    double half_width;  // window is [Δ - half_width, Δ + half_width]
    double tail_bound;  // |contribution of the discarded tails| <= tail_bound
};

/// ∫ J(ω) e^{-iωt} dω by adaptive Gauss–Kronrod over a finite window around
/// Δ. The window is at least ±200λ and is widened until the Lorentzian tail
/// mass outside it, C(0)·(2/π)·(π/2 - atan(W/λ)), is below tail_tol.
QuadratureResult correlation_by_quadrature(double t, const SystemParams& p,
                                           double tail_tol = 1e-6);

}  // namespace qob
