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

#include "qob/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qob/errors.hpp"

namespace qob {

double spectral_density(double omega, const SystemParams& p) {
    const double x = omega - p.delta;
    return p.gamma * p.lambda * p.lambda / (2.0 * std::numbers::pi * (x * x + p.lambda * p.lambda));
}

cplx bath_correlation(double t, const SystemParams& p) {
    if (!(t >= 0.0)) throw InvalidParamsError("bath_correlation: t must be >= 0");
    return 0.5 * p.gamma * p.lambda * std::exp(cplx{-p.lambda * t, -p.delta * t});
}

double renormalization_eta(double g0, double omega0) {
    if (!(omega0 > 0.0)) throw InvalidParamsError("renormalization_eta: omega0 must be > 0");
    const double zeta = g0 / omega0;
    return std::exp(-2.0 * zeta * zeta);
}

double steady_population(const SystemParams& p) {
    if (p.epsilon == 0.0 && p.delta == 0.0)
        throw InvalidParamsError("steady_population: epsilon and delta are both zero");
    const double eta = p.g0 == 0.0 ? 1.0 : renormalization_eta(p.g0, p.omega0);
    const double be = eta * p.epsilon;
    return -be / std::sqrt(p.delta * p.delta + be * be);
}

QuadratureResult correlation_by_quadrature(double t, const SystemParams& p, double tail_tol) {
    using std::numbers::pi;
    const double lam = p.lambda;
    const double c0 = 0.5 * p.gamma * lam;

    // Tail mass outside ±W around the peak: c0·(2/π)·(π/2 - atan(W/λ)).
    double w_over_lam = 200.0;
    if (c0 > tail_tol) w_over_lam = std::max(w_over_lam, 1.0 / std::tan(0.5 * pi * tail_tol / c0));
    const double half_width = w_over_lam * lam;
    const double tail_bound = c0 * (2.0 / pi) * (0.5 * pi - std::atan(w_over_lam));

    // Panels no wider than a half period of e^{-iωt} or one width λ, so a
    // single 31-point Kronrod rule per panel is accurate to roundoff.
    const double panel_max = t > 0.0 ? std::min(lam, pi / t) : lam;
    const auto n_panels = static_cast<long>(std::ceil(2.0 * half_width / panel_max));
    const double h = 2.0 * half_width / static_cast<double>(n_panels);

    using gk = boost::math::quadrature::gauss_kronrod<double, 31>;
    auto re = [&](double w) { return spectral_density(w, p) * std::cos(w * t); };
    auto im = [&](double w) { return -spectral_density(w, p) * std::sin(w * t); };

    double sum_re = 0.0, sum_im = 0.0;
    const double lo = p.delta - half_width;
    for (long k = 0; k < n_panels; ++k) {
        const double a = lo + static_cast<double>(k) * h;
        const double b = a + h;
        sum_re += gk::integrate(re, a, b, 0);
        sum_im += gk::integrate(im, a, b, 0);
    }
    return {cplx{sum_re, sum_im}, half_width, tail_bound};
}

}  // namespace qob
