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

// nonmarkov.hpp: trace-distance non-Markovianity over a finite window,
// maximised over randomly sampled orthogonal pure qubit pairs.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qob/heom.hpp"
#include "qob/model.hpp"
#include "qob/observables.hpp"

namespace qob {

enum class PairEvolution {
    /// Evolve four Hermitian basis states once and assemble every pair from
    /// the (linear) dynamical map. Cost independent of the sample count.
    DynamicalMap,
    /// Integrate both members of every sampled pair through the hierarchy.
    Direct,
};

struct NonMarkovSample {
    StatePairSpec spec;
    double value = 0.0;  // accumulated positive variation of D(t), >= 0
    bool operator==(const NonMarkovSample&) const = default;
};

struct NonMarkovReport {
    std::vector<NonMarkovSample> samples;  // in sampling order
    NonMarkovSample best;
    double t_c = 0.0;
    std::uint64_t seed = 0;
    int depth = 0;  // hierarchy depth used

    bool operator==(const NonMarkovReport&) const = default;
};

/// Area-uniform Bloch-sphere angles: θ = arccos(1 - 2u), φ = 2πv, from a
/// seeded mt19937_64 with 53-bit mantissa draws (portable across stdlibs).
std::vector<StatePairSpec> sample_pair_specs(std::size_t n, std::uint64_t seed);

/// Reduced-qubit dynamics of four Hermitian basis inputs
/// {|e><e|, |g><g|, |+><+|, |+i><+i|} on a common grid.
class QubitDynamicalMap {
public:
    /// Evolves the basis states up to t_c with p.dt, recording every step.
    QubitDynamicalMap(const SystemParams& p, double t_c);

    const std::vector<double>& times() const noexcept { return times_; }
    /// Reduced state at grid point i for initial qubit state rho0.
    ComplexMatrix apply(const ComplexMatrix& rho0, std::size_t i) const;
    /// Real weights w with rho0 = Σ w_k basis_k (exact for Hermitian, unit-trace rho0).
    static std::array<double, 4> basis_weights(const ComplexMatrix& rho0);
    static std::array<ComplexMatrix, 4> basis_states();

private:
    std::vector<double> times_;
    std::array<std::vector<ComplexMatrix>, 4> images_;
};

/// D(t_i) between the evolved members of one pair, on the recording grid.
std::vector<double> trace_distance_series(const QubitDynamicalMap& map, const StatePairSpec& spec);

/// Non-Markovianity of the dynamics defined by p (using p.hierarchy_depth),
/// over [0, t_c] with n_samples sampled pairs.
NonMarkovReport nonmarkovianity(const SystemParams& p, double t_c, int n_samples,
                                std::uint64_t seed,
                                PairEvolution method = PairEvolution::DynamicalMap);

}  // namespace qob
