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

// heom.hpp: two-index hierarchical equations of motion for a qubit-oscillator
// system whose qubit couples through σz to a Lorentzian bath.
//
// For every index l = (l1, l2) with l1 + l2 <= L:
//
//   dρ_l/dt = -i[H, ρ_l] - (l1 μ1 + l2 μ2) ρ_l
//             + Φ(ρ_{l+e1} + ρ_{l+e2}) + l1 Ψ1 ρ_{l-e1} + l2 Ψ2 ρ_{l-e2}
//
//   μ = (λ + iΔ, λ - iΔ),  Φ X = -i[S, X],
//   Ψ_p X = (i/4) γλ ((-1)^p {S, X} - [S, X]),  S = σz ⊗ I.
//
// ADOs beyond depth L are exactly zero. Only ρ_(0,0) is physical.

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "qob/linalg.hpp"
#include "qob/model.hpp"
#include "qob/observables.hpp"

namespace qob {

struct HierarchyIndex {
    int l1 = 0;
    int l2 = 0;
    int depth() const noexcept { return l1 + l2; }
    auto operator<=>(const HierarchyIndex&) const = default;
};

/// Flat ordering of all indices with l1 + l2 <= depth: by depth, then l1
/// descending. Neighbour lookups are table driven.
class HierarchyLayout {
public:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    explicit HierarchyLayout(int depth);

    int depth() const noexcept { return depth_; }
    std::size_t size() const noexcept { return indices_.size(); }
    const HierarchyIndex& index(std::size_t k) const { return indices_.at(k); }
    /// Flat position of idx, or npos when idx is outside the truncation.
    std::size_t position(HierarchyIndex idx) const noexcept;
    /// Position of index(k) + e_p (p = 1, 2), or npos when truncated.
    std::size_t raised(std::size_t k, int p) const noexcept { return raised_[k][p - 1]; }
    /// Position of index(k) - e_p, or npos when a component would go negative.
    std::size_t lowered(std::size_t k, int p) const noexcept { return lowered_[k][p - 1]; }

    static std::size_t count(int depth) noexcept {
        const auto l = static_cast<std::size_t>(depth);
        return (l + 1) * (l + 2) / 2;
    }

private:
    int depth_;
    std::vector<HierarchyIndex> indices_;
    std::vector<std::array<std::size_t, 2>> raised_;
    std::vector<std::array<std::size_t, 2>> lowered_;
};

/// All ADOs of one simulation in one contiguous buffer.
class HierarchyState {
public:
    /// Zero hierarchy with depth p.hierarchy_depth.
    explicit HierarchyState(const SystemParams& p);

    const SystemParams& params() const noexcept { return params_; }
    const HierarchyLayout& layout() const noexcept { return *layout_; }
    std::size_t ado_dim() const noexcept { return dim_; }
    std::size_t ado_count() const noexcept { return layout_->size(); }

    double time() const noexcept { return time_; }
    void set_time(double t) noexcept { time_ = t; }

    std::span<cplx> flat() noexcept { return data_; }
    std::span<const cplx> flat() const noexcept { return data_; }

    ComplexMatrix ado(std::size_t k) const;
    ComplexMatrix ado(HierarchyIndex idx) const;
    void set_ado(std::size_t k, const ComplexMatrix& m);
    ComplexMatrix root() const { return ado(0); }
    /// tr_osc ρ_(0,0)
    ComplexMatrix reduced_qubit() const;

    bool operator==(const HierarchyState& o) const {
        return params_ == o.params_ && time_ == o.time_ && data_ == o.data_;
    }

private:
    SystemParams params_;
    std::shared_ptr<const HierarchyLayout> layout_;
    std::size_t dim_;
    double time_ = 0.0;
    std::vector<cplx> data_;
};

/// Root = qubit_state ⊗ |α><α|, every other ADO zero, time 0.
HierarchyState init_hierarchy(const ComplexMatrix& qubit_state, const SystemParams& p);

/// Precomputed generator of the hierarchy for one parameter set. Holds
/// scratch buffers, so one instance must not be stepped from two threads.
class HeomPropagator {
public:
    explicit HeomPropagator(const SystemParams& p);

    /// out = d/dt of the flattened hierarchy `in`.
    void rhs(std::span<const cplx> in, std::span<cplx> out) const;
    /// Classical RK4 step in place; advances s.time() by dt.
    void step(HierarchyState& s, double dt);

    const HierarchyLayout& layout() const noexcept { return layout_; }

private:
    struct Entry {
        std::size_t col;
        cplx value;  // -i H(row, col)
    };

    SystemParams params_;
    HierarchyLayout layout_;
    std::size_t dim_;
    std::vector<std::vector<Entry>> h_rows_;  // sparse rows of -iH
    std::vector<cplx> phi_;                   // elementwise factors of Φ, Ψ1, Ψ2
    std::vector<cplx> psi1_;
    std::vector<cplx> psi2_;
    std::vector<cplx> decay_;  // l1 μ1 + l2 μ2 per ADO
    std::vector<cplx> acc_, tmp_, k_;
};

/// Time derivative of every ADO.
HierarchyState heom_rhs(const HierarchyState& s);

HierarchyState rk4_step(const HierarchyState& s, double dt);

inline constexpr double kIntegrationInvariantTol = 1e-6;

/// Integrates from s0.time() up to time t_max with fixed step dt (the step
/// count is rounded to the nearest integer), recording the reduced qubit at
/// the start, every record_every steps and at the final step. Throws InvariantBreachError if the root trace or Hermiticity drifts
/// beyond kIntegrationInvariantTol.
Trajectory integrate(const HierarchyState& s0, double t_max, double dt, int record_every,
                     bool keep_reduced_states = false);

struct ConvergeOptions {
    int start_depth = 0;
    int depth_step = 2;
    int max_depth = 30;
    int record_every = 1;
};

struct DepthConvergence {
    int depth = 0;
    Trajectory trajectory;
    /// (L, max_t |<σz>_L - <σz>_{L+step}|) for every comparison made.
    std::vector<std::pair<int, double>> discrepancies;
};

/// Integrates at L, L+2, ... over [0, p.t_max] with p.dt until successive
/// <σz> trajectories agree to tol; returns the first converged L and its
/// trajectory. Throws ConvergenceError once max_depth is exceeded.
DepthConvergence converge_depth(const SystemParams& p, const ComplexMatrix& qubit_state, double tol,
                                const ConvergeOptions& opts = {});

}  // namespace qob
