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

#include "qob/heom.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qob/errors.hpp"

namespace qob {

// ---------------------------------------------------------------- layout ---

HierarchyLayout::HierarchyLayout(int depth) : depth_(depth) {
    if (depth < 0) throw InvalidParamsError("HierarchyLayout: depth must be >= 0");
    indices_.reserve(count(depth));
    for (int d = 0; d <= depth; ++d)
        for (int l1 = d; l1 >= 0; --l1) indices_.push_back({l1, d - l1});

    raised_.resize(indices_.size());
    lowered_.resize(indices_.size());
    for (std::size_t k = 0; k < indices_.size(); ++k) {
        const auto [l1, l2] = indices_[k];
        raised_[k] = {position({l1 + 1, l2}), position({l1, l2 + 1})};
        lowered_[k] = {position({l1 - 1, l2}), position({l1, l2 - 1})};
    }
}

std::size_t HierarchyLayout::position(HierarchyIndex idx) const noexcept {
    if (idx.l1 < 0 || idx.l2 < 0 || idx.depth() > depth_) return npos;
    // Depth d starts after count(d-1) entries; within it l1 runs d, d-1, ..., 0.
    const int d = idx.depth();
    const std::size_t start = d == 0 ? 0 : count(d - 1);
    return start + static_cast<std::size_t>(d - idx.l1);
}

// ----------------------------------------------------------------- state ---

HierarchyState::HierarchyState(const SystemParams& p)
    : params_(p),
      layout_(std::make_shared<const HierarchyLayout>(p.hierarchy_depth)),
      dim_(p.joint_dim()),
      data_(layout_->size() * dim_ * dim_, cplx{0.0, 0.0}) {
    p.validate();
}

ComplexMatrix HierarchyState::ado(std::size_t k) const {
    if (k >= ado_count()) throw DimensionError("HierarchyState::ado: index out of range");
    ComplexMatrix m(dim_, dim_);
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(k * dim_ * dim_), dim_ * dim_,
                m.data().begin());
    return m;
}

ComplexMatrix HierarchyState::ado(HierarchyIndex idx) const {
    const auto k = layout_->position(idx);
    if (k == HierarchyLayout::npos) return ComplexMatrix::zeros(dim_);
    return ado(k);
}

void HierarchyState::set_ado(std::size_t k, const ComplexMatrix& m) {
    if (k >= ado_count()) throw DimensionError("HierarchyState::set_ado: index out of range");
    if (m.rows() != dim_ || m.cols() != dim_)
        throw DimensionError("HierarchyState::set_ado: matrix has the wrong dimension");
    std::copy(m.data().begin(), m.data().end(),
              data_.begin() + static_cast<std::ptrdiff_t>(k * dim_ * dim_));
}

ComplexMatrix HierarchyState::reduced_qubit() const {
    return partial_trace_second(root(), 2, static_cast<std::size_t>(params_.n_osc));
}

HierarchyState init_hierarchy(const ComplexMatrix& qubit_state, const SystemParams& p) {
    HierarchyState s(p);
    s.set_ado(0, build_initial_joint_state(qubit_state, p));
    return s;
}

// ------------------------------------------------------------ propagator ---

HeomPropagator::HeomPropagator(const SystemParams& p)
    : params_(p), layout_(p.hierarchy_depth), dim_(p.joint_dim()) {
    p.validate();
    const std::size_t d = dim_;
    const cplx minus_i{0.0, -1.0};
    const cplx i_unit{0.0, 1.0};

    const ComplexMatrix h = build_h_qo(p);
    h_rows_.resize(d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
            if (h(r, c) != cplx{}) h_rows_[r].push_back({c, minus_i * h(r, c)});

    // S is diagonal, so every superoperator acts entrywise.
    const ComplexMatrix s = build_system_coupling(p.n_osc);
    std::vector<double> sd(d);
    for (std::size_t i = 0; i < d; ++i) sd[i] = s(i, i).real();

    const cplx psi_pref = i_unit * (0.25 * p.gamma * p.lambda);
    phi_.resize(d * d);
    psi1_.resize(d * d);
    psi2_.resize(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const double comm = sd[i] - sd[j];
            const double anti = sd[i] + sd[j];
            phi_[i * d + j] = minus_i * comm;
            psi1_[i * d + j] = psi_pref * (-anti - comm);
            psi2_[i * d + j] = psi_pref * (anti - comm);
        }

    const cplx mu1{p.lambda, p.delta};
    const cplx mu2{p.lambda, -p.delta};
    decay_.resize(layout_.size());
    for (std::size_t k = 0; k < layout_.size(); ++k) {
        const auto [l1, l2] = layout_.index(k);
        decay_[k] = static_cast<double>(l1) * mu1 + static_cast<double>(l2) * mu2;
    }

    const std::size_t n = layout_.size() * d * d;
    acc_.resize(n);
    tmp_.resize(n);
    k_.resize(n);
}

void HeomPropagator::rhs(std::span<const cplx> in, std::span<cplx> out) const {
    const std::size_t d = dim_;
    const std::size_t dd = d * d;
    if (in.size() != layout_.size() * dd || out.size() != in.size())
        throw DimensionError("HeomPropagator::rhs: buffer size does not match the hierarchy");

    for (std::size_t k = 0; k < layout_.size(); ++k) {
        const cplx* x = in.data() + k * dd;
        cplx* y = out.data() + k * dd;

        const cplx decay = decay_[k];
        for (std::size_t e = 0; e < dd; ++e) y[e] = -decay * x[e];

        // -i H X
        for (std::size_t i = 0; i < d; ++i) {
            cplx* yi = y + i * d;
            for (const auto& [m, hv] : h_rows_[i]) {
                const cplx* xm = x + m * d;
                for (std::size_t j = 0; j < d; ++j) yi[j] += hv * xm[j];
            }
        }
        // +i X H
        for (std::size_t i = 0; i < d; ++i) {
            cplx* yi = y + i * d;
            const cplx* xi = x + i * d;
            for (std::size_t m = 0; m < d; ++m) {
                const cplx xim = xi[m];
                if (xim == cplx{}) continue;
                for (const auto& [j, hv] : h_rows_[m]) yi[j] -= xim * hv;
            }
        }

        const std::size_t up1 = layout_.raised(k, 1);
        const std::size_t up2 = layout_.raised(k, 2);
        if (up1 != HierarchyLayout::npos) {
            const cplx* a = in.data() + up1 * dd;
            for (std::size_t e = 0; e < dd; ++e) y[e] += phi_[e] * a[e];
        }
        if (up2 != HierarchyLayout::npos) {
            const cplx* a = in.data() + up2 * dd;
            for (std::size_t e = 0; e < dd; ++e) y[e] += phi_[e] * a[e];
        }

        const auto [l1, l2] = layout_.index(k);
        if (l1 > 0) {
            const cplx* b = in.data() + layout_.lowered(k, 1) * dd;
            const double w = l1;
            for (std::size_t e = 0; e < dd; ++e) y[e] += w * (psi1_[e] * b[e]);
        }
        if (l2 > 0) {
            const cplx* b = in.data() + layout_.lowered(k, 2) * dd;
            const double w = l2;
            for (std::size_t e = 0; e < dd; ++e) y[e] += w * (psi2_[e] * b[e]);
        }
    }
}

void HeomPropagator::step(HierarchyState& s, double dt) {
    if (s.layout().depth() != layout_.depth() || s.ado_dim() != dim_)
        throw DimensionError("HeomPropagator::step: state does not match the propagator");
    auto y = s.flat();
    const std::size_t n = y.size();
    const double half = 0.5 * dt;

    rhs(y, k_);
    for (std::size_t e = 0; e < n; ++e) {
        acc_[e] = k_[e];
        tmp_[e] = y[e] + half * k_[e];
    }
    rhs(tmp_, k_);
    for (std::size_t e = 0; e < n; ++e) {
        acc_[e] += 2.0 * k_[e];
        tmp_[e] = y[e] + half * k_[e];
    }
    rhs(tmp_, k_);
    for (std::size_t e = 0; e < n; ++e) {
        acc_[e] += 2.0 * k_[e];
        tmp_[e] = y[e] + dt * k_[e];
    }
    rhs(tmp_, k_);
    const double sixth = dt / 6.0;
    for (std::size_t e = 0; e < n; ++e) y[e] += sixth * (acc_[e] + k_[e]);
    s.set_time(s.time() + dt);
}

HierarchyState heom_rhs(const HierarchyState& s) {
    HeomPropagator prop(s.params());
    HierarchyState out(s.params());
    out.set_time(s.time());
    prop.rhs(s.flat(), out.flat());
    return out;
}

HierarchyState rk4_step(const HierarchyState& s, double dt) {
    if (!(dt > 0.0)) throw InvalidParamsError("rk4_step: dt must be > 0");
    HeomPropagator prop(s.params());
    HierarchyState out = s;
    prop.step(out, dt);
    return out;
}

// ----------------------------------------------------------- integration ---

namespace {

void check_invariants(const HierarchyState& s, const ComplexMatrix& rho_q, double dt) {
    const double trace_err = std::abs(rho_q.trace() - 1.0);
    const double herm_err = hermiticity_error(rho_q);
    const bool finite = std::isfinite(trace_err) && std::isfinite(herm_err);
    if (finite && trace_err <= kIntegrationInvariantTol && herm_err <= kIntegrationInvariantTol)
        return;
    std::ostringstream os;
    os << "HEOM invariant breach at t=" << s.time() << ": |tr rho - 1| = " << trace_err
       << ", Hermiticity error = " << herm_err << " (tolerance " << kIntegrationInvariantTol
       << "); dt=" << dt << " may be too large or depth L="
       << s.params().hierarchy_depth << " too small";
    throw InvariantBreachError(os.str());
}

}  // namespace

Trajectory integrate(const HierarchyState& s0, double t_max, double dt, int record_every,
                     bool keep_reduced_states) {
    if (!(dt > 0.0)) throw InvalidParamsError("integrate: dt must be > 0");
    if (record_every < 1) throw InvalidParamsError("integrate: record_every must be >= 1");
    const double t0 = s0.time();
    if (!(t_max >= t0)) throw InvalidParamsError("integrate: t_max precedes the start time");

    const auto n_steps = static_cast<long long>(std::llround((t_max - t0) / dt));
    HeomPropagator prop(s0.params());
    HierarchyState s = s0;
    Trajectory tr;

    ComplexMatrix rho_q = s.reduced_qubit();
    check_invariants(s, rho_q, dt);
    tr.record(t0, rho_q, keep_reduced_states);

    for (long long n = 1; n <= n_steps; ++n) {
        prop.step(s, dt);
        s.set_time(t0 + static_cast<double>(n) * dt);
        const bool due = n % record_every == 0 || n == n_steps;
        // The root is cheap to reduce; check it every step so a blow-up is
        // caught where it starts.
        rho_q = s.reduced_qubit();
        check_invariants(s, rho_q, dt);
        if (due) tr.record(s.time(), rho_q, keep_reduced_states);
    }
    return tr;
}

DepthConvergence converge_depth(const SystemParams& p, const ComplexMatrix& qubit_state, double tol,
                                const ConvergeOptions& opts) {
    if (!(tol > 0.0)) throw InvalidParamsError("converge_depth: tol must be > 0");
    if (opts.depth_step < 1) throw InvalidParamsError("converge_depth: depth_step must be >= 1");

    auto run = [&](int depth) {
        SystemParams q = p;
        q.hierarchy_depth = depth;
        return integrate(init_hierarchy(qubit_state, q), q.t_max, q.dt, opts.record_every);
    };

    DepthConvergence out;
    int depth = opts.start_depth;
    Trajectory current = run(depth);
    double last = 0.0;
    while (depth + opts.depth_step <= opts.max_depth) {
        const int next_depth = depth + opts.depth_step;
        Trajectory next = run(next_depth);
        double diff = 0.0;
        for (std::size_t i = 0; i < current.size(); ++i)
            diff = std::max(diff, std::abs(current.sigma_z[i] - next.sigma_z[i]));
        out.discrepancies.emplace_back(depth, diff);
        last = diff;
        if (diff < tol) {
            out.depth = depth;
            out.trajectory = std::move(current);
            return out;
        }
        depth = next_depth;
        current = std::move(next);
    }
    std::ostringstream os;
    os << "hierarchy depth did not converge by L=" << opts.max_depth << ": last discrepancy "
       << last << " at L=" << depth << " (tolerance " << tol << ")";
    throw ConvergenceError(os.str(), depth, last);
}

}  // namespace qob
