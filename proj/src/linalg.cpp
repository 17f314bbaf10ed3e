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

#include "qob/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qob/errors.hpp"

namespace qob {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionError("ComplexMatrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

ComplexMatrix ComplexMatrix::hermitian(std::size_t n,
                                       const std::function<cplx(std::size_t, std::size_t)>& upper) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = upper(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx v = upper(i, j);
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::projector(std::span<const cplx> v) {
    return hermitian(v.size(), [&](std::size_t i, std::size_t j) { return v[i] * std::conj(v[j]); });
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

cplx ComplexMatrix::trace() const {
    if (!is_square()) throw DimensionError("trace: matrix is not square");
    cplx t{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("operator+: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("operator-: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("operator*: inner dimensions differ");
    ComplexMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

namespace pauli {
ComplexMatrix identity() { return ComplexMatrix::identity(2); }
ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix y() { return {{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}}; }
ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t br = b.rows(), bc = b.cols();
    ComplexMatrix r(a.rows() * br, a.cols() * bc);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            for (std::size_t k = 0; k < br; ++k)
                for (std::size_t l = 0; l < bc; ++l) r(i * br + k, j * bc + l) = aij * b(k, l);
        }
    return r;
}

ComplexMatrix partial_trace_second(const ComplexMatrix& m, std::size_t dim_first,
                                   std::size_t dim_second) {
    const std::size_t n = dim_first * dim_second;
    if (dim_first == 0 || dim_second == 0 || m.rows() != n || m.cols() != n) {
        std::ostringstream os;
        os << "partial_trace_second: expected " << n << "x" << n << " input, got " << m.rows()
           << "x" << m.cols();
        throw DimensionError(os.str());
    }
    ComplexMatrix r(dim_first, dim_first);
    for (std::size_t i = 0; i < dim_first; ++i)
        for (std::size_t j = 0; j < dim_first; ++j) {
            cplx s{0.0, 0.0};
            for (std::size_t k = 0; k < dim_second; ++k) s += m(i * dim_second + k, j * dim_second + k);
            r(i, j) = s;
        }
    return r;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b + b * a;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("max_abs_diff: shape mismatch");
    double d = 0.0;
    auto x = a.data();
    auto y = b.data();
    for (std::size_t k = 0; k < x.size(); ++k) d = std::max(d, std::abs(x[k] - y[k]));
    return d;
}

double hermiticity_error(const ComplexMatrix& m) {
    if (!m.is_square()) throw DimensionError("hermiticity_error: matrix is not square");
    double d = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
    return d;
}

double frobenius_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (const auto& v : m.data()) s += std::norm(v);
    return std::sqrt(s);
}

namespace {

void require_hermitian(const ComplexMatrix& m, double tol, const char* who) {
    if (!m.is_square()) throw DimensionError(std::string(who) + ": matrix is not square");
    const double err = hermiticity_error(m);
    if (err > tol) {
        std::ostringstream os;
        os << who << ": input deviates from Hermitian by " << err << " (tolerance " << tol << ")";
        throw NotHermitianError(os.str());
    }
}

double off_diagonal_norm2(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return s;
}

// Cyclic Jacobi on a Hermitian working copy. Each pivot (p, q) is first made
// real by a phase on column/row q, then annihilated by a real plane rotation.
EigenSystem jacobi(ComplexMatrix a) {
    const std::size_t n = a.rows();
    ComplexMatrix v = ComplexMatrix::identity(n);
    double scale = 0.0;
    for (const auto& x : a.data()) scale += std::norm(x);
    const double stop = 1e-30 * std::max(scale, 1e-300);

    for (int sweep = 0; sweep < 100 && off_diagonal_norm2(a) > stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag == 0.0) continue;
                const cplx phase = a(p, q) / mag;  // e^{i phi}
                const cplx cphase = std::conj(phase);
                for (std::size_t k = 0; k < n; ++k) {
                    a(k, q) *= cphase;
                    a(q, k) *= phase;
                    v(k, q) *= cphase;
                }
                a(q, q) = a(q, q).real();

                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });
    EigenSystem out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double tol) {
    require_hermitian(m, tol, "hermitian_eigenvalues");
    if (m.rows() == 2) {
        const double a = m(0, 0).real(), d = m(1, 1).real();
        const double mean = 0.5 * (a + d);
        const double half = 0.5 * (a - d);
        const double r = std::sqrt(half * half + std::norm(m(0, 1)));
        return {mean - r, mean + r};
    }
    return jacobi(m).values;
}

EigenSystem hermitian_eigensystem(const ComplexMatrix& m, double tol) {
    require_hermitian(m, tol, "hermitian_eigensystem");
    return jacobi(m);
}

UnitaryPropagator::UnitaryPropagator(const ComplexMatrix& h)
    : eig_(hermitian_eigensystem(h)), vectors_adj_(eig_.vectors.adjoint()) {}

ComplexMatrix UnitaryPropagator::evolve(const ComplexMatrix& rho, double t) const {
    const std::size_t n = eig_.values.size();
    if (rho.rows() != n || rho.cols() != n)
        throw DimensionError("matrix_exponential_apply: state and generator dimensions differ");
    // In the eigenbasis: rho'_{kl} = e^{-i(E_k - E_l)t} rho_{kl}.
    ComplexMatrix r = vectors_adj_ * rho * eig_.vectors;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
            r(k, l) *= std::polar(1.0, -(eig_.values[k] - eig_.values[l]) * t);
    return eig_.vectors * r * vectors_adj_;
}

ComplexMatrix matrix_exponential_apply(const ComplexMatrix& h, const ComplexMatrix& rho, double t) {
    return UnitaryPropagator(h).evolve(rho, t);
}

}  // namespace qob
