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

// linalg.hpp: dense complex matrices, Kronecker product, partial trace,
// Hermitian eigensolver and the eigendecomposition propagator.
//
// Composite spaces are always ordered first ⊗ second with the first index
// slow: entry (i1*d2 + i2, j1*d2 + j2).

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace qob {

using cplx = std::complex<double>;

inline constexpr double kHermitianTol = 1e-10;

/// Dense square-or-rectangular complex matrix, row-major storage.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    /// Row-major nested initializer, e.g. {{0, 1}, {1, 0}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix zeros(std::size_t n) { return ComplexMatrix(n, n); }
    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> diag);

    /// Builds an n×n Hermitian matrix from upper(i, j), queried only for
    /// i <= j. The lower triangle is filled with exact conjugates and the
    /// diagonal keeps only the real part, so max|M - M†| == 0.
    static ComplexMatrix hermitian(std::size_t n,
                                   const std::function<cplx(std::size_t, std::size_t)>& upper);

    /// Projector |v><v| for the column vector v.
    static ComplexMatrix projector(std::span<const cplx> v);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const noexcept {
        return data_[i * cols_ + j];
    }

    std::span<cplx> data() noexcept { return data_; }
    std::span<const cplx> data() const noexcept { return data_; }

    ComplexMatrix adjoint() const;
    cplx trace() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Traces out the second factor of a (dim_first·dim_second)-square matrix.
ComplexMatrix partial_trace_second(const ComplexMatrix& m, std::size_t dim_first,
                                   std::size_t dim_second);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// max_ij |M_ij - conj(M_ji)|
double hermiticity_error(const ComplexMatrix& m);
double frobenius_norm(const ComplexMatrix& m);

struct EigenSystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k pairs with values[k]
};

/// Real eigenvalues in ascending order. 2×2 inputs use the closed-form
/// quadratic; larger inputs go through cyclic Jacobi.
/// Throws NotHermitianError beyond `tol` (max entry deviation).
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double tol = kHermitianTol);

/// Cyclic complex Jacobi eigendecomposition, m = V diag(values) V†.
EigenSystem hermitian_eigensystem(const ComplexMatrix& m, double tol = kHermitianTol);

/// exp(-i h t) · rho · exp(+i h t), via the eigendecomposition of h.
ComplexMatrix matrix_exponential_apply(const ComplexMatrix& h, const ComplexMatrix& rho, double t);

/// Precomputed form of matrix_exponential_apply for repeated times.
class UnitaryPropagator {
public:
    explicit UnitaryPropagator(const ComplexMatrix& h);
    ComplexMatrix evolve(const ComplexMatrix& rho, double t) const;
    const EigenSystem& eigensystem() const noexcept { return eig_; }

private:
    EigenSystem eig_;
    ComplexMatrix vectors_adj_;
};

}  // namespace qob
