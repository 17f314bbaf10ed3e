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

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "qob/errors.hpp"
#include "qob/linalg.hpp"

using namespace qob;
using namespace qob::testing;

TEST_CASE("kron: identity and diagonal cases") {
    CHECK(kron(pauli::identity(), pauli::identity()) == ComplexMatrix::identity(4));
    const double d[] = {1, 1, -1, -1};
    CHECK(kron(pauli::z(), pauli::identity()) == ComplexMatrix::diagonal(d));
}

TEST_CASE("kron: sigma_x (x) sigma_z is the hand-expanded block matrix") {
    // [[0, σz], [σz, 0]]
    const ComplexMatrix expected{{0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, -1, 0, 0}};
    CHECK(kron(pauli::x(), pauli::z()) == expected);
}

TEST_CASE("kron: associative on integer-valued matrices") {
    std::mt19937_64 rng(kSeed);
    for (int rep = 0; rep < 20; ++rep) {
        auto integer = [&](std::size_t r, std::size_t c) {
            ComplexMatrix m(r, c);
            for (auto& v : m.data())
                v = {std::round(uniform(rng, -5, 5)), std::round(uniform(rng, -5, 5))};
            return m;
        };
        const auto a = integer(2, 3), b = integer(3, 2), c = integer(2, 2);
        CHECK(kron(kron(a, b), c) == kron(a, kron(b, c)));
    }
}

TEST_CASE("partial_trace_second") {
    std::mt19937_64 rng(kSeed + 1);

    SUBCASE("product state factorises") {
        const auto rq = random_density(rng, 2);
        const auto ro = random_density(rng, 8);
        CHECK(max_abs_diff(partial_trace_second(kron(rq, ro), 2, 8), rq) < 1e-14);
    }
    SUBCASE("maximally mixed") {
        const auto m = ComplexMatrix::identity(16) * (1.0 / 16.0);
        CHECK(max_abs_diff(partial_trace_second(m, 2, 8), ComplexMatrix::identity(2) * 0.5) < 1e-15);
    }
    SUBCASE("trace preserved against direct diagonal summation") {
        for (int rep = 0; rep < 20; ++rep) {
            const auto m = random_hermitian(rng, 16);
            std::complex<double> direct{};
            for (std::size_t i = 0; i < 16; ++i) direct += m(i, i);
            CHECK(std::abs(partial_trace_second(m, 2, 8).trace() - direct) < 1e-13);
        }
    }
    SUBCASE("linear") {
        for (int rep = 0; rep < 20; ++rep) {
            const auto a = random_matrix(rng, 8, 8), b = random_matrix(rng, 8, 8);
            const std::complex<double> x{uniform(rng), uniform(rng)};
            const auto lhs = partial_trace_second(a * x + b, 2, 4);
            const auto rhs = partial_trace_second(a, 2, 4) * x + partial_trace_second(b, 2, 4);
            CHECK(max_abs_diff(lhs, rhs) < 1e-13);
        }
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(partial_trace_second(ComplexMatrix::identity(15), 2, 8), DimensionError);
        CHECK_THROWS_AS(partial_trace_second(ComplexMatrix(16, 8), 2, 8), DimensionError);
    }
}

TEST_CASE("hermitian_eigenvalues: fixed cases") {
    const auto ez = hermitian_eigenvalues(pauli::z());
    CHECK(ez[0] == doctest::Approx(-1.0));
    CHECK(ez[1] == doctest::Approx(1.0));
    const auto eh = hermitian_eigenvalues(ComplexMatrix::identity(2) * 0.5);
    CHECK(eh[0] == doctest::Approx(0.5));
    CHECK(eh[1] == doctest::Approx(0.5));
    const double d[] = {3, -2, 0.5, 7};
    const auto ed = hermitian_eigenvalues(ComplexMatrix::diagonal(d));
    CHECK(ed == std::vector<double>{-2, 0.5, 3, 7});
}

TEST_CASE("hermitian_eigenvalues: trace identities on random 4x4") {
    std::mt19937_64 rng(kSeed + 2);
    for (int rep = 0; rep < 50; ++rep) {
        const auto m = random_hermitian(rng, 4);
        const auto ev = hermitian_eigenvalues(m);
        double s1 = 0.0, s2 = 0.0;
        for (double v : ev) s1 += v, s2 += v * v;
        CHECK(s1 == doctest::Approx(m.trace().real()).epsilon(1e-12));
        CHECK(s2 == doctest::Approx(frobenius2(m)).epsilon(1e-12));
        CHECK(std::is_sorted(ev.begin(), ev.end()));
    }
}

TEST_CASE("hermitian_eigenvalues: 2x2 closed form agrees with Jacobi") {
    std::mt19937_64 rng(kSeed + 3);
    for (int rep = 0; rep < 100; ++rep) {
        const auto m = random_hermitian(rng, 2);
        const auto closed = hermitian_eigenvalues(m);
        const auto jac = hermitian_eigensystem(m).values;
        CHECK(std::abs(closed[0] - jac[0]) < 1e-13);
        CHECK(std::abs(closed[1] - jac[1]) < 1e-13);
    }
}

TEST_CASE("hermitian_eigensystem reconstructs the input at 16x16") {
    std::mt19937_64 rng(kSeed + 4);
    const auto m = random_hermitian(rng, 16);
    const auto es = hermitian_eigensystem(m);
    const auto rebuilt = es.vectors * ComplexMatrix::diagonal(es.values) * es.vectors.adjoint();
    CHECK(max_abs_diff(rebuilt, m) < 1e-12);
    CHECK(max_abs_diff(es.vectors.adjoint() * es.vectors, ComplexMatrix::identity(16)) < 1e-12);
}

TEST_CASE("hermitian_eigenvalues: difference of density matrices sums to zero") {
    std::mt19937_64 rng(kSeed + 5);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = rep % 2 ? 2 : 4;
        const auto ev = hermitian_eigenvalues(random_density(rng, n) - random_density(rng, n));
        double s = 0.0;
        for (double v : ev) s += v;
        CHECK(std::abs(s) < 1e-10);
    }
}

TEST_CASE("hermitian_eigenvalues rejects non-Hermitian input") {
    ComplexMatrix m = pauli::x();
    m(0, 1) += 1e-6;
    CHECK_THROWS_AS(hermitian_eigenvalues(m), NotHermitianError);
    CHECK_THROWS_AS(hermitian_eigensystem(pauli::x() + ComplexMatrix{{0, 1e-9}, {0, 0}}),
                    NotHermitianError);
    m = pauli::x();
    m(0, 1) += 1e-12;  // inside tolerance
    CHECK_NOTHROW(hermitian_eigenvalues(m));
}

TEST_CASE("matrix_exponential_apply") {
    const ComplexMatrix e = ComplexMatrix{{1, 0}, {0, 0}};

    SUBCASE("t = 0 returns the input") {
        std::mt19937_64 rng(kSeed + 6);
        const auto h = random_hermitian(rng, 4);
        const auto rho = random_density(rng, 4);
        CHECK(max_abs_diff(matrix_exponential_apply(h, rho, 0.0), rho) < 1e-14);
    }
    SUBCASE("eigenstate of h is stationary") {
        for (double t : {0.3, 2.0, 17.5})
            CHECK(max_abs_diff(matrix_exponential_apply(pauli::z(), e, t), e) < 1e-14);
    }
    SUBCASE("Rabi rotation: <sigma_z(t)> = cos(Delta t), matched by the series oracle") {
        const double delta = 0.5;
        const auto h = pauli::x() * (0.5 * delta);
        for (double t = 0.0; t <= 20.0; t += 0.7) {
            const auto rho = matrix_exponential_apply(h, e, t);
            const double sz = (rho(0, 0) - rho(1, 1)).real();
            CHECK(std::abs(sz - std::cos(delta * t)) < 1e-12);
            CHECK(max_abs_diff(rho, evolve_series(h, e, t)) < 1e-12);
        }
    }
    SUBCASE("random 8x8 generator agrees with the series oracle") {
        std::mt19937_64 rng(kSeed + 7);
        const auto h = random_hermitian(rng, 8);
        const auto rho = random_density(rng, 8);
        for (double t : {0.1, 1.3, 6.0})
            CHECK(max_abs_diff(matrix_exponential_apply(h, rho, t), evolve_series(h, rho, t)) < 1e-11);
    }
    SUBCASE("preserves trace and Hermiticity") {
        std::mt19937_64 rng(kSeed + 8);
        for (int rep = 0; rep < 30; ++rep) {
            const auto h = random_hermitian(rng, 6);
            const auto rho = random_density(rng, 6);
            const auto out = matrix_exponential_apply(h, rho, uniform(rng, 0, 10));
            CHECK(std::abs(out.trace() - 1.0) < 1e-10);
            CHECK(hermiticity_error(out) < 1e-10);
        }
    }
    SUBCASE("non-Hermitian generator throws") {
        CHECK_THROWS_AS(matrix_exponential_apply(ComplexMatrix{{0, 1}, {0, 0}}, e, 1.0),
                        NotHermitianError);
    }
}

TEST_CASE("ComplexMatrix::hermitian is exactly Hermitian") {
    std::mt19937_64 rng(kSeed + 9);
    const auto m = ComplexMatrix::hermitian(
        9, [&](std::size_t, std::size_t) { return std::complex<double>{uniform(rng), uniform(rng)}; });
    CHECK(hermiticity_error(m) == 0.0);
    CHECK(m.data().size() == m.rows() * m.cols());
}
