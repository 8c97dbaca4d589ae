// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "discordlab/qstate.hpp"
#include "discordlab/rng.hpp"

using namespace discordlab;

namespace {

Mat4 kron_pauli(int i, int j) {
    const Mat2 a = i == 0 ? Mat2::identity() : pauli(i);
    const Mat2 b = j == 0 ? Mat2::identity() : pauli(j);
    return kron(a, b);
}

}  // namespace

TEST_CASE("bell_density_matrix reproduces the closed matrix form") {
    SECTION("maximally mixed state") {
        const DensityMatrix rho = bell_density_matrix({0.0, 0.0, 0.0});
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                REQUIRE(std::abs(rho.m(i, j) - (i == j ? cplx(0.25, 0.0) : cplx{})) < 1e-15);
    }
    SECTION("pure Bell state (1,-1,1)") {
        const auto ev = hermitian_eigenvalues(bell_density_matrix({1.0, -1.0, 1.0}).m);
        REQUIRE(ev[0] == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(ev[1] == Catch::Approx(0.0).margin(1e-12));
        REQUIRE(ev[2] == Catch::Approx(0.0).margin(1e-12));
        REQUIRE(ev[3] == Catch::Approx(0.0).margin(1e-12));
    }
    SECTION("entries at (0.1, 0.2, 0.3)") {
        const DensityMatrix rho = bell_density_matrix({0.1, 0.2, 0.3});
        REQUIRE(std::real(rho.m(0, 0)) == Catch::Approx(0.325).margin(1e-15));
        REQUIRE(std::real(rho.m(1, 1)) == Catch::Approx(0.175).margin(1e-15));
        REQUIRE(std::real(rho.m(2, 2)) == Catch::Approx(0.175).margin(1e-15));
        REQUIRE(std::real(rho.m(3, 3)) == Catch::Approx(0.325).margin(1e-15));
        REQUIRE(std::real(rho.m(0, 3)) == Catch::Approx(-0.025).margin(1e-15));
        REQUIRE(std::real(rho.m(1, 2)) == Catch::Approx(0.075).margin(1e-15));
        REQUIRE(std::real(rho.m(2, 1)) == Catch::Approx(0.075).margin(1e-15));
        REQUIRE(std::real(rho.m(3, 0)) == Catch::Approx(-0.025).margin(1e-15));
        REQUIRE(std::abs(trace(rho.m) - cplx(1.0, 0.0)) < 1e-15);
        REQUIRE(hermiticity_defect(rho.m) < 1e-15);
    }
}

TEST_CASE("eigenvalues_bell block formulas") {
    SECTION("identity case") {
        for (double ev : eigenvalues_bell({0.0, 0.0, 0.0})) REQUIRE(ev == Catch::Approx(0.25));
    }
    SECTION("(1,1,1) is unphysical, contains -1/2") {
        const auto ev = eigenvalues_bell({1.0, 1.0, 1.0});
        REQUIRE(ev.back() == Catch::Approx(-0.5).margin(1e-15));
    }
    SECTION("(0.1,0.2,0.3) against the dense-solver oracle") {
        // oracle: general Hermitian diagonalization of the assembled matrix;
        // block arithmetic gives {0.35, 0.30, 0.25, 0.10}
        const CorrelationVector c{0.1, 0.2, 0.3};
        const auto closed = eigenvalues_bell(c);
        const auto general = hermitian_eigenvalues(bell_density_matrix(c).m);
        const std::array<double, 4> frozen = {0.35, 0.30, 0.25, 0.10};
        for (int i = 0; i < 4; ++i) {
            REQUIRE(closed[i] == Catch::Approx(frozen[i]).margin(1e-12));
            REQUIRE(general[i] == Catch::Approx(frozen[i]).margin(1e-10));
        }
    }
}

TEST_CASE("is_physical matches the tetrahedron") {
    REQUIRE(is_physical({0.0, 0.0, 0.0}));
    REQUIRE_FALSE(is_physical({1.0, 1.0, 1.0}));
    REQUIRE(is_physical({0.1, 0.2, 0.3}));
    // vertices are physical
    REQUIRE(is_physical({1.0, 1.0, -1.0}));
    REQUIRE(is_physical({-1.0, -1.0, -1.0}));
    REQUIRE(is_physical({1.0, -1.0, 1.0}));
    REQUIRE(is_physical({-1.0, 1.0, 1.0}));
}

TEST_CASE("correlation_vector round-trips and reports residuals") {
    SECTION("round trip") {
        const CorrelationVector c = correlation_vector(bell_density_matrix({0.1, 0.2, 0.3}));
        REQUIRE(c.c1 == Catch::Approx(0.1).margin(1e-13));
        REQUIRE(c.c2 == Catch::Approx(0.2).margin(1e-13));
        REQUIRE(c.c3 == Catch::Approx(0.3).margin(1e-13));
    }
    SECTION("identity / 4") {
        const CorrelationVector c = correlation_vector(bell_density_matrix({0.0, 0.0, 0.0}));
        REQUIRE(std::abs(c.c1) < 1e-15);
        REQUIRE(std::abs(c.c2) < 1e-15);
        REQUIRE(std::abs(c.c3) < 1e-15);
    }
    SECTION("|00><00| has c = (0,0,1) with Bloch residual") {
        Mat4 m;
        m(0, 0) = 1.0;
        const DensityMatrix rho{m};
        const BellDecomposition dec = decompose_bell(rho);
        REQUIRE(dec.c.c1 == Catch::Approx(0.0).margin(1e-15));
        REQUIRE(dec.c.c2 == Catch::Approx(0.0).margin(1e-15));
        REQUIRE(dec.c.c3 == Catch::Approx(1.0).margin(1e-15));
        REQUIRE(dec.residual == Catch::Approx(1.0).margin(1e-15));  // <sigma_z (x) I> = 1
    }
}

TEST_CASE("hermitian_eigenvalues contract") {
    SECTION("zero matrix") {
        for (double ev : hermitian_eigenvalues(Mat4{})) REQUIRE(ev == 0.0);
    }
    SECTION("diagonal matrix sorts descending") {
        Mat4 m;
        m(0, 0) = 1.0;
        m(1, 1) = 2.0;
        m(2, 2) = 3.0;
        m(3, 3) = 4.0;
        const auto ev = hermitian_eigenvalues(m);
        REQUIRE(ev[0] == 4.0);
        REQUIRE(ev[1] == 3.0);
        REQUIRE(ev[2] == 2.0);
        REQUIRE(ev[3] == 1.0);
    }
    SECTION("agrees with the closed form on Bell-diagonal input") {
        const CorrelationVector c{0.1, 0.2, 0.3};
        const auto a = hermitian_eigenvalues(bell_density_matrix(c).m);
        const auto b = eigenvalues_bell(c);
        for (int i = 0; i < 4; ++i) REQUIRE(std::abs(a[i] - b[i]) < tol::eigen_residual);
    }
    SECTION("rejects non-Hermitian input") {
        Mat4 m;
        m(0, 1) = 1.0;  // missing conjugate partner
        REQUIRE_THROWS_AS(hermitian_eigenvalues(m), std::invalid_argument);
    }
    SECTION("eigenpair residual on random Hermitian matrices") {
        SplitMix64 rng(99);
        for (int trial = 0; trial < 50; ++trial) {
            Mat4 m;
            for (int i = 0; i < 4; ++i) {
                m(i, i) = rng.next_symmetric();
                for (int j = i + 1; j < 4; ++j) {
                    m(i, j) = cplx(rng.next_symmetric(), rng.next_symmetric());
                    m(j, i) = std::conj(m(i, j));
                }
            }
            const auto eig = hermitian_eigensystem(m);
            for (int k = 0; k < 4; ++k) {
                double res = 0.0;
                for (int r = 0; r < 4; ++r) {
                    cplx acc{};
                    for (int s = 0; s < 4; ++s) acc += m(r, s) * eig.vectors(s, k);
                    acc -= eig.values[k] * eig.vectors(r, k);
                    res += std::norm(acc);
                }
                REQUIRE(std::sqrt(res) < tol::eigen_residual);
            }
        }
    }
}

TEST_CASE("trace_norm") {
    REQUIRE(trace_norm(Mat4{}) == 0.0);
    SECTION("diag(1,-1,0.5,-0.5) -> 3") {
        Mat4 m;
        m(0, 0) = 1.0;
        m(1, 1) = -1.0;
        m(2, 2) = 0.5;
        m(3, 3) = -0.5;
        REQUIRE(trace_norm(m) == Catch::Approx(3.0).margin(1e-14));
    }
    SECTION("rho - I/4 equals sum |lambda_i - 1/4|") {
        const CorrelationVector c{0.1, 0.2, 0.3};
        const Mat4 diff = bell_density_matrix(c).m - cplx(0.25, 0.0) * Mat4::identity();
        double expected = 0.0;
        for (double ev : eigenvalues_bell(c)) expected += std::abs(ev - 0.25);
        REQUIRE(trace_norm(diff) == Catch::Approx(expected).margin(1e-12));
        REQUIRE(expected == Catch::Approx(0.30).margin(1e-14));
    }
}

TEST_CASE("closed-form / general eigensolver agreement over the tetrahedron") {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 10000; ++i) {
        const CorrelationVector c = sample_tetrahedron(42, i);
        const auto closed = eigenvalues_bell(c);
        const auto general = hermitian_eigenvalues(bell_density_matrix(c).m);
        for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(closed[k] - general[k]));
    }
    REQUIRE(worst < 1e-10);
}

TEST_CASE("pauli readout inverts the constructor on the full cube") {
    SplitMix64 rng(7);
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const CorrelationVector c(rng.next_symmetric(), rng.next_symmetric(), rng.next_symmetric());
        const CorrelationVector back = correlation_vector(bell_density_matrix(c));
        worst = std::max({worst, std::abs(back.c1 - c.c1), std::abs(back.c2 - c.c2),
                          std::abs(back.c3 - c.c3)});
    }
    REQUIRE(worst < 1e-12);
}

TEST_CASE("spectrum of rho - I/4 is invariant under double sign flips") {
    SplitMix64 rng(8);
    for (int i = 0; i < 200; ++i) {
        const CorrelationVector c = sample_tetrahedron(8, static_cast<std::uint64_t>(i));
        const auto base = [&](const CorrelationVector& v) {
            const Mat4 diff = bell_density_matrix(v).m - cplx(0.25, 0.0) * Mat4::identity();
            return hermitian_eigenvalues(diff);
        };
        const auto ref = base(c);
        const CorrelationVector flips[3] = {
            {-c.c1, -c.c2, c.c3}, {-c.c1, c.c2, -c.c3}, {c.c1, -c.c2, -c.c3}};
        for (const auto& f : flips) {
            const auto got = base(f);
            for (int k = 0; k < 4; ++k) REQUIRE(std::abs(got[k] - ref[k]) < 1e-12);
        }
    }
}

TEST_CASE("physical region is convex") {
    for (std::uint64_t i = 0; i < 500; ++i) {
        const CorrelationVector a = sample_tetrahedron(13, 2 * i);
        const CorrelationVector b = sample_tetrahedron(13, 2 * i + 1);
        const CorrelationVector mid(0.5 * (a.c1 + b.c1), 0.5 * (a.c2 + b.c2), 0.5 * (a.c3 + b.c3));
        REQUIRE(is_physical(mid));
    }
}

TEST_CASE("correlation components outside [-1,1] are rejected") {
    REQUIRE_THROWS_AS(CorrelationVector(1.5, 0.0, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(CorrelationVector(0.0, -1.1, 0.0), std::invalid_argument);
}

TEST_CASE("pauli expectation helper is consistent with direct traces") {
    const DensityMatrix rho = bell_density_matrix({0.4, -0.2, 0.1});
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j) {
            const double direct = std::real(trace(rho.m * kron_pauli(i, j)));
            REQUIRE(pauli_expectation(rho, i, j) == Catch::Approx(direct).margin(1e-14));
        }
}
