// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "discordlab/hermitian_eig.hpp"
#include "discordlab/matrix.hpp"

namespace discordlab {

namespace tol {
inline constexpr double hermitian = 1e-12;
inline constexpr double trace_one = 1e-12;
inline constexpr double psd = 1e-10;
inline constexpr double eigen_residual = 1e-10;
}  // namespace tol

/// Correlation triple (c1, c2, c3) of a Bell-diagonal two-qubit state,
/// rho = (I (x) I + sum_i c_i sigma_i (x) sigma_i) / 4.
/// Components must lie in [-1, 1]; points outside the physical tetrahedron
/// are representable on purpose, so that region scans can probe the full cube.
struct CorrelationVector {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;

    CorrelationVector() = default;
    CorrelationVector(double a, double b, double c) : c1(a), c2(b), c3(c) {
        constexpr double slack = 1e-9;
        if (std::abs(c1) > 1.0 + slack || std::abs(c2) > 1.0 + slack || std::abs(c3) > 1.0 + slack)
            throw std::invalid_argument("correlation components must lie in [-1, 1]");
    }

    double operator[](int i) const { return i == 0 ? c1 : (i == 1 ? c2 : c3); }
};

/// 4x4 density operator. Construction via bell_density_matrix or from_matrix;
/// the latter enforces hermiticity and unit trace (positivity is not enforced,
/// unphysical probes are allowed by design).
struct DensityMatrix {
    Mat4 m;

    static DensityMatrix from_matrix(const Mat4& raw) {
        if (hermiticity_defect(raw) > tol::hermitian)
            throw std::invalid_argument("density matrix is not Hermitian within tolerance");
        if (std::abs(trace(raw) - cplx(1.0, 0.0)) > tol::trace_one)
            throw std::invalid_argument("density matrix trace differs from 1 beyond tolerance");
        return DensityMatrix{raw};
    }
};

/// Hermitian but not necessarily unit-trace or positive; the operand type of
/// the trace norm (differences of density matrices land here).
using HermitianMatrix = Mat4;

/// Direct assembly of the two-block matrix form. No physicality requirement.
inline DensityMatrix bell_density_matrix(const CorrelationVector& c) {
    Mat4 m;
    m(0, 0) = m(3, 3) = 0.25 * (1.0 + c.c3);
    m(1, 1) = m(2, 2) = 0.25 * (1.0 - c.c3);
    m(0, 3) = m(3, 0) = 0.25 * (c.c1 - c.c2);
    m(1, 2) = m(2, 1) = 0.25 * (c.c1 + c.c2);
    return DensityMatrix{m};
}

/// Closed-form spectrum of the Bell-diagonal matrix: the two 2x2 blocks give
/// (1 + c3 +- (c1 - c2))/4 and (1 - c3 +- (c1 + c2))/4. Sorted descending.
inline std::array<double, 4> eigenvalues_bell(const CorrelationVector& c) {
    std::array<double, 4> ev = {
        0.25 * (1.0 + c.c3 + (c.c1 - c.c2)),
        0.25 * (1.0 + c.c3 - (c.c1 - c.c2)),
        0.25 * (1.0 - c.c3 + (c.c1 + c.c2)),
        0.25 * (1.0 - c.c3 - (c.c1 + c.c2)),
    };
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

/// True iff c lies in the tetrahedron with vertices (1,1,-1), (-1,-1,-1),
/// (1,-1,1), (-1,1,1), i.e. all Bell eigenvalues are >= -psd tolerance.
inline bool is_physical(const CorrelationVector& c) {
    const auto ev = eigenvalues_bell(c);
    return ev.back() >= -tol::psd;
}

inline double pauli_expectation(const DensityMatrix& rho, int left, int right) {
    const Mat2 a = left == 0 ? Mat2::identity() : pauli(left);
    const Mat2 b = right == 0 ? Mat2::identity() : pauli(right);
    return std::real(trace(rho.m * kron(a, b)));
}

struct BellDecomposition {
    CorrelationVector c;
    /// Largest magnitude among local Bloch components and off-diagonal
    /// correlation-tensor entries; zero iff rho has the Bell-diagonal form.
    double residual = 0.0;
};

inline BellDecomposition decompose_bell(const DensityMatrix& rho) {
    BellDecomposition out;
    const double d1 = pauli_expectation(rho, 1, 1);
    const double d2 = pauli_expectation(rho, 2, 2);
    const double d3 = pauli_expectation(rho, 3, 3);
    out.c = CorrelationVector(std::clamp(d1, -1.0, 1.0), std::clamp(d2, -1.0, 1.0),
                              std::clamp(d3, -1.0, 1.0));
    double worst = 0.0;
    for (int i = 1; i <= 3; ++i) {
        worst = std::max(worst, std::abs(pauli_expectation(rho, i, 0)));
        worst = std::max(worst, std::abs(pauli_expectation(rho, 0, i)));
        for (int j = 1; j <= 3; ++j)
            if (i != j) worst = std::max(worst, std::abs(pauli_expectation(rho, i, j)));
    }
    out.residual = worst;
    return out;
}

/// Pauli-basis readout c_i = Tr[rho (sigma_i (x) sigma_i)]. Round-trips with
/// bell_density_matrix on Bell-diagonal input; for anything else the departure
/// is measured by decompose_bell(rho).residual.
inline CorrelationVector correlation_vector(const DensityMatrix& rho) {
    if (hermiticity_defect(rho.m) > tol::hermitian)
        throw std::invalid_argument("correlation_vector expects a Hermitian density matrix");
    if (std::abs(trace(rho.m) - cplx(1.0, 0.0)) > tol::trace_one)
        throw std::invalid_argument("correlation_vector expects a unit-trace density matrix");
    return decompose_bell(rho).c;
}

/// Eigenvalues of a Hermitian 4x4, descending. Rejects inputs whose
/// hermiticity defect exceeds tolerance; the residual contract
/// ||Mv - lambda v|| <= eigen_residual is covered by the Jacobi solver.
inline std::array<double, 4> hermitian_eigenvalues(const HermitianMatrix& m) {
    if (hermiticity_defect(m) > tol::hermitian)
        throw std::invalid_argument("hermitian_eigenvalues: input is not Hermitian within tolerance");
    return hermitian_eigenvalues_unchecked(m);
}

/// Trace norm ||M||_1 = sum of |eigenvalues| for Hermitian M.
inline double trace_norm(const HermitianMatrix& m) {
    const auto ev = hermitian_eigenvalues(m);
    double s = 0.0;
    for (double x : ev) s += std::abs(x);
    return s;
}

}  // namespace discordlab
