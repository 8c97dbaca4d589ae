// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "discordlab/matrix.hpp"

namespace discordlab {

template <int N>
struct EigResult {
    std::array<double, N> values{};  // descending
    MatC<N> vectors;                 // column k is the eigenvector of values[k]
};

/// Cyclic Jacobi diagonalization of a complex Hermitian matrix.
/// Rotations annihilate one off-diagonal pair at a time; the scheme converges
/// quadratically once the off-diagonal mass is small. Input hermiticity is the
/// caller's contract (see hermitian_eigenvalues in qstate.hpp); here the upper
/// triangle is trusted.
template <int N>
EigResult<N> hermitian_eigensystem(const MatC<N>& input) {
    MatC<N> m = input;
    // symmetrize against harmless representation noise
    for (int i = 0; i < N; ++i) {
        m(i, i) = cplx(std::real(m(i, i)), 0.0);
        for (int j = i + 1; j < N; ++j) {
            const cplx avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = avg;
            m(j, i) = std::conj(avg);
        }
    }
    MatC<N> v = MatC<N>::identity();

    double scale = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) scale = std::max(scale, std::abs(m(i, j)));
    if (scale == 0.0) scale = 1.0;

    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) off = std::max(off, std::abs(m(i, j)));
        if (off <= 1e-15 * scale) break;

        for (int p = 0; p < N; ++p) {
            for (int q = p + 1; q < N; ++q) {
                const double apq = std::abs(m(p, q));
                if (apq <= 1e-18 * scale) continue;
                const cplx phase = m(p, q) / apq;
                const double tau = (std::real(m(q, q)) - std::real(m(p, p))) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cplx s = phase * (t * c);

                // right-multiply columns p,q of m and v by the rotation,
                // left-multiply rows p,q of m by its adjoint
                for (int k = 0; k < N; ++k) {
                    const cplx mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - std::conj(s) * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (int k = 0; k < N; ++k) {
                    const cplx mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = std::conj(s) * mpk + c * mqk;
                }
                for (int k = 0; k < N; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - std::conj(s) * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    EigResult<N> out;
    std::array<int, N> order{};
    for (int i = 0; i < N; ++i) order[static_cast<std::size_t>(i)] = i;
    std::array<double, N> diag{};
    for (int i = 0; i < N; ++i) diag[static_cast<std::size_t>(i)] = std::real(m(i, i));
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return diag[static_cast<std::size_t>(a)] > diag[static_cast<std::size_t>(b)]; });
    for (int k = 0; k < N; ++k) {
        const int src = order[static_cast<std::size_t>(k)];
        out.values[static_cast<std::size_t>(k)] = diag[static_cast<std::size_t>(src)];
        for (int r = 0; r < N; ++r) out.vectors(r, k) = v(r, src);
    }
    return out;
}

template <int N>
std::array<double, N> hermitian_eigenvalues_unchecked(const MatC<N>& m) {
    return hermitian_eigensystem(m).values;
}

}  // namespace discordlab
