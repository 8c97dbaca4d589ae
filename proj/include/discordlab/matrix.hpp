// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace discordlab {

using cplx = std::complex<double>;

/// Small dense complex matrix with value semantics, row-major storage.
/// Everything in this library lives in dimension 2 (one qubit) or 4 (two
/// qubits), so the size is a compile-time constant.
template <int N>
struct MatC {
    std::array<cplx, static_cast<std::size_t>(N) * N> a{};

    cplx& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * N + c]; }
    const cplx& operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * N + c]; }

    static MatC identity() {
        MatC m;
        for (int i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    MatC& operator+=(const MatC& o) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += o.a[i];
        return *this;
    }
    MatC& operator-=(const MatC& o) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] -= o.a[i];
        return *this;
    }
    MatC& operator*=(cplx s) {
        for (auto& x : a) x *= s;
        return *this;
    }

    friend MatC operator+(MatC l, const MatC& r) { return l += r; }
    friend MatC operator-(MatC l, const MatC& r) { return l -= r; }
    friend MatC operator*(MatC l, cplx s) { return l *= s; }
    friend MatC operator*(cplx s, MatC r) { return r *= s; }

    friend MatC operator*(const MatC& l, const MatC& r) {
        MatC out;
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k) {
                const cplx lik = l(i, k);
                if (lik == cplx{}) continue;
                for (int j = 0; j < N; ++j) out(i, j) += lik * r(k, j);
            }
        return out;
    }
};

using Mat2 = MatC<2>;
using Mat4 = MatC<4>;

template <int N>
MatC<N> adjoint(const MatC<N>& m) {
    MatC<N> out;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) out(i, j) = std::conj(m(j, i));
    return out;
}

template <int N>
cplx trace(const MatC<N>& m) {
    cplx t{};
    for (int i = 0; i < N; ++i) t += m(i, i);
    return t;
}

inline Mat4 kron(const Mat2& l, const Mat2& r) {
    Mat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l2 = 0; l2 < 2; ++l2)
                    out(2 * i + k, 2 * j + l2) = l(i, j) * r(k, l2);
    return out;
}

/// max |m_ij - conj(m_ji)| over all entries; zero for exactly Hermitian input
template <int N>
double hermiticity_defect(const MatC<N>& m) {
    double worst = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j) worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    return worst;
}

template <int N>
double max_abs(const MatC<N>& m) {
    double worst = 0.0;
    for (const auto& x : m.a) worst = std::max(worst, std::abs(x));
    return worst;
}

/// sigma_1, sigma_2, sigma_3 for i in {1,2,3}
inline Mat2 pauli(int i) {
    Mat2 s;
    switch (i) {
        case 1:
            s(0, 1) = 1.0;
            s(1, 0) = 1.0;
            break;
        case 2:
            s(0, 1) = cplx(0.0, -1.0);
            s(1, 0) = cplx(0.0, 1.0);
            break;
        default:
            s(0, 0) = 1.0;
            s(1, 1) = -1.0;
            break;
    }
    return s;
}

}  // namespace discordlab
