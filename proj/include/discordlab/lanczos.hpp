// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "discordlab/rng.hpp"

namespace discordlab {

/// Implicit-shift QL diagonalization of a symmetric tridiagonal matrix.
/// diag[i] is overwritten with the (unsorted) eigenvalues, off[i] couples
/// rows i and i+1. If z is non-null it must hold an n-by-n identity on entry
/// (row-major) and accumulates eigenvectors: column k belongs to diag[k].
inline void tridiagonal_ql(std::vector<double>& diag, std::vector<double>& off,
                           std::vector<double>* z, std::size_t n) {
    if (n == 0) return;
    off.resize(n, 0.0);
    off[n - 1] = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        for (int iter = 0;; ++iter) {
            std::size_t m = l;
            for (; m + 1 < n; ++m) {
                const double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
                if (std::abs(off[m]) <= 2.3e-16 * dd + 1e-300) break;
            }
            if (m == l) break;
            if (iter == 60) throw std::runtime_error("tridiagonal QL failed to converge");
            double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            double r = std::hypot(g, 1.0);
            g = diag[m] - diag[l] + off[l] / (g + (g >= 0.0 ? r : -r));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (std::size_t i = m; i-- > l;) {
                double f = s * off[i];
                const double b = c * off[i];
                r = std::hypot(f, g);
                off[i + 1] = r;
                if (r == 0.0) {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                if (z) {
                    double* zd = z->data();
                    for (std::size_t k = 0; k < n; ++k) {
                        const double zk0 = zd[k * n + i];
                        const double zk1 = zd[k * n + i + 1];
                        zd[k * n + i + 1] = s * zk0 + c * zk1;
                        zd[k * n + i] = c * zk0 - s * zk1;
                    }
                }
            }
            if (underflow) continue;
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
}

struct LanczosResult {
    double eigenvalue = 0.0;
    std::vector<double> vector;
    int iterations = 0;
    double residual = 0.0;
};

namespace detail {
/// Lowest eigenpair of the tridiagonal (alpha, beta) of size m.
inline void tridiag_lowest(const std::vector<double>& alpha, const std::vector<double>& beta,
                           std::size_t m, double& theta, std::vector<double>& y) {
    std::vector<double> d(alpha.begin(), alpha.begin() + static_cast<std::ptrdiff_t>(m));
    std::vector<double> e(m, 0.0);
    for (std::size_t i = 0; i + 1 < m; ++i) e[i] = beta[i];
    std::vector<double> z(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) z[i * m + i] = 1.0;
    tridiagonal_ql(d, e, &z, m);
    std::size_t kmin = 0;
    for (std::size_t k = 1; k < m; ++k)
        if (d[k] < d[kmin]) kmin = k;
    theta = d[kmin];
    y.resize(m);
    for (std::size_t j = 0; j < m; ++j) y[j] = z[j * m + kmin];
}
}  // namespace detail

/// Lowest eigenpair of a real symmetric operator given as a matvec callable.
/// Full reorthogonalization keeps the Krylov basis clean and the deterministic
/// start vector makes runs reproducible. Restarts from the Ritz vector when
/// the residual target is missed within one Krylov pass; throws after the
/// restart budget is exhausted.
template <class MatVec>
LanczosResult lanczos_lowest(std::size_t dim, MatVec&& apply, std::uint64_t seed,
                             double tolerance = 1e-10, std::size_t max_subspace = 400,
                             int max_restarts = 6) {
    if (dim == 0) throw std::invalid_argument("lanczos_lowest: empty operator");
    if (dim == 1) {
        std::vector<double> x{1.0}, y{0.0};
        apply(x.data(), y.data());
        return {y[0], {1.0}, 1, 0.0};
    }

    std::vector<double> v(dim);
    SplitMix64 rng(seed, 0x6c616e637a6f73ull);
    for (auto& x : v) x = rng.next_symmetric();
    double nrm = 0.0;
    for (double x : v) nrm += x * x;
    nrm = std::sqrt(nrm);
    for (auto& x : v) x /= nrm;

    LanczosResult best;
    const std::size_t m_cap = std::min(max_subspace, dim);

    for (int restart = 0; restart <= max_restarts; ++restart) {
        std::vector<std::vector<double>> q;
        std::vector<double> alpha, beta;
        q.push_back(v);
        std::vector<double> w(dim);

        for (std::size_t j = 0; j < m_cap; ++j) {
            apply(q[j].data(), w.data());
            double a = 0.0;
            for (std::size_t i = 0; i < dim; ++i) a += q[j][i] * w[i];
            alpha.push_back(a);
            for (std::size_t i = 0; i < dim; ++i) w[i] -= a * q[j][i];
            if (j > 0)
                for (std::size_t i = 0; i < dim; ++i) w[i] -= beta[j - 1] * q[j - 1][i];
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& qk : q) {
                    double dot = 0.0;
                    for (std::size_t i = 0; i < dim; ++i) dot += qk[i] * w[i];
                    if (dot != 0.0)
                        for (std::size_t i = 0; i < dim; ++i) w[i] -= dot * qk[i];
                }
            }
            double b = 0.0;
            for (double x : w) b += x * x;
            b = std::sqrt(b);
            beta.push_back(b);

            const bool last = b <= 1e-14 || j + 1 == m_cap || q.size() == dim;
            if (!last && (j < 20 || j % 10 != 0)) {
                std::vector<double> next(dim);
                for (std::size_t i = 0; i < dim; ++i) next[i] = w[i] / b;
                q.push_back(std::move(next));
                continue;
            }
            // cheap residual bound beta_j * |y_m| decides whether to stop
            double theta;
            std::vector<double> y;
            detail::tridiag_lowest(alpha, beta, alpha.size(), theta, y);
            const double bound = b * std::abs(y.back());
            if (last || bound <= 0.1 * tolerance) break;
            std::vector<double> next(dim);
            for (std::size_t i = 0; i < dim; ++i) next[i] = w[i] / b;
            q.push_back(std::move(next));
        }

        const std::size_t m = alpha.size();
        double theta;
        std::vector<double> y;
        detail::tridiag_lowest(alpha, beta, m, theta, y);

        std::vector<double> ritz(dim, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            if (y[j] == 0.0) continue;
            for (std::size_t i = 0; i < dim; ++i) ritz[i] += y[j] * q[j][i];
        }
        double rn = 0.0;
        for (double x : ritz) rn += x * x;
        rn = std::sqrt(rn);
        for (auto& x : ritz) x /= rn;

        apply(ritz.data(), w.data());
        double rayleigh = 0.0;
        for (std::size_t i = 0; i < dim; ++i) rayleigh += ritz[i] * w[i];
        double res = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const double r = w[i] - rayleigh * ritz[i];
            res += r * r;
        }
        res = std::sqrt(res);

        best.eigenvalue = rayleigh;
        best.vector = ritz;
        best.iterations += static_cast<int>(m);
        best.residual = res;
        if (res <= tolerance || m == dim) {
            std::size_t imax = 0;
            for (std::size_t i = 1; i < dim; ++i)
                if (std::abs(best.vector[i]) > std::abs(best.vector[imax])) imax = i;
            if (best.vector[imax] < 0.0)
                for (auto& x : best.vector) x = -x;
            return best;
        }
        v = best.vector;
    }
    throw std::runtime_error("lanczos_lowest: residual target not reached");
}

}  // namespace discordlab
