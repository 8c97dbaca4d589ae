// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "discordlab/dynamics.hpp"
#include "discordlab/lanczos.hpp"
#include "discordlab/qstate.hpp"

namespace discordlab {

/// Periodic XXZ ring, H = -(J/2) sum_i (sx sx + sy sy + Delta sz sz) with
/// J = 1. Even length keeps the antiferromagnetic order unfrustrated.
struct ChainSpec {
    int length = 8;
    double delta = 0.0;

    static constexpr int max_length = 16;

    ChainSpec() = default;
    ChainSpec(int l, double d) : length(l), delta(d) {
        if (length < 2 || length > max_length || length % 2 != 0)
            throw std::invalid_argument("chain length must be even and within [2, 16]");
    }
};

inline std::uint32_t rotate_left_bits(std::uint32_t s, int length) {
    const std::uint32_t mask = (1u << length) - 1u;
    return ((s << 1) | (s >> (length - 1))) & mask;
}

/// Hamiltonian restricted to a fixed total-sz sector. Basis states are the
/// bitmasks with the given up-spin count, enumerated in ascending order
/// (bit i set = spin up at site i). The matrix is real symmetric: the XY part
/// hops antiparallel neighbour pairs with amplitude -1, the ZZ part is
/// diagonal.
struct SectorHamiltonian {
    int length = 0;
    double delta = 0.0;
    int n_up = 0;
    std::vector<std::uint32_t> basis;

    std::size_t dim() const { return basis.size(); }

    std::size_t index_of(std::uint32_t state) const {
        const auto it = std::lower_bound(basis.begin(), basis.end(), state);
        return static_cast<std::size_t>(it - basis.begin());
    }

    double diagonal(std::uint32_t s) const {
        double d = 0.0;
        for (int b = 0; b < length; ++b) {
            const int b2 = (b + 1) % length;
            const bool same = (((s >> b) ^ (s >> b2)) & 1u) == 0u;
            d += same ? -0.5 * delta : 0.5 * delta;
        }
        return d;
    }

    void apply(const double* x, double* y) const {
        const std::size_t n = basis.size();
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t s = basis[i];
            double acc = diagonal(s) * x[i];
            for (int b = 0; b < length; ++b) {
                const int b2 = (b + 1) % length;
                if ((((s >> b) ^ (s >> b2)) & 1u) != 0u) {
                    const std::uint32_t flipped = s ^ ((1u << b) | (1u << b2));
                    acc -= x[index_of(flipped)];
                }
            }
            y[i] = acc;
        }
    }

    /// Row-major dense form, for small sectors and cross-checks.
    std::vector<double> dense() const {
        const std::size_t n = basis.size();
        std::vector<double> h(n * n, 0.0);
        std::vector<double> x(n, 0.0), y(n);
        for (std::size_t j = 0; j < n; ++j) {
            x[j] = 1.0;
            apply(x.data(), y.data());
            for (std::size_t i = 0; i < n; ++i) h[i * n + j] = y[i];
            x[j] = 0.0;
        }
        return h;
    }
};

inline SectorHamiltonian build_hamiltonian(const ChainSpec& spec, int n_up) {
    if (n_up < 0 || n_up > spec.length)
        throw std::invalid_argument("up-spin count outside [0, length]");
    SectorHamiltonian h;
    h.length = spec.length;
    h.delta = spec.delta;
    h.n_up = n_up;
    const std::uint32_t top = 1u << spec.length;
    for (std::uint32_t s = 0; s < top; ++s)
        if (std::popcount(s) == n_up) h.basis.push_back(s);
    return h;
}

struct GroundStateResult {
    double energy_density = 0.0;
    int degeneracy = 1;
    double g_xx = 0.0;
    double g_yy = 0.0;
    double g_zz = 0.0;
    CorrelationVector c;
    DensityMatrix two_site_rdm;
};

namespace detail {

/// Bond-averaged two-site reduced density matrix of a sector state.
/// Amplitudes are real; for each bond the states are bucketed by the spin
/// configuration away from the bond and the 4x4 block is the sum of outer
/// products of the bucket weights. Spin up maps to qubit |0>.
inline void accumulate_rdm(const SectorHamiltonian& h, const std::vector<double>& vec, double weight,
                           double rdm[4][4]) {
    const int L = h.length;
    std::unordered_map<std::uint32_t, std::array<double, 4>> buckets;
    buckets.reserve(h.dim());
    for (int bond = 0; bond < L; ++bond) {
        const int i = bond, j = (bond + 1) % L;
        const std::uint32_t mi = 1u << i, mj = 1u << j;
        buckets.clear();
        for (std::size_t k = 0; k < h.basis.size(); ++k) {
            const std::uint32_t s = h.basis[k];
            const std::uint32_t rest = s & ~(mi | mj);
            const int loc = (((s & mi) ? 0 : 1) << 1) | ((s & mj) ? 0 : 1);
            auto [it, inserted] = buckets.try_emplace(rest, std::array<double, 4>{});
            it->second[static_cast<std::size_t>(loc)] += vec[k];
        }
        const double w = weight / static_cast<double>(L);
        for (const auto& [rest, amp] : buckets) {
            for (int a = 0; a < 4; ++a) {
                if (amp[static_cast<std::size_t>(a)] == 0.0) continue;
                for (int b = 0; b < 4; ++b)
                    rdm[a][b] += w * amp[static_cast<std::size_t>(a)] * amp[static_cast<std::size_t>(b)];
            }
        }
    }
}

/// Global spin flip conjugates the reduced state by sigma_x (x) sigma_x.
inline void flip_rdm(const double in[4][4], double out[4][4]) {
    static constexpr int perm[4] = {3, 2, 1, 0};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) out[a][b] = in[perm[a]][perm[b]];
}

inline std::uint64_t sector_seed(int length, int n_up) {
    return SplitMix64::scramble((static_cast<std::uint64_t>(length) << 32) ^
                                static_cast<std::uint64_t>(n_up) ^ 0x78787a636861696eull);
}

}  // namespace detail

/// Lowest-energy state over all magnetization sectors. Sector ground states
/// are simple (the hopping graph of a sector is connected and the off-diagonal
/// entries are nonpositive), so degeneracy only arises across sectors; the
/// spin-flip partner of sector k is sector L-k with an identical spectrum.
/// Degenerate members within 1e-9 of the minimum enter an equal-weight
/// mixture, which restores the symmetry the Bell-diagonal form needs (local
/// magnetization cancels between the +-m partners).
inline GroundStateResult ground_state(const ChainSpec& spec) {
    const int L = spec.length;
    struct SectorSolve {
        int n_up;
        double energy;
        std::vector<double> vec;
    };
    std::vector<SectorSolve> solves;
    double emin = 0.0;
    for (int k = 0; k <= L / 2; ++k) {
        const SectorHamiltonian h = build_hamiltonian(spec, k);
        SectorSolve s;
        s.n_up = k;
        if (h.dim() == 1) {
            s.energy = h.diagonal(h.basis[0]);
            s.vec = {1.0};
        } else {
            const auto r = lanczos_lowest(
                h.dim(), [&h](const double* x, double* y) { h.apply(x, y); },
                detail::sector_seed(L, k), 1e-10, std::min<std::size_t>(h.dim(), 500));
            s.energy = r.eigenvalue;
            s.vec = r.vector;
        }
        if (solves.empty() || s.energy < emin) emin = s.energy;
        solves.push_back(std::move(s));
    }

    constexpr double degeneracy_window = 1e-9;
    double rdm[4][4] = {};
    int members = 0;
    for (const auto& s : solves) {
        if (s.energy > emin + degeneracy_window) continue;
        members += (s.n_up == L - s.n_up) ? 1 : 2;
    }
    for (const auto& s : solves) {
        if (s.energy > emin + degeneracy_window) continue;
        const SectorHamiltonian h = build_hamiltonian(spec, s.n_up);
        double part[4][4] = {};
        detail::accumulate_rdm(h, s.vec, 1.0, part);
        const double w = 1.0 / static_cast<double>(members);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) rdm[a][b] += w * part[a][b];
        if (s.n_up != L - s.n_up) {
            double mirrored[4][4];
            detail::flip_rdm(part, mirrored);
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) rdm[a][b] += w * mirrored[a][b];
        }
    }

    Mat4 m;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) m(a, b) = rdm[a][b];

    GroundStateResult out;
    out.two_site_rdm = DensityMatrix::from_matrix(m);
    out.energy_density = emin / static_cast<double>(L);
    out.degeneracy = members;
    out.g_xx = pauli_expectation(out.two_site_rdm, 1, 1);
    out.g_yy = pauli_expectation(out.two_site_rdm, 2, 2);
    out.g_zz = pauli_expectation(out.two_site_rdm, 3, 3);
    const double c1 = 0.5 * (out.g_xx + out.g_yy);
    out.c = CorrelationVector(std::clamp(c1, -1.0, 1.0), std::clamp(c1, -1.0, 1.0),
                              std::clamp(out.g_zz, -1.0, 1.0));
    return out;
}

struct HellmannFeynmanResult {
    double residual_c1 = 0.0;
    double residual_c3 = 0.0;
    /// set within 0.1 of the critical anisotropies Delta = +-1, where
    /// finite-size level crossings corrupt the energy derivative
    bool near_critical_warning = false;
};

/// Consistency of direct correlators with the energy-derivative identities
/// c1 = Delta d(eps)/d(Delta) - eps and c3 = -2 d(eps)/d(Delta), the
/// derivative taken by central differences of the ground energy density.
inline HellmannFeynmanResult hellmann_feynman_check(const ChainSpec& spec, double step = 1e-4) {
    if (step <= 0.0) throw std::invalid_argument("hellmann_feynman_check: step must be positive");
    const GroundStateResult gs = ground_state(spec);
    const double ep = ground_state(ChainSpec(spec.length, spec.delta + step)).energy_density;
    const double em = ground_state(ChainSpec(spec.length, spec.delta - step)).energy_density;
    const double deriv = (ep - em) / (2.0 * step);
    HellmannFeynmanResult out;
    out.residual_c1 = std::abs(gs.c.c1 - (spec.delta * deriv - gs.energy_density));
    out.residual_c3 = std::abs(gs.c.c3 - (-2.0 * deriv));
    out.near_critical_warning =
        std::min(std::abs(spec.delta - 1.0), std::abs(spec.delta + 1.0)) < 0.1;
    return out;
}

struct SuddenChangeCell {
    ChannelKind kind = ChannelKind::bf;
    int analytic_count = 0;
    int numeric_count = 0;
    bool degenerate = false;
    std::vector<double> points;
};

struct SuddenChangeRow {
    double delta = 0.0;
    GroundStateResult gs;
    std::vector<SuddenChangeCell> cells;
};

/// Sudden-change census of ground-state correlations under each channel:
/// analytic critical points cross-checked against numeric kink detection.
inline std::vector<SuddenChangeRow> xxz_sudden_change_table(const std::vector<double>& deltas,
                                                            int length,
                                                            const std::vector<ChannelKind>& channels,
                                                            std::size_t steps = 1000) {
    std::vector<SuddenChangeRow> rows;
    rows.reserve(deltas.size());
    for (double d : deltas) {
        SuddenChangeRow row;
        row.delta = d;
        row.gs = ground_state(ChainSpec(length, d));
        for (ChannelKind kind : channels) {
            const CriticalPointReport rep = critical_points(row.gs.c, kind);
            const Trajectory t = trajectory(row.gs.c, kind, steps);
            SuddenChangeCell cell;
            cell.kind = kind;
            cell.analytic_count = static_cast<int>(rep.points.size());
            cell.numeric_count = static_cast<int>(detect_kinks(t, CurveSelector::dg1).size());
            cell.degenerate = rep.degenerate;
            cell.points = rep.points;
            row.cells.push_back(std::move(cell));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Neville extrapolation to 1/L^2 -> 0 of a finite-size sequence.
inline double richardson_extrapolate(const std::vector<std::pair<int, double>>& by_length) {
    if (by_length.size() < 2)
        throw std::invalid_argument("richardson_extrapolate needs at least two lengths");
    std::vector<double> x, t;
    for (const auto& [l, v] : by_length) {
        x.push_back(1.0 / (static_cast<double>(l) * l));
        t.push_back(v);
    }
    for (std::size_t m = 1; m < t.size(); ++m)
        for (std::size_t i = 0; i + m < t.size(); ++i)
            t[i] = t[i + 1] + (t[i + 1] - t[i]) * x[i + m] / (x[i] - x[i + m]);
    return t[0];
}

struct ThermoCorrelations {
    double c1 = 0.0;
    double c3 = 0.0;
};

inline ThermoCorrelations extrapolate_correlations(double delta, const std::vector<int>& lengths) {
    std::vector<std::pair<int, double>> c1s, c3s;
    for (int l : lengths) {
        const GroundStateResult gs = ground_state(ChainSpec(l, delta));
        c1s.emplace_back(l, gs.c.c1);
        c3s.emplace_back(l, gs.c.c3);
    }
    return {richardson_extrapolate(c1s), richardson_extrapolate(c3s)};
}

}  // namespace discordlab
