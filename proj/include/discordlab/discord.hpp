// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "discordlab/parallel.hpp"
#include "discordlab/qstate.hpp"

namespace discordlab {

/// Unit vector selecting the local projective measurement
/// Pi_{+-} = (I +- n.sigma)/2 on the first qubit.
struct MeasurementDirection {
    double n1 = 0.0;
    double n2 = 0.0;
    double n3 = 1.0;

    MeasurementDirection() = default;
    MeasurementDirection(double a, double b, double c) : n1(a), n2(b), n3(c) {
        if (std::abs(norm() - 1.0) > 1e-12)
            throw std::invalid_argument("measurement direction must be a unit vector");
    }

    double norm() const { return std::sqrt(n1 * n1 + n2 * n2 + n3 * n3); }

    static MeasurementDirection normalized(double a, double b, double c) {
        const double r = std::sqrt(a * a + b * b + c * c);
        if (r == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
        return MeasurementDirection(a / r, b / r, c / r);
    }
};

struct DiscordValue {
    enum class Method { analytic, oracle };
    double value = 0.0;
    Method method = Method::analytic;
};

namespace detail {
inline void require_physical(const CorrelationVector& c, const char* who) {
    if (!is_physical(c)) throw std::domain_error(std::string(who) + ": state is not physical");
}
inline std::array<double, 3> sorted_abs(const CorrelationVector& c) {
    std::array<double, 3> a = {std::abs(c.c1), std::abs(c.c2), std::abs(c.c3)};
    std::sort(a.begin(), a.end());
    return a;
}
}  // namespace detail

/// 1-norm geometric discord of a Bell-diagonal state: the intermediate value
/// of {|c1|, |c2|, |c3|}. Ties need no special handling, the middle of the
/// sorted triple is the shared value.
inline DiscordValue gqd_1norm(const CorrelationVector& c) {
    detail::require_physical(c, "gqd_1norm");
    return {detail::sorted_abs(c)[1], DiscordValue::Method::analytic};
}

/// 2-norm geometric discord: (sum_i c_i^2 - max_i c_i^2) / 4, equivalently
/// (min^2 + int^2)/4 of the absolute values.
inline DiscordValue gqd_2norm(const CorrelationVector& c) {
    detail::require_physical(c, "gqd_2norm");
    const auto a = detail::sorted_abs(c);
    return {0.25 * (a[0] * a[0] + a[1] * a[1]), DiscordValue::Method::analytic};
}

/// Measurement map Phi(rho) = sum_{k=+-} (Pi_k (x) I) rho (Pi_k (x) I),
/// built from explicit projector sandwiches so it stays an independent route
/// from the closed-form discord expressions.
inline DensityMatrix measure_along(const CorrelationVector& c, const MeasurementDirection& n) {
    if (std::abs(n.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("measure_along: direction must be unit length");
    const DensityMatrix rho = bell_density_matrix(c);
    Mat2 ns;
    ns += cplx(n.n1, 0.0) * pauli(1);
    ns += cplx(n.n2, 0.0) * pauli(2);
    ns += cplx(n.n3, 0.0) * pauli(3);
    const Mat2 half = cplx(0.5, 0.0) * Mat2::identity();
    const Mat2 pp = half + cplx(0.5, 0.0) * ns;
    const Mat2 pm = half - cplx(0.5, 0.0) * ns;
    const Mat4 projp = kron(pp, Mat2::identity());
    const Mat4 projm = kron(pm, Mat2::identity());
    return DensityMatrix{projp * rho.m * projp + projm * rho.m * projm};
}

/// || rho - Phi(rho) ||_1 for the measurement along n.
inline double trace_distance_to_measured(const CorrelationVector& c, const MeasurementDirection& n) {
    detail::require_physical(c, "trace_distance_to_measured");
    const DensityMatrix rho = bell_density_matrix(c);
    const DensityMatrix measured = measure_along(c, n);
    return trace_norm(rho.m - measured.m);
}

/// Deterministic Fibonacci lattice covering the upper hemisphere; the map
/// n -> -n leaves Phi invariant, so half the sphere suffices.
inline std::vector<MeasurementDirection> fibonacci_hemisphere(std::size_t count) {
    std::vector<MeasurementDirection> dirs;
    dirs.reserve(count);
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < count; ++i) {
        const double z = (static_cast<double>(i) + 0.5) / static_cast<double>(count);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden_angle * static_cast<double>(i);
        dirs.push_back(MeasurementDirection::normalized(r * std::cos(phi), r * std::sin(phi), z));
    }
    return dirs;
}

struct OracleResult {
    double value = 0.0;
    MeasurementDirection direction;
    std::size_t grid_index = 0;
};

namespace detail {

/// Golden-section minimization on [a, b]; assumes local unimodality, which the
/// trace-distance objective satisfies near its minimizer.
template <class F>
double golden_section(F&& f, double a, double b, double tol_x) {
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (std::abs(b - a) > tol_x) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

/// Coordinate-wise descent in a local orthographic chart around n0. The chart
/// avoids the polar coordinate singularity of (theta, phi) when the minimizer
/// sits on a coordinate axis.
inline OracleResult refine_direction(const CorrelationVector& c, const MeasurementDirection& n0,
                                     double initial_width) {
    const double nx = n0.n1, ny = n0.n2, nz = n0.n3;
    double ax = 1.0, ay = 0.0, az = 0.0;
    if (std::abs(nx) > 0.9) {
        ax = 0.0;
        ay = 1.0;
    }
    // e1 = n0 x a, e2 = n0 x e1
    double e1x = ny * az - nz * ay, e1y = nz * ax - nx * az, e1z = nx * ay - ny * ax;
    const double r1 = std::sqrt(e1x * e1x + e1y * e1y + e1z * e1z);
    e1x /= r1;
    e1y /= r1;
    e1z /= r1;
    const double e2x = ny * e1z - nz * e1y;
    const double e2y = nz * e1x - nx * e1z;
    const double e2z = nx * e1y - ny * e1x;

    const auto eval = [&](double u, double v) {
        const double px = nx + u * e1x + v * e2x;
        const double py = ny + u * e1y + v * e2y;
        const double pz = nz + u * e1z + v * e2z;
        return trace_distance_to_measured(c, MeasurementDirection::normalized(px, py, pz));
    };

    double u = 0.0, v = 0.0, w = initial_width;
    while (w >= 1e-8) {
        u = golden_section([&](double x) { return eval(x, v); }, u - w, u + w, 1e-9);
        v = golden_section([&](double x) { return eval(u, x); }, v - w, v + w, 1e-9);
        w *= 0.5;
    }
    OracleResult out;
    out.direction = MeasurementDirection::normalized(nx + u * e1x + v * e2x, ny + u * e1y + v * e2y,
                                                     nz + u * e1z + v * e2z);
    out.value = trace_distance_to_measured(c, out.direction);
    return out;
}

}  // namespace detail

/// Brute-force minimization of the trace distance over measured states.
/// The search family is Phi(rho) for all unit n; the closest classical-quantum
/// state of a Bell-diagonal state is assumed to lie in this family, so the
/// minimum over it equals the full classical-quantum distance. Grid evaluation
/// is data parallel; the reduction keeps the lexicographically smallest grid
/// index among ties, so the result is identical for any worker count. Local
/// refinement follows the grid winner.
inline OracleResult oracle_minimize(const CorrelationVector& c, std::size_t resolution,
                                    bool refine = true, int workers = 0) {
    detail::require_physical(c, "oracle_minimize");
    if (resolution < 100) throw std::invalid_argument("oracle resolution must be at least 100");
    const auto dirs = fibonacci_hemisphere(resolution);
    std::vector<double> vals(dirs.size());
    parallel_for(
        dirs.size(), [&](std::size_t i) { vals[i] = trace_distance_to_measured(c, dirs[i]); },
        workers);
    std::size_t best = 0;
    for (std::size_t i = 1; i < vals.size(); ++i)
        if (vals[i] < vals[best]) best = i;

    OracleResult grid{vals[best], dirs[best], best};
    if (!refine) return grid;
    const double spacing = 2.0 * std::sqrt(4.0 * std::numbers::pi / static_cast<double>(resolution));
    OracleResult refined = detail::refine_direction(c, dirs[best], spacing);
    refined.grid_index = best;
    if (refined.value > grid.value) return grid;
    return refined;
}

/// Oracle-tagged discord value; validates the closed-form intermediate rule
/// without sharing any code path with it.
inline DiscordValue gqd_1norm_oracle(const CorrelationVector& c, std::size_t resolution,
                                     bool refine = true, int workers = 0) {
    return {oracle_minimize(c, resolution, refine, workers).value, DiscordValue::Method::oracle};
}

}  // namespace discordlab
