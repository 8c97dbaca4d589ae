// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "discordlab/channels.hpp"
#include "discordlab/discord.hpp"
#include "discordlab/parallel.hpp"
#include "discordlab/rng.hpp"

namespace discordlab {

struct TrajectorySample {
    double param = 0.0;
    CorrelationVector c;
    double dg = 0.0;  // 1-norm geometric discord
    double d2 = 0.0;  // 2-norm geometric discord
};

struct Trajectory {
    ChannelKind kind = ChannelKind::bf;
    CorrelationVector initial;
    std::vector<TrajectorySample> samples;
};

enum class CurveSelector { dg1, dg2 };

/// Uniform sweep of the decoherence parameter over [0, 1].
inline Trajectory trajectory(const CorrelationVector& c, ChannelKind kind, std::size_t steps) {
    if (steps < 2) throw std::invalid_argument("trajectory needs at least 2 steps");
    if (!is_physical(c)) throw std::domain_error("trajectory: state is not physical");
    Trajectory t{kind, c, {}};
    t.samples.resize(steps);
    const double h = 1.0 / static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i) {
        const double p = i + 1 == steps ? 1.0 : std::min(1.0, static_cast<double>(i) * h);
        TrajectorySample s;
        s.param = p;
        s.c = evolve_correlations(c, kind, p);
        s.dg = gqd_1norm(s.c).value;
        s.d2 = gqd_2norm(s.c).value;
        t.samples[i] = s;
    }
    return t;
}

namespace detail {
inline std::vector<double> curve_of(const Trajectory& t, CurveSelector which) {
    std::vector<double> f(t.samples.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = which == CurveSelector::dg1 ? t.samples[i].dg : t.samples[i].d2;
    return f;
}
}  // namespace detail

/// Slope-discontinuity finder on a sampled curve. A cell is flagged when its
/// normalized second difference exceeds 10x the median of the curve (plus a
/// rounding-noise floor) and dominates its two-cells-away neighbours, which
/// separates genuine kinks from the smooth (1-p)^2 curvature background.
/// Adjacent flagged cells are one kink straddling a sample; they are merged
/// and located by the |d2|-weighted centroid. Boundary cells are never
/// reported (the second difference is undefined there).
inline std::vector<double> detect_kinks(const Trajectory& t, CurveSelector which) {
    const std::vector<double> f = detail::curve_of(t, which);
    const std::size_t n = f.size();
    if (n < 50) throw std::invalid_argument("detect_kinks needs a trajectory with at least 50 samples");
    const double h = t.samples[1].param - t.samples[0].param;

    std::vector<double> d2(n - 2);
    double fmax = 0.0;
    for (double x : f) fmax = std::max(fmax, std::abs(x));
    for (std::size_t i = 0; i + 2 < n; ++i)
        d2[i] = std::abs((f[i + 2] - 2.0 * f[i + 1] + f[i]) / (h * h));

    std::vector<double> sorted = d2;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double median = sorted[sorted.size() / 2];
    const double noise_floor = 64.0 * 2.220446049250313e-16 * std::max(fmax, 1e-300) / (h * h);
    const double threshold = std::max(10.0 * median, noise_floor);

    std::vector<std::size_t> flagged;
    for (std::size_t i = 0; i < d2.size(); ++i) {
        const double left = i >= 2 ? d2[i - 2] : 0.0;
        const double right = i + 2 < d2.size() ? d2[i + 2] : 0.0;
        if (d2[i] > threshold && d2[i] >= 2.0 * std::max(left, right)) flagged.push_back(i);
    }

    std::vector<double> kinks;
    std::size_t j = 0;
    while (j < flagged.size()) {
        std::size_t k = j;
        while (k + 1 < flagged.size() && flagged[k + 1] - flagged[k] <= 2) ++k;
        double weight = 0.0, pos = 0.0;
        for (std::size_t m = j; m <= k; ++m) {
            weight += d2[flagged[m]];
            pos += t.samples[flagged[m] + 1].param * d2[flagged[m]];
        }
        kinks.push_back(pos / weight);
        j = k + 1;
    }
    return kinks;
}

struct FreezingInterval {
    double p_start = 0.0;
    double p_end = 0.0;
    double value = 0.0;
};

/// Maximal runs where the curve stays constant to 1e-9 relative, at a nonzero
/// value, spanning at least 3 grid cells. The length floor excludes plateaus
/// that are floating-point coincidences.
inline std::vector<FreezingInterval> freezing_intervals_of(const Trajectory& t, CurveSelector which) {
    const std::vector<double> f = detail::curve_of(t, which);
    const std::size_t n = f.size();
    if (n < 50) throw std::invalid_argument("freezing_intervals needs at least 50 samples");
    constexpr double eps_rel = 1e-9;
    std::vector<FreezingInterval> out;
    std::size_t i = 0;
    while (i + 1 < n) {
        double lo = f[i], hi = f[i];
        std::size_t j = i;
        while (j + 1 < n) {
            const double nlo = std::min(lo, f[j + 1]);
            const double nhi = std::max(hi, f[j + 1]);
            if (nhi - nlo > eps_rel * std::max(std::abs(nhi), 1e-300)) break;
            lo = nlo;
            hi = nhi;
            ++j;
        }
        const double value = 0.5 * (lo + hi);
        if (j - i >= 3 && value > 1e-12) {
            out.push_back({t.samples[i].param, t.samples[j].param, value});
            i = j;
        } else {
            ++i;
        }
    }
    return out;
}

inline std::vector<FreezingInterval> freezing_intervals(const Trajectory& t) {
    return freezing_intervals_of(t, CurveSelector::dg1);
}

struct CriticalPointReport {
    ChannelKind kind = ChannelKind::bf;
    /// Double-sudden-change conditions, stated per channel family:
    /// ordering  - the channel's constant component is strictly smallest
    ///             (flip channels) / |c3| is strictly largest (GAD)
    /// nonzero   - the relevant components do not vanish
    /// distinct  - the two same-rate components have distinct magnitudes
    bool cond_ordering = false;
    bool cond_nonzero = false;
    bool cond_distinct = false;
    bool double_sc = false;
    /// set when two |c_i| coincide; symmetric states collapse or cancel
    /// crossings, so classifications are tagged rather than trusted blindly
    bool degenerate = false;
    std::vector<double> points;  // ascending, 0..2 entries, all inside (0, 1)
};

namespace detail {

/// One |c_i'| branch: coeff * (1-t)^rate with rate in {0, 1, 2}.
struct Branch {
    double coeff = 0.0;
    int rate = 0;

    double value(double t) const {
        const double u = 1.0 - t;
        return rate == 0 ? coeff : (rate == 1 ? coeff * u : coeff * u * u);
    }
    double slope(double t) const {
        const double u = 1.0 - t;
        return rate == 0 ? 0.0 : (rate == 1 ? -coeff : -2.0 * coeff * u);
    }
};

/// The branch that carries the intermediate value at parameter t.
inline const Branch& int_carrier(const std::array<Branch, 3>& b, double t) {
    const double v0 = b[0].value(t), v1 = b[1].value(t), v2 = b[2].value(t);
    if ((v0 <= v1 && v1 <= v2) || (v2 <= v1 && v1 <= v0)) return b[1];
    if ((v1 <= v0 && v0 <= v2) || (v2 <= v0 && v0 <= v1)) return b[0];
    return b[2];
}

/// Pairwise crossing parameters of the three branches inside (0, 1).
inline std::vector<double> branch_crossings(const std::array<Branch, 3>& b) {
    std::vector<double> xs;
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            const Branch &lo = b[i].rate <= b[j].rate ? b[i] : b[j];
            const Branch &hi = b[i].rate <= b[j].rate ? b[j] : b[i];
            if (lo.rate == hi.rate) continue;  // same decay, no crossing in (0,1)
            if (lo.coeff <= 0.0 || hi.coeff <= 0.0) continue;
            // lo.coeff (1-t)^a = hi.coeff (1-t)^b  =>  (1-t)^(b-a) = lo/hi
            const double ratio = lo.coeff / hi.coeff;
            if (ratio >= 1.0) continue;
            const double u = hi.rate - lo.rate == 2 ? std::sqrt(ratio) : ratio;
            const double tcross = 1.0 - u;
            if (tcross > 1e-15 && tcross < 1.0 - 1e-15) xs.push_back(tcross);
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [](double a, double bb) { return std::abs(a - bb) <= 1e-14; }),
             xs.end());
    return xs;
}

inline std::array<Branch, 3> channel_branches(const CorrelationVector& c, ChannelKind kind) {
    const double a1 = std::abs(c.c1), a2 = std::abs(c.c2), a3 = std::abs(c.c3);
    switch (kind) {
        case ChannelKind::bf: return {{{a1, 0}, {a2, 2}, {a3, 2}}};
        case ChannelKind::pf: return {{{a3, 0}, {a1, 2}, {a2, 2}}};
        case ChannelKind::bpf: return {{{a2, 0}, {a1, 2}, {a3, 2}}};
        default: return {{{a1, 1}, {a2, 1}, {a3, 2}}};
    }
}

}  // namespace detail

/// Analytic sudden-change analysis. When the channel's double-sudden-change
/// conditions hold the two closed-form critical parameters are returned.
/// Otherwise every crossing of the |c_i'| curves is screened for genuineness:
/// a crossing is a sudden change only if the one-sided slopes of the
/// intermediate-value curve differ there. Tangential touches (tied components
/// passing through each other) leave the curve smooth and are not reported.
inline CriticalPointReport critical_points(const CorrelationVector& c, ChannelKind kind) {
    // accepts the whole cube, not just the tetrahedron: the analysis is plain
    // arithmetic on |c_i| and region scans probe unphysical corners too
    const double a1 = std::abs(c.c1), a2 = std::abs(c.c2), a3 = std::abs(c.c3);

    CriticalPointReport rep;
    rep.kind = kind;
    constexpr double eps_tie = 1e-12;
    rep.degenerate = std::abs(a1 - a2) <= eps_tie || std::abs(a1 - a3) <= eps_tie ||
                     std::abs(a2 - a3) <= eps_tie;

    double constant = 0.0, other_a = 0.0, other_b = 0.0;
    if (kind == ChannelKind::gad) {
        rep.cond_ordering = a3 > a1 && a3 > a2;
        rep.cond_nonzero = a1 != 0.0 && a2 != 0.0;
        rep.cond_distinct = a1 != a2;
    } else {
        switch (kind) {
            case ChannelKind::bf: constant = a1, other_a = a2, other_b = a3; break;
            case ChannelKind::pf: constant = a3, other_a = a1, other_b = a2; break;
            default: constant = a2, other_a = a1, other_b = a3; break;
        }
        rep.cond_ordering = constant < other_a && constant < other_b;
        rep.cond_nonzero = constant != 0.0;
        rep.cond_distinct = other_a != other_b;
    }
    rep.double_sc = rep.cond_ordering && rep.cond_nonzero && rep.cond_distinct;

    if (rep.double_sc) {
        if (kind == ChannelKind::gad) {
            rep.points = {1.0 - std::max(a1, a2) / a3, 1.0 - std::min(a1, a2) / a3};
        } else {
            rep.points = {1.0 - std::sqrt(constant / std::min(other_a, other_b)),
                          1.0 - std::sqrt(constant / std::max(other_a, other_b))};
        }
        return rep;
    }

    // Degenerate / partial cases: keep only crossings where the intermediate
    // value changes slope.
    const auto branches = detail::channel_branches(c, kind);
    const auto crossings = detail::branch_crossings(branches);
    double prev = 0.0;
    for (std::size_t i = 0; i < crossings.size(); ++i) {
        const double t = crossings[i];
        const double next = i + 1 < crossings.size() ? crossings[i + 1] : 1.0;
        const double tl = 0.5 * (prev + t);
        const double tr = 0.5 * (t + next);
        const double sl = detail::int_carrier(branches, tl).slope(t);
        const double sr = detail::int_carrier(branches, tr).slope(t);
        if (std::abs(sl - sr) > 1e-9) rep.points.push_back(t);
        prev = t;
    }
    return rep;
}

/// Jump of the first derivative of the exact discord curve at parameter p,
/// from one-sided finite differences of the closed-form map. Used to decide
/// whether a sampled-curve detector can possibly resolve a critical point.
inline double slope_discontinuity(const CorrelationVector& c, ChannelKind kind, double p) {
    const double eps = 1e-7;
    const auto f = [&](double x) {
        return gqd_1norm(evolve_correlations(c, kind, std::clamp(x, 0.0, 1.0))).value;
    };
    const double sl = (f(p - eps) - f(p - 2.0 * eps)) / eps;
    const double sr = (f(p + 2.0 * eps) - f(p + eps)) / eps;
    return std::abs(sr - sl);
}

enum class RegionClass { none, single, double_sc };

inline const char* region_class_name(RegionClass r) {
    switch (r) {
        case RegionClass::none: return "none";
        case RegionClass::single: return "single";
        default: return "double";
    }
}

inline RegionClass classify_sudden_changes(const CorrelationVector& c, ChannelKind kind) {
    const auto rep = critical_points(c, kind);
    if (rep.double_sc) return RegionClass::double_sc;
    if (rep.points.size() == 1) return RegionClass::single;
    return RegionClass::none;
}

struct RegionSample {
    CorrelationVector c;
    RegionClass cls = RegionClass::none;
};

/// Uniform rejection sampling of the physical tetrahedron, classified by the
/// analytic report. Counter-based streams make the output independent of the
/// worker count.
inline std::vector<RegionSample> double_sc_region(ChannelKind kind, std::size_t samples,
                                                  std::uint64_t seed, int workers = 0) {
    if (samples < 1) throw std::invalid_argument("double_sc_region needs at least one sample");
    std::vector<RegionSample> out(samples);
    parallel_for(
        samples,
        [&](std::size_t i) {
            const CorrelationVector c = sample_tetrahedron(seed, i);
            out[i] = {c, classify_sudden_changes(c, kind)};
        },
        workers);
    return out;
}

struct Proposition1Report {
    bool pass = false;
    std::vector<double> d2_kinks;
    std::vector<FreezingInterval> d2_freezing;
    std::vector<double> dg_kinks;
    std::vector<FreezingInterval> dg_freezing;
};

/// Checks that the 2-norm discord of a nontrivial state shows at most one
/// sudden change and no nonvanishing freezing along the trajectory, in
/// contrast with the 1-norm curve computed alongside as evidence.
inline Proposition1Report check_proposition1(const CorrelationVector& c, ChannelKind kind,
                                             std::size_t steps) {
    if (c.c1 == 0.0 || c.c2 == 0.0 || c.c3 == 0.0)
        throw std::invalid_argument(
            "check_proposition1 requires a nontrivial state (all correlation components nonzero)");
    const Trajectory t = trajectory(c, kind, steps);
    Proposition1Report rep;
    rep.d2_kinks = detect_kinks(t, CurveSelector::dg2);
    rep.d2_freezing = freezing_intervals_of(t, CurveSelector::dg2);
    rep.dg_kinks = detect_kinks(t, CurveSelector::dg1);
    rep.dg_freezing = freezing_intervals_of(t, CurveSelector::dg1);
    rep.pass = rep.d2_kinks.size() <= 1 && rep.d2_freezing.empty();
    return rep;
}

}  // namespace discordlab
