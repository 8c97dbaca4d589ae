// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "discordlab/qstate.hpp"

namespace discordlab {

/// Markovian single-qubit channels applied locally to both qubits.
/// BF/PF/BPF carry one decoherence probability p; GAD carries (p, gamma).
enum class ChannelKind { bf, pf, bpf, gad };

inline std::string channel_name(ChannelKind k) {
    switch (k) {
        case ChannelKind::bf: return "bf";
        case ChannelKind::pf: return "pf";
        case ChannelKind::bpf: return "bpf";
        default: return "gad";
    }
}

inline ChannelKind parse_channel(std::string name) {
    for (auto& ch : name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (name == "bf") return ChannelKind::bf;
    if (name == "pf") return ChannelKind::pf;
    if (name == "bpf") return ChannelKind::bpf;
    if (name == "gad") return ChannelKind::gad;
    throw std::invalid_argument("unknown channel '" + name + "' (expected bf, pf, bpf or gad)");
}

struct KrausSet {
    ChannelKind kind = ChannelKind::bf;
    double p = 0.0;
    double gamma = 0.0;
    std::vector<Mat2> ops;
};

/// max-entry defect of sum_k E_k^dagger E_k - I
inline double trace_preservation_defect(const KrausSet& k) {
    Mat2 acc;
    for (const auto& e : k.ops) acc += adjoint(e) * e;
    acc -= Mat2::identity();
    return max_abs(acc);
}

/// Kraus operators:
///   BF  {sqrt(1-p/2) I, sqrt(p/2) sigma_1}
///   PF  {sqrt(1-p/2) I, sqrt(p/2) sigma_3}
///   BPF {sqrt(1-p/2) I, sqrt(p/2) sigma_2}
///   GAD {sqrt(p) diag(1, sqrt(1-g)), sqrt(p) offdiag-upper sqrt(g),
///        sqrt(1-p) diag(sqrt(1-g), 1), sqrt(1-p) offdiag-lower sqrt(g)}
inline KrausSet kraus_set(ChannelKind kind, double p, double gamma = 0.0) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("channel parameter p must lie in [0, 1]");
    if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("channel parameter gamma must lie in [0, 1]");
    KrausSet out{kind, p, gamma, {}};
    if (kind == ChannelKind::gad) {
        const double sp = std::sqrt(p), sq = std::sqrt(1.0 - p);
        const double sg = std::sqrt(gamma), s1g = std::sqrt(1.0 - gamma);
        Mat2 e0, e1, e2, e3;
        e0(0, 0) = sp;
        e0(1, 1) = sp * s1g;
        e1(0, 1) = sp * sg;
        e2(0, 0) = sq * s1g;
        e2(1, 1) = sq;
        e3(1, 0) = sq * sg;
        out.ops = {e0, e1, e2, e3};
    } else {
        const int sigma = kind == ChannelKind::bf ? 1 : (kind == ChannelKind::bpf ? 2 : 3);
        const Mat2 e0 = std::sqrt(1.0 - p / 2.0) * Mat2::identity();
        const Mat2 e1 = cplx(std::sqrt(p / 2.0), 0.0) * pauli(sigma);
        out.ops = {e0, e1};
    }
    return out;
}

/// Operator-sum application with the same channel on both qubits:
/// eps(rho) = sum_{i,j} (E_i (x) E_j) rho (E_i (x) E_j)^dagger.
inline DensityMatrix apply_local_channel(const DensityMatrix& rho, const KrausSet& k) {
    if (trace_preservation_defect(k) > 1e-12)
        throw std::invalid_argument("Kraus set is not trace preserving within tolerance");
    Mat4 out;
    for (const auto& ei : k.ops) {
        for (const auto& ej : k.ops) {
            const Mat4 op = kron(ei, ej);
            out += op * rho.m * adjoint(op);
        }
    }
    return DensityMatrix{out};
}

/// Closed-form correlation maps (one row per channel):
///   BF  (c1,          c2 (1-p)^2,  c3 (1-p)^2)
///   PF  (c1 (1-p)^2,  c2 (1-p)^2,  c3)
///   BPF (c1 (1-p)^2,  c2,          c3 (1-p)^2)
///   GAD (c1 (1-g),    c2 (1-g),    c3 (1-g)^2)   with p fixed at 1/2
/// GAD away from p = 1/2 does not stay Bell-diagonal and is deliberately not
/// representable here; use apply_local_channel for that regime.
inline CorrelationVector evolve_correlations(const CorrelationVector& c, ChannelKind kind,
                                             double parameter) {
    if (parameter < 0.0 || parameter > 1.0)
        throw std::invalid_argument("decoherence parameter must lie in [0, 1]");
    const double q = (1.0 - parameter) * (1.0 - parameter);
    switch (kind) {
        case ChannelKind::bf: return {c.c1, c.c2 * q, c.c3 * q};
        case ChannelKind::pf: return {c.c1 * q, c.c2 * q, c.c3};
        case ChannelKind::bpf: return {c.c1 * q, c.c2, c.c3 * q};
        default: return {c.c1 * (1.0 - parameter), c.c2 * (1.0 - parameter), c.c3 * q};
    }
}

/// Departure of rho from the Bell-diagonal form: largest local Bloch component
/// or off-diagonal correlation-tensor entry. Zero iff rho is Bell-diagonal.
inline double bell_form_residual(const DensityMatrix& rho) { return decompose_bell(rho).residual; }

}  // namespace discordlab
