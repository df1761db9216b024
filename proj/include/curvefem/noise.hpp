#pragma once

// Q-Wiener noise engine: trigonometric eigenbasis, power-law spectrum,
// state-dependent noise amplitude sigma, the reproducible Brownian
// increment lattice, and the per-step noise load vector.
//
// The lattice stores nothing: increment (path, mode, fine_step) is a pure
// function of the master seed, so a coarse run with step p*dt_ref consumes
// exactly the sums of the fine increments of the reference run. This is
// what couples sample paths across time resolutions and mesh ladders.

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvefem/geometry.hpp"
#include "curvefem/rng.hpp"

namespace curvefem {

/// Orthonormal basis of L^2(S^1):
///   g_1 = 1/sqrt(2 pi), g_{2n} = sin(n x)/sqrt(pi), g_{2n+1} = cos(n x)/sqrt(pi).
inline double basis_eval(int l, double x) {
    if (l < 1) throw std::invalid_argument("basis_eval: mode index must be >= 1");
    if (l == 1) return 1.0 / std::sqrt(two_pi);
    const int n = l / 2;
    const double s = 1.0 / std::sqrt(std::numbers::pi);
    return (l % 2 == 0) ? s * std::sin(n * x) : s * std::cos(n * x);
}

/// Eigenvalue spectrum of the covariance operator: b_1 for the constant
/// mode, b_l = n^(-2 rbar - 1) for l in {2n, 2n+1}.
struct NoiseSpectrum {
    double b1 = 1.0;
    double rbar = 1.0;
    int modes = 1;  // truncation index L
};

inline double spectrum_coeff(int l, const NoiseSpectrum& spec) {
    if (l < 1) throw std::invalid_argument("spectrum_coeff: mode index must be >= 1");
    if (l == 1) return spec.b1;
    const int n = l / 2;
    return std::pow(static_cast<double>(n), -2.0 * spec.rbar - 1.0);
}

/// Noise amplitude sigma(c) >= 0, bounded.
struct SigmaSpec {
    enum class Kind { Constant, LogisticClip, LinearClamp, Custom };

    Kind kind = Kind::Constant;
    double sigma_bar = 0.0;
    std::function<double(double)> custom;

    double operator()(double c) const {
        switch (kind) {
            case Kind::Constant:
                return sigma_bar;
            case Kind::LogisticClip:
                return std::max(sigma_bar * c * (1.0 - c), 0.0);
            case Kind::LinearClamp:
                return std::min(std::max(sigma_bar * c, 0.0), 100.0);
            case Kind::Custom:
                return custom(c);
        }
        return 0.0;
    }

    bool identically_zero() const { return kind != Kind::Custom && sigma_bar == 0.0; }

    static SigmaSpec constant(double sbar) { return {Kind::Constant, sbar, nullptr}; }
    static SigmaSpec logistic_clip(double sbar) { return {Kind::LogisticClip, sbar, nullptr}; }
    static SigmaSpec linear_clamp(double sbar) { return {Kind::LinearClamp, sbar, nullptr}; }
};

/// Deterministic lattice of Brownian increments: increment(path, mode, j)
/// ~ N(0, dt_ref), mutually independent over all three indices.
struct BrownianLattice {
    std::uint64_t master_seed = 0;
    int paths = 1;        // S
    int max_modes = 1;    // L_max
    std::int64_t fine_steps = 1;  // M_ref
    double dt_ref = 1.0;

    double fine_increment(int path, int mode, std::int64_t fine_step) const {
        return std::sqrt(dt_ref) * counter_normal(master_seed, static_cast<std::uint32_t>(path),
                                                  static_cast<std::uint32_t>(mode),
                                                  static_cast<std::uint64_t>(fine_step));
    }
};

/// Increment over the coarse interval [k p, (k+1) p) * dt_ref: the exact
/// ordered sum of the p fine increments it covers (variance p * dt_ref).
inline double brownian_increment(const BrownianLattice& lat, int path, int mode,
                                 std::int64_t coarse_step, int p) {
    if (path < 0 || path >= lat.paths) {
        throw std::out_of_range("brownian_increment: path index out of range");
    }
    if (mode < 1 || mode > lat.max_modes) {
        throw std::out_of_range("brownian_increment: mode index out of range");
    }
    if (p < 1 || coarse_step < 0 || (coarse_step + 1) * p > lat.fine_steps) {
        throw std::out_of_range("brownian_increment: step range exceeds lattice");
    }
    const std::int64_t begin = coarse_step * p;
    double acc = 0.0;
    for (std::int64_t j = begin; j < begin + p; ++j) {
        acc += lat.fine_increment(path, mode, j);
    }
    return acc;
}

/// Exact inner products <g_l, phi_i> over S^1 on a uniform mesh; for l >= 2
/// the hat against a sinusoid reduces to a second difference:
///   sqrt(pi) <g_{2n}, phi_i> = (2 sin(n x_i) - sin(n x_{i-1}) - sin(n x_{i+1})) / (n^2 h)
/// and the cosine analogue for l = 2n+1. For l = 1 it is h / sqrt(2 pi).
inline double basis_hat_inner(int l, int i, const Mesh& mesh) {
    if (l < 1) throw std::invalid_argument("basis_hat_inner: mode index must be >= 1");
    if (l == 1) return mesh.h / std::sqrt(two_pi);
    const int n = l / 2;
    const double xm = mesh.node(i - 1);
    const double x0 = mesh.node(i);
    const double xp = mesh.node(i + 1);
    const double scale = 1.0 / (std::sqrt(std::numbers::pi) * n * n * mesh.h);
    if (l % 2 == 0) {
        return scale * (2.0 * std::sin(n * x0) - std::sin(n * xm) - std::sin(n * xp));
    }
    return scale * (2.0 * std::cos(n * x0) - std::cos(n * xm) - std::cos(n * xp));
}

/// Precomputed table G[l][i] = sqrt(b_l) <g_l, phi_i>, flattened row-major.
/// Time-independent, built once per (mesh, spectrum).
struct NoiseTable {
    int modes = 0;
    int n = 0;
    std::vector<double> weights;

    const double* row(int l) const { return weights.data() + static_cast<std::size_t>(l - 1) * n; }
};

inline NoiseTable make_noise_table(const Mesh& mesh, const NoiseSpectrum& spec) {
    if (spec.modes < 1) throw std::invalid_argument("make_noise_table: need at least one mode");
    NoiseTable tab;
    tab.modes = spec.modes;
    tab.n = mesh.n;
    tab.weights.resize(static_cast<std::size_t>(spec.modes) * mesh.n);
    for (int l = 1; l <= spec.modes; ++l) {
        const double amp = std::sqrt(spectrum_coeff(l, spec));
        double* row = tab.weights.data() + static_cast<std::size_t>(l - 1) * mesh.n;
        for (int i = 0; i < mesh.n; ++i) {
            row[i] = amp * basis_hat_inner(l, i, mesh);
        }
    }
    return tab;
}

/// Noise load of one step: entry i equals
///   sum_{l=1}^{L} <g_l, phi_i> sqrt(b_l) sigma(c_i^{k-1}) dbeta_{l,k}
/// with dbeta the aggregated lattice increment over the coarse step.
inline void noise_load_into(const FieldCoeffs& c_prev, const BrownianLattice& lat,
                            const NoiseTable& tab, const SigmaSpec& sigma, int path,
                            std::int64_t coarse_step, int p, std::vector<double>& out,
                            std::vector<double>& dbeta_scratch) {
    const int n = tab.n;
    if (static_cast<int>(c_prev.size()) != n) {
        throw std::invalid_argument("noise_load: coefficient count does not match table");
    }
    out.assign(static_cast<std::size_t>(n), 0.0);
    if (sigma.identically_zero()) return;
    dbeta_scratch.resize(static_cast<std::size_t>(tab.modes));
    for (int l = 1; l <= tab.modes; ++l) {
        dbeta_scratch[static_cast<std::size_t>(l - 1)] =
            brownian_increment(lat, path, l, coarse_step, p);
    }
    for (int l = 1; l <= tab.modes; ++l) {
        const double db = dbeta_scratch[static_cast<std::size_t>(l - 1)];
        const double* row = tab.row(l);
        for (int i = 0; i < n; ++i) {
            out[static_cast<std::size_t>(i)] += db * row[i];
        }
    }
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] *= sigma(c_prev[static_cast<std::size_t>(i)]);
    }
}

inline std::vector<double> noise_load(const FieldCoeffs& c_prev, const BrownianLattice& lat,
                                      const NoiseSpectrum& spec, const SigmaSpec& sigma,
                                      std::int64_t coarse_step, int p, const Mesh& mesh,
                                      int path = 0) {
    if (spec.modes > lat.max_modes) {
        throw std::invalid_argument("noise_load: truncation exceeds lattice mode count");
    }
    const NoiseTable tab = make_noise_table(mesh, spec);
    std::vector<double> out, scratch;
    noise_load_into(c_prev, lat, tab, sigma, path, coarse_step, p, out, scratch);
    return out;
}

}  // namespace curvefem
