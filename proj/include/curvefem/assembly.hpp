#pragma once

// Time-level system matrices of the semi-implicit scheme and the explicit
// load vectors (advection, reaction).
//
// Both the mass matrix M^k and the stiffness matrix S^k of the piecewise
// linear elements on the interpolated curve are symmetric cyclic
// tridiagonal; with q_i = edge_lengths[i],
//   M: diag_i = (q_i + q_{i+1})/3,        off coupling (i,i+1) = q_{i+1}/6,
//   S: diag_i = D (1/q_i + 1/q_{i+1}),    off coupling (i,i+1) = -D/q_{i+1}.

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "curvefem/geometry.hpp"

namespace curvefem {

/// Symmetric cyclic tridiagonal matrix. off[i] couples index i to i+1
/// (modulo n); off[n-1] is the corner entry coupling n-1 and 0.
struct CyclicTridiagonal {
    int n = 0;
    std::vector<double> diag;
    std::vector<double> off;

    static CyclicTridiagonal zero(int n) {
        CyclicTridiagonal a;
        a.n = n;
        a.diag.assign(static_cast<std::size_t>(n), 0.0);
        a.off.assign(static_cast<std::size_t>(n), 0.0);
        return a;
    }

    // y = A x. The two off-diagonal contributions are summed before the
    // diagonal one so that matrices stored with diag = -(off_left + off_right)
    // annihilate constant vectors exactly.
    void apply(const std::vector<double>& x, std::vector<double>& y) const {
        const std::size_t un = static_cast<std::size_t>(n);
        if (x.size() != un) throw std::invalid_argument("CyclicTridiagonal::apply: size mismatch");
        y.resize(un);
        for (int i = 0; i < n; ++i) {
            const std::size_t ui = static_cast<std::size_t>(i);
            const std::size_t prev = static_cast<std::size_t>(wrap_index(i - 1, n));
            const std::size_t next = static_cast<std::size_t>(wrap_index(i + 1, n));
            const double t = off[prev] * x[prev] + off[ui] * x[next];
            y[ui] = diag[ui] * x[ui] + t;
        }
    }

    std::vector<double> apply(const std::vector<double>& x) const {
        std::vector<double> y;
        apply(x, y);
        return y;
    }

    double quadratic_form(const std::vector<double>& x) const {
        const std::size_t un = static_cast<std::size_t>(n);
        if (x.size() != un) throw std::invalid_argument("quadratic_form: size mismatch");
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const std::size_t ui = static_cast<std::size_t>(i);
            const std::size_t next = static_cast<std::size_t>(wrap_index(i + 1, n));
            acc += diag[ui] * x[ui] * x[ui] + 2.0 * off[ui] * x[ui] * x[next];
        }
        return acc;
    }

    /// this + scale * other, entrywise.
    CyclicTridiagonal plus_scaled(const CyclicTridiagonal& other, double scale) const {
        if (other.n != n) throw std::invalid_argument("plus_scaled: dimension mismatch");
        CyclicTridiagonal r = *this;
        for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
            r.diag[i] += scale * other.diag[i];
            r.off[i] += scale * other.off[i];
        }
        return r;
    }
};

inline void assemble_mass_into(const DiscreteCurve& dc, CyclicTridiagonal& m) {
    const int n = dc.n();
    m.n = n;
    m.diag.resize(static_cast<std::size_t>(n));
    m.off.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double ql = dc.edge(i);
        const double qr = dc.edge(i + 1);
        if (!(ql > 0.0) || !(qr > 0.0)) {
            throw std::runtime_error("assemble_mass: nonpositive edge length");
        }
        m.diag[static_cast<std::size_t>(i)] = (ql + qr) / 3.0;
        m.off[static_cast<std::size_t>(i)] = qr / 6.0;
    }
}

/// Curve-weighted mass matrix M^k, entries int phi_i phi_j |u_hx^k| dx.
inline CyclicTridiagonal assemble_mass(const DiscreteCurve& dc) {
    CyclicTridiagonal m;
    assemble_mass_into(dc, m);
    return m;
}

inline void assemble_stiffness_into(const DiscreteCurve& dc, double diffusivity,
                                    CyclicTridiagonal& s) {
    if (diffusivity < 0.0) throw std::invalid_argument("assemble_stiffness: D must be >= 0");
    const int n = dc.n();
    s.n = n;
    s.diag.resize(static_cast<std::size_t>(n));
    s.off.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double qr = dc.edge(i + 1);
        if (!(qr > 0.0)) throw std::runtime_error("assemble_stiffness: nonpositive edge length");
        s.off[static_cast<std::size_t>(i)] = -diffusivity / qr;
    }
    // diag = -(off_left + off_right): constants lie in the kernel exactly.
    for (int i = 0; i < n; ++i) {
        const std::size_t prev = static_cast<std::size_t>(wrap_index(i - 1, n));
        s.diag[static_cast<std::size_t>(i)] = -(s.off[prev] + s.off[static_cast<std::size_t>(i)]);
    }
}

/// Diffusivity-scaled stiffness matrix D * S^k, entries
/// D int phi_i' phi_j' / |u_hx^k| dx. PSD with kernel spanned by constants.
inline CyclicTridiagonal assemble_stiffness(const DiscreteCurve& dc, double diffusivity) {
    CyclicTridiagonal s;
    assemble_stiffness_into(dc, diffusivity, s);
    return s;
}

/// Unweighted Dirichlet energy int (c_h')^2 / |u_hx| dx = c^T S c (D = 1),
/// evaluated in factored per-edge form; exact and nonnegative.
inline double dirichlet_energy(const FieldCoeffs& c, const DiscreteCurve& dc) {
    const int n = dc.n();
    if (static_cast<int>(c.size()) != n) {
        throw std::invalid_argument("dirichlet_energy: size mismatch");
    }
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = c[static_cast<std::size_t>(wrap_index(i + 1, n))] -
                         c[static_cast<std::size_t>(i)];
        acc += d * d / dc.edge(i + 1);
    }
    return acc;
}

/// Advection load a_i = <c_h w_h, phi_i'> on the reference circle, without
/// the -dt factor (applied by the stepper). The integrand is quadratic per
/// element, integrated exactly: with element integral
///   I_e = h (c_a w_a / 3 + (c_a w_b + c_b w_a) / 6 + c_b w_b / 3)
/// and phi_i' = +1/h on element i, -1/h on element i+1,
///   a_i = (I_i - I_{i+1}) / h.
inline void advection_load_into(const FieldCoeffs& c_prev, const FieldCoeffs& w_nodal,
                                const Mesh& mesh, std::vector<double>& out) {
    const int n = mesh.n;
    if (static_cast<int>(c_prev.size()) != n || static_cast<int>(w_nodal.size()) != n) {
        throw std::invalid_argument("advection_load: size mismatch");
    }
    // elem[i] = I_i / h (the common h factor cancels against phi').
    std::vector<double> elem(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const std::size_t a = static_cast<std::size_t>(wrap_index(i - 1, n));
        const std::size_t b = static_cast<std::size_t>(i);
        elem[b] = c_prev[a] * w_nodal[a] / 3.0 +
                  (c_prev[a] * w_nodal[b] + c_prev[b] * w_nodal[a]) / 6.0 +
                  c_prev[b] * w_nodal[b] / 3.0;
    }
    out.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] =
            elem[static_cast<std::size_t>(i)] - elem[static_cast<std::size_t>(wrap_index(i + 1, n))];
    }
}

inline std::vector<double> advection_load(const FieldCoeffs& c_prev, const FieldCoeffs& w_nodal,
                                          const Mesh& mesh) {
    std::vector<double> out;
    advection_load_into(c_prev, w_nodal, mesh, out);
    return out;
}

/// Reaction load M^{k-1} I_h(r(c_h^{k-1})): the reaction is evaluated at the
/// nodes and tested against the hats with the previous curve-weighted mass
/// matrix. The stepper multiplies by dt.
inline void reaction_load_into(const FieldCoeffs& c_prev,
                               const std::function<double(double)>& r,
                               const CyclicTridiagonal& m_prev, std::vector<double>& out,
                               std::vector<double>& scratch) {
    const std::size_t n = c_prev.size();
    scratch.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double v = r(c_prev[i]);
        if (!std::isfinite(v)) {
            throw std::runtime_error("reaction_load: non-finite reaction value");
        }
        scratch[i] = v;
    }
    m_prev.apply(scratch, out);
}

inline std::vector<double> reaction_load(const FieldCoeffs& c_prev,
                                         const std::function<double(double)>& r,
                                         const CyclicTridiagonal& m_prev) {
    std::vector<double> out, scratch;
    reaction_load_into(c_prev, r, m_prev, out, scratch);
    return out;
}

}  // namespace curvefem
