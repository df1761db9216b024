#pragma once

// Direct O(n) solver for symmetric positive definite cyclic tridiagonal
// systems. The cyclic corner is removed by a symmetric rank-one correction
//   A = T + u u^T,  u = g e_0 + (corner/g) e_{n-1},  g = sqrt(|corner|),
// which keeps T symmetric positive definite for the diagonally dominant
// matrices produced by the assembly module. T is factored once (LDL^T) and
// the Sherman-Morrison formula combines two tridiagonal solves.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvefem/assembly.hpp"

namespace curvefem {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// LDL^T factorization of a symmetric tridiagonal matrix with diagonal d
// and subdiagonal o (o[i] couples i and i+1). Overwrites d with the pivots
// and o with the unit-lower-triangular multipliers.
inline void ldlt_tridiag_factor(std::vector<double>& d, std::vector<double>& o) {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!(d[i] > 0.0)) {
            throw SolverError("solve_spd_cyclic: nonpositive pivot at index " +
                              std::to_string(i) + " (matrix not SPD)");
        }
        const double l = o[i] / d[i];
        d[i + 1] -= o[i] * l;
        o[i] = l;
    }
    if (!(d[n - 1] > 0.0)) {
        throw SolverError("solve_spd_cyclic: nonpositive pivot at index " +
                          std::to_string(n - 1) + " (matrix not SPD)");
    }
}

inline void ldlt_tridiag_solve(const std::vector<double>& d, const std::vector<double>& l,
                               std::vector<double>& x) {
    const std::size_t n = d.size();
    for (std::size_t i = 1; i < n; ++i) x[i] -= l[i - 1] * x[i - 1];
    for (std::size_t i = 0; i < n; ++i) x[i] /= d[i];
    for (std::size_t i = n - 1; i > 0; --i) x[i - 1] -= l[i - 1] * x[i];
}

}  // namespace detail

/// Reusable factorization of one cyclic tridiagonal SPD matrix.
class CyclicSpdSolver {
public:
    explicit CyclicSpdSolver(const CyclicTridiagonal& a) { factor(a); }

    CyclicSpdSolver() = default;

    void factor(const CyclicTridiagonal& a) {
        const int n = a.n;
        if (n < 3) throw std::invalid_argument("solve_spd_cyclic: dimension must be >= 3");
        const std::size_t un = static_cast<std::size_t>(n);
        n_ = n;
        corner_ = a.off[un - 1];
        piv_.assign(a.diag.begin(), a.diag.end());
        mul_.assign(a.off.begin(), a.off.end() - 1);
        z_.clear();
        denom_ = 1.0;
        g_ = 0.0;
        if (corner_ != 0.0) {
            g_ = std::sqrt(std::abs(corner_));
            const double u_last = corner_ / g_;
            piv_[0] -= g_ * g_;
            piv_[un - 1] -= u_last * u_last;
            detail::ldlt_tridiag_factor(piv_, mul_);
            z_.assign(un, 0.0);
            z_[0] = g_;
            z_[un - 1] = u_last;
            detail::ldlt_tridiag_solve(piv_, mul_, z_);
            denom_ = 1.0 + g_ * z_[0] + u_last * z_[un - 1];
            if (!(denom_ > 0.0) || !std::isfinite(denom_)) {
                throw SolverError("solve_spd_cyclic: degenerate rank-one correction");
            }
        } else {
            detail::ldlt_tridiag_factor(piv_, mul_);
        }
    }

    void solve(const std::vector<double>& b, std::vector<double>& x) const {
        if (static_cast<int>(b.size()) != n_) {
            throw std::invalid_argument("solve_spd_cyclic: rhs dimension mismatch");
        }
        x = b;
        detail::ldlt_tridiag_solve(piv_, mul_, x);
        if (corner_ != 0.0) {
            const std::size_t un = static_cast<std::size_t>(n_);
            const double u_dot_y = g_ * x[0] + (corner_ / g_) * x[un - 1];
            const double s = u_dot_y / denom_;
            for (std::size_t i = 0; i < un; ++i) x[i] -= s * z_[i];
        }
    }

private:
    int n_ = 0;
    double corner_ = 0.0;
    double g_ = 0.0;
    double denom_ = 1.0;
    std::vector<double> piv_;
    std::vector<double> mul_;
    std::vector<double> z_;
};

inline std::vector<double> solve_spd_cyclic(const CyclicTridiagonal& a,
                                            const std::vector<double>& b) {
    CyclicSpdSolver solver(a);
    std::vector<double> x;
    solver.solve(b, x);
    return x;
}

}  // namespace curvefem
