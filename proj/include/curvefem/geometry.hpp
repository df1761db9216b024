#pragma once

// Periodic reference mesh on [0, 2*pi), analytic curve parametrizations,
// polygonal curve interpolation and discrete norms.
//
// Index conventions used throughout the library:
//   * nodes[i] = 2*pi*(i+1)/N for i = 0..N-1, so the last node is 2*pi
//     and all index arithmetic is modulo N (node -1 wraps to node N-1).
//   * element i is the reference interval [nodes[i-1], nodes[i]]; its
//     image under the interpolated curve has chord length edge_lengths[i].
//   * node i is shared by elements i and i+1.

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace curvefem {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Nodal coefficient vector of a periodic piecewise-linear function.
using FieldCoeffs = std::vector<double>;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    double norm() const { return std::hypot(x, y); }
};

inline int wrap_index(int i, int n) {
    int r = i % n;
    return r < 0 ? r + n : r;
}

/// Uniform periodic grid on [0, 2*pi) with N nodes and spacing h = 2*pi/N.
struct Mesh {
    int n = 0;
    double h = 0.0;
    std::vector<double> nodes;

    double node(int i) const { return nodes[static_cast<std::size_t>(wrap_index(i, n))]; }
};

inline Mesh build_uniform_mesh(int n) {
    if (n < 3) {
        throw std::invalid_argument("build_uniform_mesh: need at least 3 nodes, got " +
                                    std::to_string(n));
    }
    Mesh mesh;
    mesh.n = n;
    mesh.h = two_pi / n;
    mesh.nodes.resize(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        mesh.nodes[static_cast<std::size_t>(j - 1)] = (two_pi * j) / n;
    }
    return mesh;
}

/// A family of closed planar curves t -> u(t, .) parametrized over [0, 2*pi).
/// `point` evaluates u(t, x); `tangent` evaluates the spatial derivative
/// u_x(t, x) of the analytic parametrization (used where the exact length
/// element |u_x| is required, e.g. by the Ritz projection).
struct CurvePath {
    enum class Kind { StationaryCircle, ShrinkingCircle, Flower, Custom };

    Kind kind = Kind::Custom;
    std::function<Vec2(double, double)> point;
    std::function<Vec2(double, double)> tangent;

    double speed(double t, double x) const { return tangent(t, x).norm(); }

    static CurvePath stationary_circle() {
        CurvePath c;
        c.kind = Kind::StationaryCircle;
        c.point = [](double, double x) { return Vec2{std::cos(x), std::sin(x)}; };
        c.tangent = [](double, double x) { return Vec2{-std::sin(x), std::cos(x)}; };
        return c;
    }

    /// u(t,x) = (1 - t/3) (cos x, sin x); collapses at t = 3.
    static CurvePath shrinking_circle() {
        CurvePath c;
        c.kind = Kind::ShrinkingCircle;
        c.point = [](double t, double x) {
            const double a = 1.0 - t / 3.0;
            return Vec2{a * std::cos(x), a * std::sin(x)};
        };
        c.tangent = [](double t, double x) {
            const double a = 1.0 - t / 3.0;
            return Vec2{-a * std::sin(x), a * std::cos(x)};
        };
        return c;
    }

    /// u(t,x) = (1 - t/3) sin(3x) (cos x, sin x).
    static CurvePath flower() {
        CurvePath c;
        c.kind = Kind::Flower;
        c.point = [](double t, double x) {
            const double a = (1.0 - t / 3.0) * std::sin(3.0 * x);
            return Vec2{a * std::cos(x), a * std::sin(x)};
        };
        c.tangent = [](double t, double x) {
            const double a = 1.0 - t / 3.0;
            const double s3 = std::sin(3.0 * x), c3 = std::cos(3.0 * x);
            return Vec2{a * (3.0 * c3 * std::cos(x) - s3 * std::sin(x)),
                        a * (3.0 * c3 * std::sin(x) + s3 * std::cos(x))};
        };
        return c;
    }

    static CurvePath custom(std::function<Vec2(double, double)> point,
                            std::function<Vec2(double, double)> tangent) {
        CurvePath c;
        c.kind = Kind::Custom;
        c.point = std::move(point);
        c.tangent = std::move(tangent);
        return c;
    }
};

/// Vertex positions and chord lengths of the interpolated curve at one time.
/// edge_lengths[i] = |vertices[i] - vertices[i-1]| (indices modulo N).
struct DiscreteCurve {
    double t = 0.0;
    std::vector<Vec2> vertices;
    std::vector<double> edge_lengths;

    int n() const { return static_cast<int>(vertices.size()); }
    double edge(int i) const {
        return edge_lengths[static_cast<std::size_t>(wrap_index(i, n()))];
    }
};

inline void discretize_curve_into(const CurvePath& curve, double t, const Mesh& mesh,
                                  DiscreteCurve& out) {
    const int n = mesh.n;
    out.t = t;
    out.vertices.resize(static_cast<std::size_t>(n));
    out.edge_lengths.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Vec2 p = curve.point(t, mesh.nodes[static_cast<std::size_t>(i)]);
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw std::runtime_error("discretize_curve: non-finite vertex at node " +
                                     std::to_string(i) + ", t=" + std::to_string(t));
        }
        out.vertices[static_cast<std::size_t>(i)] = p;
    }
    for (int i = 0; i < n; ++i) {
        const Vec2 a = out.vertices[static_cast<std::size_t>(wrap_index(i - 1, n))];
        const Vec2 b = out.vertices[static_cast<std::size_t>(i)];
        out.edge_lengths[static_cast<std::size_t>(i)] = (b - a).norm();
    }
}

inline DiscreteCurve discretize_curve(const CurvePath& curve, double t, const Mesh& mesh) {
    DiscreteCurve dc;
    discretize_curve_into(curve, t, mesh, dc);
    return dc;
}

/// Nodal interpolant I_h f: coefficient i equals f(nodes[i]).
inline FieldCoeffs interpolate_nodal(const std::function<double(double)>& f, const Mesh& mesh) {
    FieldCoeffs c(static_cast<std::size_t>(mesh.n));
    for (int i = 0; i < mesh.n; ++i) {
        const double v = f(mesh.nodes[static_cast<std::size_t>(i)]);
        if (!std::isfinite(v)) {
            throw std::runtime_error("interpolate_nodal: non-finite value at node " +
                                     std::to_string(i));
        }
        c[static_cast<std::size_t>(i)] = v;
    }
    return c;
}

/// Exact L^2(S^1) norm of the piecewise-linear function with coefficients c.
/// Per element: integral of c_h^2 is (h/3) (c_a^2 + c_a c_b + c_b^2).
inline double l2_norm(const FieldCoeffs& c, const Mesh& mesh) {
    if (static_cast<int>(c.size()) != mesh.n) {
        throw std::invalid_argument("l2_norm: coefficient count does not match mesh");
    }
    const int n = mesh.n;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = c[static_cast<std::size_t>(i)];
        const double b = c[static_cast<std::size_t>(wrap_index(i + 1, n))];
        acc += a * a + a * b + b * b;
    }
    return std::sqrt(acc * mesh.h / 3.0);
}

/// Curve-weighted total mass <c_h |u_hx|, 1> = sum_i (M c)_i, evaluated
/// directly from the row sums (edge(i) + edge(i+1))/2 of the mass matrix.
inline double weighted_mass(const FieldCoeffs& c, const DiscreteCurve& dc) {
    const int n = dc.n();
    if (static_cast<int>(c.size()) != n) {
        throw std::invalid_argument("weighted_mass: coefficient count does not match curve");
    }
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        acc += 0.5 * (dc.edge(i) + dc.edge(i + 1)) * c[static_cast<std::size_t>(i)];
    }
    return acc;
}

}  // namespace curvefem
