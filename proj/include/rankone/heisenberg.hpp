#pragma once

// The stratified nilpotent group V = F^{n-1} x Im F: group law, dilations,
// homogeneous gauge, and grid-discretized left-invariant operators.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "rankone/linalg.hpp"
#include "rankone/params.hpp"

namespace rankone {

// A point (x, y) in V with x in F^{n-1} and y purely imaginary.
struct HeisElement {
    GroupParams p;
    FVector x;
    Scalar y;

    static HeisElement zero(const GroupParams& p) {
        HeisElement v{p, FVector(std::size_t(p.n - 1), Scalar::zero(p.field)), Scalar::zero(p.field)};
        return v;
    }
};

inline void check_imaginary(const Scalar& y, const char* what) {
    if (y.s != 0.0) throw std::invalid_argument(std::string(what) + ": y must be purely imaginary");
}

/// Group law (x',y')(x,y) = (x'+x, y'+y-2 Im(x'^* x)).
inline HeisElement v_mul(const HeisElement& a, const HeisElement& b) {
    if (a.p.field != b.p.field || a.p.n != b.p.n) throw std::invalid_argument("v_mul: parameter mismatch");
    HeisElement c = a;
    Scalar twist = Scalar::zero(a.p.field);
    for (std::size_t i = 0; i < a.x.size(); ++i) {
        c.x[i] = a.x[i] + b.x[i];
        twist = twist + conj(a.x[i]) * b.x[i];
    }
    c.y = a.y + b.y - 2.0 * im(twist);
    c.y.s = 0.0;
    return c;
}

inline HeisElement v_inv(const HeisElement& a) {
    HeisElement c = a;
    for (auto& xi : c.x) xi = -xi;
    c.y = -a.y;
    return c;
}

/// Anisotropic dilation (x, y) -> (s x, s^2 y), s > 0.
inline HeisElement dilate(double s, const HeisElement& a) {
    if (s <= 0.0) throw std::invalid_argument("dilate: s must be > 0");
    HeisElement c = a;
    for (auto& xi : c.x) xi = s * xi;
    c.y = (s * s) * a.y;
    return c;
}

/// Homogeneous gauge N(x,y) = (|x^*x|^2 + |y|^2)^{1/4}, degree one under dilate.
inline double hom_norm(const HeisElement& a) {
    double xx = 0;
    for (const auto& xi : a.x) xx += abs2(xi);
    return std::pow(xx * xx + abs2(a.y), 0.25);
}

// --- flat real coordinates ------------------------------------------------
// The first d(n-1) coordinates are the real components of x (field-component
// major within each F-block), the last d-1 are the imaginary components of y.

inline Eigen::VectorXd heis_to_coords(const HeisElement& a) {
    const int d = a.p.d;
    Eigen::VectorXd c(a.p.dim_V());
    int k = 0;
    for (const auto& xi : a.x)
        for (int j = 0; j < d; ++j) c[k++] = xi.comp(j);
    for (int j = 1; j < d; ++j) c[k++] = a.y.comp(j);
    return c;
}

inline HeisElement heis_from_coords(const GroupParams& p, const Eigen::VectorXd& c) {
    if (c.size() != p.dim_V()) throw std::invalid_argument("heis_from_coords: wrong length");
    HeisElement a = HeisElement::zero(p);
    int k = 0;
    for (auto& xi : a.x)
        for (int j = 0; j < p.d; ++j) xi.set_comp(j, c[k++]);
    for (int j = 1; j < p.d; ++j) a.y.set_comp(j, c[k++]);
    return a;
}

/// Coefficients of the left-invariant field E_j in coordinates:
/// E_j = d/dx_j + sum_m coeff_m(x) d/dy_m, with the coefficients read off the
/// group law: coeff(x) = -2 Im(conj(x_b) u_c) for j = (block b, component c).
inline Eigen::VectorXd field_y_coeffs(const HeisElement& v, int j) {
    const GroupParams& p = v.p;
    if (j < 0 || j >= p.dim_o()) throw std::out_of_range("field index outside first stratum");
    const int b = j / p.d, c = j % p.d;
    Scalar w = conj(v.x[std::size_t(b)]) * Scalar::unit(c, p.field);
    Eigen::VectorXd out(p.dim_z());
    for (int m = 1; m < p.d; ++m) out[m - 1] = -2.0 * w.comp(m);
    return out;
}

/// Right translation flow v |-> v * exp(s E_j); exp(s E_j) = (s e_j, 0).
inline HeisElement flow_step(const HeisElement& v, int j, double s) {
    HeisElement step = HeisElement::zero(v.p);
    step.x[std::size_t(j / v.p.d)] = s * Scalar::unit(j % v.p.d, v.p.field);
    return v_mul(v, step);
}

// --- grids -----------------------------------------------------------------

// Uniform box grid [-L, L]^dim with an odd node count per axis so the origin
// is a node. Dirichlet boundary: values outside the box are treated as zero.
struct Grid {
    double L = 1.0;
    int m = 9;
    int dim = 1;
    std::int64_t node_budget = 200000;

    Grid() = default;
    Grid(double L_, int m_, int dim_, std::int64_t budget = 200000)
        : L(L_), m(m_), dim(dim_), node_budget(budget) {
        if (m < 3 || m % 2 == 0) throw std::invalid_argument("Grid: m must be odd and >= 3");
        if (L <= 0 || dim < 1) throw std::invalid_argument("Grid: bad extent or dimension");
        if (size() > node_budget) throw std::invalid_argument("Grid: node budget exceeded");
    }

    double h() const { return 2.0 * L / (m - 1); }
    std::int64_t size() const {
        std::int64_t s = 1;
        for (int i = 0; i < dim; ++i) s *= m;
        return s;
    }
    double coord(int idx) const { return -L + h() * idx; }

    void unflatten(std::int64_t f, std::vector<int>& multi) const {
        multi.resize(dim);
        for (int a = dim - 1; a >= 0; --a) {
            multi[a] = int(f % m);
            f /= m;
        }
    }
    std::int64_t flatten(const std::vector<int>& multi) const {
        std::int64_t f = 0;
        for (int a = 0; a < dim; ++a) f = f * m + multi[a];
        return f;
    }
    Eigen::VectorXd node(std::int64_t f) const {
        std::vector<int> multi;
        unflatten(f, multi);
        Eigen::VectorXd c(dim);
        for (int a = 0; a < dim; ++a) c[a] = coord(multi[a]);
        return c;
    }
};

struct GridField {
    Grid grid;
    Eigen::VectorXcd values;

    GridField() = default;
    explicit GridField(const Grid& g) : grid(g), values(Eigen::VectorXcd::Zero(g.size())) {}
};

/// Samples a function of the group point on every node.
inline GridField sample_field(const GroupParams& p, const Grid& g,
                              const std::function<std::complex<double>(const HeisElement&)>& f) {
    if (g.dim != p.dim_V()) throw std::invalid_argument("sample_field: grid dimension mismatch");
    GridField out(g);
    for (std::int64_t i = 0; i < g.size(); ++i) out.values[i] = f(heis_from_coords(p, g.node(i)));
    return out;
}

/// Riemann sum with Haar weight h^dim.
inline std::complex<double> haar_integral(const GridField& f) {
    double w = std::pow(f.grid.h(), f.grid.dim);
    return f.values.sum() * w;
}

inline double l2_norm(const GridField& f) {
    return f.values.norm() * std::pow(f.grid.h(), f.grid.dim / 2.0);
}

inline std::complex<double> l2_inner(const GridField& f, const GridField& g) {
    return f.values.dot(g.values) * std::pow(f.grid.h(), f.grid.dim);
}

// Assembled first-order stencils for the horizontal fields E_j and the
// symmetrized sub-Laplacian sum E_j^T E_j (exactly symmetric, PSD). Over R
// this is the centered-difference Laplacian on the doubled stencil.
struct HeisOperators {
    GroupParams p;
    Grid grid;
    std::vector<Eigen::SparseMatrix<double>> E;
    Eigen::SparseMatrix<double> delta;
};

inline HeisOperators assemble_operators(const GroupParams& p, const Grid& g) {
    if (p.n < 2) throw std::invalid_argument("assemble_operators: first stratum is trivial for n = 1");
    if (g.dim != p.dim_V()) throw std::invalid_argument("assemble_operators: grid dimension mismatch");
    HeisOperators ops{p, g, {}, {}};
    const std::int64_t N = g.size();
    const double inv2h = 1.0 / (2.0 * g.h());
    std::vector<int> multi;
    for (int j = 0; j < p.dim_o(); ++j) {
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(std::size_t(N) * 2 * (1 + p.dim_z()));
        for (std::int64_t i = 0; i < N; ++i) {
            g.unflatten(i, multi);
            HeisElement v = heis_from_coords(p, g.node(i));
            // d/dx_j
            if (multi[j] + 1 < g.m) {
                multi[j] += 1;
                trip.emplace_back(i, g.flatten(multi), inv2h);
                multi[j] -= 1;
            }
            if (multi[j] - 1 >= 0) {
                multi[j] -= 1;
                trip.emplace_back(i, g.flatten(multi), -inv2h);
                multi[j] += 1;
            }
            // + coeff_m(x) d/dy_m
            Eigen::VectorXd cy = field_y_coeffs(v, j);
            for (int m2 = 0; m2 < p.dim_z(); ++m2) {
                if (cy[m2] == 0.0) continue;
                int axis = p.dim_o() + m2;
                if (multi[axis] + 1 < g.m) {
                    multi[axis] += 1;
                    trip.emplace_back(i, g.flatten(multi), cy[m2] * inv2h);
                    multi[axis] -= 1;
                }
                if (multi[axis] - 1 >= 0) {
                    multi[axis] -= 1;
                    trip.emplace_back(i, g.flatten(multi), -cy[m2] * inv2h);
                    multi[axis] += 1;
                }
            }
        }
        Eigen::SparseMatrix<double> Ej(N, N);
        Ej.setFromTriplets(trip.begin(), trip.end());
        ops.E.push_back(std::move(Ej));
    }
    Eigen::SparseMatrix<double> delta(N, N);
    for (const auto& Ej : ops.E) {
        Eigen::SparseMatrix<double> EjT = Ej.transpose();
        delta += EjT * Ej;
    }
    ops.delta = delta;
    return ops;
}

inline GridField apply_real_op(const Eigen::SparseMatrix<double>& A, const GridField& f) {
    GridField out(f.grid);
    out.values.real() = A * f.values.real();
    out.values.imag() = A * f.values.imag();
    return out;
}

/// E_j f on the grid.
inline GridField left_invariant_field(const HeisOperators& ops, int j, const GridField& f) {
    if (j < 0 || j >= int(ops.E.size())) throw std::out_of_range("left_invariant_field: index out of range");
    return apply_real_op(ops.E[std::size_t(j)], f);
}

inline GridField apply_delta(const HeisOperators& ops, const GridField& f) {
    return apply_real_op(ops.delta, f);
}

}  // namespace rankone
