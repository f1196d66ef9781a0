#pragma once

// The two cocycle families: visual-measure densities mu_x with
// c(x,y) = mu_y - mu_x, and the Busemann cocycle gamma_{x,y} in closed form
// through the sesquilinear form q. Densities are Jacobians of the boundary
// action, differentiated numerically in a moving orthonormal tangent frame.

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "rankone/group.hpp"

namespace rankone {

// --- Busemann cocycle ---------------------------------------------------------

/// gamma_{x,y}(z) = log | q(y~,z~)/q(x~,z~) | + (1/2) log( |q(x~,x~)| / |q(y~,y~)| ).
inline double busemann(const GroupParams& p, const DiskPoint& x, const DiskPoint& y,
                       const BoundaryPoint& z) {
    FVector xl = lift(x.z, p.field), yl = lift(y.z, p.field), zl = lift(z.z, p.field);
    double qyz = abs(q_form(yl, zl));
    double qxz = abs(q_form(xl, zl));
    double qxx = std::abs(re(q_form(xl, xl)));
    double qyy = std::abs(re(q_form(yl, yl)));
    return std::log(qyz) - std::log(qxz) + 0.5 * (std::log(qxx) - std::log(qyy));
}

/// The mod-constants representative of gamma_{0, a_t 0}: log |1 - z_n tanh t|.
inline double busemann_rep(const GroupParams& p, double t, const BoundaryPoint& z) {
    Scalar zn = z.z[std::size_t(p.n - 1)];
    return std::log(abs(Scalar::one(p.field) - std::tanh(t) * zn));
}

/// First (t-dependent) term of gamma_{0,a_t 0} composed with the Cayley chart.
inline double busemann_chart_term(const GroupParams& p, double t, const HeisElement& v) {
    double xx = 0;
    for (const auto& xi : v.x) xx += abs2(xi);
    Scalar A = Scalar(1.0 + xx / 2.0, p.field) - 0.5 * v.y;
    Scalar B = Scalar(1.0 - xx / 2.0, p.field) + 0.5 * v.y;
    return std::log(abs(A - std::tanh(t) * B));
}

/// The t-independent subtraction log |1 + x^*x/2 - y/2|.
inline double busemann_chart_base(const GroupParams& p, const HeisElement& v) {
    double xx = 0;
    for (const auto& xi : v.x) xx += abs2(xi);
    Scalar A = Scalar(1.0 + xx / 2.0, p.field) - 0.5 * v.y;
    return std::log(abs(A));
}

/// t -> infinity limit of the chart term: log |x^*x - y| = 2 log N(x,y).
inline double busemann_chart_limit(const HeisElement& v) {
    double xx = 0;
    for (const auto& xi : v.x) xx += abs2(xi);
    return 0.5 * std::log(xx * xx + abs2(v.y));
}

// --- boundary-sphere Jacobians --------------------------------------------------

/// Orthonormal basis of the tangent space z^perp at a unit vector z.
inline Eigen::MatrixXd tangent_frame(const Eigen::VectorXd& z) {
    const int n = int(z.size());
    int skip = 0;
    z.cwiseAbs().maxCoeff(&skip);
    Eigen::MatrixXd T(n, n - 1);
    int col = 0;
    for (int i = 0; i < n && col < n - 1; ++i) {
        if (i == skip) continue;
        Eigen::VectorXd v = Eigen::VectorXd::Unit(n, i);
        v -= z * z.dot(v);
        for (int c = 0; c < col; ++c) v -= T.col(c) * T.col(c).dot(v);
        double nv = v.norm();
        if (nv < 1e-10) throw std::runtime_error("tangent_frame: degenerate frame");
        T.col(col++) = v / nv;
    }
    return T;
}

namespace detail {
inline Eigen::VectorXd act_packed(const GroupElement& g, const Eigen::VectorXd& z) {
    BoundaryPoint b{unpack_point(g.p, z)};
    return pack_point(g.p, act_boundary(g, b).z);
}
}  // namespace detail

/// |det| of the sphere map z -> g.z at z with respect to the round metric,
/// by 4-point central differences along an orthonormal tangent frame.
inline double boundary_map_jacobian(const GroupElement& g, const Eigen::VectorXd& z, double step = 1e-3) {
    const int n = int(z.size());
    Eigen::MatrixXd T = tangent_frame(z);
    Eigen::VectorXd w0 = detail::act_packed(g, z);
    w0.normalize();
    Eigen::MatrixXd D(n, n - 1);
    for (int i = 0; i < n - 1; ++i) {
        auto probe = [&](double s) {
            Eigen::VectorXd zz = z + s * T.col(i);
            zz.normalize();
            return detail::act_packed(g, zz);
        };
        Eigen::VectorXd d =
            (8.0 * (probe(step) - probe(-step)) - (probe(2 * step) - probe(-2 * step))) / (12.0 * step);
        D.col(i) = d - w0 * w0.dot(d);
    }
    double gram = (D.transpose() * D).determinant();
    return std::sqrt(std::max(gram, 0.0));
}

/// Jacobian of the composite map given by a word (factors applied right to
/// left, i.e. w.f[last] acts first), via the chain rule.
inline double jacobian_chain(const GroupWord& w, const Eigen::VectorXd& z, double step = 1e-3) {
    double jac = 1.0;
    Eigen::VectorXd cur = z;
    for (auto it = w.f.rbegin(); it != w.f.rend(); ++it) {
        jac *= boundary_map_jacobian(*it, cur, step);
        cur = detail::act_packed(*it, cur);
        cur.normalize();
    }
    return jac;
}

// --- visual densities -----------------------------------------------------------

// Density of the visual measure mu_x relative to the normalized round measure:
// mu_{g0} = (g^{-1})^* mu_0, so the density at z is the Jacobian of z -> g^{-1} z.
// Keeping g as a word keeps each differentiated factor well-conditioned.
struct VisualDensity {
    GroupParams p;
    GroupWord ginv;
    double step = 1e-3;

    double at_packed(const Eigen::VectorXd& z) const { return jacobian_chain(ginv, z, step); }
    double at(const BoundaryPoint& z) const { return at_packed(pack_point(p, z.z)); }
};

inline VisualDensity make_visual_density(const GroupWord& g_word) {
    return {g_word.p, g_word.inverse(), 1e-3};
}

inline VisualDensity make_visual_density(const GroupParams& p, const DiskPoint& x) {
    return make_visual_density(transport_word(p, x));
}

/// c(x,y) = mu_y - mu_x evaluated pointwise through two densities.
struct CocycleDensity {
    VisualDensity from, to;

    double at_packed(const Eigen::VectorXd& z) const { return to.at_packed(z) - from.at_packed(z); }
    double at(const BoundaryPoint& z) const { return at_packed(pack_point(from.p, z.z)); }
};

inline CocycleDensity c_cocycle(const GroupParams& p, const DiskPoint& x, const DiskPoint& y) {
    return {make_visual_density(p, x), make_visual_density(p, y)};
}

inline CocycleDensity c_cocycle(const GroupWord& gx, const GroupWord& gy) {
    return {make_visual_density(gx), make_visual_density(gy)};
}

/// b_g = c(g0, 0); the mu_0 term has density identically 1.
struct BCocycle {
    VisualDensity moved;

    double at_packed(const Eigen::VectorXd& z) const { return moved.at_packed(z) - 1.0; }
};

inline BCocycle b_cocycle(const GroupWord& g) { return {make_visual_density(g)}; }

// --- the G-action on boundary functions and densities -----------------------------

/// (pi(g) phi)(z) = phi(g^{-1} z) on functions.
inline std::function<double(const Eigen::VectorXd&)> pi_function(
    const GroupElement& g, std::function<double(const Eigen::VectorXd&)> phi) {
    GroupElement gi = group_inverse(g);
    return [gi, phi = std::move(phi)](const Eigen::VectorXd& z) {
        Eigen::VectorXd w = detail::act_packed(gi, z);
        w.normalize();
        return phi(w);
    };
}

/// Densities transform with the Jacobian weight: pi(g) of a measure with
/// density D has density D(g^{-1} z) * Jac_{g^{-1}}(z).
inline std::function<double(const Eigen::VectorXd&)> pi_density(
    const GroupWord& g, std::function<double(const Eigen::VectorXd&)> dens, double step = 1e-3) {
    GroupWord gi = g.inverse();
    return [gi, step, dens = std::move(dens)](const Eigen::VectorXd& z) {
        Eigen::VectorXd w = z;
        double jac = 1.0;
        for (auto it = gi.f.rbegin(); it != gi.f.rend(); ++it) {
            jac *= boundary_map_jacobian(*it, w, step);
            w = detail::act_packed(*it, w);
            w.normalize();
        }
        return dens(w) * jac;
    };
}

// --- chart gradients ---------------------------------------------------------------

/// d_o phi = (E_1 phi, ..., E_{d(n-1)} phi) on a grid field.
inline std::vector<GridField> d_chart_gradient(const HeisOperators& ops, const GridField& f) {
    std::vector<GridField> out;
    out.reserve(ops.E.size());
    for (int j = 0; j < int(ops.E.size()); ++j) out.push_back(left_invariant_field(ops, j, f));
    return out;
}

/// Pointwise horizontal gradient of a scalar function by flow differences
/// (f(v exp(h E_j)) - f(v exp(-h E_j))) / 2h; the step scales with the gauge.
inline Eigen::VectorXd horizontal_gradient_flow(const GroupParams& p,
                                                const std::function<double(const HeisElement&)>& F,
                                                const HeisElement& v, double rel_step = 1e-5) {
    double h = rel_step * std::max(hom_norm(v), 1e-8);
    Eigen::VectorXd g(p.dim_o());
    for (int j = 0; j < p.dim_o(); ++j)
        g[j] = (F(flow_step(v, j, h)) - F(flow_step(v, j, -h))) / (2.0 * h);
    return g;
}

}  // namespace rankone
