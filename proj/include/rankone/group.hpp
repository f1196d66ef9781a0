#pragma once

// The matrix groups O(q) over R, C, H: distinguished elements and subgroups,
// the projective actions on the disk Z = G/K and the boundary sphere G/P,
// the invariant distance, the KNA decomposition and the Cayley transform.

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "rankone/heisenberg.hpp"
#include "rankone/linalg.hpp"
#include "rankone/params.hpp"

namespace rankone {

struct GroupElement {
    GroupParams p;
    FMatrix m;
};

struct DiskPoint {
    FVector z;  // n entries, sum |z_j|^2 < 1
};

struct BoundaryPoint {
    FVector z;  // n entries, sum |z_j|^2 = 1
};

inline GroupElement make_identity(const GroupParams& p) {
    return {p, FMatrix::identity(p.matrix_size(), p.field)};
}

/// a(t): hyperbolic rotation in the (e_0, e_n) plane.
inline GroupElement make_a(const GroupParams& p, double t) {
    FMatrix m = FMatrix::identity(p.matrix_size(), p.field);
    m.at(0, 0) = Scalar(std::cosh(t), p.field);
    m.at(p.n, p.n) = Scalar(std::cosh(t), p.field);
    m.at(0, p.n) = Scalar(std::sinh(t), p.field);
    m.at(p.n, 0) = Scalar(std::sinh(t), p.field);
    return {p, m};
}

/// w0 = diag(-1, 1, ..., 1); an involution conjugating V to N.
inline GroupElement make_w0(const GroupParams& p) {
    FMatrix m = FMatrix::identity(p.matrix_size(), p.field);
    m.at(0, 0) = Scalar(-1.0, p.field);
    return {p, m};
}

/// The symmetric involution U diagonalizing a(t).
inline GroupElement make_U(const GroupParams& p) {
    FMatrix m = FMatrix::identity(p.matrix_size(), p.field);
    const double c = 1.0 / std::sqrt(2.0);
    m.at(0, 0) = Scalar(-c, p.field);
    m.at(0, p.n) = Scalar(c, p.field);
    m.at(p.n, 0) = Scalar(c, p.field);
    m.at(p.n, p.n) = Scalar(c, p.field);
    return {p, m};
}

namespace detail {
inline double xstarx(const FVector& x) {
    double a = 0;
    for (const auto& xi : x) a += abs2(xi);
    return a;
}
}  // namespace detail

/// v(x, y) with x in F^{n-1}, y purely imaginary.
inline GroupElement make_v(const GroupParams& p, const FVector& x, const Scalar& y) {
    if (int(x.size()) != p.n - 1) throw std::invalid_argument("make_v: x must have n-1 entries");
    check_imaginary(y, "make_v");
    const double isq2 = 1.0 / std::sqrt(2.0);
    const Scalar xi4 = Scalar(detail::xstarx(x) / 4.0, p.field);
    const Scalar y4 = 0.25 * y;
    FMatrix m = FMatrix::identity(p.matrix_size(), p.field);
    m.at(0, 0) = Scalar::one(p.field) + xi4 - y4;
    m.at(0, p.n) = xi4 - y4;
    m.at(p.n, 0) = -xi4 + y4;
    m.at(p.n, p.n) = Scalar::one(p.field) - xi4 + y4;
    for (int i = 0; i < p.n - 1; ++i) {
        m.at(0, 1 + i) = isq2 * conj(x[std::size_t(i)]);
        m.at(p.n, 1 + i) = -isq2 * conj(x[std::size_t(i)]);
        m.at(1 + i, 0) = isq2 * x[std::size_t(i)];
        m.at(1 + i, p.n) = isq2 * x[std::size_t(i)];
    }
    return {p, m};
}

/// n(x, y) = v(-x, -y)^*.
inline GroupElement make_n(const GroupParams& p, const FVector& x, const Scalar& y) {
    if (int(x.size()) != p.n - 1) throw std::invalid_argument("make_n: x must have n-1 entries");
    check_imaginary(y, "make_n");
    const double isq2 = 1.0 / std::sqrt(2.0);
    const Scalar xi4 = Scalar(detail::xstarx(x) / 4.0, p.field);
    const Scalar y4 = 0.25 * y;
    FMatrix m = FMatrix::identity(p.matrix_size(), p.field);
    m.at(0, 0) = Scalar::one(p.field) + xi4 - y4;
    m.at(0, p.n) = -xi4 + y4;
    m.at(p.n, 0) = xi4 - y4;
    m.at(p.n, p.n) = Scalar::one(p.field) - xi4 + y4;
    for (int i = 0; i < p.n - 1; ++i) {
        m.at(0, 1 + i) = -isq2 * conj(x[std::size_t(i)]);
        m.at(p.n, 1 + i) = -isq2 * conj(x[std::size_t(i)]);
        m.at(1 + i, 0) = -isq2 * x[std::size_t(i)];
        m.at(1 + i, p.n) = isq2 * x[std::size_t(i)];
    }
    return {p, m};
}

inline GroupElement make_v(const HeisElement& v) { return make_v(v.p, v.x, v.y); }
inline GroupElement make_n(const HeisElement& v) { return make_n(v.p, v.x, v.y); }

inline GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    return {a.p, a.m * b.m};
}

/// Residual of q-preservation: max |A* J A - J|.
inline double q_residual(const GroupElement& g) {
    FMatrix JA = g.m;
    for (int j = 0; j < g.m.cols; ++j) JA.at(0, j) = -JA.at(0, j);
    FMatrix B = adjoint(g.m) * JA;  // = A* J A
    B.at(0, 0) = B.at(0, 0) + Scalar::one(g.p.field);
    for (int i = 1; i < B.rows; ++i) B.at(i, i) = B.at(i, i) - Scalar::one(g.p.field);
    return max_abs(B);
}

inline bool is_in_G(const GroupElement& g, double tol = 1e-10) { return q_residual(g) <= tol; }

/// Residual of Euclidean-form preservation: max |A* A - I|.
inline double unitarity_residual(const GroupElement& g) {
    FMatrix B = adjoint(g.m) * g.m;
    for (int i = 0; i < B.rows; ++i) B.at(i, i) = B.at(i, i) - Scalar::one(g.p.field);
    return max_abs(B);
}

inline bool is_in_K(const GroupElement& g, double tol = 1e-10) {
    return q_residual(g) <= tol && unitarity_residual(g) <= tol;
}

/// Inverse from the form: A in O(q) has A^{-1} = J A* J.
inline GroupElement group_inverse(const GroupElement& g) {
    FMatrix B = adjoint(g.m);
    for (int j = 0; j < B.cols; ++j) B.at(0, j) = -B.at(0, j);
    for (int i = 0; i < B.rows; ++i) B.at(i, 0) = -B.at(i, 0);
    return {g.p, B};
}

inline FVector lift(const FVector& z, Field f) {
    FVector w;
    w.reserve(z.size() + 1);
    w.push_back(Scalar::one(f));
    w.insert(w.end(), z.begin(), z.end());
    return w;
}

namespace detail {
inline FVector moebius_apply(const GroupElement& g, const FVector& z) {
    FVector w = matvec(g.m, lift(z, g.p.field));
    if (abs(w[0]) < 1e-13) throw std::runtime_error("group action: projective denominator vanished");
    Scalar d = inv(w[0]);
    FVector out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) out[i] = w[i + 1] * d;
    return out;
}
}  // namespace detail

inline DiskPoint act_disk(const GroupElement& g, const DiskPoint& z) {
    return {detail::moebius_apply(g, z.z)};
}

inline BoundaryPoint act_boundary(const GroupElement& g, const BoundaryPoint& z) {
    return {detail::moebius_apply(g, z.z)};
}

inline DiskPoint disk_origin(const GroupParams& p) {
    return {FVector(std::size_t(p.n), Scalar::zero(p.field))};
}

/// o = (0, ..., 0, 1), the basepoint of the boundary sphere.
inline BoundaryPoint boundary_o(const GroupParams& p) {
    FVector z(std::size_t(p.n), Scalar::zero(p.field));
    z.back() = Scalar::one(p.field);
    return {z};
}

inline BoundaryPoint boundary_minus_o(const GroupParams& p) {
    FVector z(std::size_t(p.n), Scalar::zero(p.field));
    z.back() = Scalar(-1.0, p.field);
    return {z};
}

/// Invariant distance on the disk, normalized so dist(0, a(t)0) = t:
/// arccosh of |q(x~,y~)| / (|q(x~,x~)| |q(y~,y~)|)^{1/2} on the lifts.
inline double dist(const GroupParams& p, const DiskPoint& x, const DiskPoint& y) {
    FVector xl = lift(x.z, p.field), yl = lift(y.z, p.field);
    double num = abs(q_form(xl, yl));
    double den = std::sqrt(std::abs(re(q_form(xl, xl))) * std::abs(re(q_form(yl, yl))));
    double arg = num / den;
    if (arg < 1.0) arg = 1.0;
    return std::acosh(arg);
}

// --- real coordinates on the sphere ----------------------------------------

inline Eigen::VectorXd pack_point(const GroupParams& p, const FVector& z) {
    Eigen::VectorXd c(p.dn());
    int k = 0;
    for (const auto& zi : z)
        for (int j = 0; j < p.d; ++j) c[k++] = zi.comp(j);
    return c;
}

inline FVector unpack_point(const GroupParams& p, const Eigen::VectorXd& c) {
    FVector z(std::size_t(p.n), Scalar::zero(p.field));
    int k = 0;
    for (auto& zi : z)
        for (int j = 0; j < p.d; ++j) zi.set_comp(j, c[k++]);
    return z;
}

// --- Cayley transform -------------------------------------------------------

/// C(v) = v . o, a diffeomorphism from V onto the sphere minus {-o}.
inline BoundaryPoint cayley(const HeisElement& v) {
    const GroupParams& p = v.p;
    const double xx = detail::xstarx(v.x);
    Scalar D = Scalar(1.0 + xx / 2.0, p.field) - 0.5 * v.y;
    Scalar Dinv = inv(D);
    FVector z(std::size_t(p.n), Scalar::zero(p.field));
    const double sq2 = std::sqrt(2.0);
    for (int i = 0; i < p.n - 1; ++i) z[std::size_t(i)] = sq2 * v.x[std::size_t(i)] * Dinv;
    z[std::size_t(p.n - 1)] = (Scalar(1.0 - xx / 2.0, p.field) + 0.5 * v.y) * Dinv;
    return {z};
}

/// Inverse chart; domain excludes a neighborhood of -o.
inline HeisElement cayley_inv(const GroupParams& p, const BoundaryPoint& z) {
    const Scalar zn = z.z[std::size_t(p.n - 1)];
    Scalar one_plus = Scalar::one(p.field) + zn;
    double gap2 = abs2(one_plus);
    for (int i = 0; i < p.n - 1; ++i) gap2 += abs2(z.z[std::size_t(i)]);
    if (std::sqrt(gap2) <= 1e-8) throw std::domain_error("cayley_inv: point too close to -o");
    if (abs(one_plus) == 0.0) throw std::domain_error("cayley_inv: 1 + z_n not invertible");
    Scalar w_inv2 = inv(one_plus);  // = (1+z_n)^{-1}
    HeisElement v = HeisElement::zero(p);
    const double sq2 = std::sqrt(2.0);
    for (int i = 0; i < p.n - 1; ++i) v.x[std::size_t(i)] = sq2 * z.z[std::size_t(i)] * w_inv2;
    Scalar zeta = 2.0 * ((Scalar::one(p.field) - zn) * w_inv2);
    v.y = -im(zeta);
    return v;
}

/// Total (unnormalized) volume of the round sphere S^{k-1} in R^k.
inline double sphere_volume(int k) {
    return 2.0 * std::pow(M_PI, k / 2.0) / std::tgamma(k / 2.0);
}

/// Jacobian of C: V -> S^{dn-1} between the Haar measure dx dy and the
/// normalized round measure. Central differences in the flat chart of V.
inline double cayley_jacobian(const HeisElement& v, double step = 1e-5) {
    const GroupParams& p = v.p;
    const int D = p.dim_V();
    Eigen::VectorXd c0 = heis_to_coords(v);
    Eigen::MatrixXd Dmat(p.dn(), D);
    for (int i = 0; i < D; ++i) {
        Eigen::VectorXd cp = c0, cm = c0;
        cp[i] += step;
        cm[i] -= step;
        Eigen::VectorXd zp = pack_point(p, cayley(heis_from_coords(p, cp)).z);
        Eigen::VectorXd zm = pack_point(p, cayley(heis_from_coords(p, cm)).z);
        Dmat.col(i) = (zp - zm) / (2.0 * step);
    }
    double gram = (Dmat.transpose() * Dmat).determinant();
    return std::sqrt(std::max(gram, 0.0)) / sphere_volume(p.dn());
}

// --- KNA decomposition -------------------------------------------------------

// g = k n(x,y) a(t). The null vector zeta = e_0 + e_n satisfies n zeta = zeta
// and a(t) zeta = e^t zeta, while K preserves the Euclidean norm, so
// t = log(|g zeta| / sqrt(2)); x, y are recovered from (g a(-t))^* (g a(-t)).
struct KNADecomposition {
    GroupElement k;
    HeisElement nxy;
    double t = 0;
    double k_residual = 0;   // unitarity residual of the recovered k
    double im_residual = 0;  // real part that had to be dropped from y
};

inline double iwasawa_t(const GroupElement& g) {
    FVector zeta(std::size_t(g.p.matrix_size()), Scalar::zero(g.p.field));
    zeta.front() = Scalar::one(g.p.field);
    zeta.back() = Scalar::one(g.p.field);
    double nrm = std::sqrt(norm2(matvec(g.m, zeta)));
    return std::log(nrm / std::sqrt(2.0));
}

inline KNADecomposition kna_decompose(const GroupElement& g, double tol = 1e-8) {
    const GroupParams& p = g.p;
    const double t = iwasawa_t(g);
    GroupElement h = g * make_a(p, -t);
    FMatrix B = adjoint(h.m) * h.m;  // = n(x,y)^* n(x,y)
    FVector zeta(std::size_t(p.matrix_size()), Scalar::zero(p.field));
    zeta.front() = Scalar::one(p.field);
    zeta.back() = Scalar::one(p.field);
    FVector beta = matvec(B, zeta);  // = [1+xx/2+y/2; -sqrt2 x; 1-xx/2-y/2]
    HeisElement v = HeisElement::zero(p);
    const double isq2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < p.n - 1; ++i) v.x[std::size_t(i)] = -isq2 * beta[std::size_t(i + 1)];
    Scalar yraw = 2.0 * (beta[0] - Scalar::one(p.field) - Scalar(detail::xstarx(v.x) / 2.0, p.field));
    double imres = std::abs(re(yraw));
    v.y = im(yraw);
    GroupElement k = h * make_n(p, [&] {
        FVector mx = v.x;
        for (auto& e : mx) e = -e;
        return mx;
    }(), -v.y);
    double kres = unitarity_residual(k);
    if (kres > tol)
        throw std::runtime_error("kna_decompose: recovered K-factor fails unitarity (residual " +
                                 std::to_string(kres) + ")");
    return {k, v, t, kres, imres};
}

/// rho(a(t)) = exp(r t / 2), the half-sum-of-roots character.
inline double rho(const GroupParams& p, double t) { return std::exp(p.r * t / 2.0); }

// --- random elements ---------------------------------------------------------

inline Scalar random_scalar(const GroupParams& p, std::mt19937_64& rng, double sigma = 1.0) {
    std::normal_distribution<double> N(0.0, sigma);
    Scalar z = Scalar::zero(p.field);
    for (int c = 0; c < p.d; ++c) z.set_comp(c, N(rng));
    return z;
}

inline Scalar random_imaginary(const GroupParams& p, std::mt19937_64& rng, double sigma = 1.0) {
    Scalar z = random_scalar(p, rng, sigma);
    z.s = 0.0;
    return z;
}

inline FVector random_fvector(const GroupParams& p, int len, std::mt19937_64& rng, double sigma = 1.0) {
    FVector x(std::size_t(len), Scalar::zero(p.field));
    for (auto& e : x) e = random_scalar(p, rng, sigma);
    return x;
}

inline HeisElement random_heis(const GroupParams& p, std::mt19937_64& rng, double sigma = 1.0) {
    HeisElement v = HeisElement::zero(p);
    v.x = random_fvector(p, p.n - 1, rng, sigma);
    v.y = random_imaginary(p, rng, sigma);
    return v;
}

/// Random element of K: exp of a random element of the Lie algebra block
/// diag(X, Y), with tr Y = -X enforced over C.
inline GroupElement random_K(const GroupParams& p, std::mt19937_64& rng, double sigma = 0.6) {
    const int n = p.n;
    FMatrix A(n + 1, n + 1, p.field);
    Scalar X = random_imaginary(p, rng, sigma);
    A.at(0, 0) = X;
    FMatrix R(n, n, p.field);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) R.at(i, j) = random_scalar(p, rng, sigma);
    FMatrix Y = 0.5 * (R - adjoint(R));
    if (p.field == Field::Complex) {
        Scalar tr = Scalar::zero(p.field);
        for (int i = 0; i < n; ++i) tr = tr + Y.at(i, i);
        Scalar shift = (1.0 / n) * (tr + X);
        for (int i = 0; i < n; ++i) Y.at(i, i) = Y.at(i, i) - shift;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A.at(1 + i, 1 + j) = Y.at(i, j);
    return {p, mexp(A)};
}

/// Random element of M = centralizer of A in K: diag(q, m, q).
inline GroupElement random_M(const GroupParams& p, std::mt19937_64& rng) {
    const int n = p.n;
    FMatrix A(n - 1, n - 1, p.field);
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j) A.at(i, j) = random_scalar(p, rng, 0.7);
    FMatrix mm = mexp(0.5 * (A - adjoint(A)));
    Scalar q = Scalar::one(p.field);
    if (p.field == Field::Quaternion) {
        q = random_scalar(p, rng);
        q = (1.0 / abs(q)) * q;
    } else if (p.field == Field::Complex) {
        std::uniform_real_distribution<double> U(0.0, 2.0 * M_PI);
        double th = U(rng);
        q = Scalar(std::cos(th), std::sin(th), 0, 0, p.field);
        if (n >= 2) {
            // fix det(diag(q, m, q)) = q^2 det(m) = 1 by scaling one column of m
            std::complex<double> target = std::complex<double>(q.s, -q.t) * std::complex<double>(q.s, -q.t);
            std::complex<double> dm = det_complex(mm);
            std::complex<double> fix = target / dm;
            Scalar fs(fix.real(), fix.imag(), 0, 0, p.field);
            for (int i = 0; i < n - 1; ++i) mm.at(i, 0) = mm.at(i, 0) * fs;
        } else {
            q = Scalar::one(p.field);  // SU(1,1): q^2 = 1
        }
    }
    FMatrix out = FMatrix::identity(n + 1, p.field);
    out.at(0, 0) = q;
    out.at(n, n) = q;
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j) out.at(1 + i, 1 + j) = mm.at(i, j);
    return {p, out};
}

/// Random element of P = M A N.
inline GroupElement random_P(const GroupParams& p, std::mt19937_64& rng, double t_cap = 1.5) {
    std::uniform_real_distribution<double> U(-t_cap, t_cap);
    return random_M(p, rng) * make_a(p, U(rng)) * make_n(random_heis(p, rng));
}

inline BoundaryPoint random_boundary(const GroupParams& p, std::mt19937_64& rng) {
    std::normal_distribution<double> N(0.0, 1.0);
    Eigen::VectorXd c(p.dn());
    for (int i = 0; i < c.size(); ++i) c[i] = N(rng);
    c.normalize();
    return {unpack_point(p, c)};
}

/// Random disk point with hyperbolic distance to 0 at most cap.
inline DiskPoint random_disk(const GroupParams& p, std::mt19937_64& rng, double cap = 6.0) {
    std::uniform_real_distribution<double> U(0.0, cap);
    double rho_e = std::tanh(U(rng));
    BoundaryPoint dir = random_boundary(p, rng);
    FVector z = dir.z;
    for (auto& e : z) e = rho_e * e;
    return {z};
}

// --- words -------------------------------------------------------------------

// A group element kept in factored form; boundary Jacobians of long words are
// evaluated factor by factor through the chain rule, which keeps the numeric
// differentiation step independent of how contracting the total map is.
struct GroupWord {
    GroupParams p;
    std::vector<GroupElement> f;  // product = f[0] f[1] ... f[K-1]

    GroupElement product() const {
        GroupElement g = make_identity(p);
        for (const auto& e : f) g = g * e;
        return g;
    }
    GroupWord inverse() const {
        GroupWord w{p, {}};
        w.f.reserve(f.size());
        for (auto it = f.rbegin(); it != f.rend(); ++it) w.f.push_back(group_inverse(*it));
        return w;
    }
    GroupWord operator*(const GroupWord& other) const {
        GroupWord w{p, f};
        w.f.insert(w.f.end(), other.f.begin(), other.f.end());
        return w;
    }
};

/// Word for a(t) split into steps of size at most `step`.
inline GroupWord a_word(const GroupParams& p, double t, double step = 0.5) {
    GroupWord w{p, {}};
    int K = std::max(1, int(std::ceil(std::abs(t) / step)));
    for (int i = 0; i < K; ++i) w.f.push_back(make_a(p, t / K));
    return w;
}

/// Word g with g . 0 = x, of the form k a(t) with k in K rotating e_n to x/|x|.
inline GroupWord transport_word(const GroupParams& p, const DiskPoint& x) {
    double rho_e = std::sqrt(norm2(x.z));
    if (rho_e >= 1.0) throw std::invalid_argument("transport_word: point not in open disk");
    GroupWord w{p, {}};
    if (rho_e < 1e-14) {
        w.f.push_back(make_identity(p));
        return w;
    }
    FVector dir = x.z;
    for (auto& e : dir) e = (1.0 / rho_e) * e;
    FMatrix U = unitary_completion(dir);
    FMatrix k = FMatrix::identity(p.matrix_size(), p.field);
    for (int i = 0; i < p.n; ++i)
        for (int j = 0; j < p.n; ++j) k.at(1 + i, 1 + j) = U.at(i, j);
    w.f.push_back({p, k});
    double t = std::atanh(rho_e);
    GroupWord at = a_word(p, t);
    w.f.insert(w.f.end(), at.f.begin(), at.f.end());
    return w;
}

}  // namespace rankone
