#pragma once

// Group-axiom and cocycle-identity suites: every check is a residual with a
// pinned tolerance, reported one row per check.

#include <random>

#include "rankone/cocycles.hpp"
#include "rankone/experiments.hpp"

namespace rankone::experiments {

namespace detail_verify {

/// x, y read back from the matrix of n(x, y).
inline HeisElement heis_from_n(const GroupElement& g) {
    const GroupParams& p = g.p;
    HeisElement v = HeisElement::zero(p);
    const double sq2 = std::sqrt(2.0);
    for (int i = 0; i < p.n - 1; ++i) v.x[std::size_t(i)] = -sq2 * g.m.at(1 + i, 0);
    double xx = 0;
    for (const auto& xi : v.x) xx += abs2(xi);
    Scalar e = g.m.at(p.n, 0);  // = x^*x/4 - y/4
    Scalar y = -4.0 * (e - Scalar(xx / 4.0, p.field));
    y.s = 0.0;
    v.y = y;
    return v;
}

inline double heis_distance(const HeisElement& a, const HeisElement& b) {
    return (heis_to_coords(a) - heis_to_coords(b)).cwiseAbs().maxCoeff();
}

inline double boundary_distance(const GroupParams& p, const BoundaryPoint& a, const BoundaryPoint& b) {
    return (pack_point(p, a.z) - pack_point(p, b.z)).cwiseAbs().maxCoeff();
}

}  // namespace detail_verify

inline CocycleReport verify_group(const GroupParams& p, const Options& opt) {
    using namespace detail_verify;
    Timer timer;
    CocycleReport rep;
    rep.experiment = "verify-group";
    rep.group = p.name();
    rep.n = p.n;
    rep.columns = {"check", "residual", "tolerance", "pass"};
    std::mt19937_64 rng(opt.seed);
    auto row = [&](const std::string& name, double residual, double tol) {
        rep.check(name, residual, tol, "<=");
        rep.add_row(name, {residual, tol, residual <= tol ? 1.0 : 0.0});
    };

    {  // scalar algebra
        double mod_dev = 0, conj_dev = 0, reim_dev = 0;
        for (int i = 0; i < 1000; ++i) {
            Scalar z = random_scalar(p, rng), w = random_scalar(p, rng);
            mod_dev = std::max(mod_dev, std::abs(abs(z * w) - abs(z) * abs(w)) / (abs(z) * abs(w)));
            conj_dev = std::max(conj_dev, max_comp_abs(conj(z * w) - conj(w) * conj(z)));
            Scalar back = Scalar(re(z), p.field) + im(z) - z;
            reim_dev = std::max(reim_dev, max_comp_abs(back));
        }
        row("scalar_modulus_multiplicative", mod_dev, 1e-13);
        row("scalar_conj_antihomomorphism", conj_dev, 1e-13);
        row("scalar_re_plus_im", reim_dev, 0.0);
    }
    {  // sesquilinearity of q
        double dev = 0;
        for (int i = 0; i < 200; ++i) {
            FVector z = random_fvector(p, p.n + 1, rng), w = random_fvector(p, p.n + 1, rng);
            Scalar lam = random_scalar(p, rng), mu = random_scalar(p, rng);
            FVector zl = z, wm = w;
            for (auto& e : zl) e = e * lam;
            for (auto& e : wm) e = e * mu;
            dev = std::max(dev, max_comp_abs(q_form(zl, wm) - conj(lam) * q_form(z, w) * mu));
        }
        row("q_sesquilinear", dev, 1e-12);
    }
    {  // generators lie in O(q)
        double worst = 0;
        for (double t : {0.5, 3.0, 5.0}) worst = std::max(worst, q_residual(make_a(p, t)));
        worst = std::max(worst, q_residual(make_w0(p)));
        for (int i = 0; i < 20; ++i) {
            worst = std::max(worst, q_residual(make_v(random_heis(p, rng))));
            worst = std::max(worst, q_residual(make_n(random_heis(p, rng))));
            worst = std::max(worst, q_residual(random_K(p, rng)));
            worst = std::max(worst, q_residual(random_M(p, rng)));
        }
        row("generator_q_residual", worst, 1e-10);
        GroupElement U = make_U(p), w0 = make_w0(p);
        row("involutions_squared",
            std::max(max_abs((U * U).m - FMatrix::identity(p.matrix_size(), p.field)),
                     max_abs((w0 * w0).m - FMatrix::identity(p.matrix_size(), p.field))),
            1e-14);
        double addv = 0;
        for (int i = 0; i < 10; ++i) {
            std::uniform_real_distribution<double> T(-2.0, 2.0);
            double t = T(rng), s = T(rng);
            addv = std::max(addv, max_abs((make_a(p, t) * make_a(p, s)).m - make_a(p, t + s).m));
        }
        row("a_one_parameter_group", addv, 1e-12);
    }
    {  // w0-conjugation and the V group law against matrix products
        double wc = 0, gl = 0;
        GroupElement w0 = make_w0(p);
        for (int i = 0; i < 50; ++i) {
            HeisElement a = random_heis(p, rng), b = random_heis(p, rng);
            wc = std::max(wc, max_abs((w0 * make_v(a) * w0).m - make_n(a).m));
            gl = std::max(gl, max_abs((make_v(a) * make_v(b)).m - make_v(v_mul(a, b)).m));
        }
        row("w0_conjugation_identity", wc, 1e-12);
        row("v_group_law_vs_matrix", gl, 1e-12);
    }
    {  // 20-fold product drift
        double worst = 0;
        for (int rep2 = 0; rep2 < 5; ++rep2) {
            GroupElement g = make_identity(p);
            std::uniform_real_distribution<double> T(-0.4, 0.4);
            for (int i = 0; i < 20; ++i) {
                switch (i % 3) {
                    case 0: g = g * random_K(p, rng); break;
                    case 1: g = g * make_a(p, T(rng)); break;
                    default: g = g * make_v(random_heis(p, rng, 0.5));
                }
                worst = std::max(worst, q_residual(g));
            }
        }
        row("product_chain_q_drift", worst, 1e-9);
    }
    {  // P fixes o, K fixes the disk origin
        double iso = 0, korig = 0;
        BoundaryPoint o = boundary_o(p);
        for (int i = 0; i < 100; ++i) {
            iso = std::max(iso, boundary_distance(p, act_boundary(random_P(p, rng), o), o));
            DiskPoint z0 = act_disk(random_K(p, rng), disk_origin(p));
            korig = std::max(korig, std::sqrt(norm2(z0.z)));
        }
        row("isotropy_P_fixes_o", iso, 1e-10);
        row("K_fixes_disk_origin", korig, 1e-12);
    }
    {  // Bruhat chart coverage and Cayley round trips
        int failures = 0;
        double worst = 0, sphere_dev = 0;
        for (int i = 0; i < 1000; ++i) {
            BoundaryPoint z = random_boundary(p, rng);
            double gap = std::sqrt(
                (pack_point(p, z.z) - pack_point(p, boundary_minus_o(p).z)).squaredNorm());
            if (gap <= 1e-3) continue;
            try {
                HeisElement v = cayley_inv(p, z);
                worst = std::max(worst, boundary_distance(p, cayley(v), z));
            } catch (const std::exception&) {
                ++failures;
            }
        }
        for (int i = 0; i < 100; ++i) {
            HeisElement v = random_heis(p, rng);
            BoundaryPoint cz = cayley(v);
            sphere_dev = std::max(sphere_dev, std::abs(norm2(cz.z) - 1.0));
            worst = std::max(worst, heis_distance(cayley_inv(p, cz), v));
        }
        row("bruhat_coverage_failures", double(failures), 0.0);
        row("cayley_roundtrip", worst, 1e-10);
        row("cayley_on_sphere", sphere_dev, 1e-12);
    }
    {  // conjugation by a(t) dilates V; compare both routes
        double worst = 0;
        for (int i = 0; i < 20; ++i) {
            std::uniform_real_distribution<double> T(-1.0, 1.0);
            double t = T(rng);
            HeisElement v = random_heis(p, rng, 0.8);
            GroupElement lhs = make_a(p, t) * make_v(v) * make_a(p, -t);
            GroupElement rhs = make_v(dilate(std::exp(-t), v));
            worst = std::max(worst, max_abs(lhs.m - rhs.m));
        }
        row("a_conjugation_is_dilation", worst, 1e-12);
    }
    {  // KNA decomposition round trips
        double tdev = 0, kres = 0, tk = 0, ta = 0;
        std::uniform_real_distribution<double> T(-2.0, 2.0);
        for (int i = 0; i < 50; ++i) {
            double t = T(rng);
            GroupElement k = random_K(p, rng);
            HeisElement v = random_heis(p, rng, 0.8);
            GroupElement g = k * make_n(v) * make_a(p, t);
            KNADecomposition d = kna_decompose(g);
            tdev = std::max(tdev, std::abs(d.t - t));
            kres = std::max(kres, d.k_residual);
            tk = std::max(tk, std::abs(iwasawa_t(random_K(p, rng))));
        }
        for (double s : {-1.5, 0.0, 2.5}) ta = std::max(ta, std::abs(iwasawa_t(make_a(p, s)) - s));
        row("iwasawa_t_roundtrip", tdev, 1e-8);
        row("iwasawa_k_unitarity", kres, 1e-8);
        row("iwasawa_t_on_K", tk, 1e-10);
        row("iwasawa_t_on_A", ta, 1e-12);
    }
    {  // rho against the finite-difference Jacobian of a(t) n a(-t) on N
        double worst = 0;
        for (double t : {0.4, -0.7}) {
            HeisElement v0 = random_heis(p, rng, 0.5);
            const int D = p.dim_V();
            Eigen::MatrixXd J(D, D);
            const double h = 1e-5;
            Eigen::VectorXd c0 = heis_to_coords(v0);
            for (int j = 0; j < D; ++j) {
                Eigen::VectorXd cp = c0, cm = c0;
                cp[j] += h;
                cm[j] -= h;
                auto image = [&](const Eigen::VectorXd& c) {
                    GroupElement conj =
                        make_a(p, t) * make_n(heis_from_coords(p, c)) * make_a(p, -t);
                    return heis_to_coords(heis_from_n(conj));
                };
                J.col(j) = (image(cp) - image(cm)) / (2.0 * h);
            }
            double det = std::abs(J.determinant());
            worst = std::max(worst, std::abs(det / (rho(p, t) * rho(p, t)) - 1.0));
        }
        row("rho_squared_vs_N_jacobian", worst, 1e-6);
        row("rho_at_zero", std::abs(rho(p, 0.0) - 1.0), 0.0);
    }
    {  // measure of the a(t)-conjugated unit box scales by exp(-rt)
        double worst = 0;
        double tmag = std::min(0.3, 3.0 / p.r);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        const int D = p.dim_V();
        auto conj_params = [&](double t, const Eigen::VectorXd& c) {
            GroupElement w = make_a(p, t) * make_v(heis_from_coords(p, c)) * make_a(p, -t);
            return heis_to_coords(heis_from_n(GroupElement{p, (make_w0(p) * w * make_w0(p)).m}));
        };
        for (double t : {tmag, -tmag}) {
            // bounding box of the image from forward-mapped samples
            Eigen::VectorXd lo = Eigen::VectorXd::Constant(D, 1e300), hi = -lo;
            for (int i = 0; i < 400; ++i) {
                Eigen::VectorXd c(D);
                for (int a2 = 0; a2 < D; ++a2) c[a2] = (i < 2) ? double(i) : U(rng);
                Eigen::VectorXd w = conj_params(t, c);
                lo = lo.cwiseMin(w);
                hi = hi.cwiseMax(w);
            }
            Eigen::VectorXd pad = 0.05 * (hi - lo);
            lo -= pad;
            hi += pad;
            double box_vol = (hi - lo).prod();
            int inside = 0;
            const int Nmc = 150000;
            for (int i = 0; i < Nmc; ++i) {
                Eigen::VectorXd w(D);
                for (int a2 = 0; a2 < D; ++a2) w[a2] = lo[a2] + (hi[a2] - lo[a2]) * U(rng);
                // w in the image iff the backward conjugate has parameters in [0,1]^dim
                Eigen::VectorXd pre = conj_params(-t, w);
                bool ok = true;
                for (int a2 = 0; a2 < D; ++a2)
                    if (pre[a2] < 0.0 || pre[a2] > 1.0) ok = false;
                inside += ok;
            }
            double vol = box_vol * double(inside) / Nmc;
            worst = std::max(worst, std::abs(vol / std::exp(-p.r * t) - 1.0));
        }
        row("conjugated_box_volume_scaling", worst, 2e-2);
    }
    {  // disk action and distance
        double adisk = 0, dinv = 0, dself = 0, dat = 0;
        for (double t : {0.5, 2.0}) {
            DiskPoint im = act_disk(make_a(p, t), disk_origin(p));
            FVector expect(std::size_t(p.n), Scalar::zero(p.field));
            expect.back() = Scalar(std::tanh(t), p.field);
            double dev = 0;
            for (std::size_t i = 0; i < expect.size(); ++i)
                dev = std::max(dev, max_comp_abs(im.z[i] - expect[i]));
            adisk = std::max(adisk, dev);
            dat = std::max(dat, std::abs(dist(p, disk_origin(p), im) - t));
        }
        for (int i = 0; i < 50; ++i) {
            DiskPoint x = random_disk(p, rng, 3.0), y = random_disk(p, rng, 3.0);
            dself = std::max(dself, dist(p, x, x));
            std::uniform_real_distribution<double> T(-1.5, 1.5);
            GroupElement g = random_K(p, rng) * make_a(p, T(rng)) * random_K(p, rng);
            dinv = std::max(dinv,
                            std::abs(dist(p, act_disk(g, x), act_disk(g, y)) - dist(p, x, y)));
        }
        row("a_t_moves_origin_to_tanh", adisk, 1e-13);
        row("dist_zero_on_diagonal", dself, 1e-7);
        row("dist_along_A_orbit", dat, 1e-10);
        row("dist_G_invariance", dinv, 1e-10);
    }
    rep.runtime_seconds = timer.seconds();
    return rep;
}

inline CocycleReport verify_cocycle(const GroupParams& p, const Options& opt) {
    using namespace detail_verify;
    Timer timer;
    CocycleReport rep;
    rep.experiment = "verify-cocycle";
    rep.group = p.name();
    rep.n = p.n;
    rep.columns = {"check", "residual", "tolerance", "pass"};
    std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ull);
    auto row = [&](const std::string& name, double residual, double tol) {
        rep.check(name, residual, tol, "<=");
        rep.add_row(name, {residual, tol, residual <= tol ? 1.0 : 0.0});
    };
    const int inst = std::max(10, opt.instances);

    auto random_word = [&](double t_cap) {
        GroupWord w{p, {random_K(p, rng)}};
        std::uniform_real_distribution<double> T(0.0, t_cap);
        GroupWord at = a_word(p, T(rng));
        w.f.insert(w.f.end(), at.f.begin(), at.f.end());
        w.f.push_back(random_K(p, rng));
        return w;
    };

    {  // Busemann closed-form identities
        double ident = 0, equiv = 0, zero = 0, att = 0;
        for (int i = 0; i < inst; ++i) {
            DiskPoint x = random_disk(p, rng), y = random_disk(p, rng), w = random_disk(p, rng);
            BoundaryPoint z = random_boundary(p, rng);
            ident = std::max(ident, std::abs(busemann(p, x, y, z) + busemann(p, y, w, z) -
                                             busemann(p, x, w, z)));
            zero = std::max(zero, std::abs(busemann(p, x, x, z)));
            // combined displacement capped at ~6 to keep the q-ratios conditioned
            GroupElement g = random_word(2.0).product();
            DiskPoint xe = random_disk(p, rng, 4.0), ye = random_disk(p, rng, 4.0);
            equiv = std::max(equiv, std::abs(busemann(p, act_disk(g, xe), act_disk(g, ye),
                                                      act_boundary(g, z)) -
                                             busemann(p, xe, ye, z)));
        }
        for (double t : {1.0, 3.0}) {
            DiskPoint at = act_disk(make_a(p, t), disk_origin(p));
            att = std::max(att, std::abs(busemann(p, disk_origin(p), at, boundary_o(p)) + t));
        }
        row("busemann_cocycle_identity", ident, 1e-11);
        row("busemann_equivariance", equiv, 1e-9);
        row("busemann_vanishes_on_diagonal", zero, 1e-12);
        row("busemann_A_orbit_value", att, 1e-12);
    }
    {  // Busemann against the distance-difference limit
        double worst = 0;
        for (int i = 0; i < 20; ++i) {
            DiskPoint x = random_disk(p, rng, 2.0), y = random_disk(p, rng, 2.0);
            BoundaryPoint z = random_boundary(p, rng);
            FVector zp = z.z;
            for (auto& e : zp) e = (1.0 - 1e-6) * e;
            DiskPoint zprime{zp};
            double lim = dist(p, zprime, y) - dist(p, zprime, x);
            worst = std::max(worst, std::abs(lim - busemann(p, x, y, z)));
        }
        row("busemann_distance_limit", worst, 1e-4);
    }
    {  // visual cocycle identity with independently synthesized densities
        double worst = 0;
        const int tri = std::max(10, inst / 10);
        for (int i = 0; i < tri; ++i) {
            GroupWord gx = random_word(1.5), gy = random_word(1.5), gz = random_word(1.5);
            GroupWord gy2 = gy;
            gy2.f.push_back(random_K(p, rng));  // same basepoint, different word
            VisualDensity Dx = make_visual_density(gx), Dy = make_visual_density(gy),
                          Dy2 = make_visual_density(gy2), Dz = make_visual_density(gz);
            for (int s = 0; s < 3; ++s) {
                Eigen::VectorXd z = pack_point(p, random_boundary(p, rng).z);
                double cxy = Dy.at_packed(z) - Dx.at_packed(z);
                double cyz = Dz.at_packed(z) - Dy2.at_packed(z);
                double cxz = Dz.at_packed(z) - Dx.at_packed(z);
                worst = std::max(worst, std::abs(cxy + cyz - cxz));
            }
        }
        row("visual_cocycle_identity", worst, 1e-9);
    }
    {  // equivariance pi(g) c(x,y) = c(gx, gy) and the b-cocycle identity
        double worst = 0, bworst = 0;
        const int tri = std::max(10, inst / 10);
        for (int i = 0; i < tri; ++i) {
            GroupWord gx = random_word(1.0), gy = random_word(1.0), g = random_word(1.0);
            CocycleDensity base = c_cocycle(gx, gy);
            CocycleDensity moved = c_cocycle(g * gx, g * gy);
            auto pushed = pi_density(
                g, [&](const Eigen::VectorXd& z) { return base.at_packed(z); });
            GroupWord h = random_word(1.0);
            BCocycle bg = b_cocycle(g), bh = b_cocycle(h), bgh = b_cocycle(g * h);
            auto pushed_bh = pi_density(
                g, [&](const Eigen::VectorXd& z) { return bh.moved.at_packed(z); });
            for (int s = 0; s < 3; ++s) {
                Eigen::VectorXd z = pack_point(p, random_boundary(p, rng).z);
                worst = std::max(worst, std::abs(pushed(z) - moved.at_packed(z)));
                // b_{gh} = pi(g) b_h + b_g with pi(g) mu_0 = mu_{g0}
                double lhs = bgh.at_packed(z);
                double pi_g_bh = pushed_bh(z) - (bg.at_packed(z) + 1.0);
                double rhs = pi_g_bh + bg.at_packed(z);
                bworst = std::max(bworst, std::abs(lhs - rhs));
            }
        }
        row("visual_equivariance", worst, 1e-7);
        row("b_cocycle_identity", bworst, 1e-7);
    }
    {  // well-definedness: two transports to the same basepoint
        double worst = 0;
        for (int i = 0; i < 20; ++i) {
            GroupWord g1 = random_word(1.5);
            GroupWord g2 = g1;
            g2.f.push_back(random_K(p, rng));
            VisualDensity D1 = make_visual_density(g1), D2 = make_visual_density(g2);
            for (int s = 0; s < 3; ++s) {
                Eigen::VectorXd z = pack_point(p, random_boundary(p, rng).z);
                worst = std::max(worst, std::abs(D1.at_packed(z) - D2.at_packed(z)));
            }
        }
        row("visual_density_well_defined", worst, 1e-8);
    }
    {  // pi is a pointwise action; pi(e) is the identity
        double comp = 0, unit = 0;
        auto phi = [&](const Eigen::VectorXd& z) { return z[0] + 0.5 * z[0] * z[z.size() - 1]; };
        for (int i = 0; i < 50; ++i) {
            GroupElement g = random_word(1.0).product(), h = random_word(1.0).product();
            auto lhs = pi_function(g, pi_function(h, phi));
            auto rhs = pi_function(g * h, phi);
            Eigen::VectorXd z = pack_point(p, random_boundary(p, rng).z);
            comp = std::max(comp, std::abs(lhs(z) - rhs(z)));
            auto idf = pi_function(make_identity(p), phi);
            unit = std::max(unit, std::abs(idf(z) - phi(z)));
        }
        row("pi_composition", comp, 1e-10);
        row("pi_identity", unit, 1e-13);
    }
    {  // pi(k) preserves the L^2 norm of the round sphere.
        // K acts linearly in the packed coordinates, so a quadratic test
        // function transforms to another quadratic and both norms follow
        // exactly from the sphere moments E[zz^T] = I/k and the 4th-moment rule.
        double worst = 0, lindev = 0;
        const int kd = p.dn();
        Eigen::VectorXd a = Eigen::VectorXd::Zero(kd);
        a[0] = 1.0;
        Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(kd, kd);
        Q(0, kd - 1) = Q(kd - 1, 0) = 0.15;
        auto phi = [&](const Eigen::VectorXd& z) { return a.dot(z) + z.dot(Q * z); };
        for (int i = 0; i < 5; ++i) {
            GroupElement k = random_K(p, rng);
            GroupElement ki = group_inverse(k);
            Eigen::MatrixXd R(kd, kd);
            for (int c = 0; c < kd; ++c) R.col(c) = detail::act_packed(ki, Eigen::VectorXd::Unit(kd, c));
            auto moved = pi_function(k, phi);
            for (int s = 0; s < 5; ++s) {
                Eigen::VectorXd z = pack_point(p, random_boundary(p, rng).z);
                lindev = std::max(lindev, std::abs(moved(z) - ((R.transpose() * a).dot(z) +
                                                               z.dot(R.transpose() * Q * R * z))));
            }
            auto l2sq = [kd](const Eigen::VectorXd& av, const Eigen::MatrixXd& Qv) {
                double trq = Qv.trace();
                return av.squaredNorm() / kd +
                       (trq * trq + 2.0 * (Qv * Qv).trace()) / (double(kd) * (kd + 2));
            };
            worst = std::max(worst, std::abs(std::sqrt(l2sq(R.transpose() * a, R.transpose() * Q * R)) -
                                             std::sqrt(l2sq(a, Q))));
        }
        row("pi_K_L2_isometry", worst, 1e-8);
        row("pi_K_linear_in_chart", lindev, 1e-10);
    }
    {  // visual mass (exact quadratures up to S^3; Monte Carlo for H)
        double t = p.field == Field::Quaternion ? 0.2 : 1.0;
        VisualDensity D = make_visual_density(a_word(p, t));
        double mass = 0, tol;
        if (p.field == Field::Quaternion) {
            const int N = 50000;
            std::normal_distribution<double> G(0.0, 1.0);
            for (int i = 0; i < N; ++i) {
                Eigen::VectorXd z(p.dn());
                for (int a2 = 0; a2 < p.dn(); ++a2) z[a2] = G(rng);
                z.normalize();
                mass += D.at_packed(z);
            }
            mass /= N;
            tol = 3e-2;
            rep.notes.push_back("visual mass over S^7 estimated by Monte Carlo");
        } else {
            std::vector<std::pair<Eigen::VectorXd, double>> quad;
            if (p.dn() == 2) {
                const int N = 2048;
                for (int i = 0; i < N; ++i) quad.push_back({s1_point(2.0 * M_PI * i / N), 1.0 / N});
            } else {
                quad = sphere_product_quadrature(p.dn(), 24);
            }
            for (const auto& nd : quad) mass += nd.second * D.at_packed(nd.first);
            tol = 5e-3;
        }
        row("visual_mass", std::abs(mass - 1.0), tol);
        // x = 0 gives the round measure itself
        VisualDensity D0 = make_visual_density(p, disk_origin(p));
        double dev0 = 0;
        for (int i = 0; i < 10; ++i)
            dev0 = std::max(dev0,
                            std::abs(D0.at_packed(pack_point(p, random_boundary(p, rng).z)) - 1.0));
        row("visual_density_at_origin", dev0, 1e-10);
    }
    if (p.field == Field::Real) {  // classical harmonic-measure closed form
        double worst = 0;
        for (double t : {0.5, 1.5}) {
            VisualDensity D = make_visual_density(a_word(p, t));
            double rho_p = std::tanh(t / 2.0);
            for (int i = 0; i < 64; ++i) {
                double theta = 2.0 * M_PI * i / 64;
                Eigen::VectorXd z = p.n == 2 ? s1_point(theta) : s2_point(std::cos(theta), 0.3);
                double c2 = p.n == 2 ? std::cos(theta) : std::cos(theta);
                double poisson = (1.0 - rho_p * rho_p) / (1.0 - 2.0 * rho_p * c2 + rho_p * rho_p);
                worst = std::max(worst, std::abs(D.at_packed(z) - std::pow(poisson, p.dn() - 1)));
            }
        }
        row("poisson_kernel_closed_form", worst, 1e-7);
    }
    rep.runtime_seconds = timer.seconds();
    return rep;
}

}  // namespace rankone::experiments
