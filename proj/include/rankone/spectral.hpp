#pragma once

// Spectral machinery: eigendecomposition of the assembled sub-Laplacian with
// fractional powers, Sobolev norms on V, harmonic analysis on S^1/S^2 and
// the W0 / dual-W norms of the boundary sphere.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rankone/heisenberg.hpp"
#include "rankone/params.hpp"

namespace rankone {

// --- small radix-2 FFT -------------------------------------------------------

inline void fft_inplace(std::vector<std::complex<double>>& a, bool inverse = false) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft: length must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * M_PI / double(len) * (inverse ? 1.0 : -1.0);
        std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = a[i + k], v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= double(n);
}

// --- Gauss-Legendre ----------------------------------------------------------

inline const std::pair<Eigen::VectorXd, Eigen::VectorXd>& gauss_legendre(int N) {
    static std::map<int, std::pair<Eigen::VectorXd, Eigen::VectorXd>> cache;
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    Eigen::VectorXd x(N), w(N);
    for (int i = 0; i < N; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (N + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= N; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = N * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    return cache.emplace(N, std::make_pair(std::move(x), std::move(w))).first->second;
}

// --- operator spectrum -------------------------------------------------------

struct OperatorSpectrum {
    Eigen::VectorXd lambda;  // ascending, clamped at zero
    Eigen::MatrixXd Q;       // orthonormal columns
    double kernel_tol = 0;

    bool is_kernel(int i) const { return lambda[i] <= kernel_tol; }
};

inline OperatorSpectrum compute_spectrum(const HeisOperators& ops, std::int64_t budget = 4200) {
    const std::int64_t N = ops.grid.size();
    if (N > budget)
        throw std::invalid_argument("compute_spectrum: grid too large for a dense eigensolve (" +
                                    std::to_string(N) + " nodes, budget " + std::to_string(budget) + ")");
    Eigen::MatrixXd dense = Eigen::MatrixXd(ops.delta);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    if (es.info() != Eigen::Success) throw std::runtime_error("compute_spectrum: eigensolver failed");
    OperatorSpectrum s;
    s.lambda = es.eigenvalues().cwiseMax(0.0);
    s.Q = es.eigenvectors();
    s.kernel_tol = std::max(1e-14, 1e-12 * s.lambda[s.lambda.size() - 1]);
    return s;
}

/// Applies Delta^alpha (or (1+Delta)^alpha) through the eigendecomposition.
/// Zero modes follow 0^alpha = 0 for alpha > 0 and = 1 for alpha = 0;
/// negative powers require the input to be orthogonal to the kernel.
inline GridField frac_power_apply(const OperatorSpectrum& spec, double alpha, const GridField& f,
                                  bool shifted = false) {
    const auto N = spec.lambda.size();
    if (f.values.size() != N) throw std::invalid_argument("frac_power_apply: size mismatch");
    Eigen::VectorXd cr = spec.Q.transpose() * f.values.real();
    Eigen::VectorXd ci = spec.Q.transpose() * f.values.imag();
    if (!shifted && alpha < 0) {
        double l2 = std::sqrt(f.values.squaredNorm()) * std::pow(f.grid.h(), f.grid.dim / 2.0);
        for (Eigen::Index i = 0; i < N; ++i)
            if (spec.is_kernel(i)) {
                double comp = std::hypot(cr[i], ci[i]) * std::pow(f.grid.h(), f.grid.dim / 2.0);
                if (comp > 1e-9 * std::max(1.0, l2))
                    throw std::domain_error("frac_power_apply: negative power on a field with kernel component");
            }
    }
    for (Eigen::Index i = 0; i < N; ++i) {
        double lam = shifted ? 1.0 + spec.lambda[i] : spec.lambda[i];
        double w;
        if (!shifted && spec.is_kernel(i))
            w = (alpha == 0.0) ? 1.0 : (alpha > 0.0 ? 0.0 : 0.0);
        else
            w = std::pow(lam, alpha);
        cr[i] *= w;
        ci[i] *= w;
    }
    GridField out(f.grid);
    out.values.real() = spec.Q * cr;
    out.values.imag() = spec.Q * ci;
    return out;
}

/// || Delta^{alpha/2} f ||_{L^2} (or the (1+Delta) variant). Integer powers of
/// the operator go through the sparse matrices; fractional powers need the
/// eigendecomposition.
inline double sobolev_norm_V(const HeisOperators& ops, const GridField& f, double alpha, bool shifted,
                             const OperatorSpectrum* spec = nullptr) {
    if (alpha == 0.0 && !shifted) return l2_norm(f);
    const double p = alpha / 2.0;
    const double pr = std::round(p);
    if (std::abs(p - pr) < 1e-12 && pr >= 0.0) {
        GridField g = f;
        for (int i = 0; i < int(pr); ++i) {
            GridField dg = apply_delta(ops, g);
            if (shifted) dg.values += g.values;
            g = dg;
        }
        return l2_norm(g);
    }
    if (!spec) throw std::invalid_argument("sobolev_norm_V: fractional power needs a spectrum");
    return l2_norm(frac_power_apply(*spec, p, f, shifted));
}

// --- sphere spectra ----------------------------------------------------------

// Coefficients in an orthonormal basis of L^2 of the sphere with the
// normalized round measure. S^1: e^{im theta}, m = -band..band. S^2: the
// complex basis Pbar_l^{|k|}(cos theta) e^{ik phi}; zonal spectra keep k = 0
// only. Laplace eigenvalues are m^2 and l(l+1).
struct SphereSpectrum {
    int sphere_dim = 1;
    bool zonal = false;
    int band = 0;
    Eigen::VectorXcd c;

    static int s2_index(int l, int k) { return l * l + (k + l); }

    double eigenvalue_at(int idx) const {
        if (sphere_dim == 1) return double(idx - band) * double(idx - band);
        if (zonal) return double(idx) * double(idx + 1);
        int l = int(std::floor(std::sqrt(double(idx) + 0.5)));
        return double(l) * double(l + 1);
    }
    bool is_zero_mode(int idx) const {
        if (sphere_dim == 1) return idx == band;
        return idx == 0;
    }
};

inline Eigen::VectorXd circle_nodes(int N) {
    Eigen::VectorXd th(N);
    for (int i = 0; i < N; ++i) th[i] = 2.0 * M_PI * i / N;
    return th;
}

/// Uniform samples on S^1 -> Fourier coefficients up to |m| <= band.
inline SphereSpectrum sphere_transform_s1(const Eigen::VectorXcd& samples, int band) {
    const int N = int(samples.size());
    if (N < 2 * band + 1) throw std::invalid_argument("sphere_transform_s1: insufficient sampling for band");
    if ((N & (N - 1)) != 0) throw std::invalid_argument("sphere_transform_s1: sample count must be a power of two");
    std::vector<std::complex<double>> buf(samples.data(), samples.data() + N);
    fft_inplace(buf, false);
    SphereSpectrum s;
    s.sphere_dim = 1;
    s.band = band;
    s.c = Eigen::VectorXcd::Zero(2 * band + 1);
    for (int m = -band; m <= band; ++m) {
        int bin = (m >= 0) ? m : N + m;
        s.c[m + band] = buf[std::size_t(bin)] / double(N);
    }
    return s;
}

inline std::complex<double> sphere_eval_s1(const SphereSpectrum& s, double theta) {
    std::complex<double> acc = 0;
    for (int m = -s.band; m <= s.band; ++m)
        acc += s.c[m + s.band] * std::exp(std::complex<double>(0.0, m * theta));
    return acc;
}

/// Normalized associated Legendre values Pbar_l^m(mu) for all 0<=m<=l<=band
/// at one node; fills column-major table P[l][m] packed as l*(l+1)/2 + m.
inline void legendre_table(int band, double mu, std::vector<double>& P) {
    const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
    P.assign(std::size_t(band + 1) * (band + 2) / 2, 0.0);
    auto at = [&](int l, int m) -> double& { return P[std::size_t(l) * (l + 1) / 2 + m]; };
    at(0, 0) = 1.0;
    for (int m = 1; m <= band; ++m) at(m, m) = std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * at(m - 1, m - 1);
    for (int m = 0; m < band; ++m) at(m + 1, m) = std::sqrt(2.0 * m + 3.0) * mu * at(m, m);
    for (int m = 0; m <= band; ++m)
        for (int l = m + 2; l <= band; ++l) {
            double a = std::sqrt(((2.0 * l - 1.0) * (2.0 * l + 1.0)) / (double(l - m) * double(l + m)));
            double b = std::sqrt(((2.0 * l + 1.0) * (l - 1.0 + m) * (l - 1.0 - m)) /
                                 (double(l - m) * double(l + m) * (2.0 * l - 3.0)));
            at(l, m) = a * mu * at(l - 1, m) - b * at(l - 2, m);
        }
}

/// Gauss-Legendre x uniform product grid on S^2.
struct S2Grid {
    Eigen::VectorXd mu, wmu;  // GL nodes/weights in cos(theta)
    int nphi = 0;

    static S2Grid make(int nmu, int nphi) {
        if ((nphi & (nphi - 1)) != 0) throw std::invalid_argument("S2Grid: nphi must be a power of two");
        const auto& gl = gauss_legendre(nmu);
        return {gl.first, gl.second, nphi};
    }
    double phi(int j) const { return 2.0 * M_PI * j / nphi; }
    /// Quadrature of f against the normalized measure.
    template <class F>
    std::complex<double> integrate(F&& f) const {
        std::complex<double> acc = 0;
        for (int i = 0; i < mu.size(); ++i) {
            std::complex<double> row = 0;
            for (int j = 0; j < nphi; ++j) row += f(i, j);
            acc += wmu[i] * row / double(nphi);
        }
        return acc * 0.5;
    }
};

/// Full S^2 transform of samples F(i,j) = f(theta_i, phi_j).
inline SphereSpectrum sphere_transform_s2(const S2Grid& grid, const Eigen::MatrixXcd& F, int band) {
    const int nmu = int(grid.mu.size());
    if (F.rows() != nmu || F.cols() != grid.nphi) throw std::invalid_argument("sphere_transform_s2: shape mismatch");
    if (nmu < band + 1 || grid.nphi < 2 * band + 2)
        throw std::invalid_argument("sphere_transform_s2: insufficient sampling for band");
    SphereSpectrum s;
    s.sphere_dim = 2;
    s.band = band;
    s.c = Eigen::VectorXcd::Zero((band + 1) * (band + 1));
    // phi-FFT per latitude, then Legendre quadrature in mu
    Eigen::MatrixXcd G(nmu, 2 * band + 1);  // columns k = -band..band
    std::vector<std::complex<double>> buf(std::size_t(grid.nphi));
    for (int i = 0; i < nmu; ++i) {
        for (int j = 0; j < grid.nphi; ++j) buf[std::size_t(j)] = F(i, j);
        fft_inplace(buf, false);
        for (int k = -band; k <= band; ++k) {
            int bin = (k >= 0) ? k : grid.nphi + k;
            G(i, k + band) = buf[std::size_t(bin)] / double(grid.nphi);
        }
    }
    std::vector<double> P;
    for (int i = 0; i < nmu; ++i) {
        legendre_table(band, grid.mu[i], P);
        for (int l = 0; l <= band; ++l)
            for (int k = -l; k <= l; ++k) {
                double pb = P[std::size_t(l) * (l + 1) / 2 + std::abs(k)];
                s.c[SphereSpectrum::s2_index(l, k)] += 0.5 * grid.wmu[i] * pb * G(i, k + band);
            }
    }
    return s;
}

/// Zonal S^2 transform: samples over the GL nodes, coefficients over l.
inline SphereSpectrum sphere_transform_s2_zonal(const S2Grid& grid, const Eigen::VectorXcd& f, int band) {
    const int nmu = int(grid.mu.size());
    if (f.size() != nmu) throw std::invalid_argument("sphere_transform_s2_zonal: shape mismatch");
    if (nmu < band + 1) throw std::invalid_argument("sphere_transform_s2_zonal: insufficient sampling for band");
    SphereSpectrum s;
    s.sphere_dim = 2;
    s.zonal = true;
    s.band = band;
    s.c = Eigen::VectorXcd::Zero(band + 1);
    // Pbar_l^0 = sqrt(2l+1) P_l via the same recurrence
    Eigen::VectorXd p0(nmu), p1(nmu);
    for (int i = 0; i < nmu; ++i) {
        p0[i] = 1.0;
        p1[i] = grid.mu[i];
    }
    for (int l = 0; l <= band; ++l) {
        double nl = std::sqrt(2.0 * l + 1.0);
        for (int i = 0; i < nmu; ++i) {
            double pl = (l == 0) ? p0[i] : p1[i];
            s.c[l] += 0.5 * grid.wmu[i] * nl * pl * f[i];
        }
        if (l >= 1) {
            for (int i = 0; i < nmu; ++i) {
                double p2 = ((2.0 * l + 1.0) * grid.mu[i] * p1[i] - l * p0[i]) / (l + 1.0);
                p0[i] = p1[i];
                p1[i] = p2;
            }
        }
    }
    return s;
}

inline std::complex<double> sphere_eval_s2(const SphereSpectrum& s, double mu, double phi) {
    std::vector<double> P;
    legendre_table(s.band, mu, P);
    std::complex<double> acc = 0;
    if (s.zonal) {
        for (int l = 0; l <= s.band; ++l) acc += s.c[l] * P[std::size_t(l) * (l + 1) / 2];
        return acc;
    }
    for (int l = 0; l <= s.band; ++l)
        for (int k = -l; k <= l; ++k)
            acc += s.c[SphereSpectrum::s2_index(l, k)] * P[std::size_t(l) * (l + 1) / 2 + std::abs(k)] *
                   std::exp(std::complex<double>(0.0, k * phi));
    return acc;
}

inline double spectrum_l2_norm(const SphereSpectrum& s) { return s.c.norm(); }

/// W0 norm (SO case): ( sum_{nonzero modes} lambda^{(n-1)/2} |c|^2 )^{1/2}.
inline double w0_norm_sphere(const SphereSpectrum& s, const GroupParams& p) {
    if (p.field != Field::Real || (p.n != 2 && p.n != 3))
        throw std::invalid_argument("w0_norm_sphere: supported for SO0(2,1) and SO0(3,1) only");
    if ((p.n == 2 && s.sphere_dim != 1) || (p.n == 3 && s.sphere_dim != 2))
        throw std::invalid_argument("w0_norm_sphere: spectrum/sphere mismatch");
    const double e = (p.n - 1) / 2.0;
    double acc = 0;
    for (int i = 0; i < s.c.size(); ++i) {
        if (s.is_zero_mode(i)) continue;
        acc += std::pow(s.eigenvalue_at(i), e) * std::norm(s.c[i]);
    }
    return std::sqrt(acc);
}

/// Dual norm on zero-mass densities: ( sum_{nonzero} |c|^2 / lambda^{(n-1)/2} )^{1/2}.
inline double dual_norm_W(const SphereSpectrum& s, const GroupParams& p, double mass_tol = 1e-10) {
    if (p.field != Field::Real || (p.n != 2 && p.n != 3))
        throw std::invalid_argument("dual_norm_W: supported for SO0(2,1) and SO0(3,1) only");
    for (int i = 0; i < s.c.size(); ++i)
        if (s.is_zero_mode(i) && std::abs(s.c[i]) > mass_tol)
            throw std::domain_error("dual_norm_W: density has nonzero total mass");
    const double e = (p.n - 1) / 2.0;
    double acc = 0;
    for (int i = 0; i < s.c.size(); ++i) {
        if (s.is_zero_mode(i)) continue;
        acc += std::norm(s.c[i]) / std::pow(s.eigenvalue_at(i), e);
    }
    return std::sqrt(acc);
}

// --- on-disk spectrum cache ----------------------------------------------------
// Layout: magic "ROSPEC01", then int32 field,n,m,dim, double L, int64 N,
// N doubles (eigenvalues), N*N doubles (eigenvectors, row-major).

struct SpectrumCache {
    std::string dir;

    std::string path(const GroupParams& p, const Grid& g) const {
        char buf[128];
        std::snprintf(buf, sizeof buf, "spec_%s%d_L%.12g_m%d.bin", p.tag().c_str(), p.n, g.L, g.m);
        return dir + "/" + buf;
    }

    std::optional<OperatorSpectrum> load(const GroupParams& p, const Grid& g) const {
        if (dir.empty()) return std::nullopt;
        std::ifstream in(path(p, g), std::ios::binary);
        if (!in) return std::nullopt;
        char magic[8];
        in.read(magic, 8);
        if (std::string(magic, 8) != "ROSPEC01") return std::nullopt;
        std::int32_t fld, n, m, dim;
        double L;
        std::int64_t N;
        in.read(reinterpret_cast<char*>(&fld), 4);
        in.read(reinterpret_cast<char*>(&n), 4);
        in.read(reinterpret_cast<char*>(&m), 4);
        in.read(reinterpret_cast<char*>(&dim), 4);
        in.read(reinterpret_cast<char*>(&L), 8);
        in.read(reinterpret_cast<char*>(&N), 8);
        if (fld != std::int32_t(p.field) || n != p.n || m != g.m || dim != g.dim || L != g.L) return std::nullopt;
        OperatorSpectrum s;
        s.lambda.resize(N);
        in.read(reinterpret_cast<char*>(s.lambda.data()), N * 8);
        Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> Qr(N, N);
        in.read(reinterpret_cast<char*>(Qr.data()), N * N * 8);
        if (!in) return std::nullopt;
        s.Q = Qr;
        s.kernel_tol = std::max(1e-14, 1e-12 * s.lambda[N - 1]);
        return s;
    }

    void store(const GroupParams& p, const Grid& g, const OperatorSpectrum& s) const {
        if (dir.empty()) return;
        std::filesystem::create_directories(dir);
        std::ofstream out(path(p, g), std::ios::binary);
        out.write("ROSPEC01", 8);
        std::int32_t fld = std::int32_t(p.field), n = p.n, m = g.m, dim = g.dim;
        double L = g.L;
        std::int64_t N = s.lambda.size();
        out.write(reinterpret_cast<const char*>(&fld), 4);
        out.write(reinterpret_cast<const char*>(&n), 4);
        out.write(reinterpret_cast<const char*>(&m), 4);
        out.write(reinterpret_cast<const char*>(&dim), 4);
        out.write(reinterpret_cast<const char*>(&L), 8);
        out.write(reinterpret_cast<const char*>(&N), 8);
        out.write(reinterpret_cast<const char*>(s.lambda.data()), N * 8);
        Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> Qr = s.Q;
        out.write(reinterpret_cast<const char*>(Qr.data()), N * N * 8);
    }
};

/// Spectrum with optional disk cache.
inline OperatorSpectrum spectrum_cached(const HeisOperators& ops, const SpectrumCache& cache,
                                        std::int64_t budget = 4200) {
    if (auto s = cache.load(ops.p, ops.grid)) return *s;
    OperatorSpectrum s = compute_spectrum(ops, budget);
    cache.store(ops.p, ops.grid, s);
    return s;
}

}  // namespace rankone
