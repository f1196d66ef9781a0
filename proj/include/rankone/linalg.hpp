#pragma once

// Small dense matrices over R, C, H. F^{n+1} is a right vector space, so
// matrices act from the left and scalars multiply vectors from the right;
// all products below keep that order (it matters over H).

#include <complex>
#include <stdexcept>
#include <vector>

#include "rankone/scalar.hpp"

namespace rankone {

using FVector = std::vector<Scalar>;

inline void check_same_field_vec(const FVector& a, const FVector& b, const char* what) {
    if (a.size() != b.size()) throw std::invalid_argument(std::string(what) + ": length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) check_same_field(a[i], b[i], what);
}

/// Sesquilinear form q(z,w) = -conj(z0) w0 + sum_{j>=1} conj(zj) wj.
inline Scalar q_form(const FVector& z, const FVector& w) {
    check_same_field_vec(z, w, "q_form");
    if (z.empty()) throw std::invalid_argument("q_form: empty vectors");
    Scalar acc = -(conj(z[0]) * w[0]);
    for (std::size_t j = 1; j < z.size(); ++j) acc = acc + conj(z[j]) * w[j];
    return acc;
}

/// Euclidean (positive) sesquilinear form sum conj(zj) wj.
inline Scalar herm_form(const FVector& z, const FVector& w) {
    check_same_field_vec(z, w, "herm_form");
    Scalar acc = Scalar::zero(z.empty() ? Field::Real : z[0].field);
    for (std::size_t j = 0; j < z.size(); ++j) acc = acc + conj(z[j]) * w[j];
    return acc;
}

inline double norm2(const FVector& z) {
    double n = 0;
    for (const auto& c : z) n += abs2(c);
    return n;
}

struct FMatrix {
    int rows = 0, cols = 0;
    Field field = Field::Real;
    std::vector<Scalar> a;  // row-major

    FMatrix() = default;
    FMatrix(int r, int c, Field f) : rows(r), cols(c), field(f), a(std::size_t(r) * c, Scalar::zero(f)) {}

    Scalar& at(int i, int j) { return a[std::size_t(i) * cols + j]; }
    const Scalar& at(int i, int j) const { return a[std::size_t(i) * cols + j]; }

    static FMatrix identity(int n, Field f) {
        FMatrix m(n, n, f);
        for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
        return m;
    }
};

inline FMatrix operator*(const FMatrix& A, const FMatrix& B) {
    if (A.cols != B.rows || A.field != B.field) throw std::invalid_argument("FMatrix*: shape/field mismatch");
    FMatrix C(A.rows, B.cols, A.field);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const Scalar& aik = A.at(i, k);
            if (aik.s == 0 && aik.t == 0 && aik.u == 0 && aik.v == 0) continue;
            for (int j = 0; j < B.cols; ++j) C.at(i, j) = C.at(i, j) + aik * B.at(k, j);
        }
    return C;
}

inline FMatrix operator+(const FMatrix& A, const FMatrix& B) {
    if (A.rows != B.rows || A.cols != B.cols || A.field != B.field)
        throw std::invalid_argument("FMatrix+: shape/field mismatch");
    FMatrix C = A;
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = C.a[i] + B.a[i];
    return C;
}

inline FMatrix operator-(const FMatrix& A, const FMatrix& B) {
    if (A.rows != B.rows || A.cols != B.cols || A.field != B.field)
        throw std::invalid_argument("FMatrix-: shape/field mismatch");
    FMatrix C = A;
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = C.a[i] - B.a[i];
    return C;
}

inline FMatrix operator*(double c, const FMatrix& A) {
    FMatrix C = A;
    for (auto& e : C.a) e = c * e;
    return C;
}

/// Conjugate transpose.
inline FMatrix adjoint(const FMatrix& A) {
    FMatrix C(A.cols, A.rows, A.field);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) C.at(j, i) = conj(A.at(i, j));
    return C;
}

inline FVector matvec(const FMatrix& A, const FVector& z) {
    if (int(z.size()) != A.cols) throw std::invalid_argument("FMatrix apply: length mismatch");
    FVector w(A.rows, Scalar::zero(A.field));
    for (int i = 0; i < A.rows; ++i) {
        Scalar acc = Scalar::zero(A.field);
        for (int j = 0; j < A.cols; ++j) acc = acc + A.at(i, j) * z[j];
        w[i] = acc;
    }
    return w;
}

inline double max_abs(const FMatrix& A) {
    double m = 0;
    for (const auto& e : A.a) m = std::max(m, abs(e));
    return m;
}

/// exp(A) by scaling-and-squaring with a Taylor tail; fine for the small,
/// moderate-norm generators used here.
inline FMatrix mexp(const FMatrix& A) {
    if (A.rows != A.cols) throw std::invalid_argument("mexp: square matrix required");
    int s = 0;
    double nrm = max_abs(A) * A.rows;
    while (nrm > 0.25) {
        nrm /= 2;
        ++s;
    }
    FMatrix X = std::ldexp(1.0, -s) * A;
    FMatrix term = FMatrix::identity(A.rows, A.field);
    FMatrix sum = term;
    for (int k = 1; k <= 20; ++k) {
        term = (1.0 / k) * (term * X);
        sum = sum + term;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum;
}

/// Determinant for R/C entries via Laplace expansion (small n only).
inline std::complex<double> det_complex(const FMatrix& A) {
    if (A.field == Field::Quaternion) throw std::invalid_argument("det_complex: not defined over H");
    int n = A.rows;
    if (n != A.cols) throw std::invalid_argument("det_complex: square matrix required");
    if (n == 1) return {A.at(0, 0).s, A.at(0, 0).t};
    std::complex<double> acc = 0;
    double sign = 1;
    for (int i = 0; i < n; ++i) {
        FMatrix M(n - 1, n - 1, A.field);
        for (int r = 1; r < n; ++r)
            for (int c = 0, cc = 0; c < n; ++c) {
                if (c == i) continue;
                M.at(r - 1, cc++) = A.at(r, c);
            }
        acc += sign * std::complex<double>(A.at(0, i).s, A.at(0, i).t) * det_complex(M);
        sign = -sign;
    }
    return acc;
}

/// Completes the unit vector w to an orthonormal basis of F^n (right module)
/// and returns the unitary matrix whose LAST column is w. Over R the result
/// is adjusted to determinant +1, over C to determinant 1, so that
/// diag(1, U) lies in the identity component / special subgroup.
inline FMatrix unitary_completion(const FVector& w) {
    int n = int(w.size());
    if (n == 0) throw std::invalid_argument("unitary_completion: empty vector");
    Field f = w[0].field;
    std::vector<FVector> basis;
    FVector wn = w;
    double nw = std::sqrt(norm2(wn));
    if (std::abs(nw - 1.0) > 1e-8) throw std::invalid_argument("unitary_completion: vector not unit");
    for (auto& c : wn) c = (1.0 / nw) * c;
    basis.push_back(wn);
    for (int seed = 0; seed < n && int(basis.size()) < n; ++seed) {
        for (int c = 0; c < field_dim(f) && int(basis.size()) < n; ++c) {
            FVector cand(n, Scalar::zero(f));
            cand[seed] = Scalar::unit(c, f);
            for (const auto& b : basis) {
                Scalar p = herm_form(b, cand);
                for (int i = 0; i < n; ++i) cand[i] = cand[i] - b[i] * p;
            }
            double nn = std::sqrt(norm2(cand));
            if (nn > 1e-6) {
                for (auto& cc : cand) cc = (1.0 / nn) * cc;
                basis.push_back(cand);
            }
        }
    }
    if (int(basis.size()) != n) throw std::runtime_error("unitary_completion: basis completion failed");
    FMatrix U(n, n, f);
    // target vector in the last column, complements before it
    for (int j = 0; j < n; ++j) {
        const FVector& col = basis[(j + 1) % n];  // shift so basis[0]=w lands in column n-1
        for (int i = 0; i < n; ++i) U.at(i, j) = col[i];
    }
    if (f == Field::Real) {
        if (det_complex(U).real() < 0 && n >= 2)
            for (int i = 0; i < n; ++i) U.at(i, 0) = -U.at(i, 0);
    } else if (f == Field::Complex) {
        std::complex<double> dt = det_complex(U);
        if (n >= 2) {
            std::complex<double> fix = std::conj(dt) / std::abs(dt);
            Scalar fs(fix.real(), fix.imag(), 0, 0, f);
            for (int i = 0; i < n; ++i) U.at(i, 0) = U.at(i, 0) * fs;
        }
    }
    return U;
}

}  // namespace rankone
