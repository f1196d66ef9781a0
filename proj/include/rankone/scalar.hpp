#pragma once

// Arithmetic over the base fields R, C, H behind a single value type.
// A quaternion is stored as four real components z = s + t*i + u*j + v*k;
// components that do not exist in the tagged field are kept at exact zero.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rankone {

enum class Field : std::uint8_t { Real, Complex, Quaternion };

constexpr int field_dim(Field f) {
    switch (f) {
        case Field::Real: return 1;
        case Field::Complex: return 2;
        default: return 4;
    }
}

inline const char* field_name(Field f) {
    switch (f) {
        case Field::Real: return "R";
        case Field::Complex: return "C";
        default: return "H";
    }
}

struct Scalar {
    double s = 0.0, t = 0.0, u = 0.0, v = 0.0;
    Field field = Field::Real;

    Scalar() = default;
    Scalar(double re, Field f) : s(re), field(f) {}
    Scalar(double s_, double t_, double u_, double v_, Field f)
        : s(s_), t(t_), u(u_), v(v_), field(f) {
        if (field_dim(f) < 2) t = 0.0;
        if (field_dim(f) < 4) u = v = 0.0;
    }

    static Scalar zero(Field f) { return Scalar(0.0, f); }
    static Scalar one(Field f) { return Scalar(1.0, f); }
    /// Basis unit for real component index c (0:1, 1:i, 2:j, 3:k).
    static Scalar unit(int c, Field f) {
        if (c < 0 || c >= field_dim(f)) throw std::invalid_argument("Scalar::unit: component outside field");
        Scalar z(0.0, f);
        (c == 0 ? z.s : c == 1 ? z.t : c == 2 ? z.u : z.v) = 1.0;
        return z;
    }

    double comp(int c) const { return c == 0 ? s : c == 1 ? t : c == 2 ? u : v; }
    void set_comp(int c, double x) { (c == 0 ? s : c == 1 ? t : c == 2 ? u : v) = x; }
};

inline void check_same_field(const Scalar& a, const Scalar& b, const char* what) {
    if (a.field != b.field)
        throw std::invalid_argument(std::string(what) + ": field mismatch (" + field_name(a.field) +
                                    " vs " + field_name(b.field) + ")");
}

inline Scalar operator+(const Scalar& a, const Scalar& b) {
    check_same_field(a, b, "Scalar+");
    return Scalar(a.s + b.s, a.t + b.t, a.u + b.u, a.v + b.v, a.field);
}

inline Scalar operator-(const Scalar& a, const Scalar& b) {
    check_same_field(a, b, "Scalar-");
    return Scalar(a.s - b.s, a.t - b.t, a.u - b.u, a.v - b.v, a.field);
}

inline Scalar operator-(const Scalar& a) { return Scalar(-a.s, -a.t, -a.u, -a.v, a.field); }

/// Hamilton product; reduces to complex/real multiplication on the subfields.
inline Scalar operator*(const Scalar& a, const Scalar& b) {
    check_same_field(a, b, "Scalar*");
    return Scalar(a.s * b.s - a.t * b.t - a.u * b.u - a.v * b.v,
                  a.s * b.t + a.t * b.s + a.u * b.v - a.v * b.u,
                  a.s * b.u - a.t * b.v + a.u * b.s + a.v * b.t,
                  a.s * b.v + a.t * b.u - a.u * b.t + a.v * b.s, a.field);
}

inline Scalar operator*(double c, const Scalar& a) { return Scalar(c * a.s, c * a.t, c * a.u, c * a.v, a.field); }
inline Scalar operator*(const Scalar& a, double c) { return c * a; }

inline Scalar conj(const Scalar& z) { return Scalar(z.s, -z.t, -z.u, -z.v, z.field); }

inline double abs2(const Scalar& z) { return z.s * z.s + z.t * z.t + z.u * z.u + z.v * z.v; }
inline double abs(const Scalar& z) { return std::sqrt(abs2(z)); }

inline double re(const Scalar& z) { return z.s; }
/// Vector part (z - conj z)/2, returned in the same field.
inline Scalar im(const Scalar& z) { return Scalar(0.0, z.t, z.u, z.v, z.field); }

/// Multiplicative inverse conj(z)/|z|^2.
inline Scalar inv(const Scalar& z) {
    double n2 = abs2(z);
    if (n2 == 0.0) throw std::domain_error("Scalar inv: zero divisor");
    return Scalar(z.s / n2, -z.t / n2, -z.u / n2, -z.v / n2, z.field);
}

inline bool is_imaginary(const Scalar& z, double tol = 0.0) { return std::abs(z.s) <= tol; }

inline double max_comp_abs(const Scalar& z) {
    return std::max(std::max(std::abs(z.s), std::abs(z.t)), std::max(std::abs(z.u), std::abs(z.v)));
}

}  // namespace rankone
