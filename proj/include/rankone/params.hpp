#pragma once

#include <stdexcept>
#include <string>

#include "rankone/scalar.hpp"

namespace rankone {

// Parameters of one group in the family: the field, the rank parameter n,
// d = dim_R F and the homogeneous dimension r = d(n+1)-2 of the nilpotent
// boundary chart.
struct GroupParams {
    Field field = Field::Real;
    int n = 2;
    int d = 1;
    int r = 1;

    static GroupParams make(Field f, int n) {
        if (n < 1) throw std::invalid_argument("GroupParams: n must be >= 1");
        if (f == Field::Real && n < 2) throw std::invalid_argument("GroupParams: n >= 2 required over R");
        GroupParams p;
        p.field = f;
        p.n = n;
        p.d = field_dim(f);
        p.r = p.d * (n + 1) - 2;
        if (p.d * n - 1 < 1) throw std::invalid_argument("GroupParams: boundary sphere dimension < 1");
        return p;
    }

    /// Real dimension of the first stratum o = F^{n-1}.
    int dim_o() const { return d * (n - 1); }
    /// Real dimension of the center z = Im F.
    int dim_z() const { return d - 1; }
    /// Real dimension of the nilpotent group V.
    int dim_V() const { return dim_o() + dim_z(); }
    /// Real dimension of the ambient space containing the boundary sphere S^{dn-1}.
    int dn() const { return d * n; }
    int matrix_size() const { return n + 1; }

    std::string name() const {
        switch (field) {
            case Field::Real: return "SO0(" + std::to_string(n) + ",1)";
            case Field::Complex: return "SU(" + std::to_string(n) + ",1)";
            default: return "Sp(" + std::to_string(n) + ",1)";
        }
    }
    /// Short tag used in configs and CSV ("so", "su", "sp").
    std::string tag() const {
        switch (field) {
            case Field::Real: return "so";
            case Field::Complex: return "su";
            default: return "sp";
        }
    }
};

}  // namespace rankone
