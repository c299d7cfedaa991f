#pragma once

// Internal helper shared by the group-theoretic translation units: inverse of
// a Clifford-group element through conjugation(t)/(t conjugation(t)) whenever
// that product is a usable scalar, falling back to the generic inverse.

#include <cmath>

#include "cliffspec/multivector.hpp"

namespace cliffspec::detail {

inline Multivector group_inverse(const Multivector& t, double tol) {
    const Multivector s = t * conjugation(t);
    const double s0 = s.scalar_part();
    double residue2 = 0.0;
    for (unsigned mask = 1; mask < unsigned(s.size()); ++mask) residue2 += s[mask] * s[mask];
    const double scale = std::max(1.0, t.norm() * t.norm());
    if (std::sqrt(residue2) <= tol * scale && std::abs(s0) > tol * scale) {
        return conjugation(t) / s0;
    }
    return mv_inverse(t, tol);
}

} // namespace cliffspec::detail
