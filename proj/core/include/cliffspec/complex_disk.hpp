#pragma once

// Complex shadow of the n = 2 algebra.  The even subalgebra of Cl(2) is a
// copy of the complex numbers under p + q e12 <-> p - qi, and vectors carry
// the boundary coordinate x1 e1 + x2 e2 <-> x1 + x2 i.  Under this reading
// the spherical function theory on S^1 becomes classical function theory on
// the unit circle, which the tests use as an independent reference.

#include <complex>

#include "cliffspec/moebius.hpp"
#include "cliffspec/multivector.hpp"

namespace cliffspec {

/// Complex value of an even element of Cl(2): p + q e12 -> p - qi.
/// Throws dimension_error when n != 2 and domain_error when the element has
/// an odd part larger than tol.
std::complex<double> decode_even(const Multivector& a, double tol = kDefaultTol);

/// Inverse of decode_even: p + qi -> p - q e12.
Multivector encode_even(const std::complex<double>& z);

/// Complex coordinate of a vector of Cl(2): x1 e1 + x2 e2 -> x1 + x2 i.
std::complex<double> vector_coord_complex(const Multivector& x, double tol = kDefaultTol);

/// Inverse of vector_coord_complex.
Multivector coord_vector(const std::complex<double>& z);

/// The n = 2 representation data of a group element, decoded: on the circle
/// the multiplier of rho_1(g) reads 1/(S + T X) and the transformed argument
/// (P X + Q)/(S + T X), where X is the complex coordinate of the point.
struct DiskShadow {
    std::complex<double> S, T, P, Q;

    std::complex<double> multiplier(const std::complex<double>& x) const {
        return 1.0 / (S + T * x);
    }
    std::complex<double> argument(const std::complex<double>& x) const {
        return (P * x + Q) / (S + T * x);
    }
};

/// Extract the disk shadow of g by evaluating the Clifford formulas at
/// x = 0 and x = e1 and verifying the affine forms at x = e2.
DiskShadow disk_shadow(const MoebElement& g, double tol = kDefaultTol);

} // namespace cliffspec
