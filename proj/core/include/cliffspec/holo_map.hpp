#pragma once

// Holomorphic self-maps of the disk in two interchangeable representations:
// a polynomial coefficient list or a black-box evaluator with a derivative
// oracle.  Supplies Taylor data and zero orders for the spectral mapping.

#include <complex>
#include <functional>
#include <vector>

#include "cliffspec/multivector.hpp"

namespace cliffspec {

/// Derivative oracle: values f(z), f'(z), ..., f^(order)(z).
using DerivativeOracle =
    std::function<std::vector<std::complex<double>>(std::complex<double>, int)>;

/// A holomorphic map given either by polynomial coefficients (ascending
/// powers) or by an evaluator with derivatives.  Exactly one representation
/// is active.
struct HoloMap {
    std::vector<std::complex<double>> poly;
    DerivativeOracle oracle;

    bool is_polynomial() const { return !oracle; }
};

/// Wraps a coefficient list c0 + c1 z + ... (at least one coefficient).
HoloMap poly_map(std::vector<std::complex<double>> coeffs);

/// Wraps a derivative oracle.
HoloMap oracle_map(DerivativeOracle oracle);

/// f(z).
std::complex<double> holo_eval(const HoloMap& phi, std::complex<double> z);

/// f(z), f'(z), ..., f^(order)(z).  Polynomial maps differentiate by an
/// exact Taylor shift (synthetic division at z).
std::vector<std::complex<double>> holo_derivatives(const HoloMap& phi, std::complex<double> z,
                                                   int order);

/// Largest |f(z)| over a uniform sample of the unit circle; the "maps the
/// disk into the disk" advisory check.
double disk_image_bound(const HoloMap& phi, int samples = 512);

/// The zero order of phi(z) - phi(u) at u: the smallest j >= 1 whose Taylor
/// coefficient at u is resolvably nonzero.  For polynomials the shifted
/// coefficients are exact up to rounding; evaluator maps use the derivative
/// oracle.  The tolerance is relative to the largest tested coefficient.
/// Throws flat_map_error when every tested order vanishes.
int deg_of_zero(const HoloMap& phi, std::complex<double> u, double deriv_tol = 1e-9,
                int max_order = 16);

} // namespace cliffspec
