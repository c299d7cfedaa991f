#pragma once

// Jets of holomorphic functions (truncated Taylor data at a point) and their
// prolonged transformations: pullback along a holomorphic map and the
// weighted disk action of the Moebius group, both through truncated
// power-series composition.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cliffspec/holo_map.hpp"
#include "cliffspec/moebius.hpp"

namespace cliffspec {

/// Order-n contact data of a function at a point: the derivatives
/// f(z), f'(z), ..., f^(n)(z).
struct Jet {
    std::complex<double> base;
    std::vector<std::complex<double>> values;

    int order() const { return static_cast<int>(values.size()) - 1; }
};

/// Largest supported jet order.
inline constexpr int kJetOrderCap = 16;

/// Jet of a polynomial at a point (exact Taylor shift).
Jet polynomial_jet(const std::vector<std::complex<double>>& coeffs, std::complex<double> base,
                   int order);

/// Pullback of a jet along psi: given the jet of f at psi(w), the jet of the
/// composite f o psi at w, by Faa di Bruno composition of the truncated
/// series.  Validates psi(w) against the base of jf.
Jet jet_prolong_map(const HoloMap& psi, const Jet& jf, std::complex<double> w,
                    double tol = kDefaultTol);

/// The prolonged weighted action: the jet at w of the transformed function
/// under the n = 2 disk shadow of g, multiplier 1/(S + Tz) and argument
/// (Pz + Q)/(S + Tz).  jf must be the jet of f at the transformed argument
/// of w.
Jet rho1_jet_prolong(const MoebElement& g, const Jet& jf, std::complex<double> w,
                     double tol = kDefaultTol);

/// Matrix of the prolonged action on order size-1 jets at the origin in the
/// normalized monomial basis: column k holds the Taylor data of the
/// transformed k-th basis function, entry (m, k) equal to
/// [z^m]{mult(z) (-i phi(z))^k} / (-i)^m.  Pure series arithmetic from the
/// closed-form disk shadow; no quadrature.
Eigen::MatrixXcd rho1_jet_matrix(const MoebElement& g, int size);

} // namespace cliffspec
