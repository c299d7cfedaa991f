#pragma once

// Symmetrized operator products A_m, joint spectral radius estimates, and
// the Taylor-side monogenic calculus: series evaluation c -> sum c_m A_m v,
// the coefficient action transported by the matrix coefficients W_{k,m},
// operator coherent states, and the reproducing integral over the group.

#include <map>
#include <vector>

#include <Eigen/Dense>

#include "cliffspec/analysis.hpp"
#include "cliffspec/operator_algebra.hpp"

namespace cliffspec {

/// Largest supported total degree |m| of a symmetrized product.
inline constexpr int kSymmetricProductCap = 8;

/// Equal-weight average over all distinct arrangements of the word with
/// m_j copies of the letter e_j A_j (the empty word gives the identity).
/// Throws domain_error for |m| > kSymmetricProductCap.
CliffOperator symmetric_product(const OperatorTuple& t, const MultiIndex& m);

/// Finite-order estimates of the symmetric and local joint spectral radii,
/// with the full order trace: trace[k-1] is the max over |m| = k of
/// ||A_m||^{1/k} (resp. ||A_m v||^{1/k}), and the radius fields quote the
/// values at the requested order.
struct SpectralRadii {
    std::vector<double> symmetric_trace;
    std::vector<double> local_trace;
    double symmetric_radius = 0.0;
    double local_radius = 0.0;
    bool local_bound_holds = true;  ///< r_L <= r_S * |v| at the top order
};
SpectralRadii spectral_radii(const OperatorTuple& t, const Eigen::VectorXd& v, int max_order);

/// Taylor coefficients keyed by exponent tuple; values are Clifford
/// constants that multiply from the right.
using CoeffMap = std::map<MultiIndex, Multivector>;

/// The series sum_m (A_m v) c_m in M_n.  Coefficients must be finitely
/// supported; when the support reaches deep orders with growing partial-sum
/// increments the convergence guard throws domain_error quoting the local
/// radius estimate.
ModuleVector taylor_calculus(const OperatorTuple& t, const Eigen::VectorXd& v,
                             const CoeffMap& coeffs, double tol = kDefaultTol);

/// Coefficient action of g: d_m = sum_k W_{k,m}(g) c_k over the basis index
/// set of total degree <= max_order (first slot zero).  The tail field
/// reports the module mass sum_{|m| = max_order} |d_m| ||A_m v|| of the last
/// retained shell as a truncation gauge.
struct CoeffTransform {
    CoeffMap coeffs;
    double tail = 0.0;
};
CoeffTransform rho_Av_apply(const MoebElement& g, const OperatorTuple& t, const Eigen::VectorXd& v,
                            const CoeffMap& coeffs, int max_order, const QuadratureRule& quad);

/// Operator coherent state E(g, A) = sum_m (A_m v) W_{0,m}(g), truncated at
/// total degree max_order.
ModuleVector coherent_operator_state(const MoebElement& g, const OperatorTuple& t,
                                     const Eigen::VectorXd& v, int max_order,
                                     const QuadratureRule& quad);

/// The reproducing integral: the boundary-limit group average of
/// E(g, A) Wf(g), evaluated by the Hardy functional on three radius slices
/// with quadratic extrapolation to the boundary.  Agrees with
/// taylor_calculus applied to the coefficients of f.  Planar case (n = 2).
ModuleVector taylor_from_integral(const OperatorTuple& t, const Eigen::VectorXd& v,
                                  const SphereFunction& f, int max_order,
                                  const QuadratureRule& boundary);

} // namespace cliffspec
