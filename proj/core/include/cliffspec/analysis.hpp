#pragma once

// Function theory on the unit sphere driven by the Moebius group: the
// conformally weighted representation rho_1, coherent states and the
// wavelet/Cauchy transform, the orthonormal monogenic polynomial basis V_m
// with its ladder structure, and the matrix coefficients W_{k,m}.

#include <vector>

#include "cliffspec/moebius.hpp"
#include "cliffspec/multivector.hpp"
#include "cliffspec/quadrature.hpp"
#include "cliffspec/sphere_function.hpp"

namespace cliffspec {

/// Exponent tuple (m_1, ..., m_n), componentwise nonnegative.
using MultiIndex = std::vector<int>;

/// |m| = m_1 + ... + m_n.  Throws domain_error on negative entries.
int multi_degree(const MultiIndex& m);

/// The unitary action of g on sphere functions: a conformal weight factor
/// times composition with the Moebius action of g^{-1}.  The returned
/// evaluator throws domain_error if the weight denominator falls below tol
/// (impossible for |u| < 1 and arguments on the closed unit sphere).
SphereFunction rho1_apply(const MoebElement& g, const SphereFunction& f,
                          double tol = kDefaultTol);

/// Coherent state f_g: the image of the constant 1 under rho1_apply(g, .),
/// evaluated by its closed-form kernel.
SphereFunction coherent_state(const MoebElement& g, double tol = kDefaultTol);

/// Wavelet transform Wf(g) = <f_g, f> under the given rule.
Multivector wavelet_transform(const SphereFunction& f, const MoebElement& g,
                              const QuadratureRule& quad);

/// Cauchy integral of f at an interior point u: the kernel
/// (conj(x) - conj(u)) / |x - u|^n paired with the Clifford surface element
/// x dx.  Reproduces boundary values of monogenic functions.  Throws
/// domain_error for |u| >= 1 and resolution_error when u lies too close to
/// the sphere for the rule's exactness degree.
Multivector cauchy_integral(const SphereFunction& f, const std::vector<double>& u,
                            const QuadratureRule& quad);

/// Closed form of the wavelet transform of the constant 1:
/// reversion(w) * (1 - |u|^2)^{(n-1)/2}.
Multivector vacuum_transform(const MoebElement& g);

/// Member of the orthonormal basis of monogenic polynomials on S^{n-1},
/// indexed by a MultiIndex of length n (n = 2 or 3) with m_1 = 0 and
/// |m| <= 8.  V_0 is the constant 1; each block of fixed degree spans the
/// symmetrized products of the degree-one monogenic variables.  The basis is
/// orthonormalized under the mean-normalized inner product.
SphereFunction v_basis(const MultiIndex& m);

/// Expansion of V_m over the plain symmetrized variable products F_k of the
/// same degree: V_m = sum_k F_k * coeffs[k] with right Clifford
/// coefficients.  indices[k] lists the block in the fixed lexicographic
/// order used internally.
struct BasisExpansion {
    std::vector<MultiIndex> indices;
    std::vector<Multivector> coeffs;
};
BasisExpansion v_basis_expansion(const MultiIndex& m);

/// Index raised by one in slot j (1-based).
MultiIndex creation(const MultiIndex& m, int j);

/// Result of the lowering operator on an index: the shifted index and the
/// integer weight it carries.  Weight 0 encodes the zero element (the index
/// is then returned unchanged).
struct WeightedIndex {
    MultiIndex index;
    int weight = 0;
};

/// Index lowered by one in slot j (1-based), carrying weight m_j; at
/// m_j = 0 the result is the zero element, not an error.
WeightedIndex annihilation(const MultiIndex& m, int j);

/// Matrix coefficient W_{k,m}(g) = <V_m, rho1_apply(g, V_k)> under the rule.
Multivector token_coeff(const MultiIndex& k, const MultiIndex& m,
                        const MoebElement& g, const QuadratureRule& quad);

} // namespace cliffspec
