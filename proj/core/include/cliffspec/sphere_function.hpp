#pragma once

// Clifford-valued functions on the unit sphere S^{n-1} and their integrals
// against the unit-mass quadrature rules.

#include <functional>
#include <vector>

#include "cliffspec/multivector.hpp"
#include "cliffspec/quadrature.hpp"

namespace cliffspec {

/// Function on S^{n-1} with values in Cl(n), carried by an evaluator.
struct SphereFunction {
    int n = 0;
    std::function<Multivector(const std::vector<double>&)> eval;

    /// Evaluate at a point, checking the coordinate count.
    Multivector operator()(const std::vector<double>& x) const;
};

/// The constant function with the given scalar (or general) value.
SphereFunction constant_function(int n, double value);
SphereFunction constant_function(Multivector value);

/// Evaluate f at every node of the rule.  Deterministic and data-parallel.
std::vector<Multivector> sample_grid(const SphereFunction& f, const QuadratureRule& quad);

/// Unit-mass integral of f over the sphere.
Multivector sphere_integral(const SphereFunction& f, const QuadratureRule& quad);

/// Clifford-valued inner product of sphere functions with respect to the
/// normalized measure: the integral of conjugation(f1(x)) f2(x).
Multivector inner_product(const SphereFunction& f1, const SphereFunction& f2,
                          const QuadratureRule& quad);

} // namespace cliffspec
