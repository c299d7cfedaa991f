#pragma once

// Quadrature rules on the unit sphere S^{n-1} and on the rotor groups used
// for averaging.  All weights are normalized to total mass 1, i.e. the rules
// approximate the mean value of the integrand over the sphere.

#include <vector>

#include "cliffspec/multivector.hpp"

namespace cliffspec {

/// Cartesian coordinates of a point on S^{n-1}.
using SpherePoint = std::vector<double>;

struct QuadratureRule {
    int n = 2;                        ///< ambient dimension; points lie on S^{n-1}
    std::vector<SpherePoint> points;
    std::vector<double> weights;      ///< sums to 1
    int exact_degree = 0;             ///< highest polynomial degree integrated exactly

    std::size_t size() const { return points.size(); }
};

/// Equispaced rule on the unit circle with the given number of nodes;
/// integrates trigonometric polynomials of degree < node_count exactly.
QuadratureRule circle_rule(int node_count);

/// Lebedev-Laikov octahedral rule on S^2.  Supported sizes: 302 (degree 29),
/// 434 (degree 35) and 590 (degree 41).
QuadratureRule lebedev_rule(int point_count);

/// Default rule for S^{n-1} (n = 2 or 3) at a refinement level 0, 1 or 2.
/// n = 2 uses 256/512/1024 circle nodes, n = 3 uses 302/434/590 Lebedev
/// points.
QuadratureRule sphere_rule(int n, int level = 0);

/// Quadrature over a rotor group: unit elements of the even subalgebra,
/// with weights of total mass 1.
struct SpinRule {
    int n = 2;
    std::vector<Multivector> points;
    std::vector<double> weights;
};

/// Exact rule on the rotor circle {cos t + sin t * e12} of the n = 2 algebra.
SpinRule spin_circle_rule(int node_count);

/// Equidistributed sample of the n = 3 rotor group (unit elements spanned by
/// {1, e12, e13, e23}), drawn with a fixed seed so runs are reproducible.
SpinRule spin_sample_rule(int sample_count, unsigned seed = 8811u);

/// Default rotor rule for n = 2 or 3 at a refinement level 0 or 1.
SpinRule rotor_rule(int n, int level = 0);

} // namespace cliffspec
