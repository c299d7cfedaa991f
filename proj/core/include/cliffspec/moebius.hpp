#pragma once

// The Moebius group of the one-point compactification of R^n, acting by
// fractional-linear transformations with Clifford-algebra coefficients, and
// its subgroup preserving the unit ball.
//
// Elements of the ball group are parametrized as g = (u, w): u a point of
// the open unit ball and w a unit Pin element.  The matrix of g is
//
//     M(g) = (1 - |u|^2)^{-1/2} [[ w,      -w u   ],
//                                [ w' u,    w'    ]]
//
// with w' the grade involution of w, and the action on vectors is
//
//     g.x = (a x + b)(c x + d)^{-1}.

#include <functional>
#include <vector>

#include "cliffspec/multivector.hpp"
#include "cliffspec/quadrature.hpp"

namespace cliffspec {

/// 2x2 matrix with multivector entries, [[a, b], [c, d]].
struct CliffMat2 {
    Multivector a, b, c, d;

    explicit CliffMat2(int n) : a(n), b(n), c(n), d(n) {}
    CliffMat2(Multivector a_, Multivector b_, Multivector c_, Multivector d_);

    int generators() const { return a.generators(); }
    static CliffMat2 identity(int n);
};

CliffMat2 mat2_mul(const CliffMat2& lhs, const CliffMat2& rhs);
CliffMat2 operator*(const CliffMat2& lhs, const CliffMat2& rhs);

/// Largest entrywise coefficient deviation between two matrices.
double mat2_distance(const CliffMat2& lhs, const CliffMat2& rhs);

/// Whether the matrix defines a Moebius transformation: every entry has a
/// modulus, the mixed products reversion(a)b, reversion(c)d, a reversion(c)
/// and b reversion(d) are vectors, and the pseudodeterminant
/// a reversion(d) - b reversion(c) is a nonzero real.
bool is_group_matrix(const CliffMat2& mat, double tol = kDefaultTol);

/// Point of the one-point compactification of R^n.
struct MoebPoint {
    Multivector x;
    bool infinite = false;

    static MoebPoint at_infinity(int n) { return MoebPoint{Multivector(n), true}; }
    static MoebPoint finite(Multivector v) { return MoebPoint{std::move(v), false}; }
    int generators() const { return x.generators(); }
};

/// The fractional-linear action of a group matrix.  Poles map to infinity
/// and infinity maps to a c^{-1} (or to infinity when c = 0).  Throws
/// domain_error when the matrix fails the group check to tol.
MoebPoint moebius_apply(const CliffMat2& mat, const MoebPoint& x, double tol = kDefaultTol);

/// Moebius transformation of the unit ball in (u, w) coordinates.
struct MoebElement {
    std::vector<double> u; ///< point of the open unit ball
    Multivector w;         ///< unit Pin element

    int generators() const { return w.generators(); }
};

/// Identity transformation: u = 0, w = 1.
MoebElement moeb_identity(int n);

/// Validated constructor: requires |u| < 1 and w a unit Pin element.
MoebElement make_moeb(std::vector<double> u, Multivector w, double tol = kDefaultTol);

/// Matrix of a ball-group element (see the header comment).
CliffMat2 from_uw(const MoebElement& g);

/// Recover (u, w) from a positive real multiple of a ball-group matrix:
/// w = a/|a| and u = reversion(a) c / |a|^2.  Throws domain_error when the
/// matrix does not have the group shape.
MoebElement to_uw(const CliffMat2& mat, double tol = kDefaultTol);

/// Inverse of a normalized ball-group matrix in closed form.
CliffMat2 moeb_mat_inverse(const CliffMat2& mat);

/// Action of a ball-group element on a vector of the closed unit ball,
/// where the map can have no pole.
Multivector moebius_apply(const MoebElement& g, const Multivector& x, double tol = kDefaultTol);

/// Group law in (u, w) coordinates, via the matrix product.
MoebElement moeb_compose(const MoebElement& g1, const MoebElement& g2, double tol = kDefaultTol);

/// Group inverse in (u, w) coordinates.
MoebElement moeb_inverse(const MoebElement& g, double tol = kDefaultTol);

/// Sphere in R^n with center m and signed squared radius r2 (r2 = 0 encodes
/// a point; r2 < 0 an imaginary sphere).
struct SphereCoord {
    std::vector<double> center;
    double radius2 = 1.0;
};

/// Matrix representative of the ray of a sphere: [[m, |m|^2 - r^2], [1, -m]].
/// A point x lies on the sphere exactly when [1, -x] S [x, 1]^T = 0.
CliffMat2 sphere_to_matrix(const SphereCoord& s);

/// Inverse of sphere_to_matrix, accepting any real nonzero multiple of a
/// sphere matrix.  Throws domain_error when the matrix has no sphere shape.
SphereCoord matrix_to_sphere(const CliffMat2& mat, double tol = kDefaultTol);

/// Image of a sphere under the group element, computed on the ray of matrix
/// representatives: M S [[conj(d), conj(b)], [conj(c), conj(a)]] followed by
/// renormalization.  The unit sphere is preserved by every ball-group
/// element.  Throws degeneracy_error when the image leaves the sphere rays
/// (it degenerates to a hyperplane).
SphereCoord projective_action(const MoebElement& g, const SphereCoord& s,
                              double tol = kDefaultTol);

/// Density of the invariant (Haar) measure in the u coordinate relative to
/// Lebesgue measure on the ball: |1 + u^2|^{-n} = (1 - |u|^2)^{-n}, per unit
/// rotor mass.
double haar_density(const MoebElement& g);

/// Function on the group with values in the Clifford algebra.
using GroupFunction = std::function<Multivector(const MoebElement&)>;

/// Radius-r average of f over the group, normalized by (1 - r^2)^{n-1}:
/// the mean of f((r sigma, w)) over sphere directions sigma and rotors w,
/// divided by (1 - r^2)^{n-1}.
Multivector hardy_functional(const GroupFunction& f, double r, const QuadratureRule& sphere,
                             const SpinRule& rotors);

struct HardyResult {
    Multivector value;            ///< extrapolated boundary value
    double refinement_gap = 0.0;  ///< rule-refinement disagreement at the sharper radius
};

/// Boundary (r -> 1) limit of the radius-r averages, extrapolated linearly
/// in 1 - r^2 from r = 0.9 and r = 0.99.  The refinement gap compares the
/// base and refined quadrature rules at r = 0.99; a large gap signals an
/// under-resolved integrand.
HardyResult hardy_limit(const GroupFunction& f, int n);

} // namespace cliffspec
