#pragma once

// The operator side of the calculus: tuples of d x d matrices embedded into
// the algebra A_n = A (x) Cl_n of matrix-coefficient multivectors, inversion
// through the real regular representation, the Clifford resolvent set, and
// the Moebius action on operators together with its resolvent cocycle.

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "cliffspec/moebius.hpp"
#include "cliffspec/multivector.hpp"

namespace cliffspec {

/// Tuple (A_1, ..., A_n) of d x d real matrices.  make_operator_tuple is the
/// validating entry point for user data (symmetry, matching sizes); the bare
/// aggregate is kept open for internal constructions such as nilpotent test
/// pairs that are deliberately non-symmetric.
struct OperatorTuple {
    int n = 0;
    int d = 0;
    std::vector<Eigen::MatrixXd> ops;
};

/// Builds a tuple from matrices, checking squareness, equal sizes, and
/// symmetry max|A_j - A_j^T| <= tol.  Throws dimension_error / domain_error.
OperatorTuple make_operator_tuple(std::vector<Eigen::MatrixXd> ops, double tol = kDefaultTol);

/// Element of A_n: one d x d real matrix per blade mask.
class CliffOperator {
public:
    CliffOperator() = default;

    /// Zero element with the given shape.
    CliffOperator(int n, int d);

    static CliffOperator identity(int n, int d);

    /// Clifford constant c acting as c (x) I_d.
    static CliffOperator constant(int d, const Multivector& c);

    int generators() const { return n_; }
    int dim() const { return d_; }
    int size() const { return static_cast<int>(coeff_.size()); }

    const Eigen::MatrixXd& operator[](unsigned mask) const { return coeff_[mask]; }
    Eigen::MatrixXd& operator[](unsigned mask) { return coeff_[mask]; }

    /// Frobenius norm of the coefficient stack (cheap size gauge; the
    /// operator norm is op_norm below).
    double frobenius() const;

    bool is_zero(double tol = kDefaultTol) const;

    CliffOperator operator-() const;
    CliffOperator& operator+=(const CliffOperator& rhs);
    CliffOperator& operator-=(const CliffOperator& rhs);
    CliffOperator& operator*=(double s);

private:
    int n_ = 0;
    int d_ = 0;
    std::vector<Eigen::MatrixXd> coeff_;
};

CliffOperator operator+(CliffOperator x, const CliffOperator& y);
CliffOperator operator-(CliffOperator x, const CliffOperator& y);
CliffOperator operator*(CliffOperator x, double s);
CliffOperator operator*(double s, CliffOperator x);

/// Blade-graded product with matrix coefficients.
CliffOperator op_mul(const CliffOperator& x, const CliffOperator& y);
CliffOperator operator*(const CliffOperator& x, const CliffOperator& y);

/// Element of the module M_n = R^d (x) Cl_n: one d-vector per blade mask.
class ModuleVector {
public:
    ModuleVector() = default;

    /// Zero element with the given shape.
    ModuleVector(int n, int d);

    /// v placed in the scalar blade slot.
    ModuleVector(int n, const Eigen::VectorXd& v);

    int generators() const { return n_; }
    int dim() const { return d_; }
    int size() const { return static_cast<int>(coeff_.size()); }

    const Eigen::VectorXd& operator[](unsigned mask) const { return coeff_[mask]; }
    Eigen::VectorXd& operator[](unsigned mask) { return coeff_[mask]; }

    /// Euclidean norm of the blade-indexed stack.
    double norm() const;

    ModuleVector operator-() const;
    ModuleVector& operator+=(const ModuleVector& rhs);
    ModuleVector& operator-=(const ModuleVector& rhs);
    ModuleVector& operator*=(double s);

private:
    int n_ = 0;
    int d_ = 0;
    std::vector<Eigen::VectorXd> coeff_;
};

ModuleVector operator+(ModuleVector x, const ModuleVector& y);
ModuleVector operator-(ModuleVector x, const ModuleVector& y);
ModuleVector operator*(ModuleVector x, double s);

/// Left action of A_n on M_n.
ModuleVector operator*(const CliffOperator& x, const ModuleVector& v);

/// Right multiplication by a Clifford constant (commutes with the left
/// action, which is what makes right Taylor coefficients consistent).
ModuleVector operator*(const ModuleVector& v, const Multivector& c);

/// e1 A_1 + ... + e_n A_n.
CliffOperator embed(const OperatorTuple& t);

/// Left-regular representation of x as a (d 2^n) x (d 2^n) real matrix:
/// block (target, source) = sign(holder, source) * x_holder with
/// holder = target XOR source, acting on blade-stacked module vectors.
Eigen::MatrixXd regular_matrix(const CliffOperator& x);

/// Operator (spectral) norm, the largest singular value of regular_matrix.
double op_norm(const CliffOperator& x);

/// Inverse in A_n through the regular representation.  Throws singular_error
/// when the representation is singular or conditioned worse than cond_limit,
/// or when the product check x * x^{-1} = I fails.
CliffOperator op_inverse(const CliffOperator& x, double cond_limit = 1e12);

/// True when A - uI is invertible in A_n, i.e. u lies in the Clifford
/// resolvent set R(A).
bool resolvent_membership(const CliffOperator& a, const std::vector<double>& u,
                          double cond_limit = 1e12);

struct GridSample {
    double u1 = 0.0;
    double u2 = 0.0;
    bool member = false;
};

/// Membership sampled over the side x side lattice spanning
/// [-radius, radius]^2 (odd side counts place a node exactly at the
/// origin); requires generators() == 2.  Row-major in (u1, u2).
std::vector<GridSample> clifford_spectrum_grid(const CliffOperator& a, int side, double radius,
                                               double cond_limit = 1e12);

/// The Moebius action of g on operators, (bar a A - bar b I)(a* I - b* A)^{-1}
/// with (a, b) read from the matrix of g.  Throws domain_error when the
/// denominator is singular (the pole of g lies outside R(A)).
CliffOperator moebius_on_operator(const MoebElement& g, const CliffOperator& a,
                                  double cond_limit = 1e12);

/// Resolvent R(g, A) = (a* I - b* A)^{-1}.  Satisfies the cocycle
/// R(g1, A) R(g2, g1 action on A) = R(g1 g2, A).
CliffOperator resolvent(const MoebElement& g, const CliffOperator& a,
                        double cond_limit = 1e12);

/// Norm of the difference between the two sides of the vector-shift identity
///   (g action on A) - (g action on x) I
///     = (a - x b)^{-1} (A - xI) (a* I - b* A)^{-1}
/// for a vector point x in R(A).  Invertibility failures of the scalar and
/// the operator factor are reported separately.
double lemma318_residual(const MoebElement& g, const CliffOperator& a,
                         const std::vector<double>& x, double cond_limit = 1e12);

/// (|a|^2 I - |b|^2 (A_1^2 + ... + A_n^2))^{exponent/2} for a commuting
/// tuple and an even exponent (possibly negative).  Throws domain_error on
/// non-commuting input or an odd exponent, singular_error when a negative
/// power does not exist.
Eigen::MatrixXd modulus_power(const MoebElement& g, const OperatorTuple& t, int exponent,
                              double tol = kDefaultTol);

/// Function on the operator orbit.
using OrbitFunction = std::function<CliffOperator(const CliffOperator&)>;

/// The calculus action for commuting tuples,
///   [rho(g) f](X) = R(g, X) |a* I - b* X|^{2-n} f(g action on X),
/// returned as a new orbit function over the orbit of embed(t).  The modulus
/// factor needs an even number of generators; at n = 2 it is the identity,
/// and odd n is rejected.  Orbit points must stay vector operators (true on
/// commuting orbits), since the factor reads their component tuple back.
OrbitFunction rho_commuting(const MoebElement& g, const OperatorTuple& t, const OrbitFunction& f,
                            double tol = kDefaultTol);

} // namespace cliffspec
