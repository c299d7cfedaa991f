#pragma once

// Dense multivectors over the real Clifford algebra with n anticommuting
// generators e_1..e_n satisfying e_i e_j + e_j e_i = -2 delta_ij.
//
// Coefficients are stored blade-wise: bit j of a blade mask corresponds to
// the generator e_{j+1}, so mask 0b101 is the blade e1e3.

#include <cstdint>
#include <string>
#include <vector>

#include "cliffspec/errors.hpp"

namespace cliffspec {

/// Absolute tolerance used by default throughout the library.
inline constexpr double kDefaultTol = 1e-10;

/// Largest supported number of generators.
inline constexpr int kMaxGenerators = 8;

/// Number of generators appearing in a blade mask.
int blade_grade(unsigned mask);

/// Canonical name of a blade: "1" for the empty mask, otherwise "e" followed
/// by the ascending generator indices, e.g. "e13" for e1e3.
std::string blade_name(unsigned mask);

/// Cached products and signs of basis blades for a fixed generator count.
///
/// For blades p and q, the geometric product is
///     E_p E_q = sign(p, q) * E_{p xor q},
/// where the sign counts the transpositions needed to interleave the two
/// generator lists plus one factor of -1 for every repeated generator.
class BladeSignTable {
public:
    explicit BladeSignTable(int n);

    int generators() const { return n_; }
    int size() const { return dim_; }

    int sign(unsigned p, unsigned q) const { return table_[(std::size_t(p) << n_) | q]; }
    static unsigned product_mask(unsigned p, unsigned q) { return p ^ q; }

    /// Sign computed directly from the masks, without the cache.
    static int compute_sign(unsigned p, unsigned q);

    /// Shared table for the given generator count (1..kMaxGenerators).
    static const BladeSignTable& get(int n);

private:
    int n_;
    int dim_;
    std::vector<std::int8_t> table_;
};

class Multivector {
public:
    /// Zero element of the algebra with n generators.
    explicit Multivector(int n);

    /// Scalar element.
    Multivector(int n, double scalar_value);

    /// The generator e_j (1-based index).
    static Multivector basis_vector(int n, int j);

    /// A single blade term, coeff * E_mask.
    static Multivector blade(int n, unsigned mask, double coeff = 1.0);

    int generators() const { return n_; }
    int size() const { return static_cast<int>(coeff_.size()); }

    double operator[](unsigned mask) const { return coeff_[mask]; }
    double& operator[](unsigned mask) { return coeff_[mask]; }
    const std::vector<double>& coefficients() const { return coeff_; }

    double scalar_part() const { return coeff_[0]; }
    Multivector grade_part(int r) const;

    bool is_zero(double tol = kDefaultTol) const;

    /// Euclidean norm of the coefficient vector.
    double norm() const;

    Multivector operator-() const;
    Multivector& operator+=(const Multivector& rhs);
    Multivector& operator-=(const Multivector& rhs);
    Multivector& operator*=(double s);
    Multivector& operator/=(double s);

private:
    int n_;
    std::vector<double> coeff_;
};

Multivector operator+(Multivector a, const Multivector& b);
Multivector operator-(Multivector a, const Multivector& b);
Multivector operator*(Multivector a, double s);
Multivector operator*(double s, Multivector a);
Multivector operator/(Multivector a, double s);

/// Geometric (Clifford) product.
Multivector geometric_product(const Multivector& a, const Multivector& b);
Multivector operator*(const Multivector& a, const Multivector& b);

/// a multiplied by itself k times (k >= 0; k == 0 gives the unit).
Multivector pow(const Multivector& a, int k);

/// Anti-automorphism reversing the order of generators in every blade;
/// multiplies grade r by (-1)^{r(r-1)/2}.
Multivector reversion(const Multivector& a);

/// Automorphism negating each generator; multiplies grade r by (-1)^r.
Multivector grade_involution(const Multivector& a);

/// Clifford conjugation, the composition of reversion and grade involution;
/// multiplies grade r by (-1)^{r(r+1)/2}.
Multivector conjugation(const Multivector& a);

/// Embed a coordinate vector x as the grade-1 element sum_j x_j e_j.
Multivector vector_embed(const std::vector<double>& x);

/// True when all coefficients outside grade 1 are below tol.
bool is_vector(const Multivector& a, double tol = kDefaultTol);

/// Grade-1 coordinates of a (the remaining grades are ignored).
std::vector<double> vector_part(const Multivector& a);

/// Inverse of a nonzero vector: conjugation(x) / |x|^2.  The image of the
/// unit sphere under this map is the sphere itself and 0 and infinity swap,
/// which is the Kelvin reflection.  Throws singular_error for |x| <= tol
/// and domain_error when x is not a vector.
Multivector kelvin_inverse(const Multivector& x, double tol = kDefaultTol);

/// Two-sided inverse in the full algebra, computed through the left-regular
/// matrix representation.  Throws singular_error when a is not invertible or
/// the representation is conditioned worse than 1/tol.
Multivector mv_inverse(const Multivector& a, double tol = kDefaultTol);

/// Modulus |a| = sqrt(a * conjugation(a)) for elements where that product is
/// a nonnegative scalar; throws domain_error otherwise.
double modulus(const Multivector& a, double tol = kDefaultTol);

/// Membership in the Clifford group: a is invertible and the twisted adjoint
/// action x -> grade_involution(a) x a^{-1} maps every generator to a vector.
bool in_gamma(const Multivector& a, double tol = kDefaultTol);

/// Membership in Pin(n): a is in the Clifford group and a*conjugation(a) = 1.
bool in_pin(const Multivector& a, double tol = kDefaultTol);

/// Coefficient-wise comparison: max |a_p - b_p| <= tol.
bool approx_equal(const Multivector& a, const Multivector& b, double tol = kDefaultTol);

/// Render in the textual form "3 + 2*e1 - e13": terms in ascending mask
/// order, coefficients with enough digits to round-trip exactly.
std::string to_string(const Multivector& a);

/// Parse the textual form produced by to_string.  A '*' is required between
/// a coefficient and a blade name; blade indices must be ascending and at
/// most n.  Throws parse_error on malformed input.
Multivector parse_multivector(int n, const std::string& text);

} // namespace cliffspec
