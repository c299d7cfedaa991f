#include "cliffspec/complex_disk.hpp"

#include <cmath>

#include "cliffspec/errors.hpp"
#include "group_inverse.hpp"

namespace cliffspec {

namespace {

void check_planar(const Multivector& a, const char* op) {
    if (a.generators() != 2) {
        throw dimension_error(std::string(op) + ": defined for the n = 2 algebra only");
    }
}

} // namespace

std::complex<double> decode_even(const Multivector& a, double tol) {
    check_planar(a, "decode_even");
    const double odd = std::hypot(a[0b01], a[0b10]);
    if (odd > tol * std::max(1.0, a.norm())) {
        throw domain_error("decode_even: element has an odd part");
    }
    return {a[0b00], -a[0b11]};
}

Multivector encode_even(const std::complex<double>& z) {
    Multivector a(2);
    a[0b00] = z.real();
    a[0b11] = -z.imag();
    return a;
}

std::complex<double> vector_coord_complex(const Multivector& x, double tol) {
    check_planar(x, "vector_coord_complex");
    const double rest = std::hypot(x[0b00], x[0b11]);
    if (rest > tol * std::max(1.0, x.norm())) {
        throw domain_error("vector_coord_complex: element is not a vector");
    }
    return {x[0b01], x[0b10]};
}

Multivector coord_vector(const std::complex<double>& z) {
    Multivector x(2);
    x[0b01] = z.real();
    x[0b10] = z.imag();
    return x;
}

DiskShadow disk_shadow(const MoebElement& g, double tol) {
    if (g.generators() != 2) {
        throw dimension_error("disk_shadow: defined for the n = 2 group only");
    }
    const CliffMat2 mat = from_uw(g);
    const Multivector a_star = reversion(mat.a);
    const Multivector b_star = reversion(mat.c);
    const Multivector a_bar = conjugation(mat.a);
    const Multivector b_bar = conjugation(mat.c);

    const Multivector e1 = Multivector::basis_vector(2, 1);
    const Multivector e2 = Multivector::basis_vector(2, 2);

    const auto denom = [&](const Multivector& x) { return a_star - b_star * x; };
    const auto image = [&](const Multivector& x) {
        return (a_bar * x - b_bar) * detail::group_inverse(denom(x), tol);
    };

    DiskShadow shadow;
    shadow.S = decode_even(denom(Multivector(2)), 1e-9);
    shadow.T = decode_even(denom(e1), 1e-9) - shadow.S;
    shadow.Q = vector_coord_complex(image(Multivector(2)), 1e-9) * shadow.S;
    shadow.P = vector_coord_complex(image(e1), 1e-9) * (shadow.S + shadow.T) - shadow.Q;

    // the affine forms are exact; verify them off the extraction points
    const std::complex<double> i_unit(0.0, 1.0);
    const std::complex<double> den_check = decode_even(denom(e2), 1e-9);
    const std::complex<double> arg_check = vector_coord_complex(image(e2), 1e-9);
    const double scale = std::max({1.0, std::abs(shadow.S), std::abs(shadow.P)});
    if (std::abs(den_check - (shadow.S + shadow.T * i_unit)) > 1e-10 * scale ||
        std::abs(arg_check * den_check - (shadow.P * i_unit + shadow.Q)) > 1e-10 * scale) {
        throw domain_error("disk_shadow: representation data is not fractional-affine");
    }
    return shadow;
}

} // namespace cliffspec
