#include "cliffspec/examples.hpp"

#include <cmath>

namespace cliffspec {

namespace {

using complexd = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

std::vector<complexd> multiply_root(std::vector<complexd> poly, complexd root) {
    std::vector<complexd> out(poly.size() + 1, complexd(0.0));
    for (std::size_t j = 0; j < poly.size(); ++j) {
        out[j] -= root * poly[j];
        out[j + 1] += poly[j];
    }
    return out;
}

} // namespace

OperatorTuple pauli_tuple() {
    Eigen::MatrixXd a1(2, 2), a2(2, 2);
    a1 << 1.0, 0.0, 0.0, -1.0;
    a2 << 0.0, 1.0, 1.0, 0.0;
    return make_operator_tuple({a1, a2});
}

std::array<complexd, 4> showcase_sites() {
    return {std::polar(0.75, kPi / 4.0), std::polar(2.0 / 3.0, 5.0 * kPi / 6.0),
            std::polar(0.4, -3.0 * kPi / 4.0), std::polar(0.6, -kPi / 3.0)};
}

ComplexMatrix showcase_matrix() {
    const std::array<complexd, 4> u = showcase_sites();
    const int lengths[4] = {3, 4, 1, 2};
    ComplexMatrix M = ComplexMatrix::Zero(10, 10);
    int at = 0;
    for (int b = 0; b < 4; ++b) {
        for (int i = 0; i < lengths[b]; ++i) {
            M(at + i, at + i) = u[static_cast<std::size_t>(b)];
            if (i + 1 < lengths[b]) M(at + i, at + i + 1) = complexd(1.0);
        }
        at += lengths[b];
    }
    return M;
}

HoloMap showcase_phi() {
    const std::array<complexd, 4> u = showcase_sites();
    // Derivative (z - u2)^2 (z - u3)(z - u4)^4, integrated from zero.
    std::vector<complexd> deriv{complexd(1.0)};
    deriv = multiply_root(deriv, u[1]);
    deriv = multiply_root(deriv, u[1]);
    deriv = multiply_root(deriv, u[2]);
    for (int i = 0; i < 4; ++i) deriv = multiply_root(deriv, u[3]);

    std::vector<complexd> coeffs(deriv.size() + 1, complexd(0.0));
    for (std::size_t j = 0; j < deriv.size(); ++j)
        coeffs[j + 1] = deriv[j] / static_cast<double>(j + 1);

    HoloMap raw = poly_map(coeffs);
    const double bound = disk_image_bound(raw, 4096);
    for (complexd& c : coeffs) c *= 0.9 / bound;
    return poly_map(coeffs);
}

} // namespace cliffspec
