#include "cliffspec/holo_map.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "cliffspec/errors.hpp"

namespace cliffspec {

namespace {

using complexd = std::complex<double>;

// Coefficients of p(u + delta) in powers of delta, by repeated in-place
// synthetic division by (z - u) (Horner's Taylor shift).
std::vector<complexd> taylor_shift(const std::vector<complexd>& coeffs, complexd u) {
    std::vector<complexd> work = coeffs;
    const std::size_t n = work.size();
    for (std::size_t round = 0; round < n; ++round)
        for (std::size_t j = n - 1; j > round; --j) work[j - 1] += u * work[j];
    return work;
}

} // namespace

HoloMap poly_map(std::vector<complexd> coeffs) {
    if (coeffs.empty())
        throw domain_error("poly_map: a polynomial needs at least one coefficient");
    for (const complexd& c : coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw domain_error("poly_map: coefficients must be finite");
    HoloMap phi;
    phi.poly = std::move(coeffs);
    return phi;
}

HoloMap oracle_map(DerivativeOracle oracle) {
    if (!oracle) throw domain_error("oracle_map: the derivative oracle is empty");
    HoloMap phi;
    phi.oracle = std::move(oracle);
    return phi;
}

complexd holo_eval(const HoloMap& phi, complexd z) {
    if (phi.is_polynomial()) {
        complexd acc(0.0);
        for (std::size_t j = phi.poly.size(); j-- > 0;) acc = acc * z + phi.poly[j];
        return acc;
    }
    return phi.oracle(z, 0).at(0);
}

std::vector<complexd> holo_derivatives(const HoloMap& phi, complexd z, int order) {
    if (order < 0) throw domain_error("holo_derivatives: order must be nonnegative");
    if (phi.is_polynomial()) {
        std::vector<complexd> shifted = taylor_shift(phi.poly, z);
        std::vector<complexd> out(static_cast<std::size_t>(order) + 1, complexd(0.0));
        double factorial = 1.0;
        for (int j = 0; j <= order; ++j) {
            if (j > 0) factorial *= j;
            if (static_cast<std::size_t>(j) < shifted.size())
                out[static_cast<std::size_t>(j)] = shifted[static_cast<std::size_t>(j)] * factorial;
        }
        return out;
    }
    std::vector<complexd> out = phi.oracle(z, order);
    if (out.size() != static_cast<std::size_t>(order) + 1)
        throw domain_error("holo_derivatives: the oracle returned the wrong number of values");
    return out;
}

double disk_image_bound(const HoloMap& phi, int samples) {
    if (samples < 1) throw domain_error("disk_image_bound: need at least one sample");
    double bound = 0.0;
    const double step = 2.0 * 3.14159265358979323846 / samples;
    for (int j = 0; j < samples; ++j) {
        complexd z = std::polar(1.0, step * j);
        bound = std::max(bound, std::abs(holo_eval(phi, z)));
    }
    return bound;
}

int deg_of_zero(const HoloMap& phi, complexd u, double deriv_tol, int max_order) {
    if (deriv_tol <= 0.0) throw domain_error("deg_of_zero: the tolerance must be positive");
    if (max_order < 1) throw domain_error("deg_of_zero: max_order must be at least 1");

    int top = max_order;
    if (phi.is_polynomial())
        top = std::min<int>(max_order, static_cast<int>(phi.poly.size()) - 1);
    if (top < 1)
        throw flat_map_error("deg_of_zero: the map is constant, phi(z) - phi(u) vanishes identically");

    std::vector<complexd> derivs = holo_derivatives(phi, u, top);
    double scale = 0.0;
    std::vector<double> weight(static_cast<std::size_t>(top) + 1, 0.0);
    double factorial = 1.0;
    for (int j = 1; j <= top; ++j) {
        factorial *= j;
        // Taylor coefficients, not raw derivatives: the raw magnitudes grow
        // factorially for maps with poles near the disk, which would let the
        // deep orders drown the leading ones.
        weight[static_cast<std::size_t>(j)] =
            std::abs(derivs[static_cast<std::size_t>(j)]) / factorial;
        scale = std::max(scale, weight[static_cast<std::size_t>(j)]);
    }
    if (scale == 0.0)
        throw flat_map_error("deg_of_zero: all derivatives through order " + std::to_string(top) +
                             " vanish at the given point");
    for (int j = 1; j <= top; ++j)
        if (weight[static_cast<std::size_t>(j)] > deriv_tol * scale) return j;
    throw flat_map_error("deg_of_zero: all derivatives through order " + std::to_string(top) +
                         " fall below tolerance at the given point");
}

} // namespace cliffspec
