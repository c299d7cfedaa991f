#include "cliffspec/jets.hpp"

#include <cmath>

#include "cliffspec/complex_disk.hpp"
#include "cliffspec/errors.hpp"

namespace cliffspec {

namespace {

using complexd = std::complex<double>;
using Series = std::vector<complexd>; // truncated Taylor coefficients a_0 + a_1 z + ...

Series series_mul(const Series& a, const Series& b, std::size_t top) {
    Series out(top + 1, complexd(0.0));
    for (std::size_t i = 0; i <= top && i < a.size(); ++i) {
        if (a[i] == complexd(0.0)) continue;
        for (std::size_t j = 0; i + j <= top && j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

// Composition a(p(z)) truncated at z^top, where p has no constant term.
Series series_compose(const Series& a, const Series& p, std::size_t top) {
    Series out(top + 1, complexd(0.0));
    Series power(top + 1, complexd(0.0));
    power[0] = complexd(1.0);
    for (std::size_t j = 0; j < a.size() && j <= top; ++j) {
        if (j > 0) power = series_mul(power, p, top);
        for (std::size_t i = 0; i <= top; ++i) out[i] += a[j] * power[i];
    }
    return out;
}

// 1 / (c0 + c1 z + ...) truncated at z^top.
Series series_reciprocal(const Series& c, std::size_t top, double tol) {
    if (c.empty() || std::abs(c[0]) <= tol)
        throw singular_error("series_reciprocal: the constant term vanishes");
    Series out(top + 1, complexd(0.0));
    out[0] = complexd(1.0) / c[0];
    for (std::size_t i = 1; i <= top; ++i) {
        complexd acc(0.0);
        for (std::size_t j = 1; j <= i; ++j)
            if (j < c.size()) acc += c[j] * out[i - j];
        out[i] = -acc / c[0];
    }
    return out;
}

Series jet_to_series(const Jet& jf) {
    Series a(jf.values.size(), complexd(0.0));
    double factorial = 1.0;
    for (std::size_t j = 0; j < jf.values.size(); ++j) {
        if (j > 0) factorial *= static_cast<double>(j);
        a[j] = jf.values[j] / factorial;
    }
    return a;
}

Jet series_to_jet(complexd base, const Series& a) {
    Jet out;
    out.base = base;
    out.values.resize(a.size());
    double factorial = 1.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (j > 0) factorial *= static_cast<double>(j);
        out.values[j] = a[j] * factorial;
    }
    return out;
}

void check_order(int order) {
    if (order < 0) throw domain_error("jets: the jet order must be nonnegative");
    if (order > kJetOrderCap)
        throw domain_error("jets: order " + std::to_string(order) + " exceeds the cap " +
                           std::to_string(kJetOrderCap));
}

} // namespace

Jet polynomial_jet(const std::vector<complexd>& coeffs, complexd base, int order) {
    check_order(order);
    HoloMap p = poly_map(coeffs);
    Jet out;
    out.base = base;
    out.values = holo_derivatives(p, base, order);
    return out;
}

Jet jet_prolong_map(const HoloMap& psi, const Jet& jf, complexd w, double tol) {
    check_order(jf.order());
    const int order = jf.order();
    std::vector<complexd> derivs = holo_derivatives(psi, w, order);
    if (std::abs(derivs[0] - jf.base) > tol * std::max(1.0, std::abs(jf.base)))
        throw domain_error("jet_prolong_map: psi(w) does not match the base of the jet");

    // p(delta) = psi(w + delta) - psi(w), no constant term.
    Series p(static_cast<std::size_t>(order) + 1, complexd(0.0));
    double factorial = 1.0;
    for (int j = 1; j <= order; ++j) {
        factorial *= j;
        p[static_cast<std::size_t>(j)] = derivs[static_cast<std::size_t>(j)] / factorial;
    }
    Series composed = series_compose(jet_to_series(jf), p, static_cast<std::size_t>(order));
    return series_to_jet(w, composed);
}

Jet rho1_jet_prolong(const MoebElement& g, const Jet& jf, complexd w, double tol) {
    check_order(jf.order());
    const std::size_t top = jf.values.size() - 1;
    DiskShadow shadow = disk_shadow(g);
    complexd denom0 = shadow.S + shadow.T * w;
    if (std::abs(denom0) <= tol)
        throw singular_error("rho1_jet_prolong: the multiplier pole sits at the base point");
    if (std::abs(shadow.argument(w) - jf.base) > tol * std::max(1.0, std::abs(jf.base)))
        throw domain_error("rho1_jet_prolong: the jet is not based at the transformed argument");

    // Series in delta = z - w of denominator, argument increment, multiplier.
    Series denom{denom0, shadow.T};
    Series recip = series_reciprocal(denom, top, tol);
    // argument(w + delta) - argument(w) = (P delta) * recip ... derive from
    // (P(w+delta) + Q)/(S + T(w+delta)):
    Series numer{shadow.P * w + shadow.Q, shadow.P};
    Series arg_full = series_mul(numer, recip, top);
    Series increment = arg_full;
    increment[0] = complexd(0.0);
    Series composed = series_compose(jet_to_series(jf), increment, top);
    Series weighted = series_mul(recip, composed, top);
    return series_to_jet(w, weighted);
}

Eigen::MatrixXcd rho1_jet_matrix(const MoebElement& g, int size) {
    if (size < 1) throw domain_error("rho1_jet_matrix: size must be positive");
    if (size > kJetOrderCap + 1)
        throw domain_error("rho1_jet_matrix: size exceeds the jet order cap");
    const std::size_t top = static_cast<std::size_t>(size) - 1;
    DiskShadow shadow = disk_shadow(g);
    if (std::abs(shadow.S) == 0.0)
        throw singular_error("rho1_jet_matrix: the multiplier pole sits at the origin");

    Series denom{shadow.S, shadow.T};
    Series mult = series_reciprocal(denom, top, 0.0);
    Series numer{shadow.Q, shadow.P};
    Series phi = series_mul(numer, mult, top);

    const complexd minus_i(0.0, -1.0);
    Eigen::MatrixXcd out(size, size);
    Series power(top + 1, complexd(0.0));
    power[0] = complexd(1.0);
    for (int k = 0; k < size; ++k) {
        if (k > 0) {
            Series scaled(phi.size());
            for (std::size_t j = 0; j < phi.size(); ++j) scaled[j] = minus_i * phi[j];
            power = series_mul(power, scaled, top);
        }
        Series column = series_mul(mult, power, top);
        complexd norm(1.0);
        for (int m = 0; m < size; ++m) {
            out(m, k) = column[static_cast<std::size_t>(m)] / norm;
            norm *= minus_i;
        }
    }
    return out;
}

} // namespace cliffspec
