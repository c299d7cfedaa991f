#include "cliffspec/calculus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>

#include "cliffspec/errors.hpp"

namespace cliffspec {

namespace {

void check_tuple_shape(const OperatorTuple& t, const char* op) {
    if (t.n < 1 || static_cast<int>(t.ops.size()) != t.n) {
        throw dimension_error(std::string(op) + ": malformed tuple");
    }
    for (const auto& m : t.ops) {
        if (m.rows() != t.d || m.cols() != t.d) {
            throw dimension_error(std::string(op) + ": tuple operator of the wrong size");
        }
    }
}

void check_index(const MultiIndex& m, int n, const char* op) {
    if (static_cast<int>(m.size()) != n) {
        throw dimension_error(std::string(op) + ": index length " + std::to_string(m.size()) +
                              " does not match " + std::to_string(n) + " operators");
    }
}

/// Basis index set of the function side: first slot zero, total degree
/// <= max_degree, ordered by degree then lexicographically.
std::vector<MultiIndex> basis_indices(int n, int max_degree) {
    std::vector<MultiIndex> out;
    for (int degree = 0; degree <= max_degree; ++degree) {
        MultiIndex m(n, 0);
        // Walk compositions of `degree` over slots 2..n in lex order.
        std::function<void(int, int)> walk = [&](int slot, int rest) {
            if (slot == n - 1) {
                m[slot] = rest;
                out.push_back(m);
                return;
            }
            for (int take = 0; take <= rest; ++take) {
                m[slot] = take;
                walk(slot + 1, rest - take);
            }
            m[slot] = 0;
        };
        if (n == 1) {
            if (degree == 0) out.push_back(m);
        } else {
            walk(1, degree);
        }
    }
    return out;
}

MultiIndex zero_index(int n) { return MultiIndex(n, 0); }

/// Quadratic (Neville) extrapolation to t = 0 through three samples.
double extrapolate3(const std::array<double, 3>& t, const std::array<double, 3>& y) {
    double l0 = (0.0 - t[1]) * (0.0 - t[2]) / ((t[0] - t[1]) * (t[0] - t[2]));
    double l1 = (0.0 - t[0]) * (0.0 - t[2]) / ((t[1] - t[0]) * (t[1] - t[2]));
    double l2 = (0.0 - t[0]) * (0.0 - t[1]) / ((t[2] - t[0]) * (t[2] - t[1]));
    return l0 * y[0] + l1 * y[1] + l2 * y[2];
}

} // namespace

CliffOperator symmetric_product(const OperatorTuple& t, const MultiIndex& m) {
    check_tuple_shape(t, "symmetric_product");
    check_index(m, t.n, "symmetric_product");
    const int degree = multi_degree(m);
    if (degree > kSymmetricProductCap) {
        throw domain_error("symmetric_product: degree " + std::to_string(degree) +
                           " exceeds the cap " + std::to_string(kSymmetricProductCap));
    }
    if (degree == 0) {
        return CliffOperator::identity(t.n, t.d);
    }
    std::vector<int> word;
    word.reserve(degree);
    for (int j = 0; j < t.n; ++j) {
        word.insert(word.end(), m[j], j);
    }
    const auto& signs = BladeSignTable::get(t.n);
    CliffOperator out(t.n, t.d);
    long arrangements = 0;
    do {
        unsigned mask = 0;
        int sign = 1;
        Eigen::MatrixXd prod = Eigen::MatrixXd::Identity(t.d, t.d);
        for (int letter : word) {
            const unsigned bit = 1u << letter;
            sign *= signs.sign(mask, bit);
            mask ^= bit;
            prod = prod * t.ops[letter];
        }
        out[mask] += sign * prod;
        ++arrangements;
    } while (std::next_permutation(word.begin(), word.end()));
    out *= 1.0 / static_cast<double>(arrangements);
    return out;
}

SpectralRadii spectral_radii(const OperatorTuple& t, const Eigen::VectorXd& v, int max_order) {
    check_tuple_shape(t, "spectral_radii");
    if (v.size() != t.d) {
        throw dimension_error("spectral_radii: vector length does not match the operators");
    }
    if (max_order < 1 || max_order > kSymmetricProductCap) {
        throw domain_error("spectral_radii: order must lie in 1.." +
                           std::to_string(kSymmetricProductCap));
    }
    const ModuleVector mv(t.n, v);
    SpectralRadii out;
    for (int k = 1; k <= max_order; ++k) {
        double best_sym = 0.0;
        double best_loc = 0.0;
        // All exponent tuples of total degree k.
        MultiIndex m(t.n, 0);
        std::function<void(int, int)> walk = [&](int slot, int rest) {
            if (slot == t.n - 1) {
                m[slot] = rest;
                const CliffOperator am = symmetric_product(t, m);
                best_sym = std::max(best_sym, op_norm(am));
                best_loc = std::max(best_loc, (am * mv).norm());
                return;
            }
            for (int take = 0; take <= rest; ++take) {
                m[slot] = take;
                walk(slot + 1, rest - take);
            }
            m[slot] = 0;
        };
        walk(0, k);
        out.symmetric_trace.push_back(std::pow(best_sym, 1.0 / k));
        out.local_trace.push_back(std::pow(best_loc, 1.0 / k));
    }
    out.symmetric_radius = out.symmetric_trace.back();
    out.local_radius = out.local_trace.back();
    out.local_bound_holds =
        out.local_radius <= out.symmetric_radius * std::max(1.0, v.norm()) + 1e-12;
    return out;
}

ModuleVector taylor_calculus(const OperatorTuple& t, const Eigen::VectorXd& v,
                             const CoeffMap& coeffs, double tol) {
    check_tuple_shape(t, "taylor_calculus");
    if (v.size() != t.d) {
        throw dimension_error("taylor_calculus: vector length does not match the operators");
    }
    const ModuleVector mv(t.n, v);
    int top = 0;
    for (const auto& [m, c] : coeffs) {
        check_index(m, t.n, "taylor_calculus");
        if (c.generators() != t.n) {
            throw dimension_error("taylor_calculus: coefficient over the wrong algebra");
        }
        top = std::max(top, multi_degree(m));
    }
    ModuleVector sum(t.n, t.d);
    std::vector<double> increment(top + 1, 0.0);
    for (int degree = 0; degree <= top; ++degree) {
        ModuleVector shell(t.n, t.d);
        for (const auto& [m, c] : coeffs) {
            if (multi_degree(m) != degree) continue;
            shell += (symmetric_product(t, m) * mv) * c;
        }
        increment[degree] = shell.norm();
        sum += shell;
    }
    if (top >= 6 && increment[top] > tol * std::max(1.0, sum.norm()) &&
        increment[top] >= increment[top - 1] && increment[top - 1] >= increment[top - 2]) {
        const SpectralRadii radii = spectral_radii(t, v, std::min(top, kSymmetricProductCap));
        throw domain_error("taylor_calculus: partial sums fail the convergence check; "
                           "local radius estimate " + std::to_string(radii.local_radius));
    }
    return sum;
}

CoeffTransform rho_Av_apply(const MoebElement& g, const OperatorTuple& t, const Eigen::VectorXd& v,
                            const CoeffMap& coeffs, int max_order, const QuadratureRule& quad) {
    check_tuple_shape(t, "rho_Av_apply");
    if (g.generators() != t.n) {
        throw dimension_error("rho_Av_apply: group element and tuple of different dimensions");
    }
    if (v.size() != t.d) {
        throw dimension_error("rho_Av_apply: vector length does not match the operators");
    }
    for (const auto& [k, c] : coeffs) {
        check_index(k, t.n, "rho_Av_apply");
        if (c.generators() != t.n) {
            throw dimension_error("rho_Av_apply: coefficient over the wrong algebra");
        }
    }
    const std::vector<MultiIndex> targets = basis_indices(t.n, max_order);
    const ModuleVector mv(t.n, v);
    CoeffTransform out;
    out.tail = 0.0;
    for (const auto& m : targets) {
        Multivector dm(t.n);
        for (const auto& [k, c] : coeffs) {
            dm += token_coeff(k, m, g, quad) * c;
        }
        out.coeffs.emplace(m, dm);
        if (multi_degree(m) == max_order) {
            out.tail += dm.norm() * (symmetric_product(t, m) * mv).norm();
        }
    }
    return out;
}

ModuleVector coherent_operator_state(const MoebElement& g, const OperatorTuple& t,
                                     const Eigen::VectorXd& v, int max_order,
                                     const QuadratureRule& quad) {
    check_tuple_shape(t, "coherent_operator_state");
    if (g.generators() != t.n) {
        throw dimension_error("coherent_operator_state: group element and tuple of different "
                              "dimensions");
    }
    if (v.size() != t.d) {
        throw dimension_error("coherent_operator_state: vector length does not match the operators");
    }
    const ModuleVector mv(t.n, v);
    const MultiIndex zero = zero_index(t.n);
    ModuleVector out(t.n, t.d);
    for (const auto& m : basis_indices(t.n, max_order)) {
        out += (symmetric_product(t, m) * mv) * token_coeff(zero, m, g, quad);
    }
    return out;
}

ModuleVector taylor_from_integral(const OperatorTuple& t, const Eigen::VectorXd& v,
                                  const SphereFunction& f, int max_order,
                                  const QuadratureRule& boundary) {
    check_tuple_shape(t, "taylor_from_integral");
    if (t.n != 2) {
        throw dimension_error("taylor_from_integral: the group average is planar (n = 2)");
    }
    if (f.n != 2) {
        throw dimension_error("taylor_from_integral: function dimension must be 2");
    }
    if (v.size() != t.d) {
        throw dimension_error("taylor_from_integral: vector length does not match the operators");
    }
    const std::array<double, 3> radii = {0.80, 0.90, 0.95};
    std::array<double, 3> shifts{};
    for (std::size_t i = 0; i < radii.size(); ++i) shifts[i] = 1.0 - radii[i] * radii[i];
    const QuadratureRule slice = circle_rule(32);
    const SpinRule rotors = spin_circle_rule(4);

    ModuleVector out(t.n, t.d);
    for (int coord = 0; coord < t.d; ++coord) {
        const GroupFunction integrand = [&](const MoebElement& g) {
            const ModuleVector state = coherent_operator_state(g, t, v, max_order, boundary);
            const ModuleVector weighted = state * wavelet_transform(f, g, boundary);
            Multivector slot(t.n);
            for (unsigned mask = 0; mask < static_cast<unsigned>(weighted.size()); ++mask) {
                slot[mask] = weighted[mask](coord);
            }
            return slot;
        };
        std::array<Multivector, 3> slices = {Multivector(t.n), Multivector(t.n), Multivector(t.n)};
        for (std::size_t i = 0; i < radii.size(); ++i) {
            slices[i] = hardy_functional(integrand, radii[i], slice, rotors);
        }
        for (unsigned mask = 0; mask < static_cast<unsigned>(out.size()); ++mask) {
            out[mask](coord) = extrapolate3(
                shifts, {slices[0][mask], slices[1][mask], slices[2][mask]});
        }
    }
    return out;
}

} // namespace cliffspec
