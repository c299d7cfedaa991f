#include "cliffspec/operator_algebra.hpp"

#include <cmath>
#include <string>
#include <utility>

#include <Eigen/SVD>

#include "cliffspec/errors.hpp"

namespace cliffspec {

namespace {

void check_shape(int n, int d, const char* op) {
    if (n < 1 || n > kMaxGenerators) {
        throw dimension_error(std::string(op) + ": generator count " + std::to_string(n) +
                              " outside 1.." + std::to_string(kMaxGenerators));
    }
    if (d < 1) {
        throw dimension_error(std::string(op) + ": matrix dimension must be positive");
    }
}

void check_same_shape(int nx, int dx, int ny, int dy, const char* op) {
    if (nx != ny || dx != dy) {
        throw dimension_error(std::string(op) + ": operands of different shapes");
    }
}

CliffOperator scalar_slot(int n, const Eigen::MatrixXd& m) {
    CliffOperator out(n, static_cast<int>(m.rows()));
    out[0] = m;
    return out;
}

/// Letters a, b of the group matrix in the convention used throughout:
/// the pair is read off the first column of the Vahlen representative.
std::pair<Multivector, Multivector> group_letters(const MoebElement& g) {
    CliffMat2 mat = from_uw(g);
    return {mat.a, mat.c};
}

void check_commuting(const OperatorTuple& t, double tol, const char* op) {
    for (std::size_t i = 0; i < t.ops.size(); ++i) {
        for (std::size_t j = i + 1; j < t.ops.size(); ++j) {
            const double scale = std::max(1.0, t.ops[i].norm() * t.ops[j].norm());
            const double comm = (t.ops[i] * t.ops[j] - t.ops[j] * t.ops[i]).norm();
            if (comm > tol * scale) {
                throw domain_error(std::string(op) + ": operators " + std::to_string(i + 1) +
                                   " and " + std::to_string(j + 1) + " do not commute");
            }
        }
    }
}

/// Reads the component tuple back out of a vector operator.
OperatorTuple vector_components(const CliffOperator& x, double tol, const char* op) {
    OperatorTuple t;
    t.n = x.generators();
    t.d = x.dim();
    double off = 0.0;
    double scale = 1.0;
    for (unsigned mask = 0; mask < static_cast<unsigned>(x.size()); ++mask) {
        const bool grade_one = mask != 0 && (mask & (mask - 1)) == 0;
        if (grade_one) {
            scale = std::max(scale, x[mask].norm());
        } else {
            off = std::max(off, x[mask].norm());
        }
    }
    if (off > tol * std::max(1.0, scale)) {
        throw domain_error(std::string(op) + ": operator is not a vector operator");
    }
    for (int j = 1; j <= t.n; ++j) {
        t.ops.push_back(x[1u << (j - 1)]);
    }
    return t;
}

Eigen::MatrixXd matrix_int_power(Eigen::MatrixXd base, int p, const char* op) {
    const auto d = base.rows();
    if (p < 0) {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(base);
        if (!lu.isInvertible()) {
            throw singular_error(std::string(op) + ": modulus matrix is singular");
        }
        base = lu.inverse();
        p = -p;
    }
    Eigen::MatrixXd out = Eigen::MatrixXd::Identity(d, d);
    for (int k = 0; k < p; ++k) out = out * base;
    return out;
}

} // namespace

OperatorTuple make_operator_tuple(std::vector<Eigen::MatrixXd> ops, double tol) {
    if (ops.empty()) {
        throw dimension_error("make_operator_tuple: tuple needs at least one operator");
    }
    const auto d = ops.front().rows();
    for (std::size_t j = 0; j < ops.size(); ++j) {
        if (ops[j].rows() != ops[j].cols()) {
            throw dimension_error("make_operator_tuple: operator " + std::to_string(j + 1) +
                                  " is not square");
        }
        if (ops[j].rows() != d) {
            throw dimension_error("make_operator_tuple: operators of different sizes");
        }
        const double skew = (ops[j] - ops[j].transpose()).norm();
        if (skew > tol * std::max(1.0, ops[j].norm())) {
            throw domain_error("make_operator_tuple: operator " + std::to_string(j + 1) +
                               " is not symmetric");
        }
    }
    OperatorTuple t;
    t.n = static_cast<int>(ops.size());
    t.d = static_cast<int>(d);
    t.ops = std::move(ops);
    check_shape(t.n, t.d, "make_operator_tuple");
    return t;
}

CliffOperator::CliffOperator(int n, int d) : n_(n), d_(d) {
    check_shape(n, d, "CliffOperator");
    coeff_.assign(std::size_t(1) << n, Eigen::MatrixXd::Zero(d, d));
}

CliffOperator CliffOperator::identity(int n, int d) {
    CliffOperator out(n, d);
    out.coeff_[0] = Eigen::MatrixXd::Identity(d, d);
    return out;
}

CliffOperator CliffOperator::constant(int d, const Multivector& c) {
    CliffOperator out(c.generators(), d);
    for (unsigned mask = 0; mask < static_cast<unsigned>(c.size()); ++mask) {
        if (c[mask] != 0.0) {
            out.coeff_[mask] = c[mask] * Eigen::MatrixXd::Identity(d, d);
        }
    }
    return out;
}

double CliffOperator::frobenius() const {
    double s = 0.0;
    for (const auto& m : coeff_) s += m.squaredNorm();
    return std::sqrt(s);
}

bool CliffOperator::is_zero(double tol) const {
    for (const auto& m : coeff_) {
        if (m.norm() > tol) return false;
    }
    return true;
}

CliffOperator CliffOperator::operator-() const {
    CliffOperator out = *this;
    for (auto& m : out.coeff_) m = -m;
    return out;
}

CliffOperator& CliffOperator::operator+=(const CliffOperator& rhs) {
    check_same_shape(n_, d_, rhs.n_, rhs.d_, "CliffOperator::operator+=");
    for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += rhs.coeff_[i];
    return *this;
}

CliffOperator& CliffOperator::operator-=(const CliffOperator& rhs) {
    check_same_shape(n_, d_, rhs.n_, rhs.d_, "CliffOperator::operator-=");
    for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] -= rhs.coeff_[i];
    return *this;
}

CliffOperator& CliffOperator::operator*=(double s) {
    for (auto& m : coeff_) m *= s;
    return *this;
}

CliffOperator operator+(CliffOperator x, const CliffOperator& y) { return x += y; }
CliffOperator operator-(CliffOperator x, const CliffOperator& y) { return x -= y; }
CliffOperator operator*(CliffOperator x, double s) { return x *= s; }
CliffOperator operator*(double s, CliffOperator x) { return x *= s; }

CliffOperator op_mul(const CliffOperator& x, const CliffOperator& y) {
    check_same_shape(x.generators(), x.dim(), y.generators(), y.dim(), "op_mul");
    const auto& signs = BladeSignTable::get(x.generators());
    CliffOperator out(x.generators(), x.dim());
    for (unsigned p = 0; p < static_cast<unsigned>(x.size()); ++p) {
        if (x[p].isZero(0.0)) continue;
        for (unsigned q = 0; q < static_cast<unsigned>(y.size()); ++q) {
            if (y[q].isZero(0.0)) continue;
            const unsigned r = BladeSignTable::product_mask(p, q);
            out[r] += signs.sign(p, q) * (x[p] * y[q]);
        }
    }
    return out;
}

CliffOperator operator*(const CliffOperator& x, const CliffOperator& y) { return op_mul(x, y); }

ModuleVector::ModuleVector(int n, int d) : n_(n), d_(d) {
    check_shape(n, d, "ModuleVector");
    coeff_.assign(std::size_t(1) << n, Eigen::VectorXd::Zero(d));
}

ModuleVector::ModuleVector(int n, const Eigen::VectorXd& v)
    : ModuleVector(n, static_cast<int>(v.size())) {
    coeff_[0] = v;
}

double ModuleVector::norm() const {
    double s = 0.0;
    for (const auto& v : coeff_) s += v.squaredNorm();
    return std::sqrt(s);
}

ModuleVector ModuleVector::operator-() const {
    ModuleVector out = *this;
    for (auto& v : out.coeff_) v = -v;
    return out;
}

ModuleVector& ModuleVector::operator+=(const ModuleVector& rhs) {
    check_same_shape(n_, d_, rhs.n_, rhs.d_, "ModuleVector::operator+=");
    for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += rhs.coeff_[i];
    return *this;
}

ModuleVector& ModuleVector::operator-=(const ModuleVector& rhs) {
    check_same_shape(n_, d_, rhs.n_, rhs.d_, "ModuleVector::operator-=");
    for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] -= rhs.coeff_[i];
    return *this;
}

ModuleVector& ModuleVector::operator*=(double s) {
    for (auto& v : coeff_) v *= s;
    return *this;
}

ModuleVector operator+(ModuleVector x, const ModuleVector& y) { return x += y; }
ModuleVector operator-(ModuleVector x, const ModuleVector& y) { return x -= y; }
ModuleVector operator*(ModuleVector x, double s) { return x *= s; }

ModuleVector operator*(const CliffOperator& x, const ModuleVector& v) {
    check_same_shape(x.generators(), x.dim(), v.generators(), v.dim(), "operator*(op, module)");
    const auto& signs = BladeSignTable::get(x.generators());
    ModuleVector out(x.generators(), x.dim());
    for (unsigned p = 0; p < static_cast<unsigned>(x.size()); ++p) {
        if (x[p].isZero(0.0)) continue;
        for (unsigned q = 0; q < static_cast<unsigned>(v.size()); ++q) {
            const unsigned r = BladeSignTable::product_mask(p, q);
            out[r] += signs.sign(p, q) * (x[p] * v[q]);
        }
    }
    return out;
}

ModuleVector operator*(const ModuleVector& v, const Multivector& c) {
    if (v.generators() != c.generators()) {
        throw dimension_error("operator*(module, constant): different algebras");
    }
    const auto& signs = BladeSignTable::get(v.generators());
    ModuleVector out(v.generators(), v.dim());
    for (unsigned q = 0; q < static_cast<unsigned>(v.size()); ++q) {
        for (unsigned r = 0; r < static_cast<unsigned>(c.size()); ++r) {
            if (c[r] == 0.0) continue;
            out[BladeSignTable::product_mask(q, r)] += signs.sign(q, r) * c[r] * v[q];
        }
    }
    return out;
}

CliffOperator embed(const OperatorTuple& t) {
    check_shape(t.n, t.d, "embed");
    if (static_cast<int>(t.ops.size()) != t.n) {
        throw dimension_error("embed: tuple holds " + std::to_string(t.ops.size()) +
                              " operators for " + std::to_string(t.n) + " slots");
    }
    CliffOperator out(t.n, t.d);
    for (int j = 1; j <= t.n; ++j) {
        if (t.ops[j - 1].rows() != t.d || t.ops[j - 1].cols() != t.d) {
            throw dimension_error("embed: operator " + std::to_string(j) + " has the wrong size");
        }
        out[1u << (j - 1)] = t.ops[j - 1];
    }
    return out;
}

Eigen::MatrixXd regular_matrix(const CliffOperator& x) {
    const int d = x.dim();
    const int blades = x.size();
    const auto& signs = BladeSignTable::get(x.generators());
    Eigen::MatrixXd reg = Eigen::MatrixXd::Zero(std::ptrdiff_t(blades) * d, std::ptrdiff_t(blades) * d);
    for (unsigned source = 0; source < static_cast<unsigned>(blades); ++source) {
        for (unsigned holder = 0; holder < static_cast<unsigned>(blades); ++holder) {
            const unsigned target = BladeSignTable::product_mask(holder, source);
            reg.block(std::ptrdiff_t(target) * d, std::ptrdiff_t(source) * d, d, d) =
                signs.sign(holder, source) * x[holder];
        }
    }
    return reg;
}

double op_norm(const CliffOperator& x) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(regular_matrix(x));
    return svd.singularValues()(0);
}

CliffOperator op_inverse(const CliffOperator& x, double cond_limit) {
    const int d = x.dim();
    const int blades = x.size();
    Eigen::MatrixXd reg = regular_matrix(x);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(reg, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sigma = svd.singularValues();
    const double smax = sigma(0);
    const double smin = sigma(sigma.size() - 1);
    if (smin <= 0.0 || smax / smin > cond_limit) {
        throw singular_error("op_inverse: regular representation is singular or worse conditioned than " +
                             std::to_string(cond_limit));
    }
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(std::ptrdiff_t(blades) * d, d);
    rhs.topRows(d) = Eigen::MatrixXd::Identity(d, d);
    Eigen::MatrixXd stacked = svd.solve(rhs);
    CliffOperator inv(x.generators(), d);
    for (unsigned mask = 0; mask < static_cast<unsigned>(blades); ++mask) {
        inv[mask] = stacked.middleRows(std::ptrdiff_t(mask) * d, d);
    }
    CliffOperator check = op_mul(x, inv);
    check[0] -= Eigen::MatrixXd::Identity(d, d);
    const double residual = check.frobenius();
    if (residual > std::max(1e-9, 1e-13 * (smax / smin)) * std::max(1.0, x.frobenius())) {
        throw singular_error("op_inverse: product check failed with residual " +
                             std::to_string(residual));
    }
    return inv;
}

bool resolvent_membership(const CliffOperator& a, const std::vector<double>& u,
                          double cond_limit) {
    if (static_cast<int>(u.size()) != a.generators()) {
        throw dimension_error("resolvent_membership: point and operator of different dimensions");
    }
    CliffOperator shifted = a;
    for (std::size_t j = 0; j < u.size(); ++j) {
        shifted[1u << j] -= u[j] * Eigen::MatrixXd::Identity(a.dim(), a.dim());
    }
    try {
        (void)op_inverse(shifted, cond_limit);
        return true;
    } catch (const singular_error&) {
        return false;
    }
}

std::vector<GridSample> clifford_spectrum_grid(const CliffOperator& a, int side, double radius,
                                               double cond_limit) {
    if (a.generators() != 2) {
        throw dimension_error("clifford_spectrum_grid: grid sampling is planar (2 generators)");
    }
    if (side < 1) {
        throw domain_error("clifford_spectrum_grid: grid needs at least one point per axis");
    }
    if (radius <= 0.0) {
        throw domain_error("clifford_spectrum_grid: radius must be positive");
    }
    std::vector<GridSample> out;
    out.reserve(std::size_t(side) * side);
    for (int i = 0; i < side; ++i) {
        const double u1 = side == 1 ? 0.0 : -radius + 2.0 * radius * i / (side - 1);
        for (int j = 0; j < side; ++j) {
            const double u2 = side == 1 ? 0.0 : -radius + 2.0 * radius * j / (side - 1);
            GridSample s;
            s.u1 = u1;
            s.u2 = u2;
            s.member = resolvent_membership(a, {u1, u2}, cond_limit);
            out.push_back(s);
        }
    }
    return out;
}

CliffOperator moebius_on_operator(const MoebElement& g, const CliffOperator& a,
                                  double cond_limit) {
    if (g.generators() != a.generators()) {
        throw dimension_error("moebius_on_operator: group element and operator of different dimensions");
    }
    const auto [la, lb] = group_letters(g);
    const int d = a.dim();
    CliffOperator numer = CliffOperator::constant(d, conjugation(la)) * a -
                          CliffOperator::constant(d, conjugation(lb));
    CliffOperator denom = CliffOperator::constant(d, reversion(la)) -
                          CliffOperator::constant(d, reversion(lb)) * a;
    try {
        return numer * op_inverse(denom, cond_limit);
    } catch (const singular_error&) {
        throw domain_error("moebius_on_operator: the pole of g lies outside the resolvent set "
                           "(rev(a) I - rev(b) A is singular)");
    }
}

CliffOperator resolvent(const MoebElement& g, const CliffOperator& a, double cond_limit) {
    if (g.generators() != a.generators()) {
        throw dimension_error("resolvent: group element and operator of different dimensions");
    }
    const auto [la, lb] = group_letters(g);
    const int d = a.dim();
    CliffOperator denom = CliffOperator::constant(d, reversion(la)) -
                          CliffOperator::constant(d, reversion(lb)) * a;
    return op_inverse(denom, cond_limit);
}

double lemma318_residual(const MoebElement& g, const CliffOperator& a,
                         const std::vector<double>& x, double cond_limit) {
    if (static_cast<int>(x.size()) != a.generators()) {
        throw dimension_error("lemma318_residual: point and operator of different dimensions");
    }
    const CliffMat2 mat = from_uw(g);
    const auto [la, lb] = group_letters(g);
    const int d = a.dim();
    const Multivector xv = vector_embed(x);

    const MoebPoint image = moebius_apply(moeb_mat_inverse(mat), MoebPoint::finite(xv));
    if (image.infinite) {
        throw domain_error("lemma318_residual: the point x maps to infinity under g");
    }
    CliffOperator lhs = moebius_on_operator(g, a, cond_limit) -
                        CliffOperator::constant(d, image.x);

    Multivector scalar_factor(a.generators());
    try {
        scalar_factor = mv_inverse(la - xv * lb);
    } catch (const singular_error&) {
        throw singular_error("lemma318_residual: the scalar factor a - x b is not invertible");
    }
    CliffOperator middle = a - CliffOperator::constant(d, xv);
    CliffOperator right;
    try {
        right = op_inverse(CliffOperator::constant(d, reversion(la)) -
                               CliffOperator::constant(d, reversion(lb)) * a,
                           cond_limit);
    } catch (const singular_error&) {
        throw singular_error("lemma318_residual: the operator factor rev(a) I - rev(b) A "
                             "is not invertible");
    }
    CliffOperator rhs = CliffOperator::constant(d, scalar_factor) * middle * right;
    return op_norm(lhs - rhs);
}

Eigen::MatrixXd modulus_power(const MoebElement& g, const OperatorTuple& t, int exponent,
                              double tol) {
    check_shape(t.n, t.d, "modulus_power");
    if (exponent % 2 != 0) {
        throw domain_error("modulus_power: odd exponents would need a square root; "
                           "only even powers are supported");
    }
    check_commuting(t, tol, "modulus_power");
    const auto [la, lb] = group_letters(g);
    const double a2 = modulus(la) * modulus(la);
    const double b2 = modulus(lb) * modulus(lb);
    Eigen::MatrixXd sum_sq = Eigen::MatrixXd::Zero(t.d, t.d);
    for (const auto& op : t.ops) sum_sq += op * op;
    Eigen::MatrixXd base = a2 * Eigen::MatrixXd::Identity(t.d, t.d) - b2 * sum_sq;
    return matrix_int_power(std::move(base), exponent / 2, "modulus_power");
}

OrbitFunction rho_commuting(const MoebElement& g, const OperatorTuple& t, const OrbitFunction& f,
                            double tol) {
    check_shape(t.n, t.d, "rho_commuting");
    if (t.n != 2 && t.n % 2 != 0) {
        throw domain_error("rho_commuting: the modulus factor needs an even number of generators");
    }
    check_commuting(t, tol, "rho_commuting");
    const int n = t.n;
    return [g, f, tol, n](const CliffOperator& point) {
        if (point.generators() != n) {
            throw dimension_error("rho_commuting: orbit point of unexpected dimension");
        }
        CliffOperator out = resolvent(g, point);
        if (n != 2) {
            const OperatorTuple comps = vector_components(point, tol, "rho_commuting");
            out = out * scalar_slot(n, modulus_power(g, comps, 2 - n, tol));
        }
        return out * f(moebius_on_operator(g, point));
    };
}

} // namespace cliffspec
