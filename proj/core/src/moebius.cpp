#include "cliffspec/moebius.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "cliffspec/parallel.hpp"
#include "group_inverse.hpp"

namespace cliffspec {

namespace {

using detail::group_inverse;

double euclid_norm2(const std::vector<double>& x) {
    double s = 0.0;
    for (double c : x) s += c * c;
    return s;
}

bool has_modulus(const Multivector& t, double tol) {
    try {
        (void)modulus(t, tol);
        return true;
    } catch (const domain_error&) {
        return false;
    }
}

void check_same_matrix_algebra(const CliffMat2& x, const CliffMat2& y, const char* op) {
    if (x.generators() != y.generators()) {
        throw dimension_error(std::string(op) + ": matrices over different algebras");
    }
}

CliffMat2 scaled(CliffMat2 mat, double factor) {
    mat.a *= factor;
    mat.b *= factor;
    mat.c *= factor;
    mat.d *= factor;
    return mat;
}

} // namespace

CliffMat2::CliffMat2(Multivector a_, Multivector b_, Multivector c_, Multivector d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    if (b.generators() != a.generators() || c.generators() != a.generators() ||
        d.generators() != a.generators()) {
        throw dimension_error("CliffMat2: entries over different algebras");
    }
}

CliffMat2 CliffMat2::identity(int n) {
    CliffMat2 mat(n);
    mat.a[0] = 1.0;
    mat.d[0] = 1.0;
    return mat;
}

CliffMat2 mat2_mul(const CliffMat2& lhs, const CliffMat2& rhs) {
    check_same_matrix_algebra(lhs, rhs, "mat2_mul");
    CliffMat2 out(lhs.generators());
    out.a = lhs.a * rhs.a + lhs.b * rhs.c;
    out.b = lhs.a * rhs.b + lhs.b * rhs.d;
    out.c = lhs.c * rhs.a + lhs.d * rhs.c;
    out.d = lhs.c * rhs.b + lhs.d * rhs.d;
    return out;
}

CliffMat2 operator*(const CliffMat2& lhs, const CliffMat2& rhs) { return mat2_mul(lhs, rhs); }

double mat2_distance(const CliffMat2& lhs, const CliffMat2& rhs) {
    check_same_matrix_algebra(lhs, rhs, "mat2_distance");
    double dist = 0.0;
    const Multivector* xs[4] = {&lhs.a, &lhs.b, &lhs.c, &lhs.d};
    const Multivector* ys[4] = {&rhs.a, &rhs.b, &rhs.c, &rhs.d};
    for (int k = 0; k < 4; ++k) {
        for (unsigned mask = 0; mask < unsigned(xs[k]->size()); ++mask) {
            dist = std::max(dist, std::abs((*xs[k])[mask] - (*ys[k])[mask]));
        }
    }
    return dist;
}

bool is_group_matrix(const CliffMat2& mat, double tol) {
    double maxnorm = 1.0;
    const Multivector* entries[4] = {&mat.a, &mat.b, &mat.c, &mat.d};
    for (const Multivector* e : entries) maxnorm = std::max(maxnorm, e->norm());
    const double scale = maxnorm * maxnorm;
    const double gate = tol * scale;

    for (const Multivector* e : entries) {
        if (!has_modulus(*e, gate)) return false;
    }
    if (!is_vector(reversion(mat.a) * mat.b, gate)) return false;
    if (!is_vector(reversion(mat.c) * mat.d, gate)) return false;
    if (!is_vector(mat.a * reversion(mat.c), gate)) return false;
    if (!is_vector(mat.b * reversion(mat.d), gate)) return false;

    Multivector det = mat.a * reversion(mat.d) - mat.b * reversion(mat.c);
    const double det0 = det.scalar_part();
    det[0] = 0.0;
    return det.norm() <= gate && std::abs(det0) > gate;
}

MoebPoint moebius_apply(const CliffMat2& mat, const MoebPoint& x, double tol) {
    if (mat.generators() != x.generators()) {
        throw dimension_error("moebius_apply: point and matrix over different algebras");
    }
    if (!is_group_matrix(mat, std::max(tol, 1e-9) * 100.0)) {
        throw domain_error("moebius_apply: matrix fails the group-membership check");
    }

    Multivector y(mat.generators());
    if (x.infinite) {
        if (mat.c.norm() <= tol) return MoebPoint::at_infinity(mat.generators());
        y = mat.a * group_inverse(mat.c, tol);
    } else {
        if (!is_vector(x.x, std::max(tol, 1e-9) * std::max(1.0, x.x.norm()))) {
            throw domain_error("moebius_apply: point is not a vector");
        }
        const Multivector den = mat.c * x.x + mat.d;
        try {
            y = (mat.a * x.x + mat.b) * group_inverse(den, tol);
        } catch (const singular_error&) {
            return MoebPoint::at_infinity(mat.generators());
        }
    }
    if (!is_vector(y, std::max(tol, 1e-8) * std::max(1.0, y.norm()))) {
        throw domain_error("moebius_apply: image is not a vector");
    }
    return MoebPoint::finite(y.grade_part(1));
}

MoebElement moeb_identity(int n) {
    return MoebElement{std::vector<double>(std::size_t(n), 0.0), Multivector(n, 1.0)};
}

MoebElement make_moeb(std::vector<double> u, Multivector w, double tol) {
    if (int(u.size()) != w.generators()) {
        throw dimension_error("make_moeb: u has " + std::to_string(u.size()) +
                              " coordinates but w lives in the n=" +
                              std::to_string(w.generators()) + " algebra");
    }
    if (euclid_norm2(u) >= 1.0) {
        throw domain_error("make_moeb: u must lie in the open unit ball");
    }
    if (!in_pin(w, std::max(tol, 1e-8))) {
        throw domain_error("make_moeb: w is not a unit Pin element");
    }
    return MoebElement{std::move(u), std::move(w)};
}

CliffMat2 from_uw(const MoebElement& g) {
    const int n = g.generators();
    const double s = std::sqrt(1.0 - euclid_norm2(g.u));
    const Multivector u = vector_embed(g.u);
    const Multivector wg = grade_involution(g.w);
    CliffMat2 mat(n);
    mat.a = g.w / s;
    mat.b = (g.w * u) / -s;
    mat.c = (wg * u) / s;
    mat.d = wg / s;
    return mat;
}

MoebElement to_uw(const CliffMat2& mat, double tol) {
    double norm_a = 0.0;
    try {
        norm_a = modulus(mat.a, std::max(tol, 1e-8));
    } catch (const domain_error&) {
        throw domain_error("to_uw: upper-left entry has no modulus");
    }
    if (norm_a <= tol) {
        throw domain_error("to_uw: upper-left entry is not invertible");
    }

    const Multivector w = mat.a / norm_a;
    const Multivector u_mv = (reversion(mat.a) * mat.c) / (norm_a * norm_a);
    if (!is_vector(u_mv, std::max(tol, 1e-9) * std::max(1.0, u_mv.norm()))) {
        throw domain_error("to_uw: recovered u is not a vector");
    }
    std::vector<double> u = vector_part(u_mv);
    if (euclid_norm2(u) >= 1.0) {
        throw domain_error("to_uw: recovered u lies outside the unit ball");
    }
    if (!in_pin(w, std::max(tol, 1e-8))) {
        throw domain_error("to_uw: recovered w is not a unit Pin element");
    }

    MoebElement g{std::move(u), w};
    // the input must be a positive multiple of the group matrix of (u, w)
    const double lambda = norm_a * std::sqrt(1.0 - euclid_norm2(g.u));
    const CliffMat2 expect = scaled(from_uw(g), lambda);
    const double mat_scale = std::max(1.0, std::max(norm_a, lambda));
    if (mat2_distance(expect, mat) > std::max(tol, 1e-9) * 100.0 * mat_scale) {
        throw domain_error("to_uw: matrix does not have the ball-group shape");
    }
    return g;
}

CliffMat2 moeb_mat_inverse(const CliffMat2& mat) {
    // closed form for normalized ball-group matrices, whose left column
    // determines the rest
    CliffMat2 inv(mat.generators());
    inv.a = conjugation(mat.a);
    inv.b = -conjugation(mat.c);
    inv.c = -reversion(mat.c);
    inv.d = reversion(mat.a);
    return inv;
}

Multivector moebius_apply(const MoebElement& g, const Multivector& x, double tol) {
    const MoebPoint image = moebius_apply(from_uw(g), MoebPoint::finite(x), tol);
    if (image.infinite) {
        throw domain_error("moebius_apply: point maps to infinity");
    }
    return image.x;
}

MoebElement moeb_compose(const MoebElement& g1, const MoebElement& g2, double tol) {
    if (g1.generators() != g2.generators()) {
        throw dimension_error("moeb_compose: elements of different groups");
    }
    return to_uw(from_uw(g1) * from_uw(g2), tol);
}

MoebElement moeb_inverse(const MoebElement& g, double tol) {
    return to_uw(moeb_mat_inverse(from_uw(g)), tol);
}

CliffMat2 sphere_to_matrix(const SphereCoord& s) {
    const int n = static_cast<int>(s.center.size());
    const Multivector m = vector_embed(s.center);
    CliffMat2 mat(n);
    mat.a = m;
    mat.b = Multivector(n, euclid_norm2(s.center) - s.radius2);
    mat.c = Multivector(n, 1.0);
    mat.d = -m;
    return mat;
}

SphereCoord matrix_to_sphere(const CliffMat2& mat, double tol) {
    double scale = 1.0;
    const Multivector* entries[4] = {&mat.a, &mat.b, &mat.c, &mat.d};
    for (const Multivector* e : entries) scale = std::max(scale, e->norm());
    const double gate = std::max(tol, 1e-9) * 100.0 * scale;

    const double lambda = mat.c.scalar_part();
    Multivector c_rest = mat.c;
    c_rest[0] = 0.0;
    if (c_rest.norm() > gate || std::abs(lambda) <= gate) {
        throw domain_error("matrix_to_sphere: lower-left entry is not a nonzero scalar");
    }

    const Multivector center_mv = mat.a / lambda;
    const Multivector offset = mat.b / lambda;
    if (!is_vector(center_mv, gate / std::abs(lambda))) {
        throw domain_error("matrix_to_sphere: center entry is not a vector");
    }
    Multivector offset_rest = offset;
    offset_rest[0] = 0.0;
    if (offset_rest.norm() > gate / std::abs(lambda)) {
        throw domain_error("matrix_to_sphere: upper-right entry is not a scalar");
    }
    if ((mat.d / lambda + center_mv).norm() > gate / std::abs(lambda)) {
        throw domain_error("matrix_to_sphere: lower-right entry does not mirror the center");
    }

    SphereCoord s;
    s.center = vector_part(center_mv);
    s.radius2 = euclid_norm2(s.center) - offset.scalar_part();
    return s;
}

SphereCoord projective_action(const MoebElement& g, const SphereCoord& s, double tol) {
    if (g.generators() != int(s.center.size())) {
        throw dimension_error("projective_action: sphere and group of different dimensions");
    }
    const CliffMat2 mat = from_uw(g);
    CliffMat2 conj_adj(g.generators());
    conj_adj.a = conjugation(mat.d);
    conj_adj.b = conjugation(mat.b);
    conj_adj.c = conjugation(mat.c);
    conj_adj.d = conjugation(mat.a);
    const CliffMat2 image = mat * sphere_to_matrix(s) * conj_adj;
    try {
        return matrix_to_sphere(image, tol);
    } catch (const domain_error& e) {
        throw degeneracy_error(std::string("projective_action: image left the sphere rays (") +
                               e.what() + ")");
    }
}

double haar_density(const MoebElement& g) {
    const double r2 = euclid_norm2(g.u);
    if (r2 >= 1.0) throw domain_error("haar_density: u lies outside the unit ball");
    return std::pow(1.0 - r2, -g.generators());
}

Multivector hardy_functional(const GroupFunction& f, double r, const QuadratureRule& sphere,
                             const SpinRule& rotors) {
    if (sphere.n != rotors.n) {
        throw dimension_error("hardy_functional: sphere and rotor rules of different dimension");
    }
    if (!(r > 0.0 && r < 1.0)) {
        throw domain_error("hardy_functional: radius must lie in (0, 1)");
    }
    const int n = sphere.n;
    const std::size_t nrot = rotors.points.size();
    std::vector<Multivector> rows(sphere.size(), Multivector(n));
    parallel_for(sphere.size(), [&](std::size_t i) {
        MoebElement g{sphere.points[i], Multivector(n)};
        for (double& coord : g.u) coord *= r;
        std::vector<Multivector> terms(nrot, Multivector(n));
        for (std::size_t j = 0; j < nrot; ++j) {
            g.w = rotors.points[j];
            terms[j] = f(g) * (sphere.weights[i] * rotors.weights[j]);
        }
        rows[i] = pairwise_reduce(std::move(terms));
    });
    const double normalizer = std::pow(1.0 - r * r, n - 1);
    return pairwise_reduce(std::move(rows)) / normalizer;
}

HardyResult hardy_limit(const GroupFunction& f, int n) {
    const double r1 = 0.9, r2 = 0.99;
    const QuadratureRule sphere_base = sphere_rule(n, 0);
    const QuadratureRule sphere_fine = sphere_rule(n, 1);
    const SpinRule rotor_base = rotor_rule(n, 0);
    const SpinRule rotor_fine = rotor_rule(n, 1);

    const Multivector h1 = hardy_functional(f, r1, sphere_fine, rotor_fine);
    const Multivector h2 = hardy_functional(f, r2, sphere_fine, rotor_fine);
    const Multivector h2_base = hardy_functional(f, r2, sphere_base, rotor_base);

    const double rho1 = 1.0 - r1 * r1;
    const double rho2 = 1.0 - r2 * r2;
    return HardyResult{(h2 * rho1 - h1 * rho2) / (rho1 - rho2), (h2 - h2_base).norm()};
}

} // namespace cliffspec
