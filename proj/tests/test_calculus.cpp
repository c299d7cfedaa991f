// Tests for the operator layer: matrix tuples embedded into the algebra of
// matrix-coefficient multivectors, inversion through the regular
// representation, the Clifford resolvent set, the Moebius action on
// operators with its cocycle, symmetrized products, spectral radius
// estimates, the Taylor-side calculus, and the reproducing integral.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <vector>

#include "cliffspec/calculus.hpp"
#include "cliffspec/complex_disk.hpp"
#include "cliffspec/errors.hpp"
#include "cliffspec/operator_algebra.hpp"

using namespace cliffspec;
using complexd = std::complex<double>;

namespace {

std::vector<double> random_ball(int n, std::mt19937& rng, double rmax) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    while (true) {
        std::vector<double> u(static_cast<std::size_t>(n));
        double norm2 = 0.0;
        for (double& c : u) {
            c = rmax * unif(rng);
            norm2 += c * c;
        }
        if (norm2 < rmax * rmax) return u;
    }
}

Multivector random_pin(int n, int factors, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Multivector w(n, 1.0);
    for (int f = 0; f < factors; ++f) {
        std::vector<double> x(static_cast<std::size_t>(n));
        double norm2 = 0.0;
        for (double& c : x) {
            c = gauss(rng);
            norm2 += c * c;
        }
        w = w * (vector_embed(x) / std::sqrt(norm2));
    }
    return w;
}

MoebElement random_moeb(int n, std::mt19937& rng, double rmax = 0.6) {
    std::uniform_int_distribution<int> factors(0, 3);
    return make_moeb(random_ball(n, rng, rmax), random_pin(n, factors(rng), rng));
}

Eigen::MatrixXd random_symmetric(int d, std::mt19937& rng, double scale) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = gauss(rng);
    m = 0.5 * (m + m.transpose()).eval();
    double norm = m.norm();
    if (norm > 0.0) m *= scale / norm;
    return m;
}

OperatorTuple random_tuple(int n, int d, std::mt19937& rng, double scale) {
    std::vector<Eigen::MatrixXd> ops;
    for (int j = 0; j < n; ++j) ops.push_back(random_symmetric(d, rng, scale));
    return make_operator_tuple(std::move(ops));
}

OperatorTuple pauli_pair() {
    Eigen::MatrixXd s3(2, 2), s1(2, 2);
    s3 << 1, 0, 0, -1;
    s1 << 0, 1, 1, 0;
    return make_operator_tuple({s3, s1});
}

// Shift of a Jordan block into a pair of symmetric matrices: the
// complexification A_1 + i A_2 is similar to the 2 x 2 Jordan block with
// eigenvalue u1 + i u2.
OperatorTuple shifted_nilpotent_pair(double u1, double u2) {
    OperatorTuple base = pauli_pair();
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);
    return make_operator_tuple({base.ops[0] + u1 * id, base.ops[1] + u2 * id});
}

// The plain nilpotent pair (0, J_L) with J_L the upper shift matrix.  Not
// symmetric, hence assembled without the validating factory.
OperatorTuple jordan_pair(int length) {
    Eigen::MatrixXd shift = Eigen::MatrixXd::Zero(length, length);
    for (int i = 0; i + 1 < length; ++i) shift(i, i + 1) = 1.0;
    return OperatorTuple{2, length, {Eigen::MatrixXd::Zero(length, length), shift}};
}

Eigen::MatrixXcd complex_shadow(const CliffOperator& x) {
    return x[1u].cast<complexd>() + complexd(0.0, 1.0) * x[2u].cast<complexd>();
}

std::vector<double> inverse_point_image(const MoebElement& g, const std::vector<double>& x) {
    MoebPoint image = moebius_apply(moeb_mat_inverse(from_uw(g)), MoebPoint::finite(vector_embed(x)));
    REQUIRE_FALSE(image.infinite);
    return vector_part(image.x);
}

} // namespace

TEST_CASE("operator tuple validation") {
    Eigen::MatrixXd sym = Eigen::MatrixXd::Identity(2, 2);
    Eigen::MatrixXd skew(2, 2);
    skew << 0, 1, -1, 0;
    CHECK_THROWS_AS(make_operator_tuple({sym, skew}), domain_error);
    CHECK_THROWS_AS(make_operator_tuple({sym, Eigen::MatrixXd::Identity(3, 3)}), dimension_error);
    CHECK_THROWS_AS(make_operator_tuple({Eigen::MatrixXd::Zero(2, 3)}), dimension_error);
    CHECK_THROWS_AS(make_operator_tuple({}), dimension_error);
    OperatorTuple t = make_operator_tuple({sym, 2.0 * sym});
    CHECK(t.n == 2);
    CHECK(t.d == 2);
}

TEST_CASE("embedding and blade product") {
    OperatorTuple t = pauli_pair();
    CliffOperator a = embed(t);
    CHECK(a[0u].isZero(0.0));
    CHECK((a[1u] - t.ops[0]).norm() == doctest::Approx(0.0));
    CHECK((a[2u] - t.ops[1]).norm() == doctest::Approx(0.0));
    CHECK(a[3u].isZero(0.0));

    // (e1 A1 + e2 A2)^2 = -(A1^2 + A2^2) + e12 (A1 A2 - A2 A1)
    CliffOperator sq = a * a;
    Eigen::MatrixXd scalar_ref = -(t.ops[0] * t.ops[0] + t.ops[1] * t.ops[1]);
    Eigen::MatrixXd bivec_ref = t.ops[0] * t.ops[1] - t.ops[1] * t.ops[0];
    CHECK((sq[0u] - scalar_ref).norm() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK((sq[3u] - bivec_ref).norm() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(sq[1u].isZero(1e-14));
    CHECK(sq[2u].isZero(1e-14));

    CliffOperator id = CliffOperator::identity(2, 2);
    CHECK((id * a - a).frobenius() == doctest::Approx(0.0));
    CHECK((a * id - a).frobenius() == doctest::Approx(0.0));

    // Clifford constants multiply blade-wise: e12 e1 = e2 and e12 e2 = -e1.
    Multivector e12 = Multivector::blade(2, 0b11u);
    CliffOperator rot = CliffOperator::constant(2, e12) * a;
    CHECK((rot[1u] + t.ops[1]).norm() == doctest::Approx(0.0));
    CHECK((rot[2u] - t.ops[0]).norm() == doctest::Approx(0.0));
}

TEST_CASE("module action") {
    OperatorTuple t = pauli_pair();
    CliffOperator a = embed(t);
    Eigen::VectorXd v(2);
    v << 1.0, 2.0;
    ModuleVector mv(2, v);
    CHECK(mv.norm() == doctest::Approx(std::sqrt(5.0)));

    ModuleVector image = a * mv;
    CHECK(image[0u].isZero(0.0));
    CHECK((image[1u] - t.ops[0] * v).norm() == doctest::Approx(0.0));
    CHECK((image[2u] - t.ops[1] * v).norm() == doctest::Approx(0.0));

    // Right Clifford constants commute with the left action.
    Multivector c = Multivector(2, 0.5) + Multivector::blade(2, 0b11u) * 0.25;
    ModuleVector left = (a * mv) * c;
    ModuleVector right = a * (mv * c);
    CHECK((left - right).norm() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("regular representation and operator norm") {
    std::mt19937 rng(901);
    OperatorTuple t = random_tuple(2, 3, rng, 1.0);
    CliffOperator a = embed(t);
    CliffOperator b = embed(random_tuple(2, 3, rng, 0.7));

    // regular_matrix is an algebra homomorphism.
    Eigen::MatrixXd prod = regular_matrix(a * b);
    Eigen::MatrixXd composed = regular_matrix(a) * regular_matrix(b);
    CHECK((prod - composed).norm() == doctest::Approx(0.0).epsilon(1e-12));

    CHECK(op_norm(CliffOperator::identity(2, 3)) == doctest::Approx(1.0));
    // A vector Clifford constant v (x) I satisfies x^2 = -|v|^2, so every
    // singular value of its regular representation equals |v|.
    CliffOperator vec = CliffOperator::constant(3, vector_embed(std::vector<double>{0.3, -0.4}));
    CHECK(op_norm(vec) == doctest::Approx(0.5));
    CHECK(op_norm(a * b) <= op_norm(a) * op_norm(b) + 1e-12);
}

TEST_CASE("inverse through the regular representation") {
    std::mt19937 rng(902);
    for (int trial = 0; trial < 5; ++trial) {
        int n = 2 + trial % 2;
        CliffOperator x = embed(random_tuple(n, 4, rng, 0.5)) + CliffOperator::identity(n, 4);
        CliffOperator inv = op_inverse(x);
        CHECK((x * inv - CliffOperator::identity(n, 4)).frobenius() < 1e-10);
        CHECK((inv * x - CliffOperator::identity(n, 4)).frobenius() < 1e-10);
    }

    // The Pauli pair embeds to a singular element: its square has rank
    // deficient scalar data at the origin of the resolvent plane.
    CHECK_THROWS_AS(op_inverse(embed(pauli_pair())), singular_error);
    CHECK_THROWS_AS(op_inverse(CliffOperator(2, 2)), singular_error);
}

TEST_CASE("resolvent set membership") {
    // Zero 1 x 1 tuple: A - uI = -(u1 e1 + u2 e2), invertible exactly off 0.
    OperatorTuple zero{2, 1, {Eigen::MatrixXd::Zero(1, 1), Eigen::MatrixXd::Zero(1, 1)}};
    CliffOperator a0 = embed(zero);
    CHECK_FALSE(resolvent_membership(a0, {0.0, 0.0}));
    CHECK(resolvent_membership(a0, {0.1, 0.0}));
    CHECK(resolvent_membership(a0, {0.0, -0.2}));

    // Commuting diagonal pair: membership fails exactly at the joint
    // eigenvalue pairs (a_i, b_i).
    Eigen::MatrixXd d1(3, 3), d2(3, 3);
    d1 = Eigen::Vector3d(0.5, -0.25, 0.0).asDiagonal();
    d2 = Eigen::Vector3d(0.25, 0.5, -0.5).asDiagonal();
    CliffOperator diag = embed(make_operator_tuple({d1, d2}));
    CHECK_FALSE(resolvent_membership(diag, {0.5, 0.25}));
    CHECK_FALSE(resolvent_membership(diag, {-0.25, 0.5}));
    CHECK_FALSE(resolvent_membership(diag, {0.0, -0.5}));
    CHECK(resolvent_membership(diag, {0.5, 0.5}));
    CHECK(resolvent_membership(diag, {0.0, 0.0}));
    CHECK(resolvent_membership(diag, {-0.25, 0.25}));
}

TEST_CASE("membership grid for the plain spin pair") {
    CliffOperator a = embed(pauli_pair());
    std::vector<GridSample> grid = clifford_spectrum_grid(a, 11, 1.0);
    REQUIRE(grid.size() == 121);
    int misses = 0;
    for (const GridSample& s : grid) {
        if (!s.member) {
            ++misses;
            CHECK(std::abs(s.u1) < 1e-12);
            CHECK(std::abs(s.u2) < 1e-12);
        }
    }
    CHECK(misses == 1);
    // Row-major in (u1, u2): the first node is the lower corner.
    CHECK(grid.front().u1 == doctest::Approx(-1.0));
    CHECK(grid.front().u2 == doctest::Approx(-1.0));
    CHECK(grid[1].u1 == doctest::Approx(-1.0));
    CHECK(grid[1].u2 == doctest::Approx(-0.8));
    CHECK(grid.back().u1 == doctest::Approx(1.0));
    CHECK(grid.back().u2 == doctest::Approx(1.0));
}

TEST_CASE("moebius action on operators") {
    std::mt19937 rng(903);
    OperatorTuple t = random_tuple(2, 4, rng, 0.3);
    CliffOperator a = embed(t);

    CliffOperator fixed = moebius_on_operator(moeb_identity(2), a);
    CHECK((fixed - a).frobenius() < 1e-13);

    MoebElement g = random_moeb(2, rng);
    CliffOperator round = moebius_on_operator(moeb_inverse(g), moebius_on_operator(g, a));
    CHECK(op_norm(round - a) < 1e-10);

    // The action composes against the group order: g1 g2 acts as g2 after g1.
    MoebElement g1 = random_moeb(3, rng), g2 = random_moeb(3, rng);
    CliffOperator b = embed(random_tuple(3, 3, rng, 0.3));
    CliffOperator through = moebius_on_operator(g2, moebius_on_operator(g1, b));
    CliffOperator direct = moebius_on_operator(moeb_compose(g1, g2), b);
    CHECK(op_norm(through - direct) < 1e-10);
}

TEST_CASE("action transports the spectrum through the inverse point map") {
    double u1 = 0.3, u2 = -0.2;
    OperatorTuple t = shifted_nilpotent_pair(u1, u2);
    CliffOperator a = embed(t);
    CHECK_FALSE(resolvent_membership(a, {u1, u2}));
    CHECK(resolvent_membership(a, {0.0, 0.0}));

    // Centering the pair: pulling back by (-u, 1) sends u to the origin and
    // the image complexifies to a nilpotent matrix.
    MoebElement centering = make_moeb({-u1, -u2}, Multivector(2, 1.0));
    std::vector<double> target = inverse_point_image(centering, {u1, u2});
    CHECK(std::abs(target[0]) < 1e-12);
    CHECK(std::abs(target[1]) < 1e-12);
    CliffOperator centered = moebius_on_operator(centering, a);
    CHECK_FALSE(resolvent_membership(centered, {0.0, 0.0}));
    Eigen::MatrixXcd shadow = complex_shadow(centered);
    CHECK(shadow.eigenvalues().cwiseAbs().maxCoeff() < 1e-8);
    CHECK((shadow * shadow).norm() < 1e-10);

    // A generic element moves the double point to the image of u.
    std::mt19937 rng904(904);
    MoebElement g = make_moeb({0.1, 0.25}, random_pin(2, 2, rng904));
    std::vector<double> moved = inverse_point_image(g, {u1, u2});
    CliffOperator image = moebius_on_operator(g, a);
    CHECK_FALSE(resolvent_membership(image, moved));
    CHECK(resolvent_membership(image, {moved[0] + 0.2, moved[1]}));
    Eigen::MatrixXcd moved_shadow = complex_shadow(image);
    Eigen::VectorXcd eig = moved_shadow.eigenvalues();
    complexd expect(moved[0], moved[1]);
    // Defective double eigenvalues split at the square root of the working
    // precision under perturbation, so the gate sits above that.
    CHECK(std::abs(eig(0) - expect) < 1e-7);
    CHECK(std::abs(eig(1) - expect) < 1e-7);
}

TEST_CASE("resolvent cocycle") {
    std::mt19937 rng(905);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + trial % 2;
        int d = 2 + trial % 5;
        CliffOperator a = embed(random_tuple(n, d, rng, 0.4));
        MoebElement g1 = random_moeb(n, rng);
        MoebElement g2 = random_moeb(n, rng);
        CliffOperator lhs = resolvent(g1, a) * resolvent(g2, moebius_on_operator(g1, a));
        CliffOperator rhs = resolvent(moeb_compose(g1, g2), a);
        worst = std::max(worst, op_norm(lhs - rhs));
    }
    CHECK(worst < 1e-8);
    CAPTURE(worst);

    CliffOperator id_res = resolvent(moeb_identity(2), embed(pauli_pair()));
    CHECK((id_res - CliffOperator::identity(2, 2)).frobenius() < 1e-13);
}

TEST_CASE("vector shift identity") {
    std::mt19937 rng(906);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + trial % 2;
        int d = 2 + trial % 5;
        CliffOperator a = embed(random_tuple(n, d, rng, 0.4));
        MoebElement g = random_moeb(n, rng);
        std::vector<double> x = random_ball(n, rng, 0.8);
        if (!resolvent_membership(a, x)) continue;
        worst = std::max(worst, lemma318_residual(g, a, x));
    }
    CHECK(worst < 1e-8);
    CAPTURE(worst);

    // Identity element: both sides collapse to A - xI.
    CliffOperator a = embed(random_tuple(2, 3, rng, 0.4));
    CHECK(lemma318_residual(moeb_identity(2), a, {0.3, -0.1}) < 1e-13);
}

TEST_CASE("modulus power") {
    // Pure rotor: u = 0 gives |a| = 1, |b| = 0, so every power is I.
    std::mt19937 rng907(907);
    MoebElement rotor = make_moeb({0.0, 0.0}, random_pin(2, 2, rng907));
    Eigen::MatrixXd d1 = Eigen::Vector2d(0.5, -0.25).asDiagonal();
    Eigen::MatrixXd d2 = Eigen::Vector2d(0.25, 0.75).asDiagonal();
    OperatorTuple diag = make_operator_tuple({d1, d2});
    CHECK((modulus_power(rotor, diag, -2) - Eigen::MatrixXd::Identity(2, 2)).norm() <
          1e-12);
    CHECK((modulus_power(rotor, diag, 4) - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-12);

    // Diagonal oracle: the base matrix is diagonal with entries
    // |a|^2 - |b|^2 (a_i^2 + b_i^2).
    MoebElement g = make_moeb({0.6, 0.0}, Multivector(2, 1.0));
    double a2 = 1.0 / 0.64, b2 = 0.36 / 0.64;
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(2, 2);
    expected(0, 0) = 1.0 / (a2 - b2 * (0.25 + 0.0625));
    expected(1, 1) = 1.0 / (a2 - b2 * (0.0625 + 0.5625));
    CHECK((modulus_power(g, diag, -2) - expected).norm() < 1e-12);
    Eigen::MatrixXd square = modulus_power(g, diag, 2);
    CHECK((square * expected - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-12);

    CHECK_THROWS_AS(modulus_power(g, diag, 3), domain_error);
    CHECK_THROWS_AS(modulus_power(g, pauli_pair(), 2), domain_error);

    // Negative powers fail when |a|^2 is an eigenvalue of |b|^2 (A1^2 + A2^2).
    Eigen::MatrixXd s1 = Eigen::Vector2d(5.0 / 3.0, 1.0).asDiagonal();
    OperatorTuple singular_pair = make_operator_tuple({s1, Eigen::MatrixXd::Zero(2, 2)});
    CHECK_THROWS_AS(modulus_power(g, singular_pair, -2), singular_error);
}

TEST_CASE("commuting calculus action is a representation") {
    std::mt19937 rng(908);
    Eigen::MatrixXd d1 = Eigen::Vector3d(0.3, -0.2, 0.1).asDiagonal();
    Eigen::MatrixXd d2 = Eigen::Vector3d(0.1, 0.25, -0.3).asDiagonal();
    OperatorTuple t = make_operator_tuple({d1, d2});
    CliffOperator a = embed(t);

    OrbitFunction f = [](const CliffOperator& x) { return x * x; };

    OrbitFunction fixed = rho_commuting(moeb_identity(2), t, f);
    CHECK(op_norm(fixed(a) - f(a)) < 1e-12);

    for (int trial = 0; trial < 5; ++trial) {
        MoebElement g1 = random_moeb(2, rng, 0.4);
        MoebElement g2 = random_moeb(2, rng, 0.4);
        OrbitFunction lhs = rho_commuting(g1, t, rho_commuting(g2, t, f));
        OrbitFunction rhs = rho_commuting(moeb_compose(g1, g2), t, f);
        CHECK(op_norm(lhs(a) - rhs(a)) < 1e-7);
    }

    OperatorTuple odd{3, 2,
                      {Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(2, 2),
                       Eigen::MatrixXd::Identity(2, 2)}};
    CHECK_THROWS_AS(rho_commuting(random_moeb(3, rng), odd, f), domain_error);
    CHECK_THROWS_AS(rho_commuting(random_moeb(2, rng), pauli_pair(), f), domain_error);
}

TEST_CASE("symmetric products") {
    OperatorTuple t = pauli_pair();

    CliffOperator empty = symmetric_product(t, {0, 0});
    CHECK((empty - CliffOperator::identity(2, 2)).frobenius() == doctest::Approx(0.0));

    CliffOperator first = symmetric_product(t, {1, 0});
    CHECK((first[1u] - t.ops[0]).norm() == doctest::Approx(0.0));
    CHECK(first[0u].isZero(0.0));

    // Mixed word on the spin pair: the average of e1 A1 e2 A2 and
    // e2 A2 e1 A1 is e12 (A1 A2 - A2 A1) / 2.
    CliffOperator mixed = symmetric_product(t, {1, 1});
    Eigen::MatrixXd commutator_half = 0.5 * (t.ops[0] * t.ops[1] - t.ops[1] * t.ops[0]);
    CHECK((mixed[3u] - commutator_half).norm() < 1e-14);
    CHECK(mixed[0u].isZero(1e-14));

    // Equal letters cancel the bivector part entirely.
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);
    OperatorTuple same = make_operator_tuple({id, id});
    CHECK(symmetric_product(same, {1, 1}).is_zero(1e-14));

    CHECK_THROWS_AS(symmetric_product(t, {5, 4}), domain_error);
    CHECK_THROWS_AS(symmetric_product(t, {1, 2, 3}), dimension_error);
    CHECK_THROWS_AS(symmetric_product(t, {-1, 0}), domain_error);
}

TEST_CASE("powers of the embedding expand into symmetric products") {
    std::mt19937 rng(909);
    for (int n : {2, 3}) {
        OperatorTuple t = random_tuple(n, 3, rng, 0.9);
        CliffOperator a = embed(t);
        CliffOperator power = CliffOperator::identity(n, 3);
        for (int k = 1; k <= 5; ++k) {
            power = power * a;
            CliffOperator sum(n, 3);
            // Walk all multi-indices of total degree k.
            std::vector<int> m(static_cast<std::size_t>(n), 0);
            auto walk = [&](auto&& self, int slot, int rest) -> void {
                if (slot == n - 1) {
                    m[static_cast<std::size_t>(slot)] = rest;
                    double weight = 1.0;
                    int remaining = k;
                    for (int j = 0; j < n; ++j) {
                        for (int step = 1; step <= m[static_cast<std::size_t>(j)]; ++step) {
                            weight *= static_cast<double>(remaining) / step;
                            --remaining;
                        }
                    }
                    sum += weight * symmetric_product(t, m);
                    return;
                }
                for (int take = 0; take <= rest; ++take) {
                    m[static_cast<std::size_t>(slot)] = take;
                    self(self, slot + 1, rest - take);
                }
                m[static_cast<std::size_t>(slot)] = 0;
            };
            walk(walk, 0, k);
            CHECK((power - sum).frobenius() < 1e-10);
        }
    }
}

TEST_CASE("spectral radius estimates") {
    Eigen::VectorXd v2 = Eigen::Vector2d(0.0, 1.0);
    OperatorTuple zero{2, 2, {Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 2)}};
    SpectralRadii z = spectral_radii(zero, v2, 4);
    CHECK(z.symmetric_radius == doctest::Approx(0.0));
    CHECK(z.local_radius == doctest::Approx(0.0));
    CHECK(z.local_bound_holds);

    // Commuting diagonal pair: the symmetric radius at every order is the
    // largest joint eigenvalue magnitude max_i |(a_i, b_i)|... dominated by
    // the single-letter norms.
    Eigen::MatrixXd d1 = Eigen::Vector2d(0.8, 0.1).asDiagonal();
    Eigen::MatrixXd d2 = Eigen::MatrixXd::Zero(2, 2);
    SpectralRadii diag = spectral_radii(make_operator_tuple({d1, d2}), v2, 5);
    for (double value : diag.symmetric_trace) CHECK(value == doctest::Approx(0.8));

    // Nilpotent pair: the local trace collapses to zero from order 2 on
    // while the symmetric trace stays positive.
    OperatorTuple nil = jordan_pair(2);
    SpectralRadii r = spectral_radii(nil, v2, 5);
    REQUIRE(r.local_trace.size() == 5);
    CHECK(r.local_trace[0] == doctest::Approx(1.0));
    for (std::size_t k = 1; k < r.local_trace.size(); ++k)
        CHECK(r.local_trace[k] == doctest::Approx(0.0));
    CHECK(r.local_radius == doctest::Approx(0.0));
    CHECK(r.symmetric_trace[0] == doctest::Approx(1.0));
    CHECK(r.local_bound_holds);

    CHECK_THROWS_AS(spectral_radii(nil, Eigen::VectorXd::Zero(3), 3), dimension_error);
}

TEST_CASE("taylor series evaluation") {
    OperatorTuple t = pauli_pair();
    Eigen::VectorXd v = Eigen::Vector2d(1.0, -0.5);

    CoeffMap constant;
    constant.emplace(MultiIndex{0, 0}, Multivector(2, 1.0));
    ModuleVector base = taylor_calculus(t, v, constant);
    CHECK((base[0u] - v).norm() == doctest::Approx(0.0));
    CHECK(base[1u].isZero(0.0));

    CoeffMap linear;
    linear.emplace(MultiIndex{1, 0}, Multivector(2, 1.0));
    ModuleVector first = taylor_calculus(t, v, linear);
    CHECK((first[1u] - t.ops[0] * v).norm() == doctest::Approx(0.0));

    // Right coefficients scale and rotate blade-wise.
    CoeffMap rotated;
    rotated.emplace(MultiIndex{1, 0}, Multivector::blade(2, 0b11u) * 2.0);
    ModuleVector rot = taylor_calculus(t, v, rotated);
    CHECK((rot[2u] + 2.0 * (t.ops[0] * v)).norm() < 1e-14);

    // The nilpotent pair truncates the series exactly.
    OperatorTuple nil = jordan_pair(3);
    Eigen::VectorXd e3 = Eigen::Vector3d(0.0, 0.0, 1.0);
    CoeffMap deep;
    for (int k = 0; k <= 6; ++k) deep.emplace(MultiIndex{0, k}, Multivector(2, 1.0));
    // (e2 J)^0 = I, (e2 J)^1 = e2 (x) J, (e2 J)^2 = -J^2, higher powers die.
    ModuleVector series = taylor_calculus(nil, e3, deep);
    Eigen::VectorXd e2 = Eigen::Vector3d(0.0, 1.0, 0.0);
    Eigen::VectorXd e1 = Eigen::Vector3d(1.0, 0.0, 0.0);
    CHECK((series[0u] - (e3 - e1)).norm() < 1e-14);
    CHECK((series[2u] - e2).norm() < 1e-14);
    CHECK(series[1u].isZero(1e-14));
    CHECK(series[3u].isZero(1e-14));

    // Divergent data trips the growth guard.
    Eigen::MatrixXd big = 2.2 * Eigen::MatrixXd::Identity(1, 1);
    OperatorTuple loud = make_operator_tuple({big, Eigen::MatrixXd::Zero(1, 1)});
    CoeffMap runaway;
    for (int k = 0; k <= 8; ++k) runaway.emplace(MultiIndex{k, 0}, Multivector(2, 1.0));
    Eigen::VectorXd one = Eigen::VectorXd::Ones(1);
    CHECK_THROWS_AS(taylor_calculus(loud, one, runaway), domain_error);
}

TEST_CASE("coefficient action of the group") {
    QuadratureRule quad = circle_rule(256);
    OperatorTuple nil = jordan_pair(2);
    Eigen::VectorXd v = Eigen::Vector2d(0.0, 1.0);

    CoeffMap c;
    c.emplace(MultiIndex{0, 0}, Multivector(2, 1.0));
    c.emplace(MultiIndex{0, 1}, encode_even(complexd(0.5, -0.25)));
    c.emplace(MultiIndex{0, 2}, encode_even(complexd(-0.3, 0.1)));

    // Identity element leaves the coefficients alone.
    CoeffTransform fixed = rho_Av_apply(moeb_identity(2), nil, v, c, 6, quad);
    for (const auto& [index, value] : fixed.coeffs) {
        auto it = c.find(index);
        Multivector reference = (it == c.end()) ? Multivector(2) : it->second;
        CHECK((value - reference).norm() < 1e-10);
    }

    // Composition agrees with the transported coefficients.  The transform
    // truncates at degree 8, so small group elements keep the dropped tail
    // below the gate at low degrees.
    std::mt19937 rng(910);
    MoebElement g1 = make_moeb(random_ball(2, rng, 0.2), random_pin(2, 2, rng));
    MoebElement g2 = make_moeb(random_ball(2, rng, 0.2), random_pin(2, 1, rng));
    CoeffTransform once = rho_Av_apply(g2, nil, v, c, 8, quad);
    CoeffTransform twice = rho_Av_apply(g1, nil, v, once.coeffs, 8, quad);
    CoeffTransform direct = rho_Av_apply(moeb_compose(g1, g2), nil, v, c, 8, quad);
    double worst = 0.0;
    for (const auto& [index, value] : direct.coeffs) {
        if (multi_degree(index) > 3) continue;
        auto it = twice.coeffs.find(index);
        REQUIRE(it != twice.coeffs.end());
        worst = std::max(worst, (value - it->second).norm());
    }
    CHECK(worst < 1e-7);
    CAPTURE(worst);

    // Module-level intertwining: evaluating the transported series equals
    // integrating the transported boundary function coefficient by
    // coefficient.
    SphereFunction f{2, [&](const std::vector<double>& x) {
                         Multivector total(2);
                         for (const auto& [index, value] : c)
                             total += v_basis(index)(x) * value;
                         return total;
                     }};
    SphereFunction moved = rho1_apply(g1, f);
    CoeffTransform transported = rho_Av_apply(g1, nil, v, c, 8, quad);
    double coeff_gap = 0.0;
    for (const auto& [index, value] : transported.coeffs) {
        if (multi_degree(index) > 4) continue;
        Multivector projected = inner_product(v_basis(index), moved, quad);
        coeff_gap = std::max(coeff_gap, (projected - value).norm());
    }
    CHECK(coeff_gap < 1e-9);
    CAPTURE(coeff_gap);
}

TEST_CASE("operator coherent states") {
    QuadratureRule quad = circle_rule(256);
    OperatorTuple nil = jordan_pair(2);
    Eigen::VectorXd v = Eigen::Vector2d(0.0, 1.0);

    ModuleVector at_identity = coherent_operator_state(moeb_identity(2), nil, v, 4, quad);
    CHECK((at_identity[0u] - v).norm() < 1e-10);

    // Closed form from the even shadow: the state is
    // sum_k (J^k v) encode((1/S)(-iT/S)^k) for the disk data (S, T) of g.
    std::mt19937 rng(911);
    for (int trial = 0; trial < 4; ++trial) {
        MoebElement g = make_moeb(random_ball(2, rng, 0.5), random_pin(2, 2 * (trial % 2), rng));
        DiskShadow disk = disk_shadow(g);
        ModuleVector state = coherent_operator_state(g, nil, v, 4, quad);
        complexd factor = 1.0 / disk.S;
        ModuleVector expected(2, 2);
        for (int k = 0; k <= 1; ++k) {
            ModuleVector term = symmetric_product(nil, {0, k}) * ModuleVector(2, v);
            expected += term * encode_even(factor);
            factor *= complexd(0.0, -1.0) * disk.T / disk.S;
        }
        CHECK((state - expected).norm() < 1e-10);
    }
}

TEST_CASE("reproducing integral recovers the series") {
    OperatorTuple nil = jordan_pair(2);
    Eigen::VectorXd v = Eigen::Vector2d(0.0, 1.0);

    CoeffMap c;
    c.emplace(MultiIndex{0, 0}, encode_even(complexd(0.8, 0.2)));
    c.emplace(MultiIndex{0, 1}, encode_even(complexd(-0.4, 0.6)));
    c.emplace(MultiIndex{0, 2}, encode_even(complexd(0.3, -0.5)));

    SphereFunction f{2, [&](const std::vector<double>& x) {
                         Multivector total(2);
                         for (const auto& [index, value] : c)
                             total += v_basis(index)(x) * value;
                         return total;
                     }};

    ModuleVector direct = taylor_calculus(nil, v, c);
    ModuleVector integral = taylor_from_integral(nil, v, f, 3, circle_rule(256));
    double gap = (integral - direct).norm();
    CHECK(gap < 1e-3);
    CAPTURE(gap);
}
