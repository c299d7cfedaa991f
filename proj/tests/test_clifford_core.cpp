#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "cliffspec/multivector.hpp"
#include "oracles/naive_clifford.hpp"

using namespace cliffspec;

namespace {

Multivector random_mv(int n, std::mt19937& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    Multivector a(n);
    for (unsigned mask = 0; mask < unsigned(a.size()); ++mask) a[mask] = dist(rng);
    return a;
}

std::vector<double> random_coords(int n, std::mt19937& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& c : x) c = dist(rng);
    return x;
}

std::map<unsigned, double> as_map(const Multivector& a) {
    std::map<unsigned, double> m;
    for (unsigned mask = 0; mask < unsigned(a.size()); ++mask) {
        if (a[mask] != 0.0) m[mask] = a[mask];
    }
    return m;
}

Multivector e(int n, std::initializer_list<int> idx) {
    Multivector out(n, 1.0);
    for (int j : idx) out = out * Multivector::basis_vector(n, j);
    return out;
}

} // namespace

TEST_CASE("blade signs agree with the transposition-count reference") {
    for (int n = 1; n <= 5; ++n) {
        const BladeSignTable& table = BladeSignTable::get(n);
        const unsigned dim = 1u << n;
        for (unsigned p = 0; p < dim; ++p) {
            for (unsigned q = 0; q < dim; ++q) {
                auto [sign, word] = oracle::blade_product(oracle::word_from_mask(p),
                                                          oracle::word_from_mask(q));
                CHECK(table.sign(p, q) == sign);
                CHECK(BladeSignTable::product_mask(p, q) == oracle::mask_from_word(word));
                CHECK(table.sign(p, q) == BladeSignTable::compute_sign(p, q));
            }
        }
    }
}

TEST_CASE("generators square to -1 and anticommute") {
    const int n = 4;
    for (int i = 1; i <= n; ++i) {
        const auto ei = Multivector::basis_vector(n, i);
        CHECK(approx_equal(ei * ei, Multivector(n, -1.0), 0.0));
        for (int j = i + 1; j <= n; ++j) {
            const auto ej = Multivector::basis_vector(n, j);
            CHECK(approx_equal(ei * ej + ej * ei, Multivector(n), 0.0));
        }
    }
}

TEST_CASE("worked blade products") {
    CHECK(approx_equal(e(2, {1, 2}) * e(2, {2, 1}), Multivector(2, 1.0), 0.0));
    CHECK(approx_equal(e(2, {1, 2}) * e(2, {1, 2}), Multivector(2, -1.0), 0.0));
    CHECK(approx_equal(e(3, {1, 2}) * e(3, {3}), e(3, {1, 2, 3}), 0.0));
    CHECK(approx_equal(e(3, {1, 2, 3}) * e(3, {1, 2, 3}), Multivector(3, 1.0), 0.0));
}

TEST_CASE("geometric product matches the reference on random elements") {
    std::mt19937 rng(2024);
    for (int n = 2; n <= 5; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto a = random_mv(n, rng);
            const auto b = random_mv(n, rng);
            const auto got = as_map(a * b);
            const auto want = oracle::product(as_map(a), as_map(b));
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                const double g = got.count(mask) ? got.at(mask) : 0.0;
                const double w = want.count(mask) ? want.at(mask) : 0.0;
                CHECK(std::abs(g - w) <= 1e-12);
            }
        }
    }
}

TEST_CASE("product is associative and distributive") {
    std::mt19937 rng(7);
    for (int n = 2; n <= 5; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto a = random_mv(n, rng);
            const auto b = random_mv(n, rng);
            const auto c = random_mv(n, rng);
            CHECK(approx_equal((a * b) * c, a * (b * c), 1e-12));
            CHECK(approx_equal(a * (b + c), a * b + a * c, 1e-12));
            CHECK(approx_equal((a + b) * c, a * c + b * c, 1e-12));
        }
    }
}

TEST_CASE("involutions carry the expected grade signs") {
    const int n = 5;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        const int r = blade_grade(mask);
        const auto blade = Multivector::blade(n, mask);
        const int rev_sign = (r * (r - 1) / 2) % 2 == 0 ? 1 : -1;
        const int conj_sign = (r * (r + 1) / 2) % 2 == 0 ? 1 : -1;
        const int gi_sign = r % 2 == 0 ? 1 : -1;
        CHECK(approx_equal(reversion(blade), blade * double(rev_sign), 0.0));
        CHECK(approx_equal(conjugation(blade), blade * double(conj_sign), 0.0));
        CHECK(approx_equal(grade_involution(blade), blade * double(gi_sign), 0.0));
    }
}

TEST_CASE("involution algebra on random elements") {
    std::mt19937 rng(99);
    for (int n = 2; n <= 5; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto a = random_mv(n, rng);
            const auto b = random_mv(n, rng);
            CHECK(approx_equal(reversion(a * b), reversion(b) * reversion(a), 1e-12));
            CHECK(approx_equal(conjugation(a * b), conjugation(b) * conjugation(a), 1e-12));
            CHECK(approx_equal(grade_involution(a * b),
                               grade_involution(a) * grade_involution(b), 1e-12));
            CHECK(approx_equal(reversion(reversion(a)), a, 0.0));
            CHECK(approx_equal(conjugation(conjugation(a)), a, 0.0));
            CHECK(approx_equal(grade_involution(grade_involution(a)), a, 0.0));
            CHECK(approx_equal(conjugation(a), grade_involution(reversion(a)), 0.0));
        }
    }
}

TEST_CASE("vectors embed, square and conjugate as expected") {
    std::mt19937 rng(41);
    for (int n = 2; n <= 5; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto coords = random_coords(n, rng);
            const auto x = vector_embed(coords);
            CHECK(is_vector(x));
            CHECK(vector_part(x) == coords);
            double norm2 = 0.0;
            for (double c : coords) norm2 += c * c;
            CHECK(approx_equal(x * x, Multivector(n, -norm2), 1e-12));
            CHECK(approx_equal(x * conjugation(x), Multivector(n, norm2), 1e-12));
            CHECK(std::abs(modulus(x) - std::sqrt(norm2)) <= 1e-12);
        }
    }
    CHECK_FALSE(is_vector(Multivector(3, 1.0)));
    CHECK(is_vector(Multivector(3)));
}

TEST_CASE("kelvin inverse of vectors") {
    const int n = 3;
    const auto e1 = Multivector::basis_vector(n, 1);
    const auto e2 = Multivector::basis_vector(n, 2);
    CHECK(approx_equal(kelvin_inverse(e1), -e1, 0.0));
    CHECK(approx_equal(kelvin_inverse(e2 * 2.0), e2 * -0.5, 0.0));
    CHECK_THROWS_AS(kelvin_inverse(Multivector(n)), singular_error);
    CHECK_THROWS_AS(kelvin_inverse(Multivector(n, 1.0)), domain_error);

    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto coords = random_coords(n, rng);
        coords[0] += 2.0;
        const auto x = vector_embed(coords);
        CHECK(approx_equal(x * kelvin_inverse(x), Multivector(n, 1.0), 1e-12));
        CHECK(approx_equal(kelvin_inverse(x), mv_inverse(x), 1e-12));
    }
}

TEST_CASE("full inverse through the regular representation") {
    const int n = 2;
    const auto spinor = (Multivector(n, 1.0) + e(n, {1, 2})) * 0.5;
    CHECK(approx_equal(mv_inverse(spinor), Multivector(n, 1.0) - e(n, {1, 2}), 1e-12));

    std::mt19937 rng(17);
    for (int nn = 2; nn <= 5; ++nn) {
        for (int trial = 0; trial < 10; ++trial) {
            auto a = random_mv(nn, rng);
            a[0] += 3.0; // keep the draw away from the singular locus
            const auto inv = mv_inverse(a);
            CHECK(approx_equal(a * inv, Multivector(nn, 1.0), 1e-10));
            CHECK(approx_equal(inv * a, Multivector(nn, 1.0), 1e-10));
        }
    }

    const auto idempotent = (Multivector(3, 1.0) + e(3, {1, 2, 3})) * 0.5;
    CHECK(approx_equal(idempotent * idempotent, idempotent, 1e-15));
    CHECK_THROWS_AS(mv_inverse(idempotent), singular_error);
    CHECK_THROWS_AS(mv_inverse(Multivector(4)), singular_error);
}

TEST_CASE("modulus on elements that admit one") {
    CHECK(modulus(vector_embed({3.0, 4.0})) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(modulus(e(2, {1, 2}) * 3.0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(modulus(Multivector(2, -2.0)) == doctest::Approx(2.0).epsilon(1e-14));

    std::mt19937 rng(23);
    for (int n = 2; n <= 4; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto x = vector_embed(random_coords(n, rng));
            const auto y = vector_embed(random_coords(n, rng));
            CHECK(modulus(x * y) == doctest::Approx(modulus(x) * modulus(y)).epsilon(1e-10));
        }
    }

    CHECK_THROWS_AS(modulus(Multivector(3, 1.0) + e(3, {1, 2, 3})), domain_error);
}

TEST_CASE("Clifford group and Pin membership") {
    const int n = 3;
    CHECK(in_gamma(Multivector::basis_vector(n, 1)));
    CHECK(in_pin(Multivector::basis_vector(n, 1)));
    CHECK(in_gamma(Multivector::basis_vector(n, 1) * 2.0));
    CHECK_FALSE(in_pin(Multivector::basis_vector(n, 1) * 2.0));
    CHECK_FALSE(in_gamma(Multivector(n, 1.0) + Multivector::basis_vector(n, 1)));
    CHECK_FALSE(in_gamma(Multivector(n, 2.0) + Multivector::basis_vector(n, 1)));
    CHECK_FALSE(in_gamma(Multivector(n)));

    std::mt19937 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        auto u = vector_embed(random_coords(n, rng));
        auto v = vector_embed(random_coords(n, rng));
        u /= modulus(u);
        v /= modulus(v);
        CHECK(in_gamma(u * v));
        CHECK(in_pin(u * v));
        CHECK(in_gamma(u * v * 3.0));
        CHECK_FALSE(in_pin(u * v * 3.0));
    }
}

TEST_CASE("textual form round-trips exactly") {
    const auto a = parse_multivector(3, "3 + 2*e1 - e13");
    CHECK(a[0] == 3.0);
    CHECK(a[0b001] == 2.0);
    CHECK(a[0b101] == -1.0);
    CHECK(to_string(a) == "3 + 2*e1 - e13");

    CHECK(to_string(Multivector(2)) == "0");
    CHECK(to_string(Multivector(2, -1.0)) == "-1");
    CHECK(to_string(-e(2, {1, 2})) == "-e12");
    CHECK(to_string(parse_multivector(2, " -0.5 + 1e-3*e2 ")) == "-0.5 + 0.001*e2");

    std::mt19937 rng(61);
    for (int n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            auto a2 = random_mv(n, rng, 10.0);
            if (trial % 3 == 0) a2[0] = 0.0;
            if (trial % 4 == 0) a2 *= 1e-7;
            const auto back = parse_multivector(n, to_string(a2));
            CHECK(approx_equal(back, a2, 0.0));
        }
    }
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS(parse_multivector(3, ""), parse_error);
    CHECK_THROWS_AS(parse_multivector(3, "e31"), parse_error);
    CHECK_THROWS_AS(parse_multivector(3, "e0"), parse_error);
    CHECK_THROWS_AS(parse_multivector(3, "e4"), parse_error);
    CHECK_THROWS_AS(parse_multivector(3, "2*"), parse_error);
    CHECK_THROWS_AS(parse_multivector(3, "1 + "), parse_error);
    CHECK_THROWS_AS(parse_multivector(3, "1 e2"), parse_error);
    CHECK_THROWS_AS(parse_multivector(3, "foo"), parse_error);
    CHECK_THROWS_AS(parse_multivector(9, "1"), dimension_error);
}

TEST_CASE("dimension mismatches are rejected") {
    CHECK_THROWS_AS(Multivector(2) + Multivector(3), dimension_error);
    CHECK_THROWS_AS(Multivector(2) * Multivector(3), dimension_error);
    CHECK_THROWS_AS(Multivector::basis_vector(2, 3), dimension_error);
    CHECK_THROWS_AS(Multivector::blade(2, 1u << 3), dimension_error);
    CHECK_THROWS_AS(vector_embed(std::vector<double>{}), dimension_error);
}
