#include "cliffspec/quadrature.hpp"

#include <cmath>
#include <random>
#include <string>

namespace cliffspec {

namespace {

constexpr double kPi = 3.14159265358979323846;

void push(QuadratureRule& rule, double x, double y, double z, double w) {
    rule.points.push_back({x, y, z});
    rule.weights.push_back(w);
}

// Octahedral orbits of Lebedev-Laikov rules.  Each helper appends one orbit
// with a common weight; the letters follow the usual (a, b, c) start-vector
// notation for the octahedral group with inversion.

// (±1, 0, 0) and permutations: 6 points.
void orbit_axis(QuadratureRule& rule, double w) {
    for (int dir = 0; dir < 3; ++dir) {
        for (int s = -1; s <= 1; s += 2) {
            double p[3] = {0.0, 0.0, 0.0};
            p[dir] = s;
            push(rule, p[0], p[1], p[2], w);
        }
    }
}

// (0, ±a, ±a) with a = 1/sqrt(2) and permutations: 12 points.
void orbit_edge(QuadratureRule& rule, double w) {
    const double a = std::sqrt(0.5);
    for (int dir = 0; dir < 3; ++dir) {
        for (int s1 = -1; s1 <= 1; s1 += 2) {
            for (int s2 = -1; s2 <= 1; s2 += 2) {
                double p[3];
                p[dir] = 0.0;
                p[(dir + 1) % 3] = s1 * a;
                p[(dir + 2) % 3] = s2 * a;
                push(rule, p[0], p[1], p[2], w);
            }
        }
    }
}

// (±a, ±a, ±a) with a = 1/sqrt(3): 8 points.
void orbit_cube(QuadratureRule& rule, double w) {
    const double a = std::sqrt(1.0 / 3.0);
    for (int s3 = -1; s3 <= 1; s3 += 2) {
        for (int s2 = -1; s2 <= 1; s2 += 2) {
            for (int s1 = -1; s1 <= 1; s1 += 2) {
                push(rule, s1 * a, s2 * a, s3 * a, w);
            }
        }
    }
}

// (±a, ±a, ±b) with b = sqrt(1 - 2a^2) and permutations: 24 points.
void orbit_aab(QuadratureRule& rule, double w, double a) {
    const double b = std::sqrt(1.0 - 2.0 * a * a);
    for (int dir = 0; dir < 3; ++dir) {
        for (int s3 = -1; s3 <= 1; s3 += 2) {
            for (int s2 = -1; s2 <= 1; s2 += 2) {
                for (int s1 = -1; s1 <= 1; s1 += 2) {
                    double p[3];
                    p[dir] = s3 * b;
                    p[(dir + 1) % 3] = s1 * a;
                    p[(dir + 2) % 3] = s2 * a;
                    push(rule, p[0], p[1], p[2], w);
                }
            }
        }
    }
}

// (±a, ±b, 0) with b = sqrt(1 - a^2) and permutations: 24 points.
void orbit_ab0(QuadratureRule& rule, double w, double a) {
    const double b = std::sqrt(1.0 - a * a);
    double first = a, second = b;
    for (int swap = 0; swap < 2; ++swap) {
        for (int dir = 0; dir < 3; ++dir) {
            for (int s2 = -1; s2 <= 1; s2 += 2) {
                for (int s1 = -1; s1 <= 1; s1 += 2) {
                    double p[3];
                    p[dir] = 0.0;
                    p[(dir + 1) % 3] = s1 * first;
                    p[(dir + 2) % 3] = s2 * second;
                    push(rule, p[0], p[1], p[2], w);
                }
            }
        }
        first = b;
        second = a;
    }
}

// (±a, ±b, ±c) with c = sqrt(1 - a^2 - b^2), all permutations: 48 points.
void orbit_abc(QuadratureRule& rule, double w, double a, double b) {
    const double c = std::sqrt(1.0 - a * a - b * b);
    const double v[3] = {a, b, c};
    const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                             {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    for (const auto& perm : perms) {
        for (int s3 = -1; s3 <= 1; s3 += 2) {
            for (int s2 = -1; s2 <= 1; s2 += 2) {
                for (int s1 = -1; s1 <= 1; s1 += 2) {
                    push(rule, s1 * v[perm[0]], s2 * v[perm[1]], s3 * v[perm[2]], w);
                }
            }
        }
    }
}

QuadratureRule lebedev_302() {
    QuadratureRule rule;
    rule.n = 3;
    rule.exact_degree = 29;
    orbit_axis(rule, .8545911725128148e-3);
    orbit_cube(rule, .3599119285025571e-2);
    orbit_aab(rule, .3449788424305883e-2, .3515640345570105);
    orbit_aab(rule, .3604822601419882e-2, .6566329410219612);
    orbit_aab(rule, .3576729661743367e-2, .4729054132581005);
    orbit_aab(rule, .2352101413689164e-2, .0961830852261478);
    orbit_aab(rule, .3108953122413675e-2, .2219645236294178);
    orbit_aab(rule, .3650045807677255e-2, .7011766416089545);
    orbit_ab0(rule, .2982344963171804e-2, .2644152887060663);
    orbit_ab0(rule, .3600820932216460e-2, .5718955891878961);
    orbit_abc(rule, .3571540554273387e-2, .2510034751770465, .8000727494073951);
    orbit_abc(rule, .3392312205006170e-2, .1233548532583327, .4127724083168531);
    return rule;
}

QuadratureRule lebedev_434() {
    QuadratureRule rule;
    rule.n = 3;
    rule.exact_degree = 35;
    orbit_axis(rule, .5265897968224436e-3);
    orbit_edge(rule, .2548219972002607e-2);
    orbit_cube(rule, .2512317418927307e-2);
    orbit_aab(rule, .2530403801186355e-2, .6909346307509111);
    orbit_aab(rule, .2014279020918528e-2, .1774836054609158);
    orbit_aab(rule, .2501725168402936e-2, .4914342637784746);
    orbit_aab(rule, .2513267174597564e-2, .6456664707424256);
    orbit_aab(rule, .2302694782227416e-2, .2861289010307638);
    orbit_aab(rule, .1462495621594614e-2, .0756808436717802);
    orbit_aab(rule, .2445373437312980e-2, .3927259763368002);
    orbit_ab0(rule, .2417442375638981e-2, .8818132877794288);
    orbit_ab0(rule, .1910951282179532e-2, .9776428111182649);
    orbit_abc(rule, .2416930044324775e-2, .2054823696403044, .8689460322872412);
    orbit_abc(rule, .2512236854563495e-2, .5905157048925271, .7999278543857286);
    orbit_abc(rule, .2496644054553086e-2, .5550152361076807, .7717462626915901);
    orbit_abc(rule, .2236607760437849e-2, .9371809858553722, .3344363145343455);
    return rule;
}

QuadratureRule lebedev_590() {
    QuadratureRule rule;
    rule.n = 3;
    rule.exact_degree = 41;
    orbit_axis(rule, .3095121295306187e-3);
    orbit_cube(rule, .1852379698597489e-2);
    orbit_aab(rule, .1871790639277744e-2, .7040954938227469);
    orbit_aab(rule, .1858812585438317e-2, .6807744066455244);
    orbit_aab(rule, .1852028828296213e-2, .6372546939258752);
    orbit_aab(rule, .1846715956151242e-2, .5044419707800358);
    orbit_aab(rule, .1818471778162769e-2, .4215761784010967);
    orbit_aab(rule, .1749564657281154e-2, .3317920736472123);
    orbit_aab(rule, .1617210647254411e-2, .2384736701421887);
    orbit_aab(rule, .1384737234851692e-2, .1459036449157763);
    orbit_aab(rule, .9764331165051050e-3, .0609503411550720);
    orbit_ab0(rule, .1857161196774078e-2, .6116843442009876);
    orbit_ab0(rule, .1705153996395864e-2, .3964755348199858);
    orbit_ab0(rule, .1300321685886048e-2, .1724782009907724);
    orbit_abc(rule, .1842866472905286e-2, .5610263808622060, .3518280927733519);
    orbit_abc(rule, .1802658934377451e-2, .4742392842551980, .2634716655937950);
    orbit_abc(rule, .1849830560443660e-2, .5984126497885380, .1816640840360209);
    orbit_abc(rule, .1713904507106709e-2, .3791035407695563, .1720795225656878);
    orbit_abc(rule, .1555213603396808e-2, .2778673190586244, .0821302158193251);
    orbit_abc(rule, .1802239128008525e-2, .5033564271075117, .0899920584207488);
    return rule;
}

double canonical_uniform(std::mt19937& rng) {
    return (static_cast<double>(rng()) + 0.5) * (1.0 / 4294967296.0);
}

} // namespace

QuadratureRule circle_rule(int node_count) {
    if (node_count < 1) throw dimension_error("circle_rule: need at least one node");
    QuadratureRule rule;
    rule.n = 2;
    rule.exact_degree = node_count - 1;
    rule.points.reserve(std::size_t(node_count));
    rule.weights.assign(std::size_t(node_count), 1.0 / node_count);
    for (int k = 0; k < node_count; ++k) {
        const double t = 2.0 * kPi * k / node_count;
        rule.points.push_back({std::cos(t), std::sin(t)});
    }
    return rule;
}

QuadratureRule lebedev_rule(int point_count) {
    switch (point_count) {
        case 302: return lebedev_302();
        case 434: return lebedev_434();
        case 590: return lebedev_590();
        default:
            throw dimension_error("lebedev_rule: unsupported size " +
                                  std::to_string(point_count) + " (use 302, 434 or 590)");
    }
}

QuadratureRule sphere_rule(int n, int level) {
    if (level < 0 || level > 2) throw dimension_error("sphere_rule: level must be 0, 1 or 2");
    if (n == 2) return circle_rule(256 << level);
    if (n == 3) return lebedev_rule(level == 0 ? 302 : (level == 1 ? 434 : 590));
    throw dimension_error("sphere_rule: no rule for n=" + std::to_string(n));
}

SpinRule spin_circle_rule(int node_count) {
    if (node_count < 1) throw dimension_error("spin_circle_rule: need at least one node");
    SpinRule rule;
    rule.n = 2;
    rule.weights.assign(std::size_t(node_count), 1.0 / node_count);
    rule.points.reserve(std::size_t(node_count));
    for (int k = 0; k < node_count; ++k) {
        const double t = 2.0 * kPi * k / node_count;
        Multivector w(2);
        w[0b00] = std::cos(t);
        w[0b11] = std::sin(t);
        rule.points.push_back(w);
    }
    return rule;
}

SpinRule spin_sample_rule(int sample_count, unsigned seed) {
    if (sample_count < 1) throw dimension_error("spin_sample_rule: need at least one sample");
    SpinRule rule;
    rule.n = 3;
    rule.weights.assign(std::size_t(sample_count), 1.0 / sample_count);
    rule.points.reserve(std::size_t(sample_count));
    std::mt19937 rng(seed);
    while (rule.points.size() < std::size_t(sample_count)) {
        double q[4];
        for (int i = 0; i < 4; i += 2) {
            const double u1 = canonical_uniform(rng);
            const double u2 = canonical_uniform(rng);
            const double radius = std::sqrt(-2.0 * std::log(u1));
            q[i] = radius * std::cos(2.0 * kPi * u2);
            q[i + 1] = radius * std::sin(2.0 * kPi * u2);
        }
        const double norm = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
        if (norm < 1e-8) continue;
        Multivector w(3);
        w[0b000] = q[0] / norm;
        w[0b011] = q[1] / norm;
        w[0b101] = q[2] / norm;
        w[0b110] = q[3] / norm;
        rule.points.push_back(w);
    }
    return rule;
}

SpinRule rotor_rule(int n, int level) {
    if (level < 0 || level > 1) throw dimension_error("rotor_rule: level must be 0 or 1");
    if (n == 2) return spin_circle_rule(128 << level);
    if (n == 3) return spin_sample_rule(level == 0 ? 4096 : 16384);
    throw dimension_error("rotor_rule: no rule for n=" + std::to_string(n));
}

} // namespace cliffspec
