#include "cliffspec/sphere_function.hpp"

#include <string>
#include <utility>

#include "cliffspec/errors.hpp"
#include "cliffspec/parallel.hpp"

namespace cliffspec {

Multivector SphereFunction::operator()(const std::vector<double>& x) const {
    if (!eval) throw domain_error("SphereFunction: empty evaluator");
    if (int(x.size()) != n) {
        throw dimension_error("SphereFunction: point has " + std::to_string(x.size()) +
                              " coordinates, function expects " + std::to_string(n));
    }
    return eval(x);
}

SphereFunction constant_function(int n, double value) {
    return constant_function(Multivector(n, value));
}

SphereFunction constant_function(Multivector value) {
    const int n = value.generators();
    return SphereFunction{n, [v = std::move(value)](const std::vector<double>&) { return v; }};
}

std::vector<Multivector> sample_grid(const SphereFunction& f, const QuadratureRule& quad) {
    if (f.n != quad.n) {
        throw dimension_error("sample_grid: rule and function dimensions differ");
    }
    std::vector<Multivector> samples(quad.size(), Multivector(f.n));
    parallel_for(quad.size(), [&](std::size_t i) { samples[i] = f(quad.points[i]); });
    return samples;
}

Multivector sphere_integral(const SphereFunction& f, const QuadratureRule& quad) {
    std::vector<Multivector> terms = sample_grid(f, quad);
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i] *= quad.weights[i];
    return pairwise_reduce(std::move(terms));
}

Multivector inner_product(const SphereFunction& f1, const SphereFunction& f2,
                          const QuadratureRule& quad) {
    if (f1.n != f2.n) {
        throw dimension_error("inner_product: functions over different spheres");
    }
    if (f1.n != quad.n) {
        throw dimension_error("inner_product: rule and function dimensions differ");
    }
    std::vector<Multivector> terms(quad.size(), Multivector(f1.n));
    parallel_for(quad.size(), [&](std::size_t i) {
        terms[i] = conjugation(f1(quad.points[i])) * f2(quad.points[i]) * quad.weights[i];
    });
    return pairwise_reduce(std::move(terms));
}

} // namespace cliffspec
