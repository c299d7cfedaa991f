#include "cliffspec/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "cliffspec/errors.hpp"
#include "cliffspec/parallel.hpp"

namespace cliffspec {

namespace {

constexpr int kMaxBasisDegree = 8;

// Polynomial in the ambient coordinates with Clifford coefficients.  Each
// term is coeff * x^exps; the monomial is scalar, so it commutes with
// everything and only the coefficients carry algebra structure.
struct Poly {
    int n = 0;
    std::map<std::vector<int>, Multivector> terms;
};

void poly_add_term(Poly& p, const std::vector<int>& exps, const Multivector& c) {
    auto it = p.terms.find(exps);
    if (it == p.terms.end()) {
        p.terms.emplace(exps, c);
    } else {
        it->second += c;
    }
}

Poly poly_mul(const Poly& f, const Poly& g) {
    Poly out;
    out.n = f.n;
    std::vector<int> e(static_cast<std::size_t>(f.n));
    for (const auto& [ea, ca] : f.terms) {
        for (const auto& [eb, cb] : g.terms) {
            for (int i = 0; i < f.n; ++i) {
                e[static_cast<std::size_t>(i)] = ea[static_cast<std::size_t>(i)] +
                                                 eb[static_cast<std::size_t>(i)];
            }
            poly_add_term(out, e, ca * cb);
        }
    }
    return out;
}

// acc -= f * c with a right Clifford coefficient.
void poly_sub_scaled(Poly& acc, const Poly& f, const Multivector& c) {
    for (const auto& [e, a] : f.terms) poly_add_term(acc, e, -(a * c));
}

Poly poly_scale_right(Poly f, const Multivector& c) {
    for (auto& [e, a] : f.terms) a = a * c;
    return f;
}

Multivector poly_eval(const Poly& f, const std::vector<double>& x) {
    Multivector acc(f.n);
    for (const auto& [e, c] : f.terms) {
        double mono = 1.0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (int k = 0; k < e[i]; ++k) mono *= x[i];
        }
        acc += c * mono;
    }
    return acc;
}

// Mean of the monomial x^exps over S^{n-1} with total mass 1: zero unless
// every exponent is even, otherwise
//   prod_i (e_i - 1)!!  /  ( n (n+2) ... (n + |e| - 2) ).
double monomial_mean(const std::vector<int>& exps, int n) {
    int total = 0;
    for (int e : exps) {
        if (e % 2 != 0) return 0.0;
        total += e;
    }
    double val = 1.0;
    for (int e : exps) {
        for (int k = e - 1; k >= 1; k -= 2) val *= double(k);
    }
    for (int k = 0; 2 * k < total; ++k) val /= double(n + 2 * k);
    return val;
}

// Exact sphere mean of conj(f) * g.
Multivector poly_inner(const Poly& f, const Poly& g) {
    Multivector acc(f.n);
    std::vector<int> e(static_cast<std::size_t>(f.n));
    for (const auto& [ea, ca] : f.terms) {
        for (const auto& [eb, cb] : g.terms) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            const double w = monomial_mean(e, f.n);
            if (w != 0.0) acc += (conjugation(ca) * cb) * w;
        }
    }
    return acc;
}

// The degree-one monogenic variables z_j = x_j + e1 e_j x_1 for j = 2..n.
std::vector<Poly> monogenic_variables(int n) {
    std::vector<Poly> vars;
    for (int j = 2; j <= n; ++j) {
        Poly z;
        z.n = n;
        std::vector<int> exps(static_cast<std::size_t>(n), 0);
        exps[static_cast<std::size_t>(j - 1)] = 1;
        poly_add_term(z, exps, Multivector(n, 1.0));
        exps[static_cast<std::size_t>(j - 1)] = 0;
        exps[0] = 1;
        poly_add_term(z, exps, Multivector::blade(n, 1u | (1u << (j - 1)), 1.0));
        vars.push_back(std::move(z));
    }
    return vars;
}

// Mean of the products of the word's variables over all distinct arrangements.
Poly symmetrized_product(int n, const MultiIndex& m, const std::vector<Poly>& vars) {
    std::vector<int> word;
    for (int j = 2; j <= n; ++j) {
        word.insert(word.end(), static_cast<std::size_t>(m[static_cast<std::size_t>(j - 1)]), j);
    }
    Poly acc;
    acc.n = n;
    if (word.empty()) {
        poly_add_term(acc, std::vector<int>(static_cast<std::size_t>(n), 0), Multivector(n, 1.0));
        return acc;
    }
    std::sort(word.begin(), word.end());
    int count = 0;
    do {
        Poly prod = vars[static_cast<std::size_t>(word[0] - 2)];
        for (std::size_t i = 1; i < word.size(); ++i) {
            prod = poly_mul(prod, vars[static_cast<std::size_t>(word[i] - 2)]);
        }
        for (const auto& [e, c] : prod.terms) poly_add_term(acc, e, c);
        ++count;
    } while (std::next_permutation(word.begin(), word.end()));
    for (auto& [e, c] : acc.terms) c /= double(count);
    return acc;
}

std::vector<MultiIndex> degree_block_indices(int n, int d) {
    std::vector<MultiIndex> out;
    if (n == 2) {
        out.push_back(MultiIndex{0, d});
    } else {
        for (int m2 = 0; m2 <= d; ++m2) out.push_back(MultiIndex{0, m2, d - m2});
    }
    return out;
}

// Inverse square root of a norm value.  Norms of the orthonormalization are
// invariant under Clifford conjugation, which confines them to the scalars
// (n = 2) or the scalar + pseudoscalar center (n = 3); anything else means
// the construction broke down.
Multivector central_inv_sqrt(const Multivector& nrm, int n) {
    const double scale = std::max(1.0, nrm.norm());
    const unsigned top = (1u << n) - 1u;
    double residue2 = 0.0;
    for (unsigned mask = 1; mask < static_cast<unsigned>(nrm.size()); ++mask) {
        if (n == 3 && mask == top) continue;
        residue2 += nrm[mask] * nrm[mask];
    }
    if (std::sqrt(residue2) > 1e-10 * scale) {
        throw degeneracy_error("v_basis: block norm has a non-central part");
    }
    const double alpha = nrm.scalar_part();
    if (n == 2) {
        if (alpha <= 1e-12 * scale) throw degeneracy_error("v_basis: degenerate block norm");
        return Multivector(n, 1.0 / std::sqrt(alpha));
    }
    const double beta = nrm[top];
    const double lam_p = alpha + beta;
    const double lam_m = alpha - beta;
    if (lam_p <= 1e-12 * scale || lam_m <= 1e-12 * scale) {
        throw degeneracy_error("v_basis: degenerate block norm");
    }
    const double p = 0.5 * (1.0 / std::sqrt(lam_p) + 1.0 / std::sqrt(lam_m));
    const double q = 0.5 * (1.0 / std::sqrt(lam_p) - 1.0 / std::sqrt(lam_m));
    Multivector c(n, p);
    c[top] = q;
    return c;
}

struct BasisEntry {
    MultiIndex index;
    Poly poly;
    std::vector<Multivector> mix;  ///< right coefficients over the raw block
};

// Orthonormalize one fixed-degree block of symmetrized products with right
// Clifford coefficients, keeping track of the mixing column of each member.
std::vector<BasisEntry> build_block(int n, int d, const std::vector<Poly>& vars) {
    const std::vector<MultiIndex> indices = degree_block_indices(n, d);
    const std::size_t count = indices.size();
    std::vector<Poly> raw;
    raw.reserve(count);
    for (const MultiIndex& m : indices) raw.push_back(symmetrized_product(n, m, vars));

    std::vector<BasisEntry> block;
    block.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Poly g = raw[i];
        std::vector<Multivector> col(count, Multivector(n));
        col[i] = Multivector(n, 1.0);
        for (std::size_t j = 0; j < i; ++j) {
            const Multivector c = poly_inner(block[j].poly, raw[i]);
            poly_sub_scaled(g, block[j].poly, c);
            for (std::size_t t = 0; t < count; ++t) col[t] -= block[j].mix[t] * c;
        }
        const Multivector scale = central_inv_sqrt(poly_inner(g, g), n);
        g = poly_scale_right(std::move(g), scale);
        for (std::size_t t = 0; t < count; ++t) col[t] = col[t] * scale;
        block.push_back(BasisEntry{indices[i], std::move(g), std::move(col)});
    }

    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < count; ++j) {
            Multivector gram = poly_inner(block[i].poly, block[j].poly);
            if (i == j) gram -= Multivector(n, 1.0);
            if (gram.norm() > 1e-8) {
                throw degeneracy_error("v_basis: orthonormalization failed");
            }
        }
    }
    return block;
}

struct BasisTable {
    std::vector<std::vector<BasisEntry>> blocks;  ///< blocks[d], d = 0..8
};

const BasisTable& basis_table(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<BasisTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        auto table = std::make_unique<BasisTable>();
        const std::vector<Poly> vars = monogenic_variables(n);
        for (int d = 0; d <= kMaxBasisDegree; ++d) {
            table->blocks.push_back(build_block(n, d, vars));
        }
        it = cache.emplace(n, std::move(table)).first;
    }
    return *it->second;
}

const BasisEntry& basis_entry(const MultiIndex& m) {
    const int n = static_cast<int>(m.size());
    if (n != 2 && n != 3) {
        throw dimension_error("v_basis: supported dimensions are 2 and 3");
    }
    const int d = multi_degree(m);
    if (m[0] != 0) {
        throw domain_error("v_basis: the slot-1 variable vanishes identically, m_1 must be 0");
    }
    if (d > kMaxBasisDegree) {
        throw domain_error("v_basis: total degree above " + std::to_string(kMaxBasisDegree) +
                           " is not supported");
    }
    for (const BasisEntry& entry : basis_table(n).blocks[static_cast<std::size_t>(d)]) {
        if (entry.index == m) return entry;
    }
    throw domain_error("v_basis: index not found");
}

// Letters of the fractional-linear formulas attached to a group element: the
// top-left and bottom-left matrix entries and their involutions.
struct RhoKernel {
    int n = 0;
    double tol = kDefaultTol;
    Multivector a_inv, b_inv;  ///< grade involutions (the weight letters)
    Multivector a_bar, b_bar;  ///< conjugations (the argument letters)
};

RhoKernel rho_kernel(const MoebElement& g, double tol) {
    const CliffMat2 mat = from_uw(make_moeb(g.u, g.w));
    RhoKernel k{static_cast<int>(g.u.size()), tol,
                grade_involution(mat.a), grade_involution(mat.c),
                conjugation(mat.a), conjugation(mat.c)};
    return k;
}

// Weight factor of the representation at the embedded point x; its modulus
// also equals the modulus of the Moebius denominator at x.
Multivector rho_base(const RhoKernel& k, const Multivector& xv) {
    return k.a_inv + xv * k.b_inv;
}

} // namespace

int multi_degree(const MultiIndex& m) {
    int total = 0;
    for (int e : m) {
        if (e < 0) throw domain_error("multi_degree: negative index entry");
        total += e;
    }
    return total;
}

SphereFunction rho1_apply(const MoebElement& g, const SphereFunction& f, double tol) {
    if (static_cast<int>(g.u.size()) != f.n) {
        throw dimension_error("rho1_apply: group element and function dimensions differ");
    }
    const RhoKernel k = rho_kernel(g, tol);
    SphereFunction out;
    out.n = f.n;
    out.eval = [k, f](const std::vector<double>& x) {
        const Multivector xv = vector_embed(x);
        const Multivector base = rho_base(k, xv);
        const double mod = base.norm();
        if (mod <= k.tol) {
            throw domain_error("rho1_apply: weight factor is singular at the evaluation point");
        }
        const Multivector arg = (k.a_bar * xv - k.b_bar) * base / (mod * mod);
        const Multivector value = f(vector_part(arg));
        return base * (1.0 / std::pow(mod, k.n)) * value;
    };
    return out;
}

SphereFunction coherent_state(const MoebElement& g, double tol) {
    const RhoKernel k = rho_kernel(g, tol);
    SphereFunction out;
    out.n = k.n;
    out.eval = [k](const std::vector<double>& x) {
        const Multivector base = rho_base(k, vector_embed(x));
        const double mod = base.norm();
        if (mod <= k.tol) {
            throw domain_error("coherent_state: kernel is singular at the evaluation point");
        }
        return base / std::pow(mod, k.n);
    };
    return out;
}

Multivector wavelet_transform(const SphereFunction& f, const MoebElement& g,
                              const QuadratureRule& quad) {
    if (static_cast<int>(g.u.size()) != f.n) {
        throw dimension_error("wavelet_transform: group element and function dimensions differ");
    }
    return inner_product(coherent_state(g), f, quad);
}

Multivector cauchy_integral(const SphereFunction& f, const std::vector<double>& u,
                            const QuadratureRule& quad) {
    const int n = quad.n;
    if (f.n != n || static_cast<int>(u.size()) != n) {
        throw dimension_error("cauchy_integral: dimension mismatch");
    }
    double r2 = 0.0;
    for (double c : u) r2 += c * c;
    const double r = std::sqrt(r2);
    if (r >= 1.0) {
        throw domain_error("cauchy_integral: the evaluation point must lie inside the unit ball");
    }
    if (quad.exact_degree <= 8 || std::pow(r, quad.exact_degree - 8) > 1e-6) {
        throw resolution_error("cauchy_integral: |u| = " + std::to_string(r) +
                               " is too close to the sphere for a rule of exactness degree " +
                               std::to_string(quad.exact_degree));
    }
    const Multivector uv = vector_embed(u);
    std::vector<Multivector> terms(quad.size(), Multivector(n));
    parallel_for(quad.size(), [&](std::size_t i) {
        const Multivector xv = vector_embed(quad.points[i]);
        const Multivector diff = xv - uv;
        const Multivector kernel = -(diff / std::pow(diff.norm(), n));
        terms[i] = kernel * xv * f(quad.points[i]) * quad.weights[i];
    });
    return pairwise_reduce(std::move(terms));
}

Multivector vacuum_transform(const MoebElement& g) {
    const MoebElement valid = make_moeb(g.u, g.w);
    const int n = static_cast<int>(valid.u.size());
    double r2 = 0.0;
    for (double c : valid.u) r2 += c * c;
    return reversion(valid.w) * std::pow(1.0 - r2, 0.5 * (n - 1));
}

SphereFunction v_basis(const MultiIndex& m) {
    const BasisEntry& entry = basis_entry(m);
    const Poly* poly = &entry.poly;
    SphereFunction out;
    out.n = static_cast<int>(m.size());
    out.eval = [poly](const std::vector<double>& x) { return poly_eval(*poly, x); };
    return out;
}

BasisExpansion v_basis_expansion(const MultiIndex& m) {
    const BasisEntry& entry = basis_entry(m);
    BasisExpansion out;
    out.indices = degree_block_indices(static_cast<int>(m.size()), multi_degree(m));
    out.coeffs = entry.mix;
    return out;
}

MultiIndex creation(const MultiIndex& m, int j) {
    multi_degree(m);
    if (j < 1 || j > static_cast<int>(m.size())) {
        throw dimension_error("creation: slot out of range");
    }
    MultiIndex out = m;
    ++out[static_cast<std::size_t>(j - 1)];
    return out;
}

WeightedIndex annihilation(const MultiIndex& m, int j) {
    multi_degree(m);
    if (j < 1 || j > static_cast<int>(m.size())) {
        throw dimension_error("annihilation: slot out of range");
    }
    WeightedIndex out{m, m[static_cast<std::size_t>(j - 1)]};
    if (out.weight > 0) --out.index[static_cast<std::size_t>(j - 1)];
    return out;
}

Multivector token_coeff(const MultiIndex& k, const MultiIndex& m, const MoebElement& g,
                        const QuadratureRule& quad) {
    if (k.size() != m.size()) {
        throw dimension_error("token_coeff: index lengths differ");
    }
    return inner_product(v_basis(m), rho1_apply(g, v_basis(k)), quad);
}

} // namespace cliffspec
