#include "cliffspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "cliffspec/calculus.hpp"
#include "cliffspec/complex_disk.hpp"
#include "cliffspec/errors.hpp"

namespace cliffspec {

namespace {

using complexd = std::complex<double>;

bool point_less(const SpectrumPoint& a, const SpectrumPoint& b) {
    if (a.u.real() != b.u.real()) return a.u.real() < b.u.real();
    if (a.u.imag() != b.u.imag()) return a.u.imag() < b.u.imag();
    return a.k < b.k;
}

bool complex_less(complexd a, complexd b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

void validate_matrix(const ComplexMatrix& M) {
    if (M.rows() == 0 || M.rows() != M.cols())
        throw dimension_error("jordan_structure: the matrix must be square and nonempty");
    if (!M.allFinite()) throw domain_error("jordan_structure: matrix entries must be finite");
}

// Unitary similarity swapping the diagonal entries p and p+1 of the upper
// triangular T; the same rotation is accumulated into the columns of U.
void swap_adjacent(ComplexMatrix& T, ComplexMatrix& U, int p) {
    const complexd t11 = T(p, p);
    const complexd t22 = T(p + 1, p + 1);
    complexd x1 = T(p, p + 1);
    complexd x2 = t22 - t11;
    const double nx = std::sqrt(std::norm(x1) + std::norm(x2));
    if (nx == 0.0) return;
    x1 /= nx;
    x2 /= nx;
    Eigen::Matrix2cd G;
    G << x1, -std::conj(x2), x2, std::conj(x1);
    T.middleRows(p, 2) = G.adjoint() * T.middleRows(p, 2);
    T.middleCols(p, 2) = T.middleCols(p, 2) * G;
    U.middleCols(p, 2) = U.middleCols(p, 2) * G;
    T(p + 1, p) = complexd(0.0);
}

struct ClusterWork {
    complexd eigenvalue;
    std::vector<int> sizes;
    ComplexMatrix block;   // shifted Schur block, eigenvalue already subtracted
    ComplexMatrix columns; // orthonormal basis of the invariant subspace
};

struct Analysis {
    double scale = 0.0;
    std::vector<ClusterWork> clusters;
};

// Indices of each cluster under single-linkage merging with the cut placed
// at the largest relative gap of the minimum-spanning-tree edge lengths.
std::vector<std::vector<int>> cluster_indices(const std::vector<complexd>& lam, double floor_dist,
                                              double sentinel) {
    const int d = static_cast<int>(lam.size());
    if (d == 1) return {{0}};

    struct Edge {
        double w;
        int a, b;
    };
    std::vector<Edge> mst;
    std::vector<char> used(d, 0);
    std::vector<double> best(d, std::numeric_limits<double>::infinity());
    std::vector<int> from(d, 0);
    used[0] = 1;
    for (int i = 1; i < d; ++i) best[i] = std::abs(lam[i] - lam[0]);
    for (int round = 1; round < d; ++round) {
        int pick = -1;
        for (int i = 0; i < d; ++i)
            if (!used[i] && (pick < 0 || best[i] < best[pick])) pick = i;
        mst.push_back({best[pick], from[pick], pick});
        used[pick] = 1;
        for (int i = 0; i < d; ++i)
            if (!used[i]) {
                double w = std::abs(lam[i] - lam[pick]);
                if (w < best[i]) {
                    best[i] = w;
                    from[i] = pick;
                }
            }
    }
    std::sort(mst.begin(), mst.end(), [](const Edge& x, const Edge& y) { return x.w < y.w; });

    // Candidate cut after the k smallest edges; the winner maximizes the
    // ratio from the last kept distance to the first removed one.
    double best_ratio = -1.0, second_ratio = -1.0;
    int best_k = 0, second_k = 0;
    for (int k = 0; k <= d - 1; ++k) {
        const double kept = k == 0 ? floor_dist : std::max(mst[k - 1].w, floor_dist);
        const double removed = k == d - 1 ? sentinel : std::max(mst[k].w, floor_dist);
        const double ratio = removed / kept;
        if (ratio > best_ratio) {
            second_ratio = best_ratio;
            second_k = best_k;
            best_ratio = ratio;
            best_k = k;
        } else if (ratio > second_ratio) {
            second_ratio = ratio;
            second_k = k;
        }
    }
    if (best_ratio < 10.0) {
        std::ostringstream msg;
        msg << "jordan_structure: eigenvalue clustering is ambiguous (gap ratio " << best_ratio
            << "); candidates: " << d - best_k << " clusters or " << d - second_k << " clusters";
        throw ambiguity_error(msg.str());
    }

    std::vector<int> parent(d);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int k = 0; k < best_k; ++k) parent[find(mst[k].a)] = find(mst[k].b);

    std::vector<std::vector<int>> groups;
    std::vector<int> group_of(d, -1);
    for (int i = 0; i < d; ++i) {
        int r = find(i);
        if (group_of[r] < 0) {
            group_of[r] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<std::size_t>(group_of[r])].push_back(i);
    }
    return groups;
}

// Weyr counts of the near-nilpotent N: c_j = rank(N^{j-1}) - rank(N^j),
// ranks read off singular values against floors that track both the
// requested relative tolerance and the cluster resolution.
std::vector<int> weyr_counts(const ComplexMatrix& N, double rank_tol, double cluster_floor,
                             complexd eigenvalue) {
    const int mu = static_cast<int>(N.rows());
    const double nu = N.jacobiSvd().singularValues()(0);
    const double growth = std::max(nu, cluster_floor);

    std::vector<int> ranks{mu};
    ComplexMatrix power = ComplexMatrix::Identity(mu, mu);
    double rel = rank_tol, res = cluster_floor;
    for (int j = 1; j <= mu && ranks.back() > 0; ++j) {
        power = power * N;
        Eigen::JacobiSVD<ComplexMatrix> svd(power);
        const auto& sv = svd.singularValues();
        rel *= nu;
        if (j > 1) res *= growth;
        const double floor_j = std::max(rel, res);
        int rank = 0;
        while (rank < mu && sv(rank) > floor_j) ++rank;
        const double above = rank > 0 ? sv(rank - 1) / floor_j : std::numeric_limits<double>::infinity();
        const double below = rank < mu ? floor_j / sv(rank) : std::numeric_limits<double>::infinity();
        if (std::min(above, below) < 3.0) {
            std::ostringstream msg;
            msg << "jordan_structure: rank of the " << j
                << "-th power is ambiguous near eigenvalue (" << eigenvalue.real() << ", "
                << eigenvalue.imag() << ")";
            throw ambiguity_error(msg.str());
        }
        if (rank > ranks.back())
            throw ambiguity_error("jordan_structure: non-monotone rank sequence within a cluster");
        ranks.push_back(rank);
    }
    if (ranks.back() != 0)
        throw ambiguity_error("jordan_structure: a cluster block failed to reach nilpotency");

    std::vector<int> counts;
    for (std::size_t j = 1; j < ranks.size(); ++j) counts.push_back(ranks[j - 1] - ranks[j]);
    for (std::size_t j = 1; j < counts.size(); ++j)
        if (counts[j] > counts[j - 1])
            throw ambiguity_error("jordan_structure: inconsistent Weyr sequence within a cluster");
    return counts;
}

std::vector<int> sizes_from_counts(const std::vector<int>& counts) {
    std::vector<int> sizes;
    for (int b = 1; b <= counts.front(); ++b) {
        int size = 0;
        for (int c : counts)
            if (c >= b) ++size;
        sizes.push_back(size);
    }
    return sizes;
}

Analysis analyze(const ComplexMatrix& M, double cluster_tol, double rank_tol) {
    validate_matrix(M);
    const int d = static_cast<int>(M.rows());

    Analysis out;
    out.scale = M.jacobiSvd().singularValues()(0);
    if (cluster_tol <= 0.0) cluster_tol = 1e-7 * out.scale;
    if (rank_tol <= 0.0) rank_tol = 1e-8;
    const double cluster_floor = std::max(cluster_tol, 1e-300);

    Eigen::ComplexSchur<ComplexMatrix> schur(M);
    if (schur.info() != Eigen::Success)
        throw degeneracy_error("jordan_structure: the Schur iteration did not converge");
    std::vector<complexd> lam(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) lam[static_cast<std::size_t>(i)] = schur.matrixT()(i, i);

    for (const std::vector<int>& group :
         cluster_indices(lam, cluster_floor, std::max(out.scale, 1.0))) {
        ComplexMatrix T = schur.matrixT();
        ComplexMatrix U = schur.matrixU();
        std::vector<int> pos = group;
        std::sort(pos.begin(), pos.end());
        for (int i = 0; i < static_cast<int>(pos.size()); ++i)
            for (int q = pos[static_cast<std::size_t>(i)]; q > i; --q) {
                swap_adjacent(T, U, q - 1);
                for (int j = i + 1; j < static_cast<int>(pos.size()); ++j)
                    if (pos[static_cast<std::size_t>(j)] == q - 1) pos[static_cast<std::size_t>(j)] = q;
            }
        const int mu = static_cast<int>(group.size());

        ClusterWork work;
        work.eigenvalue = complexd(0.0);
        for (int i = 0; i < mu; ++i) work.eigenvalue += T(i, i);
        work.eigenvalue /= static_cast<double>(mu);
        work.block = T.topLeftCorner(mu, mu) - work.eigenvalue * ComplexMatrix::Identity(mu, mu);
        work.columns = U.leftCols(mu);
        if (mu == 1)
            work.sizes = {1};
        else
            work.sizes = sizes_from_counts(
                weyr_counts(work.block, rank_tol, cluster_floor, work.eigenvalue));
        out.clusters.push_back(std::move(work));
    }

    std::sort(out.clusters.begin(), out.clusters.end(),
              [](const ClusterWork& a, const ClusterWork& b) {
                  return complex_less(a.eigenvalue, b.eigenvalue);
              });
    return out;
}

JordanStructure structure_of(const Analysis& analysis) {
    JordanStructure s;
    for (const ClusterWork& work : analysis.clusters)
        s.clusters.push_back({work.eigenvalue, work.sizes});
    return s;
}

JointSpectrum expand(JordanStructure structure) {
    JointSpectrum S;
    for (const JordanCluster& cluster : structure.clusters)
        for (int size : cluster.block_sizes)
            for (int k = 0; k < size; ++k) S.points.push_back({cluster.eigenvalue, k});
    std::sort(S.points.begin(), S.points.end(), point_less);
    S.structure = std::move(structure);
    return S;
}

// Jordan chains of the near-nilpotent N with the block sizes already known:
// chain tops are picked level by level, each maximally independent from the
// lower kernel and from the vectors longer chains push down.
ComplexMatrix jordan_basis(const ComplexMatrix& N, const std::vector<int>& sizes) {
    const int mu = static_cast<int>(N.rows());
    const int L = sizes.front();

    std::vector<ComplexMatrix> powers{ComplexMatrix::Identity(mu, mu)};
    for (int j = 1; j <= L; ++j) powers.push_back(powers.back() * N);

    auto rank_of = [&](int j) {
        int r = 0;
        for (int s : sizes) r += std::max(s - j, 0);
        return r;
    };
    auto kernel_basis = [&](int j) {
        const int dim = mu - rank_of(j);
        Eigen::JacobiSVD<ComplexMatrix> svd(powers[static_cast<std::size_t>(j)],
                                            Eigen::ComputeFullV);
        return ComplexMatrix(svd.matrixV().rightCols(dim));
    };

    ComplexMatrix X(mu, mu);
    int next_col = 0;
    ComplexMatrix carried(mu, 0);
    std::vector<ComplexMatrix> tops_by_level(static_cast<std::size_t>(L) + 1, ComplexMatrix(mu, 0));
    for (int j = L; j >= 1; --j) {
        const int wanted = static_cast<int>(std::count(sizes.begin(), sizes.end(), j));
        if (wanted > 0) {
            ComplexMatrix B = kernel_basis(j);
            ComplexMatrix obstruction(mu, 0);
            if (j > 1) {
                ComplexMatrix lower = kernel_basis(j - 1);
                obstruction.conservativeResize(mu, lower.cols());
                obstruction = lower;
            }
            if (carried.cols() > 0) {
                ComplexMatrix joined(mu, obstruction.cols() + carried.cols());
                joined << obstruction, carried;
                obstruction = joined;
            }
            ComplexMatrix P = B;
            if (obstruction.cols() > 0) {
                Eigen::HouseholderQR<ComplexMatrix> qr(obstruction);
                ComplexMatrix Q = qr.householderQ() * ComplexMatrix::Identity(mu, obstruction.cols());
                P = B - Q * (Q.adjoint() * B);
            }
            Eigen::JacobiSVD<ComplexMatrix> svd(P, Eigen::ComputeFullV);
            ComplexMatrix tops = B * svd.matrixV().leftCols(wanted);
            for (int c = 0; c < wanted; ++c) tops.col(c).normalize();
            tops_by_level[static_cast<std::size_t>(j)] = tops;
        }
        ComplexMatrix& tops = tops_by_level[static_cast<std::size_t>(j)];
        ComplexMatrix next(mu, carried.cols() + tops.cols());
        if (next.cols() > 0) {
            if (carried.cols() > 0) next.leftCols(carried.cols()) = N * carried;
            if (tops.cols() > 0) next.rightCols(tops.cols()) = N * tops;
        }
        carried = next;
    }
    // Emit chains in the declared block order, bottom vector first.
    std::vector<int> used_at_level(static_cast<std::size_t>(L) + 1, 0);
    for (int s : sizes) {
        const ComplexMatrix& tops = tops_by_level[static_cast<std::size_t>(s)];
        const ComplexMatrix top = tops.col(used_at_level[static_cast<std::size_t>(s)]++);
        for (int i = 0; i < s; ++i)
            X.col(next_col++) = powers[static_cast<std::size_t>(s - 1 - i)] * top;
    }
    return X;
}

ComplexMatrix toeplitz_block(const HoloMap& phi, complexd lambda, int size) {
    std::vector<complexd> derivs = holo_derivatives(phi, lambda, size - 1);
    ComplexMatrix B = ComplexMatrix::Zero(size, size);
    double factorial = 1.0;
    for (int j = 0; j < size; ++j) {
        if (j > 0) factorial *= j;
        for (int i = 0; i + j < size; ++i) B(i, i + j) = derivs[static_cast<std::size_t>(j)] / factorial;
    }
    return B;
}

} // namespace

int JordanStructure::dimension() const {
    int d = 0;
    for (const JordanCluster& cluster : clusters)
        for (int size : cluster.block_sizes) d += size;
    return d;
}

std::vector<complexd> JointSpectrum::classical() const {
    std::vector<complexd> out;
    for (const JordanCluster& cluster : structure.clusters) out.push_back(cluster.eigenvalue);
    return out;
}

ComplexMatrix complexify(const OperatorTuple& t) {
    if (t.n != 2)
        throw dimension_error("complexify: defined for pairs only, got n = " + std::to_string(t.n));
    return t.ops[0].cast<complexd>() + complexd(0.0, 1.0) * t.ops[1].cast<complexd>();
}

JordanStructure jordan_structure(const ComplexMatrix& M, double cluster_tol, double rank_tol) {
    return structure_of(analyze(M, cluster_tol, rank_tol));
}

JointSpectrum joint_spectrum(const ComplexMatrix& M, double cluster_tol, double rank_tol) {
    return expand(jordan_structure(M, cluster_tol, rank_tol));
}

JointSpectrum joint_spectrum(const OperatorTuple& t, double cluster_tol, double rank_tol) {
    return joint_spectrum(complexify(t), cluster_tol, rank_tol);
}

JointSpectrum spectral_map(const JointSpectrum& S, const HoloMap& phi, double merge_tol) {
    if (merge_tol <= 0.0) throw domain_error("spectral_map: merge_tol must be positive");
    const std::size_t m = S.structure.clusters.size();
    if (m == 0) return {};

    std::vector<complexd> image(m);
    std::vector<int> deg(m);
    double scale = 1.0;
    for (std::size_t c = 0; c < m; ++c) {
        image[c] = holo_eval(phi, S.structure.clusters[c].eigenvalue);
        deg[c] = deg_of_zero(phi, S.structure.clusters[c].eigenvalue);
        scale = std::max(scale, std::abs(image[c]));
    }

    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            if (std::abs(image[a] - image[b]) <= merge_tol * scale)
                parent[static_cast<std::size_t>(find(static_cast<int>(a)))] =
                    find(static_cast<int>(b));

    // Pool the mapped heights per merged image eigenvalue.
    std::vector<std::vector<int>> histogram(m);
    std::vector<int> members(m, 0);
    for (std::size_t c = 0; c < m; ++c) {
        const int root = find(static_cast<int>(c));
        ++members[static_cast<std::size_t>(root)];
        auto& hist = histogram[static_cast<std::size_t>(root)];
        for (int size : S.structure.clusters[c].block_sizes)
            for (int k = 0; k < size; ++k) {
                const int h = k / deg[c];
                if (static_cast<int>(hist.size()) <= h) hist.resize(static_cast<std::size_t>(h) + 1, 0);
                ++hist[static_cast<std::size_t>(h)];
            }
    }

    JordanStructure mapped;
    for (std::size_t root = 0; root < m; ++root) {
        if (histogram[root].empty()) continue;
        complexd pooled(0.0);
        int count = 0;
        for (std::size_t c = 0; c < m; ++c)
            if (find(static_cast<int>(c)) == static_cast<int>(root)) {
                pooled += image[c];
                ++count;
            }
        pooled /= static_cast<double>(count);

        JordanCluster cluster;
        cluster.eigenvalue = pooled;
        cluster.block_sizes = sizes_from_counts(histogram[root]);
        mapped.clusters.push_back(std::move(cluster));
    }
    std::sort(mapped.clusters.begin(), mapped.clusters.end(),
              [](const JordanCluster& a, const JordanCluster& b) {
                  return complex_less(a.eigenvalue, b.eigenvalue);
              });
    return expand(std::move(mapped));
}

MatrixFunctionResult matrix_function(const HoloMap& phi, const ComplexMatrix& M,
                                     double cluster_tol, double rank_tol) {
    Analysis analysis = analyze(M, cluster_tol, rank_tol);
    const int d = static_cast<int>(M.rows());

    ComplexMatrix X(d, d);
    ComplexMatrix fJ = ComplexMatrix::Zero(d, d);
    int col = 0;
    for (const ClusterWork& work : analysis.clusters) {
        const int mu = static_cast<int>(work.block.rows());
        ComplexMatrix Xc =
            mu == 1 ? ComplexMatrix::Identity(1, 1) : jordan_basis(work.block, work.sizes);
        X.middleCols(col, mu) = work.columns * Xc;
        int offset = col;
        for (int size : work.sizes) {
            fJ.block(offset, offset, size, size) = toeplitz_block(phi, work.eigenvalue, size);
            offset += size;
        }
        col += mu;
    }

    // J reassembled from the declared structure, to confirm the basis.
    ComplexMatrix J = ComplexMatrix::Zero(d, d);
    col = 0;
    for (const ClusterWork& work : analysis.clusters)
        for (int size : work.sizes) {
            for (int i = 0; i < size; ++i) {
                J(col + i, col + i) = work.eigenvalue;
                if (i + 1 < size) J(col + i, col + i + 1) = complexd(1.0);
            }
            col += size;
        }
    const double residual = (M * X - X * J).norm();
    if (residual > 1e-8 * std::max(analysis.scale, 1.0) * X.norm())
        throw degeneracy_error("matrix_function: the Jordan basis failed verification");

    Eigen::JacobiSVD<ComplexMatrix> svd(X);
    const double smin = svd.singularValues()(d - 1);
    if (!(smin > 0.0))
        throw degeneracy_error("matrix_function: the computed similarity is singular");
    MatrixFunctionResult out;
    out.similarity_cond = svd.singularValues()(0) / smin;
    out.conditioning_warning = !(out.similarity_cond <= 1e8);
    out.value = X * fJ * X.partialPivLu().inverse();
    return out;
}

double jordan_zero_equivalence(int L, const std::vector<MoebElement>& gs,
                               const QuadratureRule& quad) {
    if (L < 1 || L > 4)
        throw domain_error("jordan_zero_equivalence: supported block lengths are 1 through 4");
    if (gs.empty()) throw domain_error("jordan_zero_equivalence: need at least one group element");

    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(L, L);
    for (int i = 0; i + 1 < L; ++i) J(i, i + 1) = 1.0;
    OperatorTuple t{2, L, {Eigen::MatrixXd::Zero(L, L), J}};
    const Eigen::VectorXd v = Eigen::VectorXd::Unit(L, L - 1);

    // The comparison space is spanned by A_m v; refuse a degenerate frame.
    Eigen::MatrixXd frame(4 * L, L);
    for (int k = 0; k < L; ++k) {
        ModuleVector column = symmetric_product(t, MultiIndex{0, k}) * ModuleVector(2, v);
        for (unsigned mask = 0; mask < 4; ++mask)
            frame.block(static_cast<int>(mask) * L, k, L, 1) = column[mask];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(frame);
    if (svd.singularValues()(L - 1) <= 1e-8 * svd.singularValues()(0))
        throw degeneracy_error("jordan_zero_equivalence: the vectors A_m v are dependent");

    double worst = 0.0;
    for (const MoebElement& g : gs) {
        Eigen::MatrixXcd W = rho1_jet_matrix(g, L);
        for (int k = 0; k < L; ++k) {
            CoeffMap delta;
            delta.emplace(MultiIndex{0, k}, Multivector::blade(2, 0, 1.0));
            CoeffTransform moved = rho_Av_apply(g, t, v, delta, L - 1, quad);
            for (int m = 0; m < L; ++m) {
                const complexd lhs = decode_even(moved.coeffs.at(MultiIndex{0, m}), 1e-6);
                worst = std::max(worst, std::abs(lhs - W(m, k)));
            }
        }
    }
    return worst;
}

} // namespace cliffspec
