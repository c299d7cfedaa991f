#pragma once

// Joint spectrum of a pair of self-adjoint operators through the
// complexification A1 + iA2: robust Jordan structure recovery, the
// jet-labelled spectrum, holomorphic spectral mapping and the
// matrix-function oracle it is checked against.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cliffspec/holo_map.hpp"
#include "cliffspec/jets.hpp"
#include "cliffspec/operator_algebra.hpp"
#include "cliffspec/quadrature.hpp"

namespace cliffspec {

using ComplexMatrix = Eigen::MatrixXcd;

/// One eigenvalue cluster with its Jordan block sizes, largest first.
struct JordanCluster {
    std::complex<double> eigenvalue;
    std::vector<int> block_sizes;
};

/// Jordan data of a matrix: clusters ordered by (Re, Im) of the
/// eigenvalue.  The block sizes over all clusters sum to the dimension.
struct JordanStructure {
    std::vector<JordanCluster> clusters;

    int dimension() const;
};

/// One labelled spectral point: the location u in the disk and the jet
/// height k (a Jordan block of length L contributes heights 0..L-1).
struct SpectrumPoint {
    std::complex<double> u;
    int k = 0;
};

/// The jet-labelled joint spectrum together with the Jordan data it was
/// expanded from.  Points are sorted by (Re u, Im u, k); there are exactly
/// dimension() of them.
struct JointSpectrum {
    std::vector<SpectrumPoint> points;
    JordanStructure structure;

    /// The plain eigenvalue set (one entry per cluster), the projection
    /// that forgets the jet labels.
    std::vector<std::complex<double>> classical() const;
};

/// A1 + iA2 entrywise; defined for pairs only.
ComplexMatrix complexify(const OperatorTuple& t);

/// Jordan structure of M.  Eigenvalues are merged by single-linkage
/// clustering with the largest relative gap in the merge distances deciding
/// the cut (gap ratio below 10 raises ambiguity_error listing the candidate
/// cluster counts).  Within each cluster the block sizes come from the Weyr
/// sequence of the shifted Schur block, ranks decided by singular values
/// against rank_tol-derived floors.  Negative tolerances select the
/// defaults: cluster_tol = 1e-7 * |M|, rank_tol = 1e-8.
JordanStructure jordan_structure(const ComplexMatrix& M, double cluster_tol = -1.0,
                                 double rank_tol = -1.0);

/// Jet-labelled joint spectrum of a complex matrix.
JointSpectrum joint_spectrum(const ComplexMatrix& M, double cluster_tol = -1.0,
                             double rank_tol = -1.0);

/// Jet-labelled joint spectrum of a self-adjoint pair, through its
/// complexification.
JointSpectrum joint_spectrum(const OperatorTuple& t, double cluster_tol = -1.0,
                             double rank_tol = -1.0);

/// Pushforward of the spectrum under a holomorphic map:
/// (u, k) -> (phi(u), floor(k / deg)), deg the zero order of
/// phi(z) - phi(u) at u.  Image locations closer than merge_tol (relative
/// to the largest image magnitude) are pooled into one cluster and the
/// pooled heights re-partitioned into block sizes.
JointSpectrum spectral_map(const JointSpectrum& S, const HoloMap& phi,
                           double merge_tol = 1e-9);

/// phi(M) evaluated blockwise on the Jordan form, with the conditioning of
/// the computed similarity reported alongside.
struct MatrixFunctionResult {
    ComplexMatrix value;
    double similarity_cond = 0.0;
    bool conditioning_warning = false;
};

/// Evaluates phi on M through the Jordan decomposition: each block J_L(u)
/// maps to the upper-triangular Toeplitz matrix of Taylor terms
/// phi^(j)(u)/j!.  A similarity with condition number above 1e8 sets the
/// warning flag (the value is still returned).
MatrixFunctionResult matrix_function(const HoloMap& phi, const ComplexMatrix& M,
                                     double cluster_tol = -1.0, double rank_tol = -1.0);

/// Cross-check of the two realizations of the order L - 1 jet action: the
/// coefficient action of g on the pair with complexification J_L(0) against
/// the power-series matrix of the prolonged disk action.  Returns the
/// largest entrywise difference over the sampled group elements.  The
/// vectors A_m v spanning the comparison space must be independent
/// (degeneracy_error otherwise); supported for L <= 4.
double jordan_zero_equivalence(int L, const std::vector<MoebElement>& gs,
                               const QuadratureRule& quad);

} // namespace cliffspec
