#pragma once

// Reference inputs used by the test suites, the demo subcommands and the
// documentation: the spin pair, a 10x10 matrix with four Jordan blocks of
// mixed lengths, and a disk polynomial with prescribed zero orders at its
// eigenvalues.

#include <array>

#include "cliffspec/holo_map.hpp"
#include "cliffspec/operator_algebra.hpp"
#include "cliffspec/spectrum.hpp"

namespace cliffspec {

/// The pair (diag(1,-1), offdiag(1,1)): the smallest self-adjoint pair with
/// a defective complexification.
OperatorTuple pauli_tuple();

/// Eigenvalue sites of the showcase matrix, in block order: (3/4)e^{i pi/4},
/// (2/3)e^{i 5pi/6}, (2/5)e^{-i 3pi/4}, (3/5)e^{-i pi/3}.
std::array<std::complex<double>, 4> showcase_sites();

/// J3 + J4 + J1 + J2 direct sum at the four sites.
ComplexMatrix showcase_matrix();

/// A degree-8 polynomial with phi(0) = 0, scaled to keep the closed disk
/// inside radius 0.9, whose derivative vanishes to orders (0, 2, 1, 4) at
/// the four sites: the induced zero orders there are (1, 3, 2, 5).
HoloMap showcase_phi();

} // namespace cliffspec
