#pragma once

// JSON serialization of operator pairs, complex matrices and spectra.
// Documents carry a provenance block (tool version, RNG seed, tolerance
// settings) so that every emitted artifact states how it was produced.

#include <string>

#include "cliffspec/operator_algebra.hpp"
#include "cliffspec/spectrum.hpp"

namespace cliffspec {

/// Provenance embedded in emitted documents.  Negative tolerance values
/// mean "library default"; seed -1 means the computation used no
/// randomness.
struct OutputMeta {
    std::string version;
    long long seed = -1;
    double cluster_tol = -1.0;
    double rank_tol = -1.0;
};

/// A loaded matrix document: either a self-adjoint pair (key "A") or a
/// plain complex matrix (key "M").
struct MatrixInput {
    bool is_pair = false;
    OperatorTuple pair;
    ComplexMatrix matrix;

    /// The pair's complexification, or the matrix itself.
    ComplexMatrix complexified() const;
};

/// Parses {"n":2,"d":..,"A":[A1,A2]} (rows or flat entries, symmetry
/// enforced) or {"d":..,"M":[[[re,im],..],..]}.  Throws parse_error on
/// malformed documents.
MatrixInput load_matrix_json(const std::string& text);

/// Serializes a pair in the "A" form with nested rows.
std::string dump_pair_json(const OperatorTuple& t);

/// Spectrum document: provenance, "points" [{"u":[re,im],"k":..}, ..] and
/// "blocks" [{"lambda":[re,im],"sizes":[..]}, ..].
std::string dump_spectrum_json(const JointSpectrum& S, const OutputMeta& meta);

/// Rebuilds a spectrum from the "blocks" array of a spectrum document.
JointSpectrum load_spectrum_json(const std::string& text);

} // namespace cliffspec
