#pragma once

#include <stdexcept>
#include <string>

namespace cliffspec {

/// Base class for all errors thrown by this library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Mismatched generator count, operator size, or multi-index length.
class dimension_error : public error {
public:
    explicit dimension_error(const std::string& msg) : error(msg) {}
};

/// Malformed textual or JSON input.
class parse_error : public error {
public:
    explicit parse_error(const std::string& msg) : error(msg) {}
};

/// An element or operator required to be invertible is singular
/// (or too ill-conditioned to invert reliably).
class singular_error : public error {
public:
    explicit singular_error(const std::string& msg) : error(msg) {}
};

/// Input lies outside the mathematical domain of the operation,
/// e.g. taking the modulus of an element with no well-defined one.
class domain_error : public error {
public:
    explicit domain_error(const std::string& msg) : error(msg) {}
};

/// Eigenvalue clusters could not be separated reliably.
class degeneracy_error : public error {
public:
    explicit degeneracy_error(const std::string& msg) : error(msg) {}
};

/// Cluster assignment is ambiguous: the gap between merging and not
/// merging two eigenvalue groups is below the safety ratio.
class ambiguity_error : public degeneracy_error {
public:
    explicit ambiguity_error(const std::string& msg) : degeneracy_error(msg) {}
};

/// A map is flat at a spectral point: every derivative up to the
/// supported order vanishes, so the order of the zero is undefined.
class flat_map_error : public error {
public:
    explicit flat_map_error(const std::string& msg) : error(msg) {}
};

/// A quadrature-based quantity failed its refinement consistency check.
class resolution_error : public error {
public:
    explicit resolution_error(const std::string& msg) : error(msg) {}
};

} // namespace cliffspec
