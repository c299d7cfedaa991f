#pragma once

// Flat SVG rendering of joint spectra: the unit disk with one marker per
// spectral site, either plain dots (the classical eigenvalue picture) or
// stacks of concentric rings encoding the jet heights.  Output is
// deterministic byte for byte for identical inputs.

#include <string>

#include "cliffspec/spectrum.hpp"

namespace cliffspec {

enum class RenderMode {
    classical, // one dot per distinct eigenvalue
    jet        // ring stack of height max k + 1, with a numeral
};

/// A single 420x420 panel with the unit circle and the spectrum markers.
/// Sites outside the closed disk are still drawn and flagged with a comment
/// near the top of the document.
std::string render_spectrum(const JointSpectrum& S, RenderMode mode);

/// Two jet panels side by side: the spectrum and its image under a map.
std::string render_mapped_pair(const JointSpectrum& source, const JointSpectrum& image);

} // namespace cliffspec
