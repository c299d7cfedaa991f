#include "cliffspec/render_svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <vector>

namespace cliffspec {

namespace {

constexpr int kPanel = 420;
constexpr double kRadius = 180.0;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", v == 0.0 ? 0.0 : v);
    return buf;
}

struct Site {
    std::complex<double> u;
    int height; // max jet order + 1
};

std::vector<Site> collect_sites(const JointSpectrum& S) {
    std::map<std::pair<double, double>, int> tall;
    for (const SpectrumPoint& p : S.points) {
        int& h = tall[{p.u.real(), p.u.imag()}];
        h = std::max(h, p.k + 1);
    }
    std::vector<Site> sites;
    for (const auto& [key, height] : tall)
        sites.push_back({{key.first, key.second}, height});
    return sites;
}

void append_panel(std::string& out, const JointSpectrum& S, RenderMode mode, double x0) {
    const double cx = x0 + kPanel / 2.0;
    const double cy = kPanel / 2.0;

    out += "<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"" + fmt(kRadius) +
           "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";

    for (const Site& site : collect_sites(S)) {
        const double px = cx + kRadius * site.u.real();
        const double py = cy - kRadius * site.u.imag();
        if (mode == RenderMode::classical) {
            out += "<circle cx=\"" + fmt(px) + "\" cy=\"" + fmt(py) +
                   "\" r=\"4\" fill=\"#1f4e9c\"/>\n";
            continue;
        }
        out += "<circle cx=\"" + fmt(px) + "\" cy=\"" + fmt(py) +
               "\" r=\"3\" fill=\"#1f4e9c\"/>\n";
        for (int ring = 1; ring < site.height; ++ring)
            out += "<circle cx=\"" + fmt(px) + "\" cy=\"" + fmt(py) + "\" r=\"" +
                   fmt(3.0 + 4.0 * ring) +
                   "\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.2\"/>\n";
        out += "<text x=\"" + fmt(px + 6.0 + 4.0 * site.height) + "\" y=\"" + fmt(py + 4.0) +
               "\" font-family=\"monospace\" font-size=\"13\" fill=\"#333333\">" +
               std::to_string(site.height) + "</text>\n";
    }
}

std::string document(const std::vector<const JointSpectrum*>& panels, RenderMode mode) {
    const int width = kPanel * static_cast<int>(panels.size());
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      std::to_string(width) + "\" height=\"" + std::to_string(kPanel) +
                      "\" viewBox=\"0 0 " + std::to_string(width) + " " +
                      std::to_string(kPanel) + "\">\n";
    int outside = 0;
    for (const JointSpectrum* S : panels)
        for (const SpectrumPoint& p : S->points)
            if (std::abs(p.u) > 1.0 + 1e-12) ++outside;
    if (outside > 0)
        out += "<!-- warning: " + std::to_string(outside) +
               " spectral point(s) lie outside the closed unit disk -->\n";
    out += "<rect width=\"" + std::to_string(width) + "\" height=\"" + std::to_string(kPanel) +
           "\" fill=\"#ffffff\"/>\n";
    for (std::size_t i = 0; i < panels.size(); ++i)
        append_panel(out, *panels[i], mode, static_cast<double>(kPanel) * static_cast<double>(i));
    out += "</svg>\n";
    return out;
}

} // namespace

std::string render_spectrum(const JointSpectrum& S, RenderMode mode) {
    return document({&S}, mode);
}

std::string render_mapped_pair(const JointSpectrum& source, const JointSpectrum& image) {
    return document({&source, &image}, RenderMode::jet);
}

} // namespace cliffspec
