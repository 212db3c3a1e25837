#include "constcurve/export.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace constcurve {

void export_obj(const CurveFile& file, std::ostream& out) {
    out << "# constant curvature space curve, construction: " << file.construction << "\n";
    for (const Vec3& p : file.samples)
        out << "v " << format_double(p.x) << " " << format_double(p.y) << " "
            << format_double(p.z) << "\n";
    out << "l";
    for (std::size_t i = 1; i <= file.samples.size(); ++i) out << " " << i;
    out << "\n";
}

void export_ply(const CurveFile& file, std::ostream& out) {
    const std::size_t n = file.samples.size();
    out << "ply\nformat ascii 1.0\n";
    out << "element vertex " << n << "\n";
    out << "property double x\nproperty double y\nproperty double z\n";
    out << "element edge " << (n > 0 ? n - 1 : 0) << "\n";
    out << "property int vertex1\nproperty int vertex2\n";
    out << "end_header\n";
    for (const Vec3& p : file.samples)
        out << format_double(p.x) << " " << format_double(p.y) << " " << format_double(p.z)
            << "\n";
    for (std::size_t i = 0; i + 1 < n; ++i) out << i << " " << i + 1 << "\n";
}

void export_csv(const CurveFile& file, std::ostream& out) {
    out << "s,x,y,z\n";
    for (std::size_t i = 0; i < file.samples.size(); ++i) {
        const Vec3& p = file.samples[i];
        out << format_double(static_cast<double>(i) * file.step) << "," << format_double(p.x)
            << "," << format_double(p.y) << "," << format_double(p.z) << "\n";
    }
}

void export_svg(const CurveFile& file, std::ostream& out, SvgView view) {
    auto project = [view](const Vec3& p) -> std::pair<double, double> {
        switch (view) {
            case SvgView::xy: return {p.x, p.y};
            case SvgView::xz: return {p.x, p.z};
            case SvgView::yz: return {p.y, p.z};
        }
        return {p.x, p.y};
    };

    double min_x = std::numeric_limits<double>::max(), max_x = -min_x;
    double min_y = min_x, max_y = -min_x;
    for (const Vec3& p : file.samples) {
        const auto [px, py] = project(p);
        min_x = std::min(min_x, px);
        max_x = std::max(max_x, px);
        min_y = std::min(min_y, py);
        max_y = std::max(max_y, py);
    }
    const double span = std::max({max_x - min_x, max_y - min_y, 1e-12});
    const double margin = 0.05 * span;
    const double width = max_x - min_x + 2 * margin;
    const double height = max_y - min_y + 2 * margin;

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << format_double(width)
        << " " << format_double(height) << "\">\n";
    out << "<path fill=\"none\" stroke=\"black\" stroke-width=\"" << format_double(span / 400)
        << "\" d=\"";
    bool first = true;
    for (const Vec3& p : file.samples) {
        const auto [px, py] = project(p);
        // SVG y runs downward; flip so the view is right-side up.
        out << (first ? "M" : " L") << format_double(px - min_x + margin) << " "
            << format_double(max_y - py + margin);
        first = false;
    }
    out << "\"/>\n</svg>\n";
}

}  // namespace constcurve
