#pragma once

#include <ostream>
#include <string>

#include "constcurve/curve_file.hpp"

namespace constcurve {

enum class SvgView { xy, xz, yz };

/// One-way exports of the polyline. OBJ: `v` records plus one `l` element;
/// PLY: ascii vertices plus consecutive edges; CSV: s,x,y,z rows; SVG: one
/// orthographic projection path.
void export_obj(const CurveFile& file, std::ostream& out);
void export_ply(const CurveFile& file, std::ostream& out);
void export_csv(const CurveFile& file, std::ostream& out);
void export_svg(const CurveFile& file, std::ostream& out, SvgView view);

}  // namespace constcurve
