#pragma once

#include <string>

#include "constcurve/curve.hpp"

namespace constcurve {

/// Versioned JSON persistence of a SampledCurve plus its closure report.
/// Numbers are written with 17 significant digits, so a write/read round
/// trip reproduces every double bit-exactly.
struct CurveFile {
    int schema_version = 1;
    std::string construction;
    std::map<std::string, double> parameters;
    double kappa = 0;
    double step = 0;
    std::vector<Vec3> samples;
    std::vector<Frame> frames;  // optional (empty when absent)
    ClosureReport closure;

    static CurveFile from_curve(const SampledCurve& curve, double kappa);
    SampledCurve to_curve() const;
};

/// Atomic write: temp file in the same directory, then rename.
void write_curve_file(const CurveFile& file, const std::string& path);

CurveFile read_curve_file(const std::string& path);

/// 17-significant-digit decimal rendering used by every exporter.
std::string format_double(double v);

}  // namespace constcurve
