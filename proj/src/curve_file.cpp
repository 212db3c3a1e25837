#include "constcurve/curve_file.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace constcurve {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CurveFile CurveFile::from_curve(const SampledCurve& curve, double kappa) {
    CurveFile f;
    f.construction = curve.meta.construction;
    f.parameters = curve.meta.params;
    f.kappa = kappa;
    f.step = curve.step;
    f.samples = curve.samples;
    f.frames = curve.frames;
    f.closure = closure_report(curve);
    return f;
}

SampledCurve CurveFile::to_curve() const {
    SampledCurve c;
    c.samples = samples;
    c.step = step;
    c.frames = frames;
    c.meta.construction = construction;
    c.meta.params = parameters;
    return c;
}

namespace {

void write_json(const CurveFile& f, std::ostream& out) {
    out << "{\n";
    out << "  \"schema_version\": " << f.schema_version << ",\n";
    out << "  \"construction\": " << nlohmann::json(f.construction).dump() << ",\n";
    out << "  \"parameters\": {";
    bool first = true;
    for (const auto& [key, value] : f.parameters) {
        if (!first) out << ", ";
        first = false;
        out << nlohmann::json(key).dump() << ": " << format_double(value);
    }
    out << "},\n";
    out << "  \"kappa\": " << format_double(f.kappa) << ",\n";
    out << "  \"step\": " << format_double(f.step) << ",\n";
    out << "  \"samples\": [\n";
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        const Vec3& p = f.samples[i];
        out << "    [" << format_double(p.x) << ", " << format_double(p.y) << ", "
            << format_double(p.z) << "]" << (i + 1 < f.samples.size() ? "," : "") << "\n";
    }
    out << "  ],\n";
    if (!f.frames.empty()) {
        out << "  \"frames\": [\n";
        for (std::size_t i = 0; i < f.frames.size(); ++i) {
            const Frame& fr = f.frames[i];
            const Vec3 v[3] = {fr.e1, fr.e2, fr.e3};
            out << "    [";
            for (int j = 0; j < 3; ++j) {
                out << format_double(v[j].x) << ", " << format_double(v[j].y) << ", "
                    << format_double(v[j].z) << (j < 2 ? ", " : "");
            }
            out << "]" << (i + 1 < f.frames.size() ? "," : "") << "\n";
        }
        out << "  ],\n";
    }
    out << "  \"closure\": {\"position_gap\": " << format_double(f.closure.position_gap)
        << ", \"tangent_gap\": " << format_double(f.closure.tangent_gap)
        << ", \"length\": " << format_double(f.closure.length) << "}\n";
    out << "}\n";
}

}  // namespace

void write_curve_file(const CurveFile& f, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        write_json(f, out);
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("rename failed: " + path);
    }
}

CurveFile read_curve_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    nlohmann::json j;
    in >> j;

    CurveFile f;
    f.schema_version = j.at("schema_version").get<int>();
    if (f.schema_version != 1)
        throw std::runtime_error("unsupported schema_version in " + path);
    f.construction = j.at("construction").get<std::string>();
    for (const auto& [key, value] : j.at("parameters").items())
        f.parameters[key] = value.get<double>();
    f.kappa = j.at("kappa").get<double>();
    f.step = j.at("step").get<double>();

    for (const auto& row : j.at("samples")) {
        if (row.size() != 3) throw std::runtime_error("malformed sample row in " + path);
        f.samples.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
    }
    if (j.contains("frames")) {
        for (const auto& row : j.at("frames")) {
            if (row.size() != 9) throw std::runtime_error("malformed frame row in " + path);
            Frame fr;
            fr.e1 = {row[0].get<double>(), row[1].get<double>(), row[2].get<double>()};
            fr.e2 = {row[3].get<double>(), row[4].get<double>(), row[5].get<double>()};
            fr.e3 = {row[6].get<double>(), row[7].get<double>(), row[8].get<double>()};
            f.frames.push_back(fr);
        }
        if (f.frames.size() != f.samples.size())
            throw std::runtime_error("frames/samples length mismatch in " + path);
    }
    const auto& cl = j.at("closure");
    f.closure.position_gap = cl.at("position_gap").get<double>();
    f.closure.tangent_gap = cl.at("tangent_gap").get<double>();
    f.closure.length = cl.at("length").get<double>();
    return f;
}

}  // namespace constcurve
