#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "constcurve/curve_file.hpp"
#include "constcurve/export.hpp"

using namespace constcurve;

namespace {

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

SampledCurve random_curve(bool with_frames) {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    SampledCurve c;
    c.step = 0.1;
    c.meta.construction = "test_random";
    c.meta.params = {{"kappa", 1.75}, {"weird", -3.0e-17}};
    for (int i = 0; i < 40; ++i) c.samples.push_back({u(rng), u(rng), u(rng)});
    if (with_frames) {
        for (int i = 0; i < 40; ++i) {
            Frame f;
            f.e1 = Vec3{u(rng), u(rng), u(rng)}.normalized();
            Vec3 v{u(rng), u(rng), u(rng)};
            f.e2 = (v - v.dot(f.e1) * f.e1).normalized();
            f.e3 = f.e1.cross(f.e2);
            c.frames.push_back(f);
        }
    }
    return c;
}

bool bit_identical(double a, double b) {
    return std::memcmp(&a, &b, sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("curve file round trip is bit identical") {
    for (bool with_frames : {false, true}) {
        const SampledCurve c = random_curve(with_frames);
        const auto path = temp_file("constcurve_roundtrip.json");
        write_curve_file(CurveFile::from_curve(c, 1.75), path.string());
        const CurveFile back = read_curve_file(path.string());

        REQUIRE(back.samples.size() == c.samples.size());
        for (std::size_t i = 0; i < c.samples.size(); ++i) {
            CHECK(bit_identical(back.samples[i].x, c.samples[i].x));
            CHECK(bit_identical(back.samples[i].y, c.samples[i].y));
            CHECK(bit_identical(back.samples[i].z, c.samples[i].z));
        }
        REQUIRE(back.frames.size() == c.frames.size());
        for (std::size_t i = 0; i < c.frames.size(); ++i)
            CHECK(bit_identical(back.frames[i].e2.y, c.frames[i].e2.y));
        CHECK(bit_identical(back.parameters.at("weird"), -3.0e-17));
        CHECK(back.construction == "test_random");
        CHECK(back.schema_version == 1);
        std::filesystem::remove(path);
    }
}

TEST_CASE("unsupported schema version is rejected") {
    const auto path = temp_file("constcurve_badschema.json");
    {
        std::ofstream out(path);
        out << R"({"schema_version": 2, "construction": "x", "parameters": {},
                   "kappa": 1, "step": 0.1,
                   "samples": [[0,0,0],[1,0,0]],
                   "closure": {"position_gap": 0, "tangent_gap": 0, "length": 1}})";
    }
    CHECK_THROWS(read_curve_file(path.string()));
    std::filesystem::remove(path);
    CHECK_THROWS(read_curve_file("/nonexistent/path/curve.json"));
}

TEST_CASE("exporters emit the documented structure") {
    const CurveFile f = CurveFile::from_curve(random_curve(false), 1.75);

    std::ostringstream obj;
    export_obj(f, obj);
    const std::string obj_text = obj.str();
    std::size_t v_count = 0, pos = 0;
    while ((pos = obj_text.find("\nv ", pos)) != std::string::npos) {
        ++v_count;
        ++pos;
    }
    CHECK(v_count == f.samples.size());
    CHECK(obj_text.find("\nl 1 2 3") != std::string::npos);

    std::ostringstream ply;
    export_ply(f, ply);
    CHECK(ply.str().find("element vertex 40") != std::string::npos);
    CHECK(ply.str().find("element edge 39") != std::string::npos);

    std::ostringstream csv;
    export_csv(f, csv);
    std::size_t lines = 0;
    for (char ch : csv.str())
        if (ch == '\n') ++lines;
    CHECK(lines == f.samples.size() + 1);  // header + one row per sample

    std::ostringstream svg;
    export_svg(f, svg, SvgView::xz);
    CHECK(svg.str().find("<path") != std::string::npos);
    CHECK(svg.str().find("</svg>") != std::string::npos);
}
