#include "flapex/svg.hpp"

#include <cmath>
#include <cstdio>

#include "flapex/io.hpp"

namespace flapex {

namespace {

constexpr int kCanvas = 800;
constexpr double kScale = 160.0;  // pixels per world unit, fixed

std::string attr(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

void line(std::string& out, const Vec& a, const Vec& b, const char* style) {
    char abuf[64];
    char bbuf[64];
    std::snprintf(abuf, sizeof(abuf), "%.3f\" y1=\"%.3f", kCanvas / 2.0 + kScale * a[0],
                  kCanvas / 2.0 - kScale * a[1]);
    std::snprintf(bbuf, sizeof(bbuf), "%.3f\" y2=\"%.3f", kCanvas / 2.0 + kScale * b[0],
                  kCanvas / 2.0 - kScale * b[1]);
    out += "<line x1=\"";
    out += abuf;
    out += "\" x2=\"";
    out += bbuf;
    out += "\" ";
    out += style;
    out += "/>\n";
}

void dot_marker(std::string& out, const Vec& p, double radius, const char* fill) {
    out += "<circle cx=\"" + attr(kCanvas / 2.0 + kScale * p[0]) + "\" cy=\"" +
           attr(kCanvas / 2.0 - kScale * p[1]) + "\" r=\"" + attr(radius) + "\" fill=\"" + fill +
           "\"/>\n";
}

}  // namespace

std::string svg_snapshot_string(const MotionSample& sample, double t) {
    const std::optional<int> d = canonical_flapped_dimension(sample.labels);
    if (!d || *d != 2)
        throw DimensionError("svg_snapshot: only the planar (d=2) construction can be drawn");
    if (sample.ambient_dim < 2)
        throw DimensionError("svg_snapshot: frames must have at least two coordinates");

    int frame_index = -1;
    for (int m = 0; m < sample.frame_count(); ++m)
        if (std::abs(sample.grid[static_cast<std::size_t>(m)] - t) <= 1e-12) {
            frame_index = m;
            break;
        }
    if (frame_index < 0)
        throw InputError("svg_snapshot: time " + format_double(t) + " is not on the sample grid");

    auto plane = [&](int frame, const PointLabel& label) {
        const int idx = canonical_index(label, 2);
        const Vec& x = sample.frames[static_cast<std::size_t>(frame)][static_cast<std::size_t>(idx)];
        Vec y(2);
        y[0] = x[0];
        y[1] = x[1];
        return y;
    };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
           "viewBox=\"0 0 800 800\">\n";
    out += "<title>flapped pair frame at t=" + format_double(t) + "</title>\n";
    out += "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";

    const int first = 0;
    const int last = sample.frame_count() - 1;
    // Reference flaps: inward family at t=0 (blue), outward family at t=1 (red).
    for (int i = 0; i <= 2; ++i) {
        std::vector<int> js;
        for (int j = 0; j <= 2; ++j)
            if (j != i) js.push_back(j);
        const PointLabel la{PointLabel::Kind::Flap, i, js[0]};
        const PointLabel lb{PointLabel::Kind::Flap, i, js[1]};
        line(out, plane(first, la), plane(first, lb),
             "stroke=\"#4878cf\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"");
        line(out, plane(last, la), plane(last, lb),
             "stroke=\"#d65f5f\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"");
        dot_marker(out, plane(first, la), 3.0, "#4878cf");
        dot_marker(out, plane(first, lb), 3.0, "#4878cf");
        dot_marker(out, plane(last, la), 3.0, "#d65f5f");
        dot_marker(out, plane(last, lb), 3.0, "#d65f5f");
    }

    // Simplex edges of the current frame.
    for (int a = 0; a <= 2; ++a)
        for (int b = a + 1; b <= 2; ++b)
            line(out, plane(frame_index, {PointLabel::Kind::Vertex, a, -1}),
                 plane(frame_index, {PointLabel::Kind::Vertex, b, -1}),
                 "stroke=\"black\" stroke-width=\"2\"");

    // Current flap segments and points.
    for (int i = 0; i <= 2; ++i) {
        std::vector<int> js;
        for (int j = 0; j <= 2; ++j)
            if (j != i) js.push_back(j);
        const PointLabel la{PointLabel::Kind::Flap, i, js[0]};
        const PointLabel lb{PointLabel::Kind::Flap, i, js[1]};
        line(out, plane(frame_index, la), plane(frame_index, lb),
             "stroke=\"#444444\" stroke-width=\"2\"");
        dot_marker(out, plane(frame_index, la), 4.0, "black");
        dot_marker(out, plane(frame_index, lb), 4.0, "black");
    }
    for (int v = 0; v <= 2; ++v) {
        const Vec p = plane(frame_index, {PointLabel::Kind::Vertex, v, -1});
        dot_marker(out, p, 4.0, "black");
        out += "<text x=\"" + attr(kCanvas / 2.0 + kScale * p[0] + 8.0) + "\" y=\"" +
               attr(kCanvas / 2.0 - kScale * p[1] - 8.0) +
               "\" font-family=\"monospace\" font-size=\"16\">v" + std::to_string(v) +
               "</text>\n";
    }

    out += "</svg>\n";
    return out;
}

void svg_snapshot(const MotionSample& sample, double t, const std::string& path) {
    write_text_file(path, svg_snapshot_string(sample, t));
}

}  // namespace flapex
