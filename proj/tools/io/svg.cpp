#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace cara::io {

namespace {

constexpr double kSize = 480;
constexpr double kMargin = 24;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"};

const char* color(std::size_t i) { return kPalette[i % (sizeof kPalette / sizeof *kPalette)]; }

struct Shape {
    std::vector<Point> vertices;
    std::size_t color = 0;
};

class Canvas {
public:
    void add(const std::vector<Point>& pts) {
        for (const auto& p : pts) {
            if (p.dim() != 2) throw CapabilityError("render: only planar instances can be drawn (got dimension " +
                                                    std::to_string(p.dim()) + ")");
            const double x = to_double(p[0]), y = to_double(p[1]);
            lo_x_ = std::min(lo_x_, x), hi_x_ = std::max(hi_x_, x);
            lo_y_ = std::min(lo_y_, y), hi_y_ = std::max(hi_y_, y);
        }
    }

    std::string xy(const Point& p) const {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.2f,%.2f", sx(to_double(p[0])), sy(to_double(p[1])));
        return buf;
    }

    std::string coords(const Point& p, const char* xa, const char* ya) const {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s=\"%.2f\" %s=\"%.2f\"", xa, sx(to_double(p[0])), ya, sy(to_double(p[1])));
        return buf;
    }

    double scale() const {
        const double span = std::max({hi_x_ - lo_x_, hi_y_ - lo_y_, 1e-9});
        return (kSize - 2 * kMargin) / span;
    }
    double sx(double x) const { return kMargin + (x - lo_x_) * scale(); }
    double sy(double y) const { return kSize - kMargin - (y - lo_y_) * scale(); }

private:
    double lo_x_ = std::numeric_limits<double>::infinity(), hi_x_ = -std::numeric_limits<double>::infinity();
    double lo_y_ = std::numeric_limits<double>::infinity(), hi_y_ = -std::numeric_limits<double>::infinity();
};

void draw_shape(std::ostringstream& out, const Canvas& cv, const std::vector<Point>& pts, const char* stroke,
                const char* extra = "") {
    const auto hull = convex_hull_2d(pts);
    if (hull.size() == 1) {
        out << "  <circle " << cv.coords(hull[0], "cx", "cy") << " r=\"4\" fill=\"" << stroke << "\"" << extra
            << "/>\n";
    } else if (hull.size() == 2) {
        out << "  <line " << cv.coords(hull[0], "x1", "y1") << " " << cv.coords(hull[1], "x2", "y2")
            << " stroke=\"" << stroke << "\" stroke-width=\"3\"" << extra << "/>\n";
    } else {
        out << "  <polygon points=\"";
        for (std::size_t i = 0; i < hull.size(); ++i) out << (i ? " " : "") << cv.xy(hull[i]);
        out << "\" fill=\"" << stroke << "\" fill-opacity=\"0.25\" stroke=\"" << stroke << "\" stroke-width=\"2\""
            << extra << "/>\n";
    }
}

void draw_outline(std::ostringstream& out, const Canvas& cv, const std::vector<Point>& pts, const char* stroke) {
    const auto hull = convex_hull_2d(pts);
    if (hull.size() < 2) return;
    out << "  <polygon points=\"";
    for (std::size_t i = 0; i < hull.size(); ++i) out << (i ? " " : "") << cv.xy(hull[i]);
    out << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";
}

void draw_cross(std::ostringstream& out, const Canvas& cv, const Point& p, const char* stroke) {
    const double x = cv.sx(to_double(p[0])), y = cv.sy(to_double(p[1]));
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "  <path d=\"M%.2f,%.2f L%.2f,%.2f M%.2f,%.2f L%.2f,%.2f\" stroke=\"%s\" stroke-width=\"2\"/>\n",
                  x - 6, y - 6, x + 6, y + 6, x - 6, y + 6, x + 6, y - 6, stroke);
    out << buf;
}

}  // namespace

std::string render_svg(const json& instance, const json* certificate) {
    const std::string task = require(instance, "task", "").get<std::string>();
    Canvas cv;
    std::vector<Shape> shapes;
    std::vector<Point> all;
    std::vector<Point> marks;
    std::vector<std::vector<Point>> part_hulls;
    std::optional<Point> witness;
    std::vector<Point> simplex;
    std::optional<std::pair<Point, Point>> flat;

    auto add_set = [&](const CompactumRep& rep, std::size_t c) {
        for (auto& piece : rep.pieces()) shapes.push_back({std::move(piece), c});
    };

    if (instance.contains("family")) {
        const Family f = read_family(instance["family"], "family");
        std::vector<std::size_t> part_of(f.size(), 0);
        for (std::size_t i = 0; i < f.size(); ++i) part_of[i] = i;
        if (certificate && task == "tverberg") {
            const auto cert = read_tverberg_certificate(*certificate, "certificate");
            for (std::size_t s = 0; s < cert.parts.size(); ++s) {
                for (auto i : cert.parts[s])
                    if (i < f.size()) part_of[i] = s;
                if (!cert.parts[s].empty()) part_hulls.push_back(f.union_vertices(cert.parts[s]));
            }
            witness = cert.witness;
        }
        for (std::size_t i = 0; i < f.size(); ++i) shapes.push_back({f.members[i].vertices, part_of[i]});
    } else if (instance.contains("system")) {
        const auto sys = read_color_system(instance["system"], "system");
        for (std::size_t c = 0; c < sys.colors.size(); ++c) add_set(sys.colors[c], c);
        marks.push_back(sys.target);
        if (certificate) {
            for (const auto& r : read_colorful_certificate(*certificate, "certificate").reps) simplex.push_back(r.point);
        }
    } else if (instance.contains("sets")) {
        const auto& arr = instance["sets"];
        for (std::size_t c = 0; c < arr.size(); ++c) add_set(read_compactum(arr[c], "sets[" + std::to_string(c) + "]"), c);
        const Point p = read_point(require(instance, "point", ""), "point");
        marks.push_back(p);
        if (certificate && certificate->value("found", false)) {
            const auto fc = read_flat_certificate((*certificate)["flat"], "certificate.flat");
            if (fc.directions.size() == 1) flat = std::make_pair(fc.base, fc.directions[0]);
        }
    } else if (instance.contains("set")) {
        add_set(read_compactum(instance["set"], "set"), 0);
    } else if (instance.contains("points")) {
        for (const auto& p : read_points(instance["points"], "points")) shapes.push_back({{p}, 0});
        if (instance.contains("query")) marks.push_back(read_point(instance["query"], "query"));
    } else if (instance.contains("pieces")) {
        const auto& arr = instance["pieces"];
        for (std::size_t i = 0; i < arr.size(); ++i)
            shapes.push_back({read_points(arr[i], "pieces[" + std::to_string(i) + "]"), 0});
        if (instance.contains("query")) marks.push_back(read_point(instance["query"], "query"));
    } else {
        throw CapabilityError("render: task " + task + " has nothing to draw");
    }

    for (const auto& s : shapes) {
        cv.add(s.vertices);
        all.insert(all.end(), s.vertices.begin(), s.vertices.end());
    }
    cv.add(marks);
    if (witness) cv.add({*witness});
    if (all.empty()) throw InputError("render: empty instance");

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
        << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n";
    out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    draw_outline(out, cv, all, "#444444");
    for (std::size_t s = 0; s < part_hulls.size(); ++s) draw_outline(out, cv, part_hulls[s], color(s));
    for (const auto& s : shapes) draw_shape(out, cv, s.vertices, color(s.color));
    if (simplex.size() >= 2) draw_outline(out, cv, simplex, "#000000");
    for (const auto& p : simplex) out << "  <circle " << cv.coords(p, "cx", "cy") << " r=\"5\" fill=\"none\" stroke=\"#000000\"/>\n";
    if (flat) {
        const double r = (kSize) / cv.scale();
        const auto& [b, d] = *flat;
        const double dx = to_double(d[0]), dy = to_double(d[1]);
        const double len = std::hypot(dx, dy);
        if (len > 0) {
            char buf[256];
            const double bx = to_double(b[0]), by = to_double(b[1]);
            std::snprintf(buf, sizeof buf,
                          "  <line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#000000\" stroke-width=\"1\"/>\n",
                          cv.sx(bx - r * dx / len), cv.sy(by - r * dy / len), cv.sx(bx + r * dx / len),
                          cv.sy(by + r * dy / len));
            out << buf;
        }
    }
    for (const auto& p : marks) draw_cross(out, cv, p, "#000000");
    if (witness) {
        draw_cross(out, cv, *witness, "#000000");
        out << "  <circle " << cv.coords(*witness, "cx", "cy") << " r=\"8\" fill=\"none\" stroke=\"#000000\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace cara::io
