#pragma once

// Static SVG figures of an arrangement via stereographic projection.

#include <gcarr/arrangement.hpp>
#include <gcarr/coloring.hpp>
#include <gcarr/faces.hpp>
#include <gcarr/geometry.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace gcarr {

struct SvgOptions {
    bool horizon = false;  // project from the pole of circle 0; circle 0 then bounds the far hemisphere
    double size = 800.0;
    int pole_candidates = 2000;
};

inline constexpr std::array<const char*, 4> kPalette{"#ffffff", "#e41a1c", "#4daf4a", "#377eb8"};  // uncolored, 1, 2, 3
inline constexpr const char* kForegroundGrey = "#d3d3d3";
inline constexpr const char* kBackgroundGrey = "#a9a9a9";

// Point of a Fibonacci lattice maximizing the angular distance to the nearest circle.
inline Vec3 choose_pole(const std::vector<GreatCircle>& circles, int candidates = 2000) {
    Vec3 best{0, 0, 1};
    double best_dist = -1.0;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < candidates; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / candidates;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const Vec3 p{r * std::cos(golden * i), r * std::sin(golden * i), z};
        double d = std::numeric_limits<double>::max();
        for (const auto& c : circles) d = std::min(d, std::asin(std::min(1.0, std::abs(dot(c.normal(), p)))));
        if (d > best_dist) {
            best_dist = d;
            best = p;
        }
    }
    return best;
}

class StereographicProjection {
public:
    explicit StereographicProjection(Vec3 pole) : pole_(normalized(pole)), a_(orthogonal_unit(pole_)), b_(cross(pole_, a_)) {}

    std::array<double, 2> operator()(Vec3 x) const {
        const double denom = 1.0 - dot(x, pole_);
        return {dot(x, a_) / denom, dot(x, b_) / denom};
    }

    Vec3 pole() const { return pole_; }

private:
    Vec3 pole_, a_, b_;
};

namespace detail {

struct PlaneCircle {
    bool is_line = false;
    double cx = 0, cy = 0, r = 0;  // circle
    double px = 0, py = 0, dx = 0, dy = 0;  // line through p with direction d
};

inline PlaneCircle project_circle(const StereographicProjection& proj, const GreatCircle& c) {
    const Vec3 u = orthogonal_unit(c.normal());
    const Vec3 v = cross(c.normal(), u);
    PlaneCircle out;
    if (std::abs(dot(c.normal(), proj.pole())) < 1e-9) {
        // Through the pole: image is a line. Sample away from the pole.
        const Vec3 q = normalized(cross(c.normal(), proj.pole()));
        const auto p0 = proj(-1.0 * proj.pole());
        const auto p1 = proj(normalized(-1.0 * proj.pole() + q));
        out.is_line = true;
        out.px = p0[0];
        out.py = p0[1];
        out.dx = p1[0] - p0[0];
        out.dy = p1[1] - p0[1];
        return out;
    }
    std::array<std::array<double, 2>, 3> p{};
    for (int i = 0; i < 3; ++i) {
        const double t = 2.0 * std::numbers::pi * i / 3.0;
        p[static_cast<std::size_t>(i)] = proj(std::cos(t) * u + std::sin(t) * v);
    }
    const double ax = p[0][0], ay = p[0][1], bx = p[1][0], by = p[1][1], cx = p[2][0], cy = p[2][1];
    const double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    const double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
    out.cx = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
    out.cy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
    out.r = std::hypot(ax - out.cx, ay - out.cy);
    return out;
}

inline std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

}  // namespace detail

// Vertices as disks in the fixed palette; first chain light grey, its mirror dark grey.
inline void write_svg(std::ostream& os, const ArrangementGraph& g, const Coloring* coloring,
                      const std::vector<Triangle>* triangles, const ChainPair* chains, const SvgOptions& opts = {}) {
    const Vec3 pole = opts.horizon ? g.circles().front().normal() : choose_pole(g.circles(), opts.pole_candidates);
    const StereographicProjection proj(pole);

    std::vector<std::array<double, 2>> pos;
    double minx = std::numeric_limits<double>::max(), miny = minx;
    double maxx = std::numeric_limits<double>::lowest(), maxy = maxx;
    for (const auto& v : g.vertices()) {
        if (angle_between(v.point.coords(), pole) < 1e-6) throw std::invalid_argument("projection pole coincides with a vertex");
        pos.push_back(proj(v.point.coords()));
        minx = std::min(minx, pos.back()[0]);
        maxx = std::max(maxx, pos.back()[0]);
        miny = std::min(miny, pos.back()[1]);
        maxy = std::max(maxy, pos.back()[1]);
    }
    const double margin = 0.05 * opts.size;
    const double span = std::max({maxx - minx, maxy - miny, 1e-9});
    const double scale = (opts.size - 2 * margin) / span;
    const auto X = [&](double x) { return (x - minx) * scale + margin; };
    const auto Y = [&](double y) { return (maxy - y) * scale + margin; };

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::fmt(opts.size) << "\" height=\""
       << detail::fmt(opts.size) << "\" viewBox=\"0 0 " << detail::fmt(opts.size) << ' ' << detail::fmt(opts.size) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    if (chains && triangles) {
        os << "<g id=\"chains\">\n";
        const std::pair<const TriangularChain*, const char*> parts[] = {{&chains->first, "chain-fg"}, {&chains->second, "chain-bg"}};
        for (auto [chain, cls] : parts) {
            const char* fill = std::string_view(cls) == "chain-fg" ? kForegroundGrey : kBackgroundGrey;
            for (int t : chain->triangles) {
                os << "<polygon class=\"" << cls << "\" fill=\"" << fill << "\" points=\"";
                const auto& tri = (*triangles)[static_cast<std::size_t>(t)];
                for (std::size_t i = 0; i < 3; ++i) {
                    const auto& p = pos[static_cast<std::size_t>(tri.vertices[i])];
                    os << (i ? " " : "") << detail::fmt(X(p[0])) << ',' << detail::fmt(Y(p[1]));
                }
                os << "\"/>\n";
            }
        }
        os << "</g>\n";
    }

    os << "<g id=\"circles\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1.5\">\n";
    for (const auto& c : g.circles()) {
        const auto pc = detail::project_circle(proj, c);
        if (pc.is_line) {
            const double len = std::hypot(pc.dx, pc.dy);
            const double far = 4.0 * opts.size / scale;
            const double ux = pc.dx / len * far, uy = pc.dy / len * far;
            os << "<line class=\"great-circle\" data-circle=\"" << c.id() << "\" x1=\"" << detail::fmt(X(pc.px - ux))
               << "\" y1=\"" << detail::fmt(Y(pc.py - uy)) << "\" x2=\"" << detail::fmt(X(pc.px + ux)) << "\" y2=\""
               << detail::fmt(Y(pc.py + uy)) << "\"/>\n";
        } else {
            os << "<circle class=\"great-circle\" data-circle=\"" << c.id() << "\" cx=\"" << detail::fmt(X(pc.cx))
               << "\" cy=\"" << detail::fmt(Y(pc.cy)) << "\" r=\"" << detail::fmt(pc.r * scale) << "\"/>\n";
        }
    }
    os << "</g>\n";

    os << "<g id=\"vertices\" stroke=\"#000000\" stroke-width=\"1\">\n";
    for (std::size_t v = 0; v < pos.size(); ++v) {
        const Color c = coloring ? (*coloring)[static_cast<int>(v)] : kUncolored;
        os << "<circle class=\"vertex\" data-vertex=\"" << v + 1 << "\" cx=\"" << detail::fmt(X(pos[v][0])) << "\" cy=\""
           << detail::fmt(Y(pos[v][1])) << "\" r=\"6\" fill=\"" << kPalette[c] << "\"/>\n";
    }
    os << "</g>\n</svg>\n";
}

}  // namespace gcarr
