#ifndef TROPFW_SVG_HPP
#define TROPFW_SVG_HPP

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tropfw/covector.hpp"
#include "tropfw/fw_solver.hpp"
#include "tropfw/tropical_core.hpp"

namespace tropfw {

struct Point2 {
    double x = 0.0, y = 0.0;
};

/// Vertices of the cell { x_k - x_j <= bound } restricted to x_1 = 0, in
/// (x_2, x_3) coordinates, ordered counter-clockwise. Requires d = 3.
inline std::vector<Point2> cell_polygon_2d(const CellDescription& cd) {
    if (cd.dim() != 3) throw DimensionError("cell_polygon_2d requires d = 3");
    // Each finite inequality x_j - x_k <= b becomes a*p <= b in the plane.
    struct HalfPlane {
        double a2, a3, b;
    };
    std::vector<HalfPlane> hps;
    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t k = 0; k < 3; ++k) {
            if (j == k || !std::isfinite(cd.bound(j, k))) continue;
            HalfPlane hp{0.0, 0.0, cd.bound(j, k)};
            if (j == 1) hp.a2 += 1.0;
            if (j == 2) hp.a3 += 1.0;
            if (k == 1) hp.a2 -= 1.0;
            if (k == 2) hp.a3 -= 1.0;
            hps.push_back(hp);
        }
    }

    auto feasible = [&](const Point2& p) {
        for (const auto& hp : hps)
            if (hp.a2 * p.x + hp.a3 * p.y > hp.b + 1e-7) return false;
        return true;
    };

    // Pairwise boundary-line intersections, filtered by feasibility.
    std::vector<Point2> verts;
    for (std::size_t a = 0; a < hps.size(); ++a) {
        for (std::size_t b = a + 1; b < hps.size(); ++b) {
            const double det = hps[a].a2 * hps[b].a3 - hps[a].a3 * hps[b].a2;
            if (std::abs(det) < 1e-12) continue;
            const Point2 p{(hps[a].b * hps[b].a3 - hps[a].a3 * hps[b].b) / det,
                           (hps[a].a2 * hps[b].b - hps[a].b * hps[b].a2) / det};
            if (!feasible(p)) continue;
            bool dup = false;
            for (const auto& q : verts)
                if (std::abs(q.x - p.x) < 1e-7 && std::abs(q.y - p.y) < 1e-7) dup = true;
            if (!dup) verts.push_back(p);
        }
    }
    if (verts.size() < 3) return verts;

    Point2 centroid{0.0, 0.0};
    for (const auto& p : verts) {
        centroid.x += p.x;
        centroid.y += p.y;
    }
    centroid.x /= static_cast<double>(verts.size());
    centroid.y /= static_cast<double>(verts.size());
    std::sort(verts.begin(), verts.end(), [&](const Point2& a, const Point2& b) {
        return std::atan2(a.y - centroid.y, a.x - centroid.x) <
               std::atan2(b.y - centroid.y, b.x - centroid.x);
    });
    return verts;
}

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os << (std::abs(v) < 1e-9 ? 0.0 : v);
    return os.str();
}

}  // namespace detail

/// Static d = 3 picture: sample points with their max-plus (solid) and
/// min-plus (dashed) hyperplane rays in (x_2, x_3) coordinates, plus the
/// shaded Fermat-Weber polygon. y-axis points up.
inline void write_svg_plot(std::ostream& out, const SampleMatrix& V, const FWPolytrope& P) {
    if (V.dim() != 3) throw DimensionError("plot requires d = 3");
    const double pad = 40.0;
    const double scale = 60.0;

    double lo_x = V(0, 1), hi_x = V(0, 1), lo_y = V(0, 2), hi_y = V(0, 2);
    for (std::size_t i = 0; i < V.size(); ++i) {
        lo_x = std::min(lo_x, V(i, 1));
        hi_x = std::max(hi_x, V(i, 1));
        lo_y = std::min(lo_y, V(i, 2));
        hi_y = std::max(hi_y, V(i, 2));
    }
    lo_x -= 1.0;
    hi_x += 1.0;
    lo_y -= 1.0;
    hi_y += 1.0;
    const double width = (hi_x - lo_x) * scale + 2 * pad;
    const double height = (hi_y - lo_y) * scale + 2 * pad;

    auto sx = [&](double x) { return pad + (x - lo_x) * scale; };
    auto sy = [&](double y) { return height - pad - (y - lo_y) * scale; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::fmt(width)
        << "\" height=\"" << detail::fmt(height) << "\" viewBox=\"0 0 " << detail::fmt(width)
        << " " << detail::fmt(height) << "\">\n";

    const auto polygon = cell_polygon_2d(P.cell);
    if (!polygon.empty()) {
        out << "  <polygon class=\"fw-cell\" fill=\"#c8c8c8\" fill-opacity=\"0.6\" "
               "stroke=\"#555555\" points=\"";
        for (const auto& p : polygon)
            out << detail::fmt(sx(p.x)) << "," << detail::fmt(sy(p.y)) << " ";
        out << "\"/>\n";
    }

    const double ray_len = std::max(hi_x - lo_x, hi_y - lo_y) * 1.5;
    const Point2 max_rays[3] = {{1, 1}, {-1, 0}, {0, -1}};
    const Point2 min_rays[3] = {{-1, -1}, {1, 0}, {0, 1}};
    for (std::size_t i = 0; i < V.size(); ++i) {
        const double ax = V(i, 1), ay = V(i, 2);
        for (const auto& r : max_rays) {
            out << "  <line stroke=\"black\" x1=\"" << detail::fmt(sx(ax)) << "\" y1=\""
                << detail::fmt(sy(ay)) << "\" x2=\"" << detail::fmt(sx(ax + r.x * ray_len))
                << "\" y2=\"" << detail::fmt(sy(ay + r.y * ray_len)) << "\"/>\n";
        }
        for (const auto& r : min_rays) {
            out << "  <line stroke=\"black\" stroke-dasharray=\"6,4\" x1=\""
                << detail::fmt(sx(ax)) << "\" y1=\"" << detail::fmt(sy(ay)) << "\" x2=\""
                << detail::fmt(sx(ax + r.x * ray_len)) << "\" y2=\""
                << detail::fmt(sy(ay + r.y * ray_len)) << "\"/>\n";
        }
    }
    for (std::size_t i = 0; i < V.size(); ++i) {
        out << "  <circle fill=\"black\" r=\"4\" cx=\"" << detail::fmt(sx(V(i, 1)))
            << "\" cy=\"" << detail::fmt(sy(V(i, 2))) << "\"/>\n";
    }
    for (const auto& v : P.min_vertices) {
        out << "  <circle fill=\"white\" stroke=\"black\" r=\"4\" cx=\""
            << detail::fmt(sx(v[1])) << "\" cy=\"" << detail::fmt(sy(v[2])) << "\"/>\n";
    }
    out << "</svg>\n";
}

}  // namespace tropfw

#endif  // TROPFW_SVG_HPP
