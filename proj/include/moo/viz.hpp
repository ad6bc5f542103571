#pragma once

// Plot-geometry computation for the supported visualizations (scatter 2D/3D,
// pairwise panels, parallel coordinates, radviz, star coordinates, heatmap,
// petal, radar) and a small deterministic SVG emitter.
//
// Layout functions translate objective matrices into primitive lists in
// world coordinates; render_svg maps those onto a fixed canvas. Rendering is
// a pure function of the geometry: identical input yields byte-identical
// files.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "moo/matrix.hpp"

namespace moo {

enum class PlotKind { scatter2d, scatter3d, pairwise, pcp, radviz, star, heatmap, petal, radar };

inline PlotKind plot_kind_from_name(const std::string& name) {
    if (name == "scatter") return PlotKind::scatter2d;
    if (name == "scatter3d") return PlotKind::scatter3d;
    if (name == "pairwise") return PlotKind::pairwise;
    if (name == "pcp") return PlotKind::pcp;
    if (name == "radviz") return PlotKind::radviz;
    if (name == "star") return PlotKind::star;
    if (name == "heatmap") return PlotKind::heatmap;
    if (name == "petal") return PlotKind::petal;
    if (name == "radar") return PlotKind::radar;
    throw std::invalid_argument("unknown plot kind '" + name + "'");
}

struct Style {
    std::string stroke = "#1f6feb";
    std::string fill = "#1f6feb";
    double opacity = 0.85;
    double stroke_width = 1.0;
    double point_radius = 3.0;
    std::string highlight_color = "#d73a49";
    // sequential ramp endpoints (heatmap) and categorical palette (petal)
    std::string ramp_low = "#eef4fb";
    std::string ramp_high = "#0b3d91";
    std::vector<std::string> palette = {"#1f6feb", "#d73a49", "#2da44e", "#bf8700",
                                        "#8250df", "#fd7e14", "#17a2b8", "#6c757d"};
};

struct PlotSpec {
    PlotKind kind = PlotKind::scatter2d;
    Matrix f;                            // objective matrix, one row per solution
    bool normalize = false;
    std::vector<double> ideal, nadir;    // radar only
    std::vector<std::size_t> highlight;  // rows drawn in the highlight color
    std::size_t row = 0;                 // petal/radar: which solution
    bool sort_rows = false;              // heatmap: lexicographic row sort
    Style style{};
};

struct PolylinePrim {
    std::vector<std::array<double, 2>> pts;
    std::string stroke;
    double width = 1.0;
    double opacity = 1.0;
};
struct PolygonPrim {
    std::vector<std::array<double, 2>> pts;
    std::string fill;      // "none" for outline-only
    std::string stroke;
    double width = 1.0;
    double opacity = 1.0;
};
struct CirclePrim {
    double cx = 0, cy = 0, r = 1;
    std::string fill;   // "none" for rings
    std::string stroke; // may be "none"
    double width = 1.0;
    double opacity = 1.0;
};
struct WedgePrim {
    double cx = 0, cy = 0, r = 1;
    double a0 = 0, a1 = 0;  // radians, counter-clockwise
    std::string fill;
    double opacity = 1.0;
};
struct RectPrim {
    double x = 0, y = 0, w = 1, h = 1;
    std::string fill;
    double opacity = 1.0;
};
struct TextPrim {
    double x = 0, y = 0;
    std::string text;
    double size = 0.05;  // world units
    std::string anchor = "middle";
};

using Primitive = std::variant<PolylinePrim, PolygonPrim, CirclePrim, WedgePrim, RectPrim, TextPrim>;

struct PlotGeometry {
    std::vector<Primitive> primitives;
    // world window mapped onto the canvas
    double min_x = 0, max_x = 1, min_y = 0, max_y = 1;
    bool preserve_aspect = false;
};

// --- normalization and projections -------------------------------------------

// Min-max per column onto [0,1]; zero-range columns map to 0. Idempotent.
inline Matrix normalize_minmax(const Matrix& f) {
    Matrix out(f.rows(), f.cols());
    for (std::size_t j = 0; j < f.cols(); ++j) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::size_t i = 0; i < f.rows(); ++i) {
            lo = std::min(lo, f(i, j));
            hi = std::max(hi, f(i, j));
        }
        const double range = hi - lo;
        for (std::size_t i = 0; i < f.rows(); ++i)
            out(i, j) = range == 0.0 ? 0.0 : (f(i, j) - lo) / range;
    }
    return out;
}

// Unit anchors evenly spaced on the circle, objective j at angle 2*pi*j/M.
inline std::vector<std::array<double, 2>> circle_anchors(std::size_t m) {
    std::vector<std::array<double, 2>> a(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
        a[j] = {std::cos(angle), std::sin(angle)};
    }
    return a;
}

// Radviz: anchor-weighted mean; rows of all zeros map to the origin. Input
// must be min-max normalized. Output lies in the closed unit disk.
inline Matrix project_radviz(const Matrix& f_normalized) {
    const auto anchors = circle_anchors(f_normalized.cols());
    Matrix out(f_normalized.rows(), 2);
    for (std::size_t i = 0; i < f_normalized.rows(); ++i) {
        double sx = 0, sy = 0, total = 0;
        for (std::size_t j = 0; j < f_normalized.cols(); ++j) {
            const double s = f_normalized(i, j);
            sx += s * anchors[j][0];
            sy += s * anchors[j][1];
            total += s;
        }
        out(i, 0) = total == 0.0 ? 0.0 : sx / total;
        out(i, 1) = total == 0.0 ? 0.0 : sy / total;
    }
    return out;
}

// Star coordinates: plain anchor-weighted sum, may leave the unit circle.
inline Matrix project_star(const Matrix& f_normalized) {
    const auto anchors = circle_anchors(f_normalized.cols());
    Matrix out(f_normalized.rows(), 2);
    for (std::size_t i = 0; i < f_normalized.rows(); ++i) {
        double sx = 0, sy = 0;
        for (std::size_t j = 0; j < f_normalized.cols(); ++j) {
            sx += f_normalized(i, j) * anchors[j][0];
            sy += f_normalized(i, j) * anchors[j][1];
        }
        out(i, 0) = sx;
        out(i, 1) = sy;
    }
    return out;
}

// --- layouts ------------------------------------------------------------------

namespace detail {

inline std::string objective_label(std::size_t j) { return "f" + std::to_string(j + 1); }

inline bool is_highlighted(const PlotSpec& spec, std::size_t row) {
    return std::find(spec.highlight.begin(), spec.highlight.end(), row) != spec.highlight.end();
}

inline std::string point_color(const PlotSpec& spec, std::size_t row) {
    return is_highlighted(spec, row) ? spec.style.highlight_color : spec.style.fill;
}

// Blends two #rrggbb colors; t in [0,1].
inline std::string blend_hex(const std::string& low, const std::string& high, double t) {
    auto channel = [&](int off) {
        const int a = std::stoi(low.substr(off, 2), nullptr, 16);
        const int b = std::stoi(high.substr(off, 2), nullptr, 16);
        return static_cast<int>(std::lround(a + t * (b - a)));
    };
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", channel(1), channel(3), channel(5));
    return buf;
}

inline void add_points(PlotGeometry& geo, const Matrix& pts, const PlotSpec& spec, double radius) {
    for (std::size_t i = 0; i < pts.rows(); ++i) {
        geo.primitives.push_back(CirclePrim{pts(i, 0), pts(i, 1), radius,
                                            point_color(spec, i), "none", 0.0,
                                            spec.style.opacity});
    }
}

inline void pad_window(PlotGeometry& geo, double frac = 0.05) {
    double dx = (geo.max_x - geo.min_x), dy = (geo.max_y - geo.min_y);
    if (dx == 0.0) dx = 1.0;
    if (dy == 0.0) dy = 1.0;
    geo.min_x -= dx * frac;
    geo.max_x += dx * frac;
    geo.min_y -= dy * frac;
    geo.max_y += dy * frac;
}

inline void window_from_points(PlotGeometry& geo, const Matrix& pts) {
    geo.min_x = geo.min_y = std::numeric_limits<double>::infinity();
    geo.max_x = geo.max_y = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.rows(); ++i) {
        geo.min_x = std::min(geo.min_x, pts(i, 0));
        geo.max_x = std::max(geo.max_x, pts(i, 0));
        geo.min_y = std::min(geo.min_y, pts(i, 1));
        geo.max_y = std::max(geo.max_y, pts(i, 1));
    }
    pad_window(geo);
}

}  // namespace detail

inline PlotGeometry layout_scatter2d(const PlotSpec& spec) {
    if (spec.f.cols() < 2) throw std::invalid_argument("scatter: needs at least 2 objectives");
    Matrix data = spec.normalize ? normalize_minmax(spec.f) : spec.f;
    Matrix pts(data.rows(), 2);
    for (std::size_t i = 0; i < data.rows(); ++i) {
        pts(i, 0) = data(i, 0);
        pts(i, 1) = data(i, 1);
    }
    PlotGeometry geo;
    detail::window_from_points(geo, pts);
    const double r = 0.012 * std::max(geo.max_x - geo.min_x, geo.max_y - geo.min_y);
    detail::add_points(geo, pts, spec, r);
    return geo;
}

// Fixed-angle orthographic projection of (f1, f2, f3):
//   screen_x = (f1 - f2) cos(pi/6),  screen_y = f3 + (f1 + f2) sin(pi/6)
inline PlotGeometry layout_scatter3d(const PlotSpec& spec) {
    if (spec.f.cols() != 3) throw std::invalid_argument("scatter3d: needs exactly 3 objectives");
    Matrix data = spec.normalize ? normalize_minmax(spec.f) : spec.f;
    const double c = std::cos(std::numbers::pi / 6.0), s = std::sin(std::numbers::pi / 6.0);
    Matrix pts(data.rows(), 2);
    for (std::size_t i = 0; i < data.rows(); ++i) {
        pts(i, 0) = (data(i, 0) - data(i, 1)) * c;
        pts(i, 1) = data(i, 2) + (data(i, 0) + data(i, 1)) * s;
    }
    PlotGeometry geo;
    detail::window_from_points(geo, pts);
    const double r = 0.012 * std::max(geo.max_x - geo.min_x, geo.max_y - geo.min_y);
    detail::add_points(geo, pts, spec, r);
    return geo;
}

// M x M grid of panels; panel (i, j) plots objective j against objective i,
// diagonal panels carry the objective label. Data is min-max normalized so
// every panel shares the cell scale.
inline PlotGeometry layout_pairwise(const PlotSpec& spec) {
    const std::size_t m = spec.f.cols();
    if (m < 2) throw std::invalid_argument("pairwise: needs at least 2 objectives");
    const Matrix data = normalize_minmax(spec.f);
    PlotGeometry geo;
    geo.preserve_aspect = true;
    geo.min_x = geo.min_y = -0.05;
    geo.max_x = geo.max_y = static_cast<double>(m) + 0.05;
    const double inset = 0.08;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double x0 = static_cast<double>(j), y0 = static_cast<double>(m - 1 - i);
            geo.primitives.push_back(PolygonPrim{
                {{x0, y0}, {x0 + 1.0, y0}, {x0 + 1.0, y0 + 1.0}, {x0, y0 + 1.0}},
                "none", "#777777", 0.6, 1.0});
            if (i == j) {
                geo.primitives.push_back(
                    TextPrim{x0 + 0.5, y0 + 0.5, detail::objective_label(i), 0.22, "middle"});
                continue;
            }
            const double span = 1.0 - 2.0 * inset;
            for (std::size_t rrow = 0; rrow < data.rows(); ++rrow) {
                geo.primitives.push_back(
                    CirclePrim{x0 + inset + data(rrow, j) * span, y0 + inset + data(rrow, i) * span,
                               0.02, detail::point_color(spec, rrow), "none", 0.0,
                               spec.style.opacity});
            }
        }
    }
    return geo;
}

// Parallel coordinates: axis j vertical at abscissa j/(M-1); one polyline per
// solution through its (optionally normalized) objective values.
inline PlotGeometry layout_pcp(const PlotSpec& spec) {
    const std::size_t m = spec.f.cols();
    if (m < 2) throw std::invalid_argument("pcp: needs at least 2 objectives");
    const Matrix data = spec.normalize ? normalize_minmax(spec.f) : spec.f;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < data.rows(); ++i)
        for (std::size_t j = 0; j < m; ++j) {
            lo = std::min(lo, data(i, j));
            hi = std::max(hi, data(i, j));
        }
    if (data.rows() == 0) {
        lo = 0.0;
        hi = 1.0;
    }
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }

    PlotGeometry geo;
    geo.min_x = -0.05;
    geo.max_x = 1.05;
    geo.min_y = lo - 0.08 * (hi - lo);
    geo.max_y = hi + 0.08 * (hi - lo);
    auto axis_x = [&](std::size_t j) {
        return static_cast<double>(j) / static_cast<double>(m - 1);
    };
    for (std::size_t j = 0; j < m; ++j) {
        geo.primitives.push_back(
            PolylinePrim{{{axis_x(j), lo}, {axis_x(j), hi}}, "#555555", 0.8, 1.0});
        geo.primitives.push_back(TextPrim{axis_x(j), geo.max_y - 0.02 * (hi - lo),
                                          detail::objective_label(j), 0.035 * (hi - lo),
                                          "middle"});
    }
    for (std::size_t i = 0; i < data.rows(); ++i) {
        PolylinePrim line;
        line.stroke = detail::point_color(spec, i);
        line.width = detail::is_highlighted(spec, i) ? 1.8 : 1.0;
        line.opacity = spec.style.opacity;
        for (std::size_t j = 0; j < m; ++j) line.pts.push_back({axis_x(j), data(i, j)});
        geo.primitives.push_back(std::move(line));
    }
    return geo;
}

namespace detail {

inline PlotGeometry circle_frame(std::size_t m, double ring_radius) {
    PlotGeometry geo;
    geo.preserve_aspect = true;
    geo.min_x = geo.min_y = -(ring_radius + 0.35);
    geo.max_x = geo.max_y = ring_radius + 0.35;
    geo.primitives.push_back(CirclePrim{0, 0, ring_radius, "none", "#555555", 0.8, 1.0});
    const auto anchors = circle_anchors(m);
    for (std::size_t j = 0; j < m; ++j) {
        geo.primitives.push_back(TextPrim{anchors[j][0] * (ring_radius + 0.18),
                                          anchors[j][1] * (ring_radius + 0.12),
                                          objective_label(j), 0.12, "middle"});
    }
    return geo;
}

}  // namespace detail

inline PlotGeometry layout_radviz(const PlotSpec& spec) {
    const Matrix pts = project_radviz(normalize_minmax(spec.f));
    PlotGeometry geo = detail::circle_frame(spec.f.cols(), 1.0);
    detail::add_points(geo, pts, spec, 0.025);
    return geo;
}

inline PlotGeometry layout_star(const PlotSpec& spec) {
    const Matrix pts = project_star(normalize_minmax(spec.f));
    double radius = 1.0;
    for (std::size_t i = 0; i < pts.rows(); ++i)
        radius = std::max(radius, std::hypot(pts(i, 0), pts(i, 1)));
    PlotGeometry geo = detail::circle_frame(spec.f.cols(), 1.0);
    geo.min_x = geo.min_y = -(radius + 0.35);
    geo.max_x = geo.max_y = radius + 0.35;
    detail::add_points(geo, pts, spec, 0.025 * radius);
    return geo;
}

// Heatmap: cell (i, j) is the min-max normalized objective j of solution i,
// colored on the sequential ramp; rows optionally sorted lexicographically
// by their objective vectors.
inline PlotGeometry layout_heatmap(const PlotSpec& spec) {
    const std::size_t n = spec.f.rows(), m = spec.f.cols();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (spec.sort_rows) {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return std::lexicographical_compare(spec.f.row(a).begin(), spec.f.row(a).end(),
                                                spec.f.row(b).begin(), spec.f.row(b).end());
        });
    }
    const Matrix data = normalize_minmax(spec.f);
    PlotGeometry geo;
    geo.min_x = -0.05 * static_cast<double>(m);
    geo.max_x = 1.05 * static_cast<double>(m);
    geo.min_y = -0.05 * static_cast<double>(n);
    geo.max_y = 1.05 * static_cast<double>(n);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t i = order[r];
        for (std::size_t j = 0; j < m; ++j) {
            geo.primitives.push_back(RectPrim{
                static_cast<double>(j), static_cast<double>(n - 1 - r), 1.0, 1.0,
                detail::blend_hex(spec.style.ramp_low, spec.style.ramp_high, data(i, j)), 1.0});
        }
    }
    return geo;
}

// Petal diagram of a single solution: M equal-angle wedges whose radii are
// proportional to the normalized objective values.
inline PlotGeometry layout_petal(std::span<const double> f_normalized, const Style& style) {
    const std::size_t m = f_normalized.size();
    if (m == 0) throw std::invalid_argument("petal: empty objective vector");
    PlotGeometry geo;
    geo.preserve_aspect = true;
    geo.min_x = geo.min_y = -1.35;
    geo.max_x = geo.max_y = 1.35;
    geo.primitives.push_back(CirclePrim{0, 0, 1.0, "none", "#555555", 0.8, 1.0});
    const double step = 2.0 * std::numbers::pi / static_cast<double>(m);
    for (std::size_t j = 0; j < m; ++j) {
        geo.primitives.push_back(WedgePrim{0, 0, f_normalized[j],
                                           step * static_cast<double>(j),
                                           step * static_cast<double>(j + 1),
                                           style.palette[j % style.palette.size()], 0.9});
        const double mid = step * (static_cast<double>(j) + 0.5);
        geo.primitives.push_back(TextPrim{1.18 * std::cos(mid), 1.18 * std::sin(mid),
                                          detail::objective_label(j), 0.12, "middle"});
    }
    return geo;
}

inline constexpr double kRadarInnerRadius = 0.2;
inline constexpr double kRadarOuterRadius = 1.0;

// Radar/spider diagram of a single solution. The inner polygon is the ideal
// point, the outer one the nadir point; the solution vertex sits on axis j at
// the normalized position between them.
inline PlotGeometry layout_radar(std::span<const double> f, std::span<const double> ideal,
                                 std::span<const double> nadir, const Style& style) {
    const std::size_t m = f.size();
    if (m == 0) throw std::invalid_argument("radar: empty objective vector");
    if (ideal.size() != m || nadir.size() != m)
        throw std::invalid_argument("radar: ideal/nadir must match the objective count");
    for (std::size_t j = 0; j < m; ++j) {
        if (!(nadir[j] > ideal[j]))
            throw std::invalid_argument("radar: nadir must exceed ideal in every objective");
        if (f[j] < ideal[j] || f[j] > nadir[j])
            throw std::invalid_argument("radar: solution must lie between ideal and nadir");
    }
    const auto anchors = circle_anchors(m);
    auto polygon_at = [&](auto radius_of) {
        PolygonPrim poly;
        for (std::size_t j = 0; j < m; ++j) {
            const double r = radius_of(j);
            poly.pts.push_back({anchors[j][0] * r, anchors[j][1] * r});
        }
        return poly;
    };

    PlotGeometry geo;
    geo.preserve_aspect = true;
    geo.min_x = geo.min_y = -1.35;
    geo.max_x = geo.max_y = 1.35;
    for (std::size_t j = 0; j < m; ++j) {
        geo.primitives.push_back(PolylinePrim{
            {{0.0, 0.0}, {anchors[j][0] * kRadarOuterRadius, anchors[j][1] * kRadarOuterRadius}},
            "#bbbbbb", 0.6, 1.0});
        geo.primitives.push_back(TextPrim{anchors[j][0] * 1.18, anchors[j][1] * 1.18,
                                          detail::objective_label(j), 0.12, "middle"});
    }
    auto inner = polygon_at([&](std::size_t) { return kRadarInnerRadius; });
    inner.fill = "none";
    inner.stroke = "#555555";
    inner.width = 0.8;
    auto outer = polygon_at([&](std::size_t) { return kRadarOuterRadius; });
    outer.fill = "none";
    outer.stroke = "#555555";
    outer.width = 0.8;
    auto solution = polygon_at([&](std::size_t j) {
        const double t = (f[j] - ideal[j]) / (nadir[j] - ideal[j]);
        return kRadarInnerRadius + t * (kRadarOuterRadius - kRadarInnerRadius);
    });
    solution.fill = style.fill;
    solution.stroke = style.stroke;
    solution.width = 1.2;
    solution.opacity = 0.5;
    geo.primitives.push_back(std::move(inner));
    geo.primitives.push_back(std::move(outer));
    geo.primitives.push_back(std::move(solution));
    return geo;
}

inline PlotGeometry make_geometry(const PlotSpec& spec) {
    switch (spec.kind) {
        case PlotKind::scatter2d: return layout_scatter2d(spec);
        case PlotKind::scatter3d: return layout_scatter3d(spec);
        case PlotKind::pairwise: return layout_pairwise(spec);
        case PlotKind::pcp: return layout_pcp(spec);
        case PlotKind::radviz: return layout_radviz(spec);
        case PlotKind::star: return layout_star(spec);
        case PlotKind::heatmap: return layout_heatmap(spec);
        case PlotKind::petal: {
            if (spec.row >= spec.f.rows())
                throw std::invalid_argument("petal: row index out of range");
            const Matrix data = normalize_minmax(spec.f);
            return layout_petal(data.row(spec.row), spec.style);
        }
        case PlotKind::radar: {
            if (spec.row >= spec.f.rows())
                throw std::invalid_argument("radar: row index out of range");
            return layout_radar(spec.f.row(spec.row), spec.ideal, spec.nadir, spec.style);
        }
    }
    throw std::invalid_argument("make_geometry: unknown plot kind");
}

// --- SVG emission -------------------------------------------------------------

namespace detail {

inline std::string svg_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

struct CanvasMap {
    double sx, sy, ox, oy;  // screen = world * s + o (y flipped via negative sy)

    std::array<double, 2> map(double wx, double wy) const { return {wx * sx + ox, wy * sy + oy}; }
    double scale_x() const { return sx; }
};

}  // namespace detail

inline constexpr double kSvgCanvas = 720.0;
inline constexpr double kSvgMargin = 40.0;

inline std::string render_svg(const PlotGeometry& geo) {
    const double inner = kSvgCanvas - 2.0 * kSvgMargin;
    double sx = inner / (geo.max_x - geo.min_x);
    double sy = inner / (geo.max_y - geo.min_y);
    if (geo.preserve_aspect) sx = sy = std::min(sx, sy);
    detail::CanvasMap cm{
        sx, -sy,
        kSvgMargin + (inner - sx * (geo.max_x - geo.min_x)) / 2.0 - geo.min_x * sx,
        kSvgCanvas - kSvgMargin - (inner - sy * (geo.max_y - geo.min_y)) / 2.0 + geo.min_y * sy};

    std::ostringstream os;
    auto num = detail::svg_num;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(kSvgCanvas)
       << "\" height=\"" << num(kSvgCanvas) << "\" viewBox=\"0 0 " << num(kSvgCanvas) << ' '
       << num(kSvgCanvas) << "\">\n"
       << "<rect x=\"0\" y=\"0\" width=\"" << num(kSvgCanvas) << "\" height=\"" << num(kSvgCanvas)
       << "\" fill=\"#ffffff\"/>\n"
       << "<rect x=\"" << num(kSvgMargin / 2) << "\" y=\"" << num(kSvgMargin / 2) << "\" width=\""
       << num(kSvgCanvas - kSvgMargin) << "\" height=\"" << num(kSvgCanvas - kSvgMargin)
       << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";

    auto emit_pts = [&](const std::vector<std::array<double, 2>>& pts) {
        std::string s;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto p = cm.map(pts[i][0], pts[i][1]);
            if (i) s += ' ';
            s += num(p[0]) + "," + num(p[1]);
        }
        return s;
    };

    for (const auto& prim : geo.primitives) {
        std::visit(
            [&](const auto& p) {
                using P = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<P, PolylinePrim>) {
                    os << "<polyline points=\"" << emit_pts(p.pts)
                       << "\" fill=\"none\" stroke=\"" << p.stroke << "\" stroke-width=\""
                       << num(p.width) << "\" stroke-opacity=\"" << num(p.opacity) << "\"/>\n";
                } else if constexpr (std::is_same_v<P, PolygonPrim>) {
                    os << "<polygon points=\"" << emit_pts(p.pts) << "\" fill=\"" << p.fill
                       << "\" stroke=\"" << p.stroke << "\" stroke-width=\"" << num(p.width)
                       << "\" opacity=\"" << num(p.opacity) << "\"/>\n";
                } else if constexpr (std::is_same_v<P, CirclePrim>) {
                    const auto c = cm.map(p.cx, p.cy);
                    os << "<circle cx=\"" << num(c[0]) << "\" cy=\"" << num(c[1]) << "\" r=\""
                       << num(p.r * cm.scale_x()) << "\" fill=\"" << p.fill << "\" stroke=\""
                       << p.stroke << "\" stroke-width=\"" << num(p.width) << "\" opacity=\""
                       << num(p.opacity) << "\"/>\n";
                } else if constexpr (std::is_same_v<P, WedgePrim>) {
                    const auto c = cm.map(p.cx, p.cy);
                    const double r = p.r * cm.scale_x();
                    const auto a = cm.map(p.cx + p.r * std::cos(p.a0), p.cy + p.r * std::sin(p.a0));
                    const auto b = cm.map(p.cx + p.r * std::cos(p.a1), p.cy + p.r * std::sin(p.a1));
                    const int large = (p.a1 - p.a0) > std::numbers::pi ? 1 : 0;
                    os << "<path d=\"M " << num(c[0]) << ' ' << num(c[1]) << " L " << num(a[0])
                       << ' ' << num(a[1]) << " A " << num(r) << ' ' << num(r) << " 0 " << large
                       << " 0 " << num(b[0]) << ' ' << num(b[1]) << " Z\" fill=\"" << p.fill
                       << "\" opacity=\"" << num(p.opacity) << "\"/>\n";
                } else if constexpr (std::is_same_v<P, RectPrim>) {
                    const auto tl = cm.map(p.x, p.y + p.h);
                    os << "<rect x=\"" << num(tl[0]) << "\" y=\"" << num(tl[1]) << "\" width=\""
                       << num(p.w * cm.scale_x()) << "\" height=\"" << num(p.h * -cm.sy)
                       << "\" fill=\"" << p.fill << "\" opacity=\"" << num(p.opacity) << "\"/>\n";
                } else if constexpr (std::is_same_v<P, TextPrim>) {
                    const auto t = cm.map(p.x, p.y);
                    os << "<text x=\"" << num(t[0]) << "\" y=\"" << num(t[1])
                       << "\" text-anchor=\"" << p.anchor << "\" font-family=\"sans-serif\""
                       << " font-size=\"" << num(p.size * cm.scale_x()) << "\">" << p.text
                       << "</text>\n";
                }
            },
            prim);
    }
    os << "</svg>\n";
    return os.str();
}

inline void render_svg(const PlotGeometry& geo, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << render_svg(geo);
    if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

}  // namespace moo
