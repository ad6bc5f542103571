#pragma once

// Performance indicators: GD, IGD, GD+, IGD+ and exact hypervolume for 2-3
// objectives. All of them assume minimization and perform no internal
// normalization of objective values.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "moo/core.hpp"
#include "moo/matrix.hpp"

namespace moo {

namespace detail {

inline void check_indicator_input(const Matrix& s, const Matrix& pf) {
    if (s.rows() == 0 || pf.rows() == 0)
        throw std::invalid_argument("indicator: input sets must be non-empty");
    if (s.cols() != pf.cols())
        throw std::invalid_argument("indicator: objective dimensions do not match");
}

// Dominance-aware distance from solution a to reference point p: only the
// components where a falls short of p contribute.
inline double dplus_distance(std::span<const double> a, std::span<const double> p) {
    double s = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m) {
        const double d = std::max(a[m] - p[m], 0.0);
        s += d * d;
    }
    return std::sqrt(s);
}

template <class Dist>
double mean_nearest(const Matrix& from, const Matrix& to, Dist dist) {
    double total = 0.0;
    for (std::size_t i = 0; i < from.rows(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < to.rows(); ++j)
            nearest = std::min(nearest, dist(from.row(i), to.row(j)));
        total += nearest;
    }
    return total / static_cast<double>(from.rows());
}

}  // namespace detail

// Average distance from each solution to the closest reference point.
inline double gd(const Matrix& s, const Matrix& pf) {
    detail::check_indicator_input(s, pf);
    return detail::mean_nearest(s, pf, [](auto a, auto b) { return euclidean_distance(a, b); });
}

// Average distance from each reference point to the closest solution.
inline double igd(const Matrix& s, const Matrix& pf) {
    detail::check_indicator_input(s, pf);
    return detail::mean_nearest(pf, s, [](auto a, auto b) { return euclidean_distance(a, b); });
}

inline double gd_plus(const Matrix& s, const Matrix& pf) {
    detail::check_indicator_input(s, pf);
    return detail::mean_nearest(s, pf,
                                [](auto a, auto b) { return detail::dplus_distance(a, b); });
}

inline double igd_plus(const Matrix& s, const Matrix& pf) {
    detail::check_indicator_input(s, pf);
    // distance still runs solution -> reference point
    return detail::mean_nearest(pf, s,
                                [](auto p, auto sol) { return detail::dplus_distance(sol, p); });
}

inline bool is_mutually_nondominated(const Matrix& f) {
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t j = i + 1; j < f.rows(); ++j)
            if (pareto_dominates(f.row(i), f.row(j)) != Dominance::incomparable) return false;
    return true;
}

struct HypervolumeResult {
    double value = 0.0;
    std::size_t n_discarded = 0;  // points not strictly dominating the reference
};

namespace detail {

// Area of the union of boxes [p, ref] for 2-D points, by a left-to-right
// sweep over the running minimum of f2.
inline double hv2d(std::vector<std::array<double, 2>> pts, double ref0, double ref1) {
    std::sort(pts.begin(), pts.end());
    double area = 0.0;
    double best_f2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        best_f2 = std::min(best_f2, pts[i][1]);
        const double next_x = (i + 1 < pts.size()) ? pts[i + 1][0] : ref0;
        area += (next_x - pts[i][0]) * (ref1 - best_f2);
    }
    return area;
}

}  // namespace detail

// Exact Lebesgue measure of the union of boxes [f, ref]. 2-D by sweep, 3-D by
// slicing along the third objective. Points that do not strictly dominate the
// reference contribute nothing and are counted in n_discarded.
inline HypervolumeResult hypervolume_full(const Matrix& s, std::span<const double> ref) {
    if (s.rows() == 0) throw std::invalid_argument("hypervolume: input set must be non-empty");
    const std::size_t m = s.cols();
    if (ref.size() != m)
        throw std::invalid_argument("hypervolume: reference point dimension mismatch");
    if (m > 3)
        throw std::invalid_argument("exact hypervolume unsupported above 3 objectives");
    if (m < 2) throw std::invalid_argument("hypervolume: needs 2 or 3 objectives");

    HypervolumeResult out;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < s.rows(); ++i) {
        bool dominates_ref = true;
        for (std::size_t j = 0; j < m; ++j)
            if (!(s(i, j) < ref[j])) {
                dominates_ref = false;
                break;
            }
        if (dominates_ref) kept.push_back(i);
        else ++out.n_discarded;
    }
    if (kept.empty()) return out;

    if (m == 2) {
        std::vector<std::array<double, 2>> pts;
        pts.reserve(kept.size());
        for (auto i : kept) pts.push_back({s(i, 0), s(i, 1)});
        out.value = detail::hv2d(std::move(pts), ref[0], ref[1]);
        return out;
    }

    // m == 3: sweep slabs along f3; each slab's cross-section is the 2-D
    // union of all points at or below its lower z level.
    std::vector<std::array<double, 3>> pts;
    pts.reserve(kept.size());
    for (auto i : kept) pts.push_back({s(i, 2), s(i, 0), s(i, 1)});  // sort key first
    std::sort(pts.begin(), pts.end());
    std::vector<std::array<double, 2>> active;
    double volume = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        active.push_back({pts[i][1], pts[i][2]});
        const double z_low = pts[i][0];
        const double z_high = (i + 1 < pts.size()) ? pts[i + 1][0] : ref[2];
        if (z_high > z_low)
            volume += detail::hv2d(active, ref[0], ref[1]) * (z_high - z_low);
    }
    out.value = volume;
    return out;
}

inline double hypervolume(const Matrix& s, std::span<const double> ref) {
    return hypervolume_full(s, ref).value;
}

}  // namespace moo
