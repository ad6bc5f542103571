#pragma once

// Multi-criteria decision making over a non-dominated objective matrix:
// pseudo-weights, high trade-off detection and compromise programming.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "moo/decomposition.hpp"
#include "moo/indicators.hpp"
#include "moo/matrix.hpp"

namespace moo {

struct PseudoWeightResult {
    Matrix weights;                // one row per solution, rows sum to 1
    std::vector<bool> degenerate;  // true where the uniform fallback applied
};

// Normalized distance to the worst value per objective, renormalized to sum
// one across objectives. Zero-range objectives are skipped. A row whose
// distances are all zero (worst in every usable objective) falls back to the
// uniform weight vector and is flagged.
inline PseudoWeightResult pseudo_weights(const Matrix& f) {
    if (f.rows() == 0) throw std::invalid_argument("pseudo_weights: empty input");
    const std::size_t n = f.rows(), m = f.cols();
    std::vector<double> fmin(m, std::numeric_limits<double>::infinity());
    std::vector<double> fmax(m, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            fmin[j] = std::min(fmin[j], f(i, j));
            fmax[j] = std::max(fmax[j], f(i, j));
        }

    PseudoWeightResult out{Matrix(n, m), std::vector<bool>(n, false)};
    for (std::size_t i = 0; i < n; ++i) {
        double denom = 0.0;
        std::vector<double> num(m, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            const double range = fmax[j] - fmin[j];
            if (range == 0.0) continue;
            num[j] = (fmax[j] - f(i, j)) / range;
            denom += num[j];
        }
        if (denom == 0.0) {
            for (std::size_t j = 0; j < m; ++j) out.weights(i, j) = 1.0 / static_cast<double>(m);
            out.degenerate[i] = true;
        } else {
            for (std::size_t j = 0; j < m; ++j) out.weights(i, j) = num[j] / denom;
        }
    }
    return out;
}

// Sacrifice/gain ratio between two mutually non-dominated points.
inline double tradeoff_pair(std::span<const double> fi, std::span<const double> fj) {
    double sacrifice = 0.0, gain = 0.0;
    for (std::size_t m = 0; m < fi.size(); ++m) {
        sacrifice += std::max(0.0, fj[m] - fi[m]);
        gain += std::max(0.0, fi[m] - fj[m]);
    }
    return sacrifice / gain;
}

struct TradeoffResult {
    std::vector<double> mu;  // one value per input row
    std::size_t best = 0;    // argmax of mu, lowest index on ties
};

// Trade-off measure mu(x_i) = min_j T(x_i, x_j) over all other solutions or,
// when `neighbors` is set, over the k nearest in objective space. Exact
// duplicate rows are collapsed before the pairwise pass and inherit their
// representative's value. The input must be mutually non-dominated.
inline TradeoffResult tradeoff_metric(const Matrix& f,
                                      std::optional<std::size_t> neighbors = std::nullopt) {
    if (f.rows() < 2) throw std::invalid_argument("tradeoff_metric: needs at least 2 solutions");
    if (neighbors && *neighbors == 0)
        throw std::invalid_argument("tradeoff_metric: neighbors must be at least 1");
    if (!is_mutually_nondominated(f))
        throw std::invalid_argument("tradeoff_metric: input must be mutually non-dominated");

    // collapse exact duplicates
    std::vector<std::size_t> unique;          // row indices of representatives
    std::vector<std::size_t> rep(f.rows());   // input row -> index into `unique`
    for (std::size_t i = 0; i < f.rows(); ++i) {
        bool found = false;
        for (std::size_t u = 0; u < unique.size(); ++u) {
            if (std::equal(f.row(i).begin(), f.row(i).end(), f.row(unique[u]).begin())) {
                rep[i] = u;
                found = true;
                break;
            }
        }
        if (!found) {
            rep[i] = unique.size();
            unique.push_back(i);
        }
    }
    if (unique.size() < 2)
        throw std::invalid_argument("tradeoff_metric: needs at least 2 distinct solutions");

    const std::size_t nu = unique.size();
    std::vector<double> mu_unique(nu);
    for (std::size_t a = 0; a < nu; ++a) {
        std::vector<std::size_t> others;
        others.reserve(nu - 1);
        for (std::size_t b = 0; b < nu; ++b)
            if (b != a) others.push_back(b);
        if (neighbors && *neighbors < others.size()) {
            std::stable_sort(others.begin(), others.end(), [&](std::size_t l, std::size_t r) {
                return squared_distance(f.row(unique[a]), f.row(unique[l])) <
                       squared_distance(f.row(unique[a]), f.row(unique[r]));
            });
            others.resize(*neighbors);
        }
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t b : others)
            best = std::min(best, tradeoff_pair(f.row(unique[a]), f.row(unique[b])));
        mu_unique[a] = best;
    }

    TradeoffResult out;
    out.mu.resize(f.rows());
    for (std::size_t i = 0; i < f.rows(); ++i) out.mu[i] = mu_unique[rep[i]];
    out.best = static_cast<std::size_t>(
        std::max_element(out.mu.begin(), out.mu.end()) - out.mu.begin());
    return out;
}

// Compromise programming: index of the row minimizing the scalarized value;
// ties resolve to the lowest index.
inline std::size_t compromise(const Matrix& f, DecompMethod method,
                              std::span<const double> weights,
                              std::span<const double> ideal = {},
                              const DecompParams& params = {}) {
    if (f.rows() == 0) throw std::invalid_argument("compromise: empty input");
    std::size_t best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < f.rows(); ++i) {
        const double v = decompose(f.row(i), method, weights, ideal, params);
        if (v < best_value) {
            best_value = v;
            best = i;
        }
    }
    return best;
}

}  // namespace moo
