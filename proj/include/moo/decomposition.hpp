#pragma once

// Scalarization of an objective vector given weights and an ideal point.
// Objective and weight normalization are the caller's responsibility; the
// functions below evaluate the textbook forms on their inputs as given.

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace moo {

enum class DecompMethod { weighted_sum, tchebysheff, asf, aasf, pbi };

struct DecompParams {
    double theta = 5.0;  // PBI penalty
    double rho = 1e-4;   // AASF augmentation
};

inline DecompMethod decomp_method_from_name(const std::string& name) {
    if (name == "weighted_sum") return DecompMethod::weighted_sum;
    if (name == "tchebysheff") return DecompMethod::tchebysheff;
    if (name == "asf") return DecompMethod::asf;
    if (name == "aasf") return DecompMethod::aasf;
    if (name == "pbi") return DecompMethod::pbi;
    throw std::invalid_argument("unknown decomposition method '" + name + "'");
}

// Scalarizes f. `ideal` may be empty (treated as the origin).
inline double decompose(std::span<const double> f, DecompMethod method,
                        std::span<const double> weights, std::span<const double> ideal = {},
                        const DecompParams& params = {}) {
    const std::size_t m = f.size();
    if (weights.size() != m)
        throw std::invalid_argument("decompose: weights length does not match objectives");
    if (!ideal.empty() && ideal.size() != m)
        throw std::invalid_argument("decompose: ideal length does not match objectives");
    bool any_weight = false;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("decompose: weights must be non-negative");
        if (w > 0.0) any_weight = true;
    }
    if (!any_weight) throw std::invalid_argument("decompose: weights must not all be zero");

    auto z = [&](std::size_t i) { return ideal.empty() ? 0.0 : ideal[i]; };

    switch (method) {
        case DecompMethod::weighted_sum: {
            double s = 0.0;
            for (std::size_t i = 0; i < m; ++i) s += weights[i] * f[i];
            return s;
        }
        case DecompMethod::tchebysheff: {
            double best = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                best = std::max(best, weights[i] * std::abs(f[i] - z(i)));
            return best;
        }
        case DecompMethod::asf:
        case DecompMethod::aasf: {
            for (double w : weights)
                if (w <= 0.0)
                    throw std::invalid_argument("decompose: asf/aasf require strictly positive weights");
            double worst = -std::numeric_limits<double>::infinity();
            double sum = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double term = (f[i] - z(i)) / weights[i];
                worst = std::max(worst, term);
                sum += term;
            }
            return method == DecompMethod::asf ? worst : worst + params.rho * sum;
        }
        case DecompMethod::pbi: {
            double w_norm = 0.0;
            for (double w : weights) w_norm += w * w;
            w_norm = std::sqrt(w_norm);
            double d1 = 0.0;
            for (std::size_t i = 0; i < m; ++i) d1 += (f[i] - z(i)) * weights[i];
            d1 /= w_norm;
            double d2sq = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double r = f[i] - z(i) - d1 * weights[i] / w_norm;
                d2sq += r * r;
            }
            return d1 + params.theta * std::sqrt(d2sq);
        }
    }
    throw std::invalid_argument("decompose: unknown method");
}

}  // namespace moo
