#pragma once

// Evolutionary operators: sampling (random, Latin hypercube), crossover
// (one-point, two-point, uniform, half-uniform, SBX real/integer), mutation
// (polynomial, bitflip) and binary tournament selection.
//
// Deterministic kernels (given cut points or the SBX u-draw) are exposed
// separately from their randomized wrappers so tests can pin exact values.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "moo/core.hpp"
#include "moo/matrix.hpp"
#include "moo/rng.hpp"

namespace moo {

// Integer variables are recombined/mutated on widened real bounds
// [L-0.5, U+0.5-eps] and rounded half-away-from-zero afterwards.
inline constexpr double kIntBoundEps = 1e-9;

struct SbxParams {
    double eta = 15.0;          // distribution index
    double prob_per_var = 0.5;  // per-variable recombination probability
};

struct PolyMutationParams {
    double eta_m = 20.0;
    double prob_per_var = -1.0;  // negative selects the 1/N default
};

// --- sampling ---------------------------------------------------------------

inline Matrix sample_random(const Problem& problem, std::size_t n, Rng& rng) {
    if (n == 0) throw std::invalid_argument("sample_random: n must be >= 1");
    Matrix out(n, problem.n_var());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < problem.n_var(); ++j) {
            switch (problem.var_kind()) {
                case VarKind::real:
                    out(i, j) = rng.uniform(problem.lower()[j], problem.upper()[j]);
                    break;
                case VarKind::integer:
                    out(i, j) = static_cast<double>(
                        rng.uniform_int(static_cast<std::int64_t>(problem.lower()[j]),
                                        static_cast<std::int64_t>(problem.upper()[j])));
                    break;
                case VarKind::binary:
                    out(i, j) = rng.bernoulli(0.5) ? 1.0 : 0.0;
                    break;
            }
        }
    }
    return out;
}

// Latin hypercube: per column, exactly one sample in each of the n
// equal-width strata of [lower_j, upper_j].
inline Matrix sample_lhs(const Problem& problem, std::size_t n, Rng& rng) {
    if (n == 0) throw std::invalid_argument("sample_lhs: n must be >= 1");
    if (problem.var_kind() != VarKind::real)
        throw std::invalid_argument("sample_lhs: only real variables can be LHS-sampled");
    Matrix out(n, problem.n_var());
    std::vector<std::size_t> strata(n);
    for (std::size_t j = 0; j < problem.n_var(); ++j) {
        std::iota(strata.begin(), strata.end(), std::size_t{0});
        rng.shuffle(strata);
        const double lo = problem.lower()[j];
        const double width = (problem.upper()[j] - lo) / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            out(i, j) = lo + width * (static_cast<double>(strata[i]) + rng.uniform());
        }
    }
    return out;
}

// --- crossover --------------------------------------------------------------

enum class PointCrossoverKind { one_point, two_point };

// Children from a single cut: positions [0,cut) from one parent, the rest
// from the other. cut must be in [1, N-1].
inline void crossover_one_point_at(std::span<const double> p1, std::span<const double> p2,
                                   std::size_t cut, std::span<double> c1, std::span<double> c2) {
    for (std::size_t i = 0; i < p1.size(); ++i) {
        const bool first = i < cut;
        c1[i] = first ? p1[i] : p2[i];
        c2[i] = first ? p2[i] : p1[i];
    }
}

// Swaps the middle segment [cut1, cut2).
inline void crossover_two_point_at(std::span<const double> p1, std::span<const double> p2,
                                   std::size_t cut1, std::size_t cut2, std::span<double> c1,
                                   std::span<double> c2) {
    for (std::size_t i = 0; i < p1.size(); ++i) {
        const bool swap = i >= cut1 && i < cut2;
        c1[i] = swap ? p2[i] : p1[i];
        c2[i] = swap ? p1[i] : p2[i];
    }
}

inline void crossover_point(std::span<const double> p1, std::span<const double> p2,
                            PointCrossoverKind kind, Rng& rng, std::span<double> c1,
                            std::span<double> c2) {
    const std::size_t n = p1.size();
    if (n < 2) throw std::invalid_argument("crossover_point: needs at least 2 variables");
    if (kind == PointCrossoverKind::one_point) {
        const std::size_t cut = 1 + rng.index(n - 1);
        crossover_one_point_at(p1, p2, cut, c1, c2);
    } else {
        std::size_t a = 1 + rng.index(n - 1);
        std::size_t b = 1 + rng.index(n - 1);
        if (a > b) std::swap(a, b);
        crossover_two_point_at(p1, p2, a, b, c1, c2);
    }
}

// Uniform crossover: each position independently takes parent 1 or parent 2
// with probability 1/2; children are complementary.
inline void crossover_ux(std::span<const double> p1, std::span<const double> p2, Rng& rng,
                         std::span<double> c1, std::span<double> c2) {
    for (std::size_t i = 0; i < p1.size(); ++i) {
        const bool first = rng.bernoulli(0.5);
        c1[i] = first ? p1[i] : p2[i];
        c2[i] = first ? p2[i] : p1[i];
    }
}

// Half-uniform crossover: exactly floor(|D|/2) of the differing positions D
// are exchanged, chosen uniformly without replacement.
inline void crossover_hux(std::span<const double> p1, std::span<const double> p2, Rng& rng,
                          std::span<double> c1, std::span<double> c2) {
    std::copy(p1.begin(), p1.end(), c1.begin());
    std::copy(p2.begin(), p2.end(), c2.begin());
    std::vector<std::size_t> differing;
    for (std::size_t i = 0; i < p1.size(); ++i)
        if (p1[i] != p2[i]) differing.push_back(i);
    const std::size_t n_swap = differing.size() / 2;
    // partial Fisher-Yates: the first n_swap entries are a uniform subset
    for (std::size_t i = 0; i < n_swap; ++i) {
        const std::size_t j = i + rng.index(differing.size() - i);
        std::swap(differing[i], differing[j]);
        std::swap(c1[differing[i]], c2[differing[i]]);
    }
}

// SBX spread factor for a given u-draw.
inline double sbx_spread(double eta, double u) {
    if (u <= 0.5) return std::pow(2.0 * u, 1.0 / (eta + 1.0));
    return std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
}

// Pre-clamp SBX children for one variable; preserves the parent mean.
inline std::pair<double, double> sbx_children(double p1, double p2, double eta, double u) {
    const double beta = sbx_spread(eta, u);
    return {0.5 * ((1.0 + beta) * p1 + (1.0 - beta) * p2),
            0.5 * ((1.0 - beta) * p1 + (1.0 + beta) * p2)};
}

inline void crossover_sbx(std::span<const double> p1, std::span<const double> p2,
                          const SbxParams& params, std::span<const double> lower,
                          std::span<const double> upper, Rng& rng, std::span<double> c1,
                          std::span<double> c2) {
    for (std::size_t i = 0; i < p1.size(); ++i) {
        if (rng.bernoulli(params.prob_per_var)) {
            auto [a, b] = sbx_children(p1[i], p2[i], params.eta, rng.uniform());
            c1[i] = std::clamp(a, lower[i], upper[i]);
            c2[i] = std::clamp(b, lower[i], upper[i]);
        } else {
            c1[i] = p1[i];
            c2[i] = p2[i];
        }
    }
}

// SBX with a bound-respecting spread: instead of clamping, the spread factor
// is drawn from the distribution conditioned on both children landing inside
// [lower, upper]. Children are emitted in random order. This is the default
// crossover of the shipped algorithms; the plain clamped form above remains
// available as its own operator kind.
inline void crossover_sbx_bounded(std::span<const double> p1, std::span<const double> p2,
                                  const SbxParams& params, std::span<const double> lower,
                                  std::span<const double> upper, Rng& rng, std::span<double> c1,
                                  std::span<double> c2) {
    const double eta = params.eta;
    for (std::size_t i = 0; i < p1.size(); ++i) {
        c1[i] = p1[i];
        c2[i] = p2[i];
        if (!rng.bernoulli(params.prob_per_var)) continue;
        const double y1 = std::min(p1[i], p2[i]);
        const double y2 = std::max(p1[i], p2[i]);
        if (y2 - y1 < 1e-14) continue;
        const double u = rng.uniform();
        auto spread = [&](double beta_bound) {
            const double alpha = 2.0 - std::pow(beta_bound, -(eta + 1.0));
            if (u <= 1.0 / alpha) return std::pow(u * alpha, 1.0 / (eta + 1.0));
            return std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
        };
        const double beta_lo = 1.0 + 2.0 * (y1 - lower[i]) / (y2 - y1);
        const double beta_hi = 1.0 + 2.0 * (upper[i] - y2) / (y2 - y1);
        double lo_child = 0.5 * ((y1 + y2) - spread(beta_lo) * (y2 - y1));
        double hi_child = 0.5 * ((y1 + y2) + spread(beta_hi) * (y2 - y1));
        lo_child = std::clamp(lo_child, lower[i], upper[i]);  // guards rounding only
        hi_child = std::clamp(hi_child, lower[i], upper[i]);
        if (rng.bernoulli(0.5)) std::swap(lo_child, hi_child);
        c1[i] = lo_child;
        c2[i] = hi_child;
    }
}

// Integer SBX: real SBX on widened bounds, then round to nearest integer
// (half away from zero) and clamp back to [L, U].
inline void crossover_sbx_int(std::span<const double> p1, std::span<const double> p2,
                              const SbxParams& params, std::span<const double> lower,
                              std::span<const double> upper, Rng& rng, std::span<double> c1,
                              std::span<double> c2) {
    std::vector<double> wlo(lower.begin(), lower.end()), whi(upper.begin(), upper.end());
    for (auto& v : wlo) v -= 0.5;
    for (auto& v : whi) v += 0.5 - kIntBoundEps;
    crossover_sbx(p1, p2, params, wlo, whi, rng, c1, c2);
    for (std::size_t i = 0; i < p1.size(); ++i) {
        c1[i] = std::clamp(std::round(c1[i]), lower[i], upper[i]);
        c2[i] = std::clamp(std::round(c2[i]), lower[i], upper[i]);
    }
}

// --- mutation ---------------------------------------------------------------

// Boundary-aware polynomial perturbation of one variable given the u-draw.
inline double poly_mutation_delta(double x, double lo, double hi, double eta_m, double u) {
    const double range = hi - lo;
    const double mut_pow = 1.0 / (eta_m + 1.0);
    if (u <= 0.5) {
        const double delta1 = (x - lo) / range;
        const double xy = 1.0 - delta1;
        const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta_m + 1.0);
        return std::pow(val, mut_pow) - 1.0;
    }
    const double delta2 = (hi - x) / range;
    const double xy = 1.0 - delta2;
    const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta_m + 1.0);
    return 1.0 - std::pow(val, mut_pow);
}

inline std::vector<double> mutate_polynomial(std::span<const double> x,
                                             const PolyMutationParams& params,
                                             std::span<const double> lower,
                                             std::span<const double> upper, Rng& rng) {
    const double prob = params.prob_per_var < 0.0
                            ? 1.0 / static_cast<double>(x.size())
                            : params.prob_per_var;
    std::vector<double> out(x.begin(), x.end());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!rng.bernoulli(prob)) continue;
        const double u = rng.uniform();
        const double delta = poly_mutation_delta(out[i], lower[i], upper[i], params.eta_m, u);
        out[i] = std::clamp(out[i] + delta * (upper[i] - lower[i]), lower[i], upper[i]);
    }
    return out;
}

// Integer polynomial mutation with the same bound widening as integer SBX.
inline std::vector<double> mutate_polynomial_int(std::span<const double> x,
                                                 const PolyMutationParams& params,
                                                 std::span<const double> lower,
                                                 std::span<const double> upper, Rng& rng) {
    std::vector<double> wlo(lower.begin(), lower.end()), whi(upper.begin(), upper.end());
    for (auto& v : wlo) v -= 0.5;
    for (auto& v : whi) v += 0.5 - kIntBoundEps;
    std::vector<double> out = mutate_polynomial(x, params, wlo, whi, rng);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = std::clamp(std::round(out[i]), lower[i], upper[i]);
    return out;
}

inline std::vector<double> mutate_bitflip(std::span<const double> x, double prob, Rng& rng) {
    std::vector<double> out(x.begin(), x.end());
    for (auto& bit : out) {
        if (rng.bernoulli(prob)) bit = (bit == 0.0) ? 1.0 : 0.0;
    }
    return out;
}

// --- selection --------------------------------------------------------------

// Returns <0 if a is preferred, >0 if b is preferred, 0 on a tie.
using Comparator = std::function<int(const Individual&, const Individual&)>;

// NSGA-II mating preference: feasibility first, then front rank, then
// crowding (larger wins).
inline int compare_cv_rank_crowding(const Individual& a, const Individual& b) {
    if (a.cv != b.cv) return a.cv < b.cv ? -1 : 1;
    const std::size_t ra = a.rank.value_or(0), rb = b.rank.value_or(0);
    if (ra != rb) return ra < rb ? -1 : 1;
    const double ca = a.crowding.value_or(0.0), cb = b.crowding.value_or(0.0);
    if (ca != cb) return ca > cb ? -1 : 1;
    return 0;
}

// Single-objective preference: feasibility first, then fitness.
inline int compare_cv_fitness(const Individual& a, const Individual& b) {
    if (a.cv != b.cv) return a.cv < b.cv ? -1 : 1;
    if (a.f[0] != b.f[0]) return a.f[0] < b.f[0] ? -1 : 1;
    return 0;
}

// Binary tournaments; candidates drawn uniformly with replacement, ties
// broken by a fair coin.
inline std::vector<std::pair<std::size_t, std::size_t>> tournament_select(
    const Population& pop, std::size_t n_pairs, const Comparator& compare, Rng& rng) {
    if (pop.size() == 0) throw std::invalid_argument("tournament_select: empty population");
    auto one = [&]() -> std::size_t {
        const std::size_t i = rng.index(pop.size());
        const std::size_t j = rng.index(pop.size());
        const int c = compare(pop[i], pop[j]);
        if (c < 0) return i;
        if (c > 0) return j;
        return rng.bernoulli(0.5) ? i : j;
    };
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n_pairs);
    for (std::size_t p = 0; p < n_pairs; ++p) {
        pairs.emplace_back(one(), one());
    }
    return pairs;
}

// --- configuration-level dispatch -------------------------------------------

enum class SamplingKind { random, lhs };
enum class CrossoverKind { sbx, sbx_bounded, one_point, two_point, ux, hux };
enum class MutationKind { polynomial, bitflip, none };

struct SamplingConfig {
    SamplingKind kind = SamplingKind::random;
};

struct CrossoverConfig {
    CrossoverKind kind = CrossoverKind::sbx_bounded;
    double prob = 0.9;          // probability the pair is crossed at all
    double eta = 15.0;          // SBX distribution index
    double prob_per_var = 0.5;  // SBX per-variable recombination probability
};

struct MutationConfig {
    MutationKind kind = MutationKind::polynomial;
    double eta = 20.0;           // polynomial distribution index
    double prob_per_var = -1.0;  // negative selects the 1/N default
};

struct OperatorSet {
    SamplingConfig sampling{};
    CrossoverConfig crossover{};
    MutationConfig mutation{};
};

inline Matrix sample(const SamplingConfig& cfg, const Problem& problem, std::size_t n, Rng& rng) {
    switch (cfg.kind) {
        case SamplingKind::random: return sample_random(problem, n, rng);
        case SamplingKind::lhs: return sample_lhs(problem, n, rng);
    }
    throw std::invalid_argument("sample: unknown sampling kind");
}

// Applies the whole-pair crossover probability, then dispatches by kind.
inline void crossover_pair(const CrossoverConfig& cfg, const Problem& problem,
                           std::span<const double> p1, std::span<const double> p2, Rng& rng,
                           std::span<double> c1, std::span<double> c2) {
    if (!rng.bernoulli(cfg.prob)) {
        std::copy(p1.begin(), p1.end(), c1.begin());
        std::copy(p2.begin(), p2.end(), c2.begin());
        return;
    }
    const SbxParams sbx{cfg.eta, cfg.prob_per_var};
    switch (cfg.kind) {
        case CrossoverKind::sbx:
        case CrossoverKind::sbx_bounded:
            if (problem.var_kind() == VarKind::integer)
                crossover_sbx_int(p1, p2, sbx, problem.lower(), problem.upper(), rng, c1, c2);
            else if (problem.var_kind() == VarKind::real && cfg.kind == CrossoverKind::sbx)
                crossover_sbx(p1, p2, sbx, problem.lower(), problem.upper(), rng, c1, c2);
            else if (problem.var_kind() == VarKind::real)
                crossover_sbx_bounded(p1, p2, sbx, problem.lower(), problem.upper(), rng, c1, c2);
            else
                throw std::invalid_argument("crossover: SBX requires real or integer variables");
            return;
        case CrossoverKind::one_point:
            crossover_point(p1, p2, PointCrossoverKind::one_point, rng, c1, c2);
            return;
        case CrossoverKind::two_point:
            crossover_point(p1, p2, PointCrossoverKind::two_point, rng, c1, c2);
            return;
        case CrossoverKind::ux: crossover_ux(p1, p2, rng, c1, c2); return;
        case CrossoverKind::hux: crossover_hux(p1, p2, rng, c1, c2); return;
    }
    throw std::invalid_argument("crossover: unknown kind");
}

inline std::vector<double> mutate_row(const MutationConfig& cfg, const Problem& problem,
                                      std::span<const double> x, Rng& rng) {
    switch (cfg.kind) {
        case MutationKind::none: return {x.begin(), x.end()};
        case MutationKind::polynomial: {
            const PolyMutationParams params{cfg.eta, cfg.prob_per_var};
            if (problem.var_kind() == VarKind::integer)
                return mutate_polynomial_int(x, params, problem.lower(), problem.upper(), rng);
            if (problem.var_kind() == VarKind::real)
                return mutate_polynomial(x, params, problem.lower(), problem.upper(), rng);
            throw std::invalid_argument("mutation: polynomial requires real or integer variables");
        }
        case MutationKind::bitflip: {
            if (problem.var_kind() != VarKind::binary)
                throw std::invalid_argument("mutation: bitflip requires binary variables");
            const double prob = cfg.prob_per_var < 0.0
                                    ? 1.0 / static_cast<double>(x.size())
                                    : cfg.prob_per_var;
            return mutate_bitflip(x, prob, rng);
        }
    }
    throw std::invalid_argument("mutation: unknown kind");
}

}  // namespace moo
