#pragma once

// Algorithm assembly: fast non-dominated sorting, crowding distance,
// constraint-domination survival, mating with optional duplicate
// elimination, NSGA-II (generational and steady-state via n_offsprings) and
// a single-objective elitist GA.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "moo/core.hpp"
#include "moo/indicators.hpp"
#include "moo/matrix.hpp"
#include "moo/operators.hpp"
#include "moo/problems.hpp"
#include "moo/rng.hpp"
#include "moo/termination.hpp"

namespace moo {

// Partition into fronts under constrained dominance. Front 0 is the
// non-dominated set; indices within a front stay in ascending order.
inline std::vector<std::vector<std::size_t>> fast_nondominated_sort(const Population& pop) {
    const std::size_t n = pop.size();
    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<std::size_t> dom_count(n, 0);

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            switch (constrained_dominates(pop[i], pop[j])) {
                case Dominance::a_dominates:
                    dominated[i].push_back(j);
                    ++dom_count[j];
                    break;
                case Dominance::b_dominates:
                    dominated[j].push_back(i);
                    ++dom_count[i];
                    break;
                case Dominance::incomparable: break;
            }
        }
    }

    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i)
        if (dom_count[i] == 0) current.push_back(i);
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t i : current) {
            for (std::size_t j : dominated[i]) {
                if (--dom_count[j] == 0) next.push_back(j);
            }
        }
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

// Crowding distance over one front's objective matrix. Boundary solutions
// per objective get +infinity; interior ones accumulate the normalized gap
// between their neighbours. Zero-range objectives contribute nothing.
inline std::vector<double> crowding_distance(const Matrix& front) {
    const std::size_t n = front.rows();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, 0.0);
    if (n <= 2) {
        std::fill(dist.begin(), dist.end(), inf);
        return dist;
    }
    std::vector<std::size_t> order(n);
    for (std::size_t m = 0; m < front.cols(); ++m) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return front(a, m) < front(b, m); });
        const double range = front(order.back(), m) - front(order.front(), m);
        dist[order.front()] = inf;
        dist[order.back()] = inf;
        if (range == 0.0) continue;
        for (std::size_t k = 1; k + 1 < n; ++k) {
            if (dist[order[k]] == inf) continue;
            dist[order[k]] += (front(order[k + 1], m) - front(order[k - 1], m)) / range;
        }
    }
    return dist;
}

// Runs sorting plus per-front crowding and stores both on the individuals.
inline std::vector<std::vector<std::size_t>> assign_rank_and_crowding(Population& pop) {
    auto fronts = fast_nondominated_sort(pop);
    for (std::size_t r = 0; r < fronts.size(); ++r) {
        Matrix objs;
        for (std::size_t i : fronts[r]) objs.push_row(pop[i].f);
        const auto crowd = crowding_distance(objs);
        for (std::size_t k = 0; k < fronts[r].size(); ++k) {
            pop[fronts[r][k]].rank = r;
            pop[fronts[r][k]].crowding = crowd[k];
        }
    }
    return fronts;
}

// NSGA-II survival: fill whole fronts while they fit; the splitting front is
// admitted in descending crowding order (stable on the original index).
// Assigns rank/crowding on `pop` as a side effect and returns the survivor
// indices in their survival order.
inline std::vector<std::size_t> survival_nsga2(Population& pop, std::size_t n_survive) {
    auto fronts = assign_rank_and_crowding(pop);
    std::vector<std::size_t> survivors;
    survivors.reserve(n_survive);
    for (const auto& front : fronts) {
        if (survivors.size() >= n_survive) break;
        if (survivors.size() + front.size() <= n_survive) {
            survivors.insert(survivors.end(), front.begin(), front.end());
            continue;
        }
        std::vector<std::size_t> order(front.begin(), front.end());
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return pop[a].crowding.value() > pop[b].crowding.value();
        });
        order.resize(n_survive - survivors.size());
        survivors.insert(survivors.end(), order.begin(), order.end());
    }
    return survivors;
}

// Elitist (mu+lambda) truncation for the single-objective GA: feasibility
// first, then fitness, stable on the original index.
inline std::vector<std::size_t> survival_ga(const Population& pop, std::size_t n_survive) {
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (pop[a].cv != pop[b].cv) return pop[a].cv < pop[b].cv;
        return pop[a].f[0] < pop[b].f[0];
    });
    order.resize(std::min(n_survive, order.size()));
    return order;
}

// Drops candidates lying within `tol` (Euclidean, raw variables) of any
// existing row or any earlier kept candidate.
inline Matrix eliminate_duplicates(const Matrix& candidates, const Matrix& existing, double tol) {
    Matrix kept;
    for (std::size_t i = 0; i < candidates.rows(); ++i) {
        const auto row = candidates.row(i);
        bool duplicate = false;
        for (std::size_t j = 0; j < existing.rows() && !duplicate; ++j)
            duplicate = euclidean_distance(row, existing.row(j)) < tol;
        for (std::size_t j = 0; j < kept.rows() && !duplicate; ++j)
            duplicate = euclidean_distance(row, kept.row(j)) < tol;
        if (!duplicate) kept.push_row(row);
    }
    if (kept.empty()) return Matrix(0, candidates.cols());
    return kept;
}

struct AlgorithmConfig {
    std::size_t pop_size = 40;
    std::size_t n_offsprings = 0;  // 0 means "same as pop_size"
    OperatorSet operators{};
    bool eliminate_duplicates = true;
    double duplicate_tol = 1e-16;
    std::uint64_t seed = 1;
    std::uint64_t max_evals_cap = 1'000'000;  // hard stop against unsatisfiable termination
    bool verbose = false;
    bool record_history = false;

    std::size_t offsprings() const { return n_offsprings == 0 ? pop_size : n_offsprings; }
};

enum class AlgorithmKind { ga, nsga2 };

inline AlgorithmKind algorithm_from_name(const std::string& name) {
    if (name == "ga") return AlgorithmKind::ga;
    if (name == "nsga2") return AlgorithmKind::nsga2;
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

// Tournament -> crossover -> mutation until the offspring quota is filled.
// With duplicate elimination on, candidates matching the parent population
// or an earlier offspring are rejected and mating retries (up to 100
// rounds); any shortfall left is topped up with fresh random samples.
inline Matrix mating(const Population& pop, const Problem& problem, const AlgorithmConfig& config,
                     const Comparator& compare, Rng& rng) {
    const std::size_t quota = config.offsprings();
    Matrix offspring(0, problem.n_var());
    Matrix taboo = pop.variables();  // existing rows plus accepted offspring

    for (int round = 0; round < 100 && offspring.rows() < quota; ++round) {
        const std::size_t missing = quota - offspring.rows();
        const std::size_t n_pairs = (missing + 1) / 2;
        Matrix candidates(0, problem.n_var());
        std::vector<double> c1(problem.n_var()), c2(problem.n_var());
        for (const auto& [a, b] : tournament_select(pop, n_pairs, compare, rng)) {
            crossover_pair(config.operators.crossover, problem, pop[a].x, pop[b].x, rng, c1, c2);
            candidates.push_row(mutate_row(config.operators.mutation, problem, c1, rng));
            candidates.push_row(mutate_row(config.operators.mutation, problem, c2, rng));
        }
        if (config.eliminate_duplicates)
            candidates = eliminate_duplicates(candidates, taboo, config.duplicate_tol);
        for (std::size_t i = 0; i < candidates.rows() && offspring.rows() < quota; ++i) {
            offspring.push_row(candidates.row(i));
            taboo.push_row(candidates.row(i));
        }
    }
    while (offspring.rows() < quota) {
        offspring.push_row(sample_random(problem, 1, rng).row(0));
    }
    return offspring;
}

struct OptState {
    Population pop;
    std::optional<Population> prev;
};

// One NSGA-II generation: mate, evaluate, merge with the parents and truncate
// to pop_size by (front rank, crowding).
inline void nsga2_step(OptState& state, const Problem& problem, const AlgorithmConfig& config,
                       Evaluator& evaluator, Rng& rng) {
    const Matrix offspring_x =
        mating(state.pop, problem, config, compare_cv_rank_crowding, rng);
    auto offspring = evaluator.evaluate_individuals(offspring_x);

    Population merged;
    merged.members = state.pop.members;
    merged.members.insert(merged.members.end(), offspring.begin(), offspring.end());

    const auto survivors = survival_nsga2(merged, config.pop_size);
    Population next;
    next.generation = state.pop.generation + 1;
    next.members.reserve(survivors.size());
    for (std::size_t i : survivors) next.members.push_back(merged.members[i]);
    state.prev = std::move(state.pop);
    state.pop = std::move(next);
}

// One GA generation: mate, evaluate, (mu+lambda) truncation by (cv, f).
inline void ga_step(OptState& state, const Problem& problem, const AlgorithmConfig& config,
                    Evaluator& evaluator, Rng& rng) {
    const Matrix offspring_x = mating(state.pop, problem, config, compare_cv_fitness, rng);
    auto offspring = evaluator.evaluate_individuals(offspring_x);

    Population merged;
    merged.members = state.pop.members;
    merged.members.insert(merged.members.end(), offspring.begin(), offspring.end());

    const auto survivors = survival_ga(merged, config.pop_size);
    Population next;
    next.generation = state.pop.generation + 1;
    next.members.reserve(survivors.size());
    for (std::size_t i : survivors) next.members.push_back(merged.members[i]);
    state.prev = std::move(state.pop);
    state.pop = std::move(next);
}

struct SolutionSet {
    Matrix x;  // decision vectors, one row per solution
    Matrix f;  // objective vectors
};

struct RunResult {
    SolutionSet final;
    Population final_population;      // the same solutions as full individuals
    std::vector<Population> history;  // filled when record_history is set
    std::uint64_t n_eval = 0;
    std::size_t n_gen = 0;
};

namespace detail {

// Feasible-preferred result set: the rank-0 members of the final population
// (all feasible whenever any feasible point exists); the GA keeps only its
// single best individual.
inline Population extract_final(const Population& pop, AlgorithmKind kind) {
    Population out;
    out.generation = pop.generation;
    if (kind == AlgorithmKind::ga) {
        const auto order = survival_ga(pop, 1);
        out.members.push_back(pop[order[0]]);
        return out;
    }
    const auto fronts = fast_nondominated_sort(pop);
    for (std::size_t i : fronts.front()) out.members.push_back(pop[i]);
    return out;
}

inline void verbose_line(const Population& pop, const Problem& problem, std::uint64_t n_eval) {
    std::cerr << "gen=" << pop.generation << " evals=" << n_eval;
    if (problem.n_obj() >= 2 && has_analytic_front(problem.name())) {
        Matrix f;
        for (const auto& ind : pop.members)
            if (ind.feasible() && ind.rank.value_or(1) == 0) f.push_row(ind.f);
        if (f.rows() > 0) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.6g", igd(f, analytic_front(problem.name(), 500)));
            std::cerr << " igd=" << buf;
        }
    }
    std::cerr << '\n';
}

}  // namespace detail

// Full optimization loop: sample, evaluate, iterate steps until the
// termination criterion (or the hard evaluation cap) fires.
inline RunResult run(const Problem& problem, AlgorithmKind kind, const AlgorithmConfig& config,
                     TerminationCriterion termination,
                     EvalMode mode = EvalMode::vectorized()) {
    if (config.pop_size == 0) throw std::invalid_argument("run: pop_size must be positive");
    if (kind == AlgorithmKind::ga && problem.n_obj() != 1)
        throw std::invalid_argument("run: the GA handles single-objective problems only");

    Rng rng(config.seed);
    Evaluator evaluator(problem, mode);
    termination.reset();

    OptState state;
    state.pop.generation = 0;
    state.pop.members = evaluator.evaluate_individuals(
        sample(config.operators.sampling, problem, config.pop_size, rng));
    if (kind == AlgorithmKind::nsga2) assign_rank_and_crowding(state.pop);

    RunResult result;
    if (config.record_history) result.history.push_back(state.pop);
    if (config.verbose) detail::verbose_line(state.pop, problem, evaluator.n_eval());

    while (!termination.should_stop(problem, state.pop, state.prev ? &*state.prev : nullptr,
                                    evaluator.n_eval())) {
        if (evaluator.n_eval() >= config.max_evals_cap) break;
        if (kind == AlgorithmKind::nsga2) {
            nsga2_step(state, problem, config, evaluator, rng);
        } else {
            ga_step(state, problem, config, evaluator, rng);
        }
        if (config.record_history) result.history.push_back(state.pop);
        if (config.verbose) detail::verbose_line(state.pop, problem, evaluator.n_eval());
    }

    result.final_population = detail::extract_final(state.pop, kind);
    result.final.x = result.final_population.variables();
    result.final.f = result.final_population.objectives();
    result.n_eval = evaluator.n_eval();
    result.n_gen = state.pop.generation;
    return result;
}

}  // namespace moo
