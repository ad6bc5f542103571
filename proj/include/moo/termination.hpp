#pragma once

// Termination criteria: evaluation/generation budgets and movement-based
// convergence in design or objective space.
//
// Movement of a generation is the largest distance from any current member
// to its nearest neighbour in the previous population (design-space
// distances are normalized per coordinate by the variable range so the
// tolerance is problem-independent). The last k movement values are kept in
// a window; the run stops once the window is full and its maximum falls
// below the tolerance.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <stdexcept>

#include "moo/core.hpp"

namespace moo {

// Largest nearest-neighbour distance from current members into the previous
// population. Zero iff every current member coincides with a previous one.
inline double population_movement(const Population& current, const Population& previous,
                                  const Problem& problem, bool design_space) {
    double worst = 0.0;
    for (const auto& cur : current.members) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& prev : previous.members) {
            double d2 = 0.0;
            if (design_space) {
                for (std::size_t i = 0; i < cur.x.size(); ++i) {
                    const double range = problem.upper()[i] - problem.lower()[i];
                    const double d = (cur.x[i] - prev.x[i]) / range;
                    d2 += d * d;
                }
            } else {
                d2 = squared_distance(cur.f, prev.f);
            }
            nearest = std::min(nearest, d2);
        }
        worst = std::max(worst, nearest);
    }
    return std::sqrt(worst);
}

class TerminationCriterion {
public:
    enum class Kind { max_evals, max_gen, x_movement, f_movement };

    static TerminationCriterion max_evals(std::uint64_t n) {
        TerminationCriterion t;
        t.kind_ = Kind::max_evals;
        t.budget_ = n;
        return t;
    }
    static TerminationCriterion max_gen(std::uint64_t n) {
        TerminationCriterion t;
        t.kind_ = Kind::max_gen;
        t.budget_ = n;
        return t;
    }
    static TerminationCriterion x_movement(double tol = 0.005, std::size_t k = 10) {
        return movement(Kind::x_movement, tol, k);
    }
    static TerminationCriterion f_movement(double tol = 0.005, std::size_t k = 10) {
        return movement(Kind::f_movement, tol, k);
    }

    Kind kind() const { return kind_; }

    void reset() { window_.clear(); }

    // Called once per loop iteration before stepping; `previous` is null
    // until the first step has happened, so movement criteria never fire
    // before generation 1.
    bool should_stop(const Problem& problem, const Population& current,
                     const Population* previous, std::uint64_t n_eval) {
        switch (kind_) {
            case Kind::max_evals: return n_eval >= budget_;
            case Kind::max_gen: return current.generation >= budget_;
            case Kind::x_movement:
            case Kind::f_movement: {
                if (previous == nullptr) return false;
                const double move = population_movement(current, *previous, problem,
                                                        kind_ == Kind::x_movement);
                window_.push_back(move);
                if (window_.size() > k_) window_.pop_front();
                if (window_.size() < k_) return false;
                return *std::max_element(window_.begin(), window_.end()) < tol_;
            }
        }
        return false;
    }

private:
    static TerminationCriterion movement(Kind kind, double tol, std::size_t k) {
        if (tol < 0.0) throw std::invalid_argument("termination: tol must be non-negative");
        if (k == 0) throw std::invalid_argument("termination: window size must be positive");
        TerminationCriterion t;
        t.kind_ = kind;
        t.tol_ = tol;
        t.k_ = k;
        return t;
    }

    Kind kind_ = Kind::max_gen;
    std::uint64_t budget_ = 0;
    double tol_ = 0.005;
    std::size_t k_ = 10;
    std::deque<double> window_;
};

}  // namespace moo
