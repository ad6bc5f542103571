#pragma once

// Problem abstraction, populations and the evaluation engine.
//
// A Problem is the minimization form
//     min  f_m(x)            m = 1..M
//     s.t. g_j(x) <= 0       j = 1..J
//          h_k(x)  = 0       k = 1..K
//          lower_i <= x_i <= upper_i
// Maximization objectives and >= constraints are expected to be negated by
// the problem author.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "moo/dual.hpp"
#include "moo/matrix.hpp"

namespace moo {

enum class VarKind { real, integer, binary };

// Equality constraints h_k(x) = 0 are treated as |h_k| - eps_eq <= 0.
inline constexpr double kDefaultEqualityEps = 1e-4;

class Problem {
public:
    Problem(std::string name, std::size_t n_var, std::size_t n_obj, std::size_t n_ieq,
            std::size_t n_eq, std::vector<double> lower, std::vector<double> upper,
            VarKind kind = VarKind::real, bool differentiable = false)
        : name_(std::move(name)),
          n_var_(n_var),
          n_obj_(n_obj),
          n_ieq_(n_ieq),
          n_eq_(n_eq),
          lower_(std::move(lower)),
          upper_(std::move(upper)),
          kind_(kind),
          differentiable_(differentiable) {
        if (n_var_ == 0) throw std::invalid_argument("Problem: n_var must be positive");
        if (n_obj_ == 0) throw std::invalid_argument("Problem: n_obj must be positive");
        if (kind_ == VarKind::binary) {
            lower_.assign(n_var_, 0.0);
            upper_.assign(n_var_, 1.0);
        }
        if (lower_.size() != n_var_ || upper_.size() != n_var_)
            throw std::invalid_argument("Problem: bound vectors must have length n_var");
        for (std::size_t i = 0; i < n_var_; ++i) {
            if (!(lower_[i] < upper_[i]))
                throw std::invalid_argument("Problem: lower[i] must be < upper[i]");
        }
    }

    virtual ~Problem() = default;

    const std::string& name() const { return name_; }
    std::size_t n_var() const { return n_var_; }
    std::size_t n_obj() const { return n_obj_; }
    std::size_t n_ieq() const { return n_ieq_; }
    std::size_t n_eq() const { return n_eq_; }
    std::span<const double> lower() const { return lower_; }
    std::span<const double> upper() const { return upper_; }
    VarKind var_kind() const { return kind_; }
    bool differentiable() const { return differentiable_; }

    // Writes objective, inequality and equality values for a single point.
    // Spans must have sizes n_obj/n_ieq/n_eq; x has size n_var.
    virtual void eval(std::span<const double> x, std::span<double> f, std::span<double> g,
                      std::span<double> h) const = 0;

    // Dual-number overload for differentiable problems.
    virtual void eval(std::span<const Dual> /*x*/, std::span<Dual> /*f*/, std::span<Dual> /*g*/,
                      std::span<Dual> /*h*/) const {
        throw std::invalid_argument("gradients unavailable for problem '" + name_ + "'");
    }

private:
    std::string name_;
    std::size_t n_var_, n_obj_, n_ieq_, n_eq_;
    std::vector<double> lower_, upper_;
    VarKind kind_;
    bool differentiable_;
};

// CRTP helper for problems written once over a generic scalar type:
//   template <class T> void eval_impl(span<const T> x, span<T> f, span<T> g, span<T> h) const;
// gives both the double and the dual-number evaluation path.
template <class Derived>
class DifferentiableProblem : public Problem {
public:
    DifferentiableProblem(std::string name, std::size_t n_var, std::size_t n_obj,
                          std::size_t n_ieq, std::size_t n_eq, std::vector<double> lower,
                          std::vector<double> upper)
        : Problem(std::move(name), n_var, n_obj, n_ieq, n_eq, std::move(lower), std::move(upper),
                  VarKind::real, true) {}

    void eval(std::span<const double> x, std::span<double> f, std::span<double> g,
              std::span<double> h) const override {
        derived().template eval_impl<double>(x, f, g, h);
    }
    void eval(std::span<const Dual> x, std::span<Dual> f, std::span<Dual> g,
              std::span<Dual> h) const override {
        derived().template eval_impl<Dual>(x, f, g, h);
    }

private:
    const Derived& derived() const { return static_cast<const Derived&>(*this); }
};

// Aggregated constraint violation: sum of inequality excesses plus equality
// residuals beyond the tolerance. Zero exactly on feasible points.
inline double constraint_violation(std::span<const double> g, std::span<const double> h,
                                   double eps_eq = kDefaultEqualityEps) {
    double cv = 0.0;
    for (double gj : g) cv += std::max(0.0, gj);
    for (double hk : h) cv += std::max(0.0, std::abs(hk) - eps_eq);
    return cv;
}

struct Individual {
    std::vector<double> x;
    std::vector<double> f;
    std::vector<double> g;
    std::vector<double> h;
    double cv = 0.0;
    std::optional<std::size_t> rank;     // set by a survival pass
    std::optional<double> crowding;      // set by a survival pass

    bool feasible() const { return cv == 0.0; }
};

struct Population {
    std::vector<Individual> members;
    std::size_t generation = 0;

    std::size_t size() const { return members.size(); }
    Individual& operator[](std::size_t i) { return members[i]; }
    const Individual& operator[](std::size_t i) const { return members[i]; }

    Matrix variables() const {
        Matrix m;
        for (const auto& ind : members) m.push_row(ind.x);
        return m;
    }
    Matrix objectives() const {
        Matrix m;
        for (const auto& ind : members) m.push_row(ind.f);
        return m;
    }
};

enum class Dominance { a_dominates, b_dominates, incomparable };

// Pareto dominance on objective vectors (minimization).
inline Dominance pareto_dominates(std::span<const double> fa, std::span<const double> fb) {
    bool a_better = false, b_better = false;
    for (std::size_t m = 0; m < fa.size(); ++m) {
        if (fa[m] < fb[m]) a_better = true;
        else if (fb[m] < fa[m]) b_better = true;
    }
    if (a_better && !b_better) return Dominance::a_dominates;
    if (b_better && !a_better) return Dominance::b_dominates;
    return Dominance::incomparable;
}

// Feasibility-first comparison: lower constraint violation wins outright;
// equal violation (in particular two feasible points) falls back to Pareto
// dominance on the objectives.
inline Dominance constrained_dominates(const Individual& a, const Individual& b) {
    if (a.cv < b.cv) return Dominance::a_dominates;
    if (b.cv < a.cv) return Dominance::b_dominates;
    return pareto_dominates(a.f, b.f);
}

struct EvalMode {
    enum class Kind { vectorized, threaded };
    Kind kind = Kind::vectorized;
    unsigned n_threads = 1;

    static EvalMode vectorized() { return {Kind::vectorized, 1}; }
    static EvalMode threaded(unsigned n) { return {Kind::threaded, n == 0 ? 1 : n}; }
};

struct BatchResult {
    Matrix F, G, H;
};

// Evaluation engine. Counts evaluations and dispatches a batch either as one
// in-order loop (vectorized) or across a fixed thread partition (threaded).
// Problem evaluation functions must be pure; both modes produce bit-identical
// results and the counter always grows by exactly the batch size.
class Evaluator {
public:
    explicit Evaluator(const Problem& problem, EvalMode mode = EvalMode::vectorized(),
                       double eps_eq = kDefaultEqualityEps)
        : problem_(&problem), mode_(mode), eps_eq_(eps_eq) {}

    const Problem& problem() const { return *problem_; }
    std::uint64_t n_eval() const { return n_eval_; }
    EvalMode mode() const { return mode_; }
    double eps_eq() const { return eps_eq_; }

    BatchResult evaluate_batch(const Matrix& xs) {
        if (xs.rows() == 0) throw std::invalid_argument("evaluate_batch: empty batch");
        if (xs.cols() != problem_->n_var())
            throw std::invalid_argument("evaluate_batch: column count does not match n_var");

        const std::size_t n = xs.rows();
        BatchResult out{Matrix(n, problem_->n_obj()), Matrix(n, problem_->n_ieq()),
                        Matrix(n, problem_->n_eq())};

        auto eval_range = [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                problem_->eval(xs.row(i), out.F.row(i), out.G.row(i), out.H.row(i));
            }
        };

        if (mode_.kind == EvalMode::Kind::threaded && mode_.n_threads > 1 && n > 1) {
            const unsigned workers = std::min<unsigned>(mode_.n_threads, static_cast<unsigned>(n));
            std::vector<std::thread> pool;
            std::vector<std::exception_ptr> errors(workers);
            const std::size_t chunk = (n + workers - 1) / workers;
            for (unsigned w = 0; w < workers; ++w) {
                const std::size_t b = w * chunk;
                const std::size_t e = std::min(n, b + chunk);
                pool.emplace_back([&, w, b, e] {
                    try {
                        eval_range(b, e);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
            for (auto& t : pool) t.join();
            for (auto& err : errors)
                if (err) std::rethrow_exception(err);
        } else {
            eval_range(0, n);
        }

        n_eval_ += n;

        for (std::size_t i = 0; i < n; ++i) {
            auto finite = [](std::span<const double> v) {
                return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
            };
            if (!finite(out.F.row(i)) || !finite(out.G.row(i)) || !finite(out.H.row(i))) {
                throw std::runtime_error("evaluation produced non-finite value at row " +
                                         std::to_string(i) + " of problem '" + problem_->name() +
                                         "'");
            }
        }
        return out;
    }

    // Evaluates variable rows into fully formed individuals (f, g, h, cv).
    std::vector<Individual> evaluate_individuals(const Matrix& xs) {
        BatchResult r = evaluate_batch(xs);
        std::vector<Individual> out(xs.rows());
        for (std::size_t i = 0; i < xs.rows(); ++i) {
            out[i].x = xs.row_vec(i);
            out[i].f = r.F.row_vec(i);
            out[i].g = r.G.row_vec(i);
            out[i].h = r.H.row_vec(i);
            out[i].cv = constraint_violation(out[i].g, out[i].h, eps_eq_);
        }
        return out;
    }

private:
    const Problem* problem_;
    EvalMode mode_;
    double eps_eq_;
    std::uint64_t n_eval_ = 0;
};

// ---------------------------------------------------------------------------
// CSV serialization. Header: x1..xN,f1..fM,g1..gJ,cv. Full double precision.

inline std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string population_csv(const Population& pop, std::size_t n_var, std::size_t n_obj,
                                  std::size_t n_ieq) {
    std::ostringstream os;
    auto emit_header = [&](const char* stem, std::size_t count) {
        for (std::size_t i = 1; i <= count; ++i) os << stem << i << ',';
    };
    emit_header("x", n_var);
    emit_header("f", n_obj);
    emit_header("g", n_ieq);
    os << "cv\n";
    for (const auto& ind : pop.members) {
        for (double v : ind.x) os << format_full(v) << ',';
        for (double v : ind.f) os << format_full(v) << ',';
        for (double v : ind.g) os << format_full(v) << ',';
        os << format_full(ind.cv) << '\n';
    }
    return os.str();
}

}  // namespace moo
