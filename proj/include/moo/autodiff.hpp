#pragma once

// Gradients of built-in problems via the dual-number evaluation path, plus a
// central-difference oracle used by tests to cross-check the dual results.

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "moo/core.hpp"
#include "moo/dual.hpp"
#include "moo/matrix.hpp"

namespace moo {

struct GradientBundle {
    Matrix dF;  // row m = gradient of objective m, length N
    Matrix dG;  // row j = gradient of inequality constraint j; empty unless requested
};

struct GradientRequest {
    bool dF = true;
    bool dG = false;
};

// Exact forward-mode gradients at x. All N seed directions are carried in one
// evaluation, so the problem is evaluated once regardless of N.
inline GradientBundle gradients(const Problem& problem, std::span<const double> x,
                                GradientRequest want = {}) {
    if (!problem.differentiable())
        throw std::invalid_argument("gradients unavailable for problem '" + problem.name() + "'");
    if (x.size() != problem.n_var())
        throw std::invalid_argument("gradients: point size does not match n_var");

    const std::size_t n = problem.n_var();
    std::vector<Dual> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = Dual::seed(x[i], n, i);

    std::vector<Dual> f(problem.n_obj()), g(problem.n_ieq()), h(problem.n_eq());
    problem.eval(std::span<const Dual>(xs), f, g, h);

    GradientBundle out;
    if (want.dF) {
        out.dF = Matrix(problem.n_obj(), n);
        for (std::size_t m = 0; m < f.size(); ++m)
            for (std::size_t i = 0; i < n; ++i) out.dF(m, i) = f[m].partial(i);
    }
    if (want.dG) {
        out.dG = Matrix(problem.n_ieq(), n);
        for (std::size_t j = 0; j < g.size(); ++j)
            for (std::size_t i = 0; i < n; ++i) out.dG(j, i) = g[j].partial(i);
    }
    return out;
}

// Central differences (f(x+h e_i) - f(x-h e_i)) / 2h. Stencil points that
// would leave the feasible box shift the evaluation point inward first. Kept
// independent of the dual-number path: only the plain double eval is used.
inline GradientBundle finite_difference_oracle(const Problem& problem, std::span<const double> x,
                                               double h, GradientRequest want = {true, true}) {
    const std::size_t n = problem.n_var();
    if (x.size() != n) throw std::invalid_argument("finite_difference_oracle: bad point size");

    std::vector<double> base(x.begin(), x.end());
    for (std::size_t i = 0; i < n; ++i) {
        base[i] = std::min(std::max(base[i], problem.lower()[i] + h), problem.upper()[i] - h);
    }

    GradientBundle out;
    if (want.dF) out.dF = Matrix(problem.n_obj(), n);
    if (want.dG) out.dG = Matrix(problem.n_ieq(), n);

    std::vector<double> pt(base);
    std::vector<double> f_hi(problem.n_obj()), g_hi(problem.n_ieq()), h_hi(problem.n_eq());
    std::vector<double> f_lo(problem.n_obj()), g_lo(problem.n_ieq()), h_lo(problem.n_eq());
    for (std::size_t i = 0; i < n; ++i) {
        pt[i] = base[i] + h;
        problem.eval(pt, f_hi, g_hi, h_hi);
        pt[i] = base[i] - h;
        problem.eval(pt, f_lo, g_lo, h_lo);
        pt[i] = base[i];
        if (want.dF)
            for (std::size_t m = 0; m < f_hi.size(); ++m)
                out.dF(m, i) = (f_hi[m] - f_lo[m]) / (2.0 * h);
        if (want.dG)
            for (std::size_t j = 0; j < g_hi.size(); ++j)
                out.dG(j, i) = (g_hi[j] - g_lo[j]) / (2.0 * h);
    }
    return out;
}

}  // namespace moo
