#pragma once

// Built-in test problems.
//
// demo        constrained bi-objective toy problem with a known Pareto set
// zdt1..zdt4, zdt6   the real-valued ZDT suite
// sphere, rastrigin, rosenbrock, ackley, himmelblau, zakharov
//             classic single-objective benchmarks
//
// Every problem is written once over a generic scalar so gradients are
// available through the dual-number path. Known optima are pinned by unit
// tests to guard against transcription slips.

#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "moo/core.hpp"

namespace moo {

namespace detail {
template <class T>
T sq(const T& v) {
    return v * v;
}
}  // namespace detail

// Bi-objective demo problem on [-2,2]^2:
//   min f1 = x1^2 + x2^2
//   min f2 = (x1-1)^2 + x2^2
//   s.t. g1 = 2 (x1-0.1)(x1-0.9) / 0.18 <= 0
//        g2 = -20 (x1-0.4)(x1-0.6) / 4.8 <= 0
// Constraints are normalized by their resource values (0.18 and 4.8).
// Pareto set: x2 = 0, x1 in [0.1,0.4] u [0.6,0.9]; front f2 = (sqrt(f1)-1)^2.
class DemoBiObjective final : public DifferentiableProblem<DemoBiObjective> {
public:
    DemoBiObjective()
        : DifferentiableProblem("demo", 2, 2, 2, 0, {-2.0, -2.0}, {2.0, 2.0}) {}

    template <class T>
    void eval_impl(std::span<const T> x, std::span<T> f, std::span<T> g, std::span<T>) const {
        using detail::sq;
        f[0] = sq(x[0]) + sq(x[1]);
        f[1] = sq(x[0] - 1.0) + sq(x[1]);
        g[0] = (x[0] - 0.1) * (x[0] - 0.9) * (2.0 / 0.18);
        g[1] = (x[0] - 0.4) * (x[0] - 0.6) * (-20.0 / 4.8);
    }
};

// ZDT family. f1 and a "distance" function g determine f2 = g * shape(f1/g).
class Zdt1 final : public DifferentiableProblem<Zdt1> {
public:
    explicit Zdt1(std::size_t n_var = 30)
        : DifferentiableProblem("zdt1", n_var, 2, 0, 0, std::vector<double>(n_var, 0.0),
                                std::vector<double>(n_var, 1.0)) {}

    template <class T>
    void eval_impl(std::span<const T> x, std::span<T> f, std::span<T>, std::span<T>) const {
        using std::sqrt;
        const std::size_t n = x.size();
        T s = 0.0;
        for (std::size_t i = 1; i < n; ++i) s += x[i];
        T g = 1.0 + s * (9.0 / static_cast<double>(n - 1));
        f[0] = x[0];
        f[1] = g * (1.0 - sqrt(x[0] / g));
    }
};

class Zdt2 final : public DifferentiableProblem<Zdt2> {
public:
    explicit Zdt2(std::size_t n_var = 30)
        : DifferentiableProblem("zdt2", n_var, 2, 0, 0, std::vector<double>(n_var, 0.0),
                                std::vector<double>(n_var, 1.0)) {}

    template <class T>
    void eval_impl(std::span<const T> x, std::span<T> f, std::span<T>, std::span<T>) const {
        using detail::sq;
        const std::size_t n = x.size();
        T s = 0.0;
        for (std::size_t i = 1; i < n; ++i) s += x[i];
        T g = 1.0 + s * (9.0 / static_cast<double>(n - 1));
        f[0] = x[0];
        f[1] = g * (1.0 - sq(x[0] / g));
    }
};

class Zdt3 final : public DifferentiableProblem<Zdt3> {
public:
    explicit Zdt3(std::size_t n_var = 30)
        : DifferentiableProblem("zdt3", n_var, 2, 0, 0, std::vector<double>(n_var, 0.0),
                                std::vector<double>(n_var, 1.0)) {}

    template <class T>
    void eval_impl(std::span<const T> x, std::span<T> f, std::span<T>, std::span<T>) const {
        using std::sin;
        using std::sqrt;
        const std::size_t n = x.size();
        T s = 0.0;
        for (std::size_t i = 1; i < n; ++i) s += x[i];
        T g = 1.0 + s * (9.0 / static_cast<double>(n - 1));
        T ratio = x[0] / g;
        f[0] = x[0];
        f[1] = g * (1.0 - sqrt(ratio) - ratio * sin(x[0] * (10.0 * std::numbers::pi)));
    }
};

class Zdt4 final : public DifferentiableProblem<Zdt4> {
public:
    explicit Zdt4(std::size_t n_var = 10)
        : DifferentiableProblem("zdt4", n_var, 2, 0, 0, make_lower(n_var), make_upper(n_var)) {}

    template <class T>
    void eval_impl(std::span<const T> x, std::span<T> f, std::span<T>, std::span<T>) const {
        using std::cos;
        using std::sqrt;
        using detail::sq;
        const std::size_t n = x.size();
        T g = 1.0 + 10.0 * static_cast<double>(n - 1);
        for (std::size_t i = 1; i < n; ++i)
            g += sq(x[i]) - 10.0 * cos(x[i] * (4.0 * std::numbers::pi));
        f[0] = x[0];
        f[1] = g * (1.0 - sqrt(x[0] / g));
    }

private:
    static std::vector<double> make_lower(std::size_t n) {
        std::vector<double> lo(n, -5.0);
        lo[0] = 0.0;
        return lo;
    }
    static std::vector<double> make_upper(std::size_t n) {
        std::vector<double> up(n, 5.0);
        up[0] = 1.0;
        return up;
    }
};

class Zdt6 final : public DifferentiableProblem<Zdt6> {
public:
    explicit Zdt6(std::size_t n_var = 10)
        : DifferentiableProblem("zdt6", n_var, 2, 0, 0, std::vector<double>(n_var, 0.0),
                                std::vector<double>(n_var, 1.0)) {}

    template <class T>
    void eval_impl(std::span<const T> x, std::span<T> f, std::span<T>, std::span<T>) const {
        using std::exp;
        using std::pow;
        using std::sin;
        using detail::sq;
        const std::size_t n = x.size();
        T s = 0.0;
        for (std::size_t i = 1; i < n; ++i) s += x[i];
        T g = 1.0 + 9.0 * pow(s * (1.0 / static_cast<double>(n - 1)), 0.25);
        T sin6 = pow(sin(x[0] * (6.0 * std::numbers::pi)), 6.0);
        f[0] = 1.0 - exp(x[0] * -4.0) * sin6;
        f[1] = g * (1.0 - sq(f[0] / g));
    }
};

// --- single-objective benchmarks ---

class Sphere final : public DifferentiableProblem<Sphere> {
public:
    explicit Sphere(std::size_t n_var = 10)
        : DifferentiableProblem("sphere", n_var, 1, 0, 0, std::vector<double>(n_var, -5.12),
                                std::vector<double>(n_var, 5.12)) {}

    template <class T>
    void eval_impl(std::span<const T> x, std::span<T> f, std::span<T>, std::span<T>) const {
        T s = 0.0;
        for (const auto& xi : x) s += xi * xi;
        f[0] = s;
    }
};

class Rastrigin final : public DifferentiableProblem<Rastrigin> {
public:
    explicit Rastrigin(std::size_t n_var = 10)
        : DifferentiableProblem("rastrigin", n_var, 1, 0, 0, std::vector<double>(n_var, -5.12),
                                std::vector<double>(n_var, 5.12)) {}

    template <class T>
    void eval_impl(std::span<const T> x, std::span<T> f, std::span<T>, std::span<T>) const {
        using std::cos;
        T s = 10.0 * static_cast<double>(x.size());
        for (const auto& xi : x) s += xi * xi - 10.0 * cos(xi * (2.0 * std::numbers::pi));
        f[0] = s;
    }
};

class Rosenbrock final : public DifferentiableProblem<Rosenbrock> {
public:
    explicit Rosenbrock(std::size_t n_var = 10)
        : DifferentiableProblem("rosenbrock", n_var, 1, 0, 0,
                                std::vector<double>(n_var, -2.048),
                                std::vector<double>(n_var, 2.048)) {}

    template <class T>
    void eval_impl(std::span<const T> x, std::span<T> f, std::span<T>, std::span<T>) const {
        using detail::sq;
        T s = 0.0;
        for (std::size_t i = 0; i + 1 < x.size(); ++i)
            s += 100.0 * sq(x[i + 1] - x[i] * x[i]) + sq(x[i] - 1.0);
        f[0] = s;
    }
};

class Ackley final : public DifferentiableProblem<Ackley> {
public:
    explicit Ackley(std::size_t n_var = 10)
        : DifferentiableProblem("ackley", n_var, 1, 0, 0, std::vector<double>(n_var, -32.768),
                                std::vector<double>(n_var, 32.768)) {}

    template <class T>
    void eval_impl(std::span<const T> x, std::span<T> f, std::span<T>, std::span<T>) const {
        using std::cos;
        using std::exp;
        using std::sqrt;
        const double inv_n = 1.0 / static_cast<double>(x.size());
        T sum_sq = 0.0, sum_cos = 0.0;
        for (const auto& xi : x) {
            sum_sq += xi * xi;
            sum_cos += cos(xi * (2.0 * std::numbers::pi));
        }
        f[0] = exp(sqrt(sum_sq * inv_n) * -0.2) * -20.0 - exp(sum_cos * inv_n) + 20.0 +
               std::numbers::e;
    }
};

class Himmelblau final : public DifferentiableProblem<Himmelblau> {
public:
    Himmelblau() : DifferentiableProblem("himmelblau", 2, 1, 0, 0, {-6.0, -6.0}, {6.0, 6.0}) {}

    template <class T>
    void eval_impl(std::span<const T> x, std::span<T> f, std::span<T>, std::span<T>) const {
        using detail::sq;
        f[0] = sq(x[0] * x[0] + x[1] - 11.0) + sq(x[0] + x[1] * x[1] - 7.0);
    }
};

class Zakharov final : public DifferentiableProblem<Zakharov> {
public:
    explicit Zakharov(std::size_t n_var = 10)
        : DifferentiableProblem("zakharov", n_var, 1, 0, 0, std::vector<double>(n_var, -10.0),
                                std::vector<double>(n_var, 10.0)) {}

    template <class T>
    void eval_impl(std::span<const T> x, std::span<T> f, std::span<T>, std::span<T>) const {
        using detail::sq;
        T sum_sq = 0.0, weighted = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            sum_sq += x[i] * x[i];
            weighted += x[i] * (0.5 * static_cast<double>(i + 1));
        }
        T w2 = sq(weighted);
        f[0] = sum_sq + w2 + sq(w2);
    }
};

// ---------------------------------------------------------------------------
// Factory and analytic Pareto fronts.

inline const std::vector<std::string>& problem_names() {
    static const std::vector<std::string> names = {
        "demo",   "zdt1",      "zdt2",       "zdt3",   "zdt4",       "zdt6",
        "sphere", "rastrigin", "rosenbrock", "ackley", "himmelblau", "zakharov"};
    return names;
}

// Builds a problem by name. n_var may only be supplied for scalable problems;
// scalable multi-objective problems keep their literature defaults (zdt1-3:
// 30, zdt4/zdt6: 10), scalable single-objective ones default to 10.
inline std::unique_ptr<Problem> make_problem(const std::string& name,
                                             std::optional<std::size_t> n_var = std::nullopt) {
    auto fixed = [&](auto make) -> std::unique_ptr<Problem> {
        if (n_var)
            throw std::invalid_argument("problem '" + name + "' has a fixed number of variables");
        return make();
    };
    auto scalable = [&](std::size_t def, std::size_t min_var,
                        auto make) -> std::unique_ptr<Problem> {
        const std::size_t n = n_var.value_or(def);
        if (n < min_var)
            throw std::invalid_argument("problem '" + name + "' needs at least " +
                                        std::to_string(min_var) + " variables");
        return make(n);
    };

    if (name == "demo") return fixed([] { return std::make_unique<DemoBiObjective>(); });
    if (name == "zdt1") return scalable(30, 2, [](std::size_t n) { return std::make_unique<Zdt1>(n); });
    if (name == "zdt2") return scalable(30, 2, [](std::size_t n) { return std::make_unique<Zdt2>(n); });
    if (name == "zdt3") return scalable(30, 2, [](std::size_t n) { return std::make_unique<Zdt3>(n); });
    if (name == "zdt4") return scalable(10, 2, [](std::size_t n) { return std::make_unique<Zdt4>(n); });
    if (name == "zdt6") return scalable(10, 2, [](std::size_t n) { return std::make_unique<Zdt6>(n); });
    if (name == "sphere") return scalable(10, 1, [](std::size_t n) { return std::make_unique<Sphere>(n); });
    if (name == "rastrigin") return scalable(10, 1, [](std::size_t n) { return std::make_unique<Rastrigin>(n); });
    if (name == "rosenbrock") return scalable(10, 2, [](std::size_t n) { return std::make_unique<Rosenbrock>(n); });
    if (name == "ackley") return scalable(10, 1, [](std::size_t n) { return std::make_unique<Ackley>(n); });
    if (name == "himmelblau") return fixed([] { return std::make_unique<Himmelblau>(); });
    if (name == "zakharov") return scalable(10, 1, [](std::size_t n) { return std::make_unique<Zakharov>(n); });
    throw std::invalid_argument("unknown problem '" + name + "'");
}

namespace detail {

// Samples n points evenly (by arc length in the parameter) across a union of
// closed parameter intervals. Interval right endpoints other than the last
// one collapse onto the next interval's left endpoint, so adjacent segments
// never emit coincident-value pairs.
inline std::vector<double> sample_segments(const std::vector<std::pair<double, double>>& segments,
                                           std::size_t n) {
    double total = 0.0;
    for (auto [a, b] : segments) total += b - a;
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double t = (n == 1) ? 0.0 : total * static_cast<double>(i) / static_cast<double>(n - 1);
        double acc = 0.0;
        double value = segments.back().second;
        for (auto [a, b] : segments) {
            const double len = b - a;
            if (t <= acc + len) {
                value = a + (t - acc);
                break;
            }
            acc += len;
        }
        out.push_back(value);
    }
    return out;
}

}  // namespace detail

// True when an analytic Pareto front is known for the problem name.
inline bool has_analytic_front(const std::string& name) {
    return name == "demo" || name == "zdt1" || name == "zdt2" || name == "zdt3" ||
           name == "zdt4" || name == "zdt6";
}

// Evenly parameterized sample of the analytic Pareto front, one row per
// point, columns f1..fM. Every returned sample is mutually non-dominated.
inline Matrix analytic_front(const std::string& name, std::size_t n_points) {
    if (n_points < 2) throw std::invalid_argument("analytic_front: n_points must be >= 2");
    Matrix out(n_points, 2);

    if (name == "demo") {
        // Front traced by the Pareto set x2=0, x1 in [0.1,0.4] u [0.6,0.9].
        auto x1s = detail::sample_segments({{0.1, 0.4}, {0.6, 0.9}}, n_points);
        for (std::size_t i = 0; i < n_points; ++i) {
            out(i, 0) = x1s[i] * x1s[i];
            out(i, 1) = (x1s[i] - 1.0) * (x1s[i] - 1.0);
        }
        return out;
    }
    if (name == "zdt1" || name == "zdt4") {
        auto f1s = detail::sample_segments({{0.0, 1.0}}, n_points);
        for (std::size_t i = 0; i < n_points; ++i) {
            out(i, 0) = f1s[i];
            out(i, 1) = 1.0 - std::sqrt(f1s[i]);
        }
        return out;
    }
    if (name == "zdt2") {
        auto f1s = detail::sample_segments({{0.0, 1.0}}, n_points);
        for (std::size_t i = 0; i < n_points; ++i) {
            out(i, 0) = f1s[i];
            out(i, 1) = 1.0 - f1s[i] * f1s[i];
        }
        return out;
    }
    if (name == "zdt3") {
        // Disconnected front; the f1 ranges of the non-dominated pieces are
        // fixed in the standard problem definition.
        static const std::vector<std::pair<double, double>> segments = {
            {0.0, 0.0830015349}, {0.1822287280, 0.2577623634}, {0.4093136748, 0.4538821041},
            {0.6183967944, 0.6525117038}, {0.8233317983, 0.8518328654}};
        auto f1s = detail::sample_segments(segments, n_points);
        for (std::size_t i = 0; i < n_points; ++i) {
            const double f1 = f1s[i];
            out(i, 0) = f1;
            out(i, 1) = 1.0 - std::sqrt(f1) - f1 * std::sin(10.0 * std::numbers::pi * f1);
        }
        return out;
    }
    if (name == "zdt6") {
        // f1 lower end is 1 - exp(-4 x1) sin^6(6 pi x1) maximized over [0,1].
        auto f1s = detail::sample_segments({{0.2807753191, 1.0}}, n_points);
        for (std::size_t i = 0; i < n_points; ++i) {
            out(i, 0) = f1s[i];
            out(i, 1) = 1.0 - f1s[i] * f1s[i];
        }
        return out;
    }
    throw std::invalid_argument("no analytic front for problem '" + name + "'");
}

}  // namespace moo
