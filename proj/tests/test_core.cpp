#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moo/core.hpp"
#include "moo/problems.hpp"
#include "moo/rng.hpp"

#include <cmath>

using namespace moo;

namespace {

// Problem whose output can be poisoned for the non-finite error path.
class Poison final : public Problem {
public:
    Poison() : Problem("poison", 1, 1, 0, 0, {0.0}, {1.0}) {}
    void eval(std::span<const double> x, std::span<double> f, std::span<double>,
              std::span<double>) const override {
        f[0] = x[0] > 0.5 ? std::numeric_limits<double>::quiet_NaN() : x[0];
    }
};

Individual make_ind(std::vector<double> f, double cv = 0.0) {
    Individual ind;
    ind.f = std::move(f);
    ind.cv = cv;
    return ind;
}

}  // namespace

TEST_CASE("demo problem evaluates the documented points") {
    DemoBiObjective demo;
    Evaluator ev(demo);
    Matrix xs{{0.25, 0.0}, {0.0, 0.0}};
    auto r = ev.evaluate_batch(xs);
    CHECK(ev.n_eval() == 2);
    CHECK(r.F(0, 0) == doctest::Approx(0.0625).epsilon(1e-14));
    CHECK(r.F(0, 1) == doctest::Approx(0.5625).epsilon(1e-14));
    CHECK(r.G(0, 0) == doctest::Approx(-1.08333333333).epsilon(1e-10));
    CHECK(r.G(0, 1) == doctest::Approx(-0.21875).epsilon(1e-14));
    CHECK(r.F(1, 0) == 0.0);
    CHECK(r.F(1, 1) == 1.0);
    CHECK(r.G(1, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.G(1, 1) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("repeated evaluation is deterministic") {
    Zdt1 problem;
    Rng rng(5);
    Matrix xs(8, problem.n_var());
    for (std::size_t i = 0; i < xs.rows(); ++i)
        for (std::size_t j = 0; j < xs.cols(); ++j) xs(i, j) = rng.uniform();
    Evaluator ev(problem);
    auto a = ev.evaluate_batch(xs);
    auto b = ev.evaluate_batch(xs);
    CHECK(a.F == b.F);
    CHECK(ev.n_eval() == 16);
}

TEST_CASE("threaded evaluation matches vectorized bit for bit") {
    for (const auto& name : problem_names()) {
        auto problem = make_problem(name);
        Rng rng(99);
        Matrix xs(17, problem->n_var());
        for (std::size_t i = 0; i < xs.rows(); ++i)
            for (std::size_t j = 0; j < xs.cols(); ++j)
                xs(i, j) = rng.uniform(problem->lower()[j], problem->upper()[j]);
        Evaluator vec(*problem, EvalMode::vectorized());
        Evaluator thr(*problem, EvalMode::threaded(4));
        auto a = vec.evaluate_batch(xs);
        auto b = thr.evaluate_batch(xs);
        CHECK(a.F == b.F);
        CHECK(a.G == b.G);
        CHECK(vec.n_eval() == thr.n_eval());
    }
}

TEST_CASE("dimension mismatch is a contract violation") {
    DemoBiObjective demo;
    Evaluator ev(demo);
    CHECK_THROWS_AS((void)ev.evaluate_batch(Matrix(2, 3)), std::invalid_argument);
    CHECK_THROWS_AS((void)ev.evaluate_batch(Matrix(0, 2)), std::invalid_argument);
}

TEST_CASE("non-finite outputs name the offending row") {
    Poison p;
    Evaluator ev(p);
    Matrix xs{{0.1}, {0.2}, {0.9}};
    try {
        (void)ev.evaluate_batch(xs);
        FAIL("expected an evaluation error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("row 2") != std::string::npos);
        CHECK(std::string(e.what()).find("non-finite") != std::string::npos);
    }
}

TEST_CASE("constraint violation aggregates inequalities and tolerant equalities") {
    CHECK(constraint_violation(std::vector<double>{1.0, -1.0}, {}) == 1.0);
    CHECK(constraint_violation(std::vector<double>{-1.0833, -0.2188}, {}) == 0.0);
    CHECK(constraint_violation({}, std::vector<double>{0.0}) == 0.0);
    // inside tolerance
    CHECK(constraint_violation({}, std::vector<double>{5e-5}) == 0.0);
    CHECK(constraint_violation({}, std::vector<double>{-5e-5}) == 0.0);
    // outside tolerance
    CHECK(constraint_violation({}, std::vector<double>{2e-4}) == doctest::Approx(1e-4));
    CHECK(constraint_violation(std::vector<double>{0.5, 0.25, -3.0}, {}) == 0.75);
}

TEST_CASE("constrained dominance") {
    SUBCASE("strict componentwise dominance") {
        CHECK(constrained_dominates(make_ind({1, 2}), make_ind({2, 3})) == Dominance::a_dominates);
    }
    SUBCASE("trade-off pair is incomparable") {
        CHECK(constrained_dominates(make_ind({1, 2}), make_ind({2, 1})) ==
              Dominance::incomparable);
    }
    SUBCASE("feasible beats infeasible regardless of objectives") {
        CHECK(constrained_dominates(make_ind({9, 9}, 0.0), make_ind({0, 0}, 0.5)) ==
              Dominance::a_dominates);
        CHECK(constrained_dominates(make_ind({0, 0}, 0.5), make_ind({9, 9}, 0.0)) ==
              Dominance::b_dominates);
    }
    SUBCASE("weak equality does not dominate") {
        CHECK(constrained_dominates(make_ind({1, 1}), make_ind({1, 1})) ==
              Dominance::incomparable);
    }
}

TEST_CASE("dominance is irreflexive, antisymmetric and transitive on random triples") {
    Rng rng(17);
    for (int trial = 0; trial < 500; ++trial) {
        auto random_ind = [&] {
            return make_ind({rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(0, 1)});
        };
        auto a = random_ind(), b = random_ind(), c = random_ind();
        CHECK(constrained_dominates(a, a) == Dominance::incomparable);
        if (constrained_dominates(a, b) == Dominance::a_dominates)
            CHECK(constrained_dominates(b, a) == Dominance::b_dominates);
        // transitivity
        if (constrained_dominates(a, b) == Dominance::a_dominates &&
            constrained_dominates(b, c) == Dominance::a_dominates)
            CHECK(constrained_dominates(a, c) == Dominance::a_dominates);
    }
}

TEST_CASE("cv is zero exactly on feasible points (random property)") {
    Rng rng(23);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> g(3), h(2);
        for (auto& v : g) v = rng.uniform(-1, 1);
        for (auto& v : h) v = rng.uniform(-1, 1);
        const double cv = constraint_violation(g, h);
        bool feasible = true;
        for (double v : g) feasible &= v <= 0.0;
        for (double v : h) feasible &= std::abs(v) <= kDefaultEqualityEps;
        CHECK(cv >= 0.0);
        CHECK((cv == 0.0) == feasible);
    }
}

TEST_CASE("population CSV schema") {
    DemoBiObjective demo;
    Evaluator ev(demo);
    Population pop;
    pop.members = ev.evaluate_individuals(Matrix{{0.25, 0.0}, {0.0, 0.0}});
    const std::string csv = population_csv(pop, 2, 2, 2);
    CHECK(csv.substr(0, csv.find('\n')) == "x1,x2,f1,f2,g1,g2,cv");
    CHECK(csv.find("0.0625") != std::string::npos);
    // one header plus two rows
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("problem invariants are validated") {
    CHECK_THROWS_AS(Zdt1(0), std::invalid_argument);
    struct Bad final : Problem {
        Bad() : Problem("bad", 2, 1, 0, 0, {0.0, 1.0}, {1.0, 1.0}) {}
        void eval(std::span<const double>, std::span<double>, std::span<double>,
                  std::span<double>) const override {}
    };
    CHECK_THROWS_AS(Bad{}, std::invalid_argument);
}
