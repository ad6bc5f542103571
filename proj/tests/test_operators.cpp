#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moo/operators.hpp"
#include "moo/problems.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

using namespace moo;

namespace {

class BinaryProblem final : public Problem {
public:
    explicit BinaryProblem(std::size_t n)
        : Problem("bits", n, 1, 0, 0, std::vector<double>(n, 0.0), std::vector<double>(n, 1.0),
                  VarKind::binary) {}
    void eval(std::span<const double> x, std::span<double> f, std::span<double>,
              std::span<double>) const override {
        f[0] = -std::accumulate(x.begin(), x.end(), 0.0);
    }
};

class IntegerProblem final : public Problem {
public:
    IntegerProblem(std::size_t n, double lo, double hi)
        : Problem("ints", n, 1, 0, 0, std::vector<double>(n, lo), std::vector<double>(n, hi),
                  VarKind::integer) {}
    void eval(std::span<const double> x, std::span<double> f, std::span<double>,
              std::span<double>) const override {
        f[0] = x[0];
    }
};

bool is_integer_valued(double v) { return v == std::floor(v); }

struct Unit final : public DifferentiableProblem<Unit> {
    explicit Unit(std::size_t n)
        : DifferentiableProblem("unit", n, 1, 0, 0, std::vector<double>(n, 0.0),
                                std::vector<double>(n, 1.0)) {}
    template <class T>
    void eval_impl(std::span<const T> x, std::span<T> f, std::span<T>, std::span<T>) const {
        f[0] = x[0];
    }
};

}  // namespace

TEST_CASE("random sampling respects bounds and kind") {
    Rng rng(1);
    SUBCASE("real") {
        DemoBiObjective demo;
        auto xs = sample_random(demo, 3, rng);
        CHECK(xs.rows() == 3);
        CHECK(xs.cols() == 2);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                CHECK(xs(i, j) >= -2.0);
                CHECK(xs(i, j) <= 2.0);
            }
    }
    SUBCASE("binary") {
        BinaryProblem bits(8);
        auto xs = sample_random(bits, 100, rng);
        for (std::size_t i = 0; i < xs.rows(); ++i)
            for (std::size_t j = 0; j < xs.cols(); ++j)
                CHECK((xs(i, j) == 0.0 || xs(i, j) == 1.0));
    }
    SUBCASE("integer") {
        IntegerProblem ints(4, -3, 7);
        auto xs = sample_random(ints, 50, rng);
        for (std::size_t i = 0; i < xs.rows(); ++i)
            for (std::size_t j = 0; j < xs.cols(); ++j) {
                CHECK(is_integer_valued(xs(i, j)));
                CHECK(xs(i, j) >= -3.0);
                CHECK(xs(i, j) <= 7.0);
            }
    }
    SUBCASE("fixed seed reproduces the matrix") {
        DemoBiObjective demo;
        Rng r1(1), r2(1);
        CHECK(sample_random(demo, 10, r1) == sample_random(demo, 10, r2));
    }
}

TEST_CASE("LHS stratification") {
    SUBCASE("one variable, n=4: strata form a permutation") {
        Unit u(1);
        Rng rng(2);
        auto xs = sample_lhs(u, 4, rng);
        std::vector<int> strata;
        for (std::size_t i = 0; i < 4; ++i)
            strata.push_back(static_cast<int>(std::floor(4.0 * xs(i, 0))));
        std::sort(strata.begin(), strata.end());
        CHECK(strata == std::vector<int>{0, 1, 2, 3});
    }
    SUBCASE("n=1 degenerates to a single in-bounds sample") {
        Unit u(2);
        Rng rng(3);
        auto xs = sample_lhs(u, 1, rng);
        CHECK(xs.rows() == 1);
        CHECK(xs(0, 0) >= 0.0);
        CHECK(xs(0, 0) <= 1.0);
    }
    SUBCASE("stratification holds per column for n in 1..64") {
        for (std::size_t n = 1; n <= 64; ++n) {
            Unit u(2);
            Rng rng(1000 + n);
            auto xs = sample_lhs(u, n, rng);
            for (std::size_t j = 0; j < 2; ++j) {
                std::vector<bool> seen(n, false);
                for (std::size_t i = 0; i < n; ++i) {
                    auto s = static_cast<std::size_t>(std::floor(static_cast<double>(n) * xs(i, j)));
                    if (s == n) s = n - 1;
                    CHECK_FALSE(seen[s]);
                    seen[s] = true;
                }
            }
        }
    }
    SUBCASE("non-real problems are rejected") {
        BinaryProblem bits(4);
        Rng rng(4);
        CHECK_THROWS_AS((void)sample_lhs(bits, 8, rng), std::invalid_argument);
    }
}

TEST_CASE("one and two point crossover kernels") {
    const std::vector<double> a{1, 1, 1, 1, 1}, b{2, 2, 2, 2, 2};
    std::vector<double> c1(5), c2(5);
    SUBCASE("one point, cut after two positions") {
        crossover_one_point_at(a, b, 2, c1, c2);
        CHECK(c1 == std::vector<double>{1, 1, 2, 2, 2});
        CHECK(c2 == std::vector<double>{2, 2, 1, 1, 1});
    }
    SUBCASE("two point swaps the middle only") {
        crossover_two_point_at(a, b, 1, 3, c1, c2);
        CHECK(c1 == std::vector<double>{1, 2, 2, 1, 1});
        CHECK(c2 == std::vector<double>{2, 1, 1, 2, 2});
    }
    SUBCASE("identical parents are a fixed point") {
        Rng rng(5);
        crossover_point(a, a, PointCrossoverKind::one_point, rng, c1, c2);
        CHECK(c1 == a);
        CHECK(c2 == a);
    }
    SUBCASE("per-position multiset is preserved") {
        Rng rng(6);
        const std::vector<double> p1{1, 2, 3, 4, 5, 6}, p2{9, 8, 7, 6, 5, 4};
        std::vector<double> d1(6), d2(6);
        for (int trial = 0; trial < 50; ++trial) {
            crossover_point(p1, p2, PointCrossoverKind::two_point, rng, d1, d2);
            for (std::size_t i = 0; i < 6; ++i) {
                CHECK(std::minmax(d1[i], d2[i]) == std::minmax(p1[i], p2[i]));
            }
        }
    }
}

TEST_CASE("uniform crossover complementarity") {
    Rng rng(7);
    const std::vector<double> p1{0, 0, 1, 1, 0, 1, 0, 1}, p2{0, 1, 1, 0, 0, 0, 1, 1};
    std::vector<double> c1(8), c2(8);
    for (int trial = 0; trial < 20; ++trial) {
        crossover_ux(p1, p2, rng, c1, c2);
        for (std::size_t i = 0; i < 8; ++i) {
            CHECK((c1[i] != c2[i]) == (p1[i] != p2[i]));
            CHECK(std::minmax(c1[i], c2[i]) == std::minmax(p1[i], p2[i]));
        }
    }
}

TEST_CASE("HUX exchanges exactly half the differing positions") {
    Rng rng(8);
    SUBCASE("ten differing positions exchange five") {
        std::vector<double> p1(12, 0.0), p2(12, 0.0);
        for (std::size_t i = 1; i <= 10; ++i) p2[i] = 1.0;  // differ in 10 positions
        std::vector<double> c1(12), c2(12);
        for (int trial = 0; trial < 50; ++trial) {
            crossover_hux(p1, p2, rng, c1, c2);
            std::size_t moved = 0;
            for (std::size_t i = 0; i < 12; ++i)
                if (c1[i] != p1[i]) ++moved;
            CHECK(moved == 5);
        }
    }
    SUBCASE("identical parents are unchanged") {
        std::vector<double> p(6, 1.0), c1(6), c2(6);
        crossover_hux(p, p, rng, c1, c2);
        CHECK(c1 == p);
        CHECK(c2 == p);
    }
    SUBCASE("floor of odd difference counts on random parents") {
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> p1(20), p2(20);
            for (std::size_t i = 0; i < 20; ++i) {
                p1[i] = rng.bernoulli(0.5);
                p2[i] = rng.bernoulli(0.5);
            }
            std::size_t differing = 0;
            for (std::size_t i = 0; i < 20; ++i)
                if (p1[i] != p2[i]) ++differing;
            std::vector<double> c1(20), c2(20);
            crossover_hux(p1, p2, rng, c1, c2);
            std::size_t moved = 0;
            for (std::size_t i = 0; i < 20; ++i)
                if (c1[i] != p1[i]) ++moved;
            CHECK(moved == differing / 2);
        }
    }
}

TEST_CASE("SBX kernel") {
    SUBCASE("u=0.5 gives beta=1 and children equal parents") {
        CHECK(sbx_spread(0.8, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
        auto [a, b] = sbx_children(0.2, 0.8, 0.8, 0.5);
        CHECK(a == doctest::Approx(0.2).epsilon(1e-15));
        CHECK(b == doctest::Approx(0.8).epsilon(1e-15));
    }
    SUBCASE("children preserve the parent mean for any u") {
        Rng rng(9);
        for (int trial = 0; trial < 10000; ++trial) {
            const double u = rng.uniform();
            auto [a, b] = sbx_children(0.2, 0.8, 0.8, u);
            CHECK(std::abs((a + b) / 2.0 - 0.5) < 1e-12);
        }
    }
    SUBCASE("equal parents stay equal for all u") {
        for (double u : {0.0, 0.1, 0.5, 0.9, 0.999}) {
            auto [a, b] = sbx_children(0.3, 0.3, 2.0, u);
            CHECK(a == doctest::Approx(0.3).epsilon(1e-15));
            CHECK(b == doctest::Approx(0.3).epsilon(1e-15));
        }
    }
}

TEST_CASE("SBX operator clamps to bounds") {
    Rng rng(10);
    const std::vector<double> lo{0.0, 0.0}, hi{1.0, 1.0};
    const std::vector<double> p1{0.1, 0.9}, p2{0.95, 0.05};
    std::vector<double> c1(2), c2(2);
    SbxParams params{0.8, 1.0};
    for (int trial = 0; trial < 2000; ++trial) {
        crossover_sbx(p1, p2, params, lo, hi, rng, c1, c2);
        for (std::size_t i = 0; i < 2; ++i) {
            CHECK(c1[i] >= 0.0);
            CHECK(c1[i] <= 1.0);
            CHECK(c2[i] >= 0.0);
            CHECK(c2[i] <= 1.0);
        }
    }
}

TEST_CASE("bounded SBX") {
    Rng rng(42);
    const std::vector<double> lo{0.0, 0.0}, hi{1.0, 1.0};
    SbxParams params{15.0, 1.0};
    SUBCASE("children always stay inside the box") {
        const std::vector<double> p1{0.05, 0.9}, p2{0.98, 0.02};
        std::vector<double> c1(2), c2(2);
        for (int trial = 0; trial < 5000; ++trial) {
            crossover_sbx_bounded(p1, p2, params, lo, hi, rng, c1, c2);
            for (std::size_t i = 0; i < 2; ++i) {
                CHECK(c1[i] >= 0.0);
                CHECK(c1[i] <= 1.0);
                CHECK(c2[i] >= 0.0);
                CHECK(c2[i] <= 1.0);
            }
        }
    }
    SUBCASE("equal parents are a fixed point") {
        const std::vector<double> p{0.4, 0.7};
        std::vector<double> c1(2), c2(2);
        crossover_sbx_bounded(p, p, params, lo, hi, rng, c1, c2);
        CHECK(c1 == p);
        CHECK(c2 == p);
    }
    SUBCASE("children bracket the parent interval statistics") {
        // far from the bounds the bounded form matches the plain spread:
        // the lower child sits below the mean, the upper child above
        const std::vector<double> wlo{-100.0}, whi{100.0};
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<double> c1(1), c2(1);
            crossover_sbx_bounded(std::vector<double>{0.2}, std::vector<double>{0.8}, params, wlo,
                                  whi, rng, c1, c2);
            const double a = std::min(c1[0], c2[0]), b = std::max(c1[0], c2[0]);
            CHECK(a <= 0.5);
            CHECK(b >= 0.5);
            // mean preservation holds away from the bounds
            CHECK((a + b) / 2.0 == doctest::Approx(0.5).epsilon(1e-9));
        }
    }
}

TEST_CASE("integer SBX") {
    Rng rng(11);
    const std::vector<double> lo{1.0}, hi{10.0};
    SbxParams params{3.0, 1.0};
    SUBCASE("equal parents are unchanged") {
        std::vector<double> c1(1), c2(1);
        crossover_sbx_int(std::vector<double>{3.0}, std::vector<double>{3.0}, params, lo, hi, rng,
                          c1, c2);
        CHECK(c1[0] == 3.0);
        CHECK(c2[0] == 3.0);
    }
    SUBCASE("children are integers inside the bounds over many trials") {
        std::vector<double> c1(1), c2(1);
        for (int trial = 0; trial < 10000; ++trial) {
            crossover_sbx_int(std::vector<double>{1.0}, std::vector<double>{10.0}, params, lo, hi,
                              rng, c1, c2);
            for (double v : {c1[0], c2[0]}) {
                CHECK(is_integer_valued(v));
                CHECK(v >= 1.0);
                CHECK(v <= 10.0);
            }
        }
    }
    SUBCASE("child distribution is bimodal around the parents") {
        std::map<int, int> counts;
        std::vector<double> c1(1), c2(1);
        for (int trial = 0; trial < 100000; ++trial) {
            crossover_sbx_int(std::vector<double>{1.0}, std::vector<double>{10.0}, params, lo, hi,
                              rng, c1, c2);
            ++counts[static_cast<int>(c1[0])];
            ++counts[static_cast<int>(c2[0])];
        }
        // modes sit at the parents, the middle is a valley
        CHECK(counts[1] > counts[5]);
        CHECK(counts[10] > counts[5]);
        CHECK(counts[1] > counts[3]);
        CHECK(counts[10] > counts[8]);
    }
}

TEST_CASE("polynomial mutation") {
    const std::vector<double> lo{0.0}, hi{1.0};
    SUBCASE("u=0.5 leaves the variable unchanged") {
        CHECK(poly_mutation_delta(0.3, 0.0, 1.0, 20.0, 0.5) == doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("prob_per_var=0 is the identity") {
        Rng rng(12);
        PolyMutationParams params{20.0, 0.0};
        const std::vector<double> x{0.25};
        CHECK(mutate_polynomial(x, params, lo, hi, rng) == x);
    }
    SUBCASE("lower-bound point never escapes below") {
        Rng rng(13);
        PolyMutationParams params{20.0, 1.0};
        for (int trial = 0; trial < 5000; ++trial) {
            auto out = mutate_polynomial(std::vector<double>{0.0}, params, lo, hi, rng);
            CHECK(out[0] >= 0.0);
            CHECK(out[0] <= 1.0);
        }
    }
    SUBCASE("integer variant stays integral") {
        Rng rng(14);
        PolyMutationParams params{5.0, 1.0};
        const std::vector<double> ilo{-5.0}, ihi{5.0};
        for (int trial = 0; trial < 2000; ++trial) {
            auto out = mutate_polynomial_int(std::vector<double>{2.0}, params, ilo, ihi, rng);
            CHECK(is_integer_valued(out[0]));
            CHECK(out[0] >= -5.0);
            CHECK(out[0] <= 5.0);
        }
    }
}

TEST_CASE("bitflip mutation") {
    Rng rng(15);
    std::vector<double> bits(8, 0.0);
    bits[3] = 1.0;
    SUBCASE("prob=1 flips everything") {
        auto out = mutate_bitflip(bits, 1.0, rng);
        for (std::size_t i = 0; i < 8; ++i) CHECK(out[i] == 1.0 - bits[i]);
    }
    SUBCASE("prob=0 is the identity") { CHECK(mutate_bitflip(bits, 0.0, rng) == bits); }
    SUBCASE("flip fraction concentrates at prob") {
        std::vector<double> big(100000, 0.0);
        auto out = mutate_bitflip(big, 0.5, rng);
        const double flipped = std::accumulate(out.begin(), out.end(), 0.0);
        CHECK(flipped / 100000.0 == doctest::Approx(0.5).epsilon(0.02));
    }
}

TEST_CASE("tournament selection") {
    Population pop;
    auto add = [&](double cv, double f0, std::size_t rank, double crowding) {
        Individual ind;
        ind.cv = cv;
        ind.f = {f0};
        ind.rank = rank;
        ind.crowding = crowding;
        pop.members.push_back(ind);
    };
    SUBCASE("population of one always selects it") {
        add(0.0, 1.0, 0, 1.0);
        Rng rng(16);
        for (const auto& [a, b] : tournament_select(pop, 10, compare_cv_fitness, rng)) {
            CHECK(a == 0);
            CHECK(b == 0);
        }
    }
    SUBCASE("feasible beats infeasible") {
        add(0.0, 100.0, 0, 0.0);  // feasible but poor fitness
        add(2.0, 0.0, 0, 9.0);    // infeasible
        CHECK(compare_cv_rank_crowding(pop[0], pop[1]) < 0);
        CHECK(compare_cv_fitness(pop[0], pop[1]) < 0);
        Rng rng(17);
        // candidates are drawn with replacement: the infeasible one can only
        // win a slot by being drawn twice, i.e. in about a quarter of slots
        std::size_t infeasible_wins = 0, slots = 0;
        for (const auto& [a, b] : tournament_select(pop, 2000, compare_cv_rank_crowding, rng)) {
            infeasible_wins += (pop[a].cv > 0.0) + (pop[b].cv > 0.0);
            slots += 2;
        }
        const double frac = static_cast<double>(infeasible_wins) / static_cast<double>(slots);
        CHECK(frac > 0.18);
        CHECK(frac < 0.32);
    }
    SUBCASE("equal rank resolves by larger crowding") {
        add(0.0, 1.0, 1, 0.5);
        add(0.0, 1.0, 1, 2.5);
        CHECK(compare_cv_rank_crowding(pop[0], pop[1]) > 0);
        CHECK(compare_cv_rank_crowding(pop[1], pop[0]) < 0);
    }
    SUBCASE("lower rank wins over crowding") {
        add(0.0, 1.0, 0, 0.1);
        add(0.0, 1.0, 2, 99.0);
        CHECK(compare_cv_rank_crowding(pop[0], pop[1]) < 0);
    }
}

TEST_CASE("operators are deterministic given the seed") {
    DemoBiObjective demo;
    const std::vector<double> p1{-1.0, 0.5}, p2{1.5, -0.5};
    std::vector<double> a1(2), a2(2), b1(2), b2(2);
    Rng r1(123), r2(123);
    CrossoverConfig cfg;
    crossover_pair(cfg, demo, p1, p2, r1, a1, a2);
    crossover_pair(cfg, demo, p1, p2, r2, b1, b2);
    CHECK(a1 == b1);
    CHECK(a2 == b2);
    MutationConfig mcfg;
    CHECK(mutate_row(mcfg, demo, p1, r1) == mutate_row(mcfg, demo, p1, r2));
}

TEST_CASE("every operator output respects bounds and kind (property)") {
    Rng rng(18);
    DemoBiObjective demo;
    BinaryProblem bits(10);
    IntegerProblem ints(3, -4, 9);
    for (int trial = 0; trial < 300; ++trial) {
        auto xr = sample_random(demo, 2, rng);
        std::vector<double> c1(2), c2(2);
        CrossoverConfig cfg;
        cfg.kind = CrossoverKind::sbx;
        crossover_pair(cfg, demo, xr.row(0), xr.row(1), rng, c1, c2);
        auto m = mutate_row(MutationConfig{}, demo, c1, rng);
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(m[j] >= demo.lower()[j]);
            CHECK(m[j] <= demo.upper()[j]);
        }

        auto xb = sample_random(bits, 2, rng);
        std::vector<double> bc1(10), bc2(10);
        CrossoverConfig bcfg;
        bcfg.kind = CrossoverKind::hux;
        crossover_pair(bcfg, bits, xb.row(0), xb.row(1), rng, bc1, bc2);
        MutationConfig bmut;
        bmut.kind = MutationKind::bitflip;
        for (double v : mutate_row(bmut, bits, bc1, rng)) CHECK((v == 0.0 || v == 1.0));

        auto xi = sample_random(ints, 2, rng);
        std::vector<double> ic1(3), ic2(3);
        crossover_pair(CrossoverConfig{}, ints, xi.row(0), xi.row(1), rng, ic1, ic2);
        for (auto v : mutate_row(MutationConfig{}, ints, ic1, rng)) {
            CHECK(is_integer_valued(v));
            CHECK(v >= -4.0);
            CHECK(v <= 9.0);
        }
    }
}
