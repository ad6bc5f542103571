#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moo/mcdm.hpp"
#include "moo/rng.hpp"

#include <algorithm>
#include <cmath>

using namespace moo;

namespace {

// Random mutually non-dominated 2-D front: f2 strictly decreasing in f1.
Matrix random_front(Rng& rng, std::size_t n) {
    std::vector<double> f1(n), f2(n);
    for (std::size_t i = 0; i < n; ++i) f1[i] = rng.uniform(0, 1);
    std::sort(f1.begin(), f1.end());
    double level = rng.uniform(5, 10);
    for (std::size_t i = 0; i < n; ++i) {
        f2[i] = level;
        level -= rng.uniform(0.01, 0.5);
    }
    // strictly increasing f1 required; nudge duplicates apart
    for (std::size_t i = 1; i < n; ++i)
        if (f1[i] <= f1[i - 1]) f1[i] = f1[i - 1] + 1e-6;
    Matrix f(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        f(i, 0) = f1[i];
        f(i, 1) = f2[i];
    }
    return f;
}

}  // namespace

TEST_CASE("pseudo-weights pinned examples") {
    SUBCASE("two extreme points") {
        auto r = pseudo_weights(Matrix{{0, 1}, {1, 0}});
        CHECK(r.weights(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(r.weights(0, 1) == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(r.weights(1, 0) == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(r.weights(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("symmetric middle point") {
        auto r = pseudo_weights(Matrix{{0, 1}, {0.5, 0.5}, {1, 0}});
        CHECK(r.weights(1, 0) == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(r.weights(1, 1) == doctest::Approx(0.5).epsilon(1e-15));
    }
}

TEST_CASE("pseudo-weight rows sum to one and stay in [0,1] (property)") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng.index(30), m = 2 + rng.index(4);
        Matrix f(n, m);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j) f(i, j) = rng.uniform(-5, 5);
        auto r = pseudo_weights(f);
        for (std::size_t i = 0; i < n; ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                CHECK(r.weights(i, j) >= 0.0);
                CHECK(r.weights(i, j) <= 1.0 + 1e-15);
                sum += r.weights(i, j);
            }
            CHECK(std::abs(sum - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("pseudo-weight degenerate handling") {
    SUBCASE("worst-in-every-objective row gets uniform weights and a flag") {
        auto r = pseudo_weights(Matrix{{0, 0}, {1, 1}});  // dominated input is allowed here
        CHECK(r.weights(1, 0) == 0.5);
        CHECK(r.weights(1, 1) == 0.5);
        CHECK(r.degenerate[1]);
        CHECK_FALSE(r.degenerate[0]);
    }
    SUBCASE("zero-range objective is skipped") {
        auto r = pseudo_weights(Matrix{{0, 7}, {1, 7}});
        // only f1 varies; the weight concentrates there
        CHECK(r.weights(0, 0) == 1.0);
        CHECK(r.weights(0, 1) == 0.0);
    }
    SUBCASE("all identical rows are all degenerate") {
        auto r = pseudo_weights(Matrix{{3, 3}, {3, 3}});
        CHECK(r.degenerate[0]);
        CHECK(r.weights(0, 0) == 0.5);
    }
}

TEST_CASE("trade-off pinned examples") {
    SUBCASE("sacrifice one gain four") {
        CHECK(tradeoff_pair(std::vector<double>{0, 10}, std::vector<double>{1, 6}) ==
              doctest::Approx(0.25).epsilon(1e-15));
    }
    SUBCASE("symmetric pair has unit trade-off both ways") {
        CHECK(tradeoff_pair(std::vector<double>{0, 1}, std::vector<double>{1, 0}) == 1.0);
        CHECK(tradeoff_pair(std::vector<double>{1, 0}, std::vector<double>{0, 1}) == 1.0);
    }
}

TEST_CASE("trade-off reciprocity on random non-dominated pairs (property)") {
    Rng rng(13);
    for (int trial = 0; trial < 500; ++trial) {
        auto f = random_front(rng, 2);
        const double t_ab = tradeoff_pair(f.row(0), f.row(1));
        const double t_ba = tradeoff_pair(f.row(1), f.row(0));
        CHECK(std::abs(t_ab * t_ba - 1.0) < 1e-9);
    }
}

TEST_CASE("tradeoff metric matches the exhaustive pairwise oracle") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.index(49);  // up to 50 points
        auto f = random_front(rng, n);
        auto result = tradeoff_metric(f);

        // independent oracle: full T table, then row minima and argmax
        std::vector<double> mu(n, std::numeric_limits<double>::infinity());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                double sac = 0.0, gain = 0.0;
                for (std::size_t m = 0; m < 2; ++m) {
                    sac += std::max(0.0, f(j, m) - f(i, m));
                    gain += std::max(0.0, f(i, m) - f(j, m));
                }
                mu[i] = std::min(mu[i], sac / gain);
            }
        const std::size_t oracle_best =
            static_cast<std::size_t>(std::max_element(mu.begin(), mu.end()) - mu.begin());

        for (std::size_t i = 0; i < n; ++i)
            CHECK(result.mu[i] == doctest::Approx(mu[i]).epsilon(1e-12));
        CHECK(result.best == oracle_best);
    }
}

TEST_CASE("k-nearest with k = n-1 equals the exhaustive version") {
    Rng rng(19);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 3 + rng.index(20);
        auto f = random_front(rng, n);
        auto full = tradeoff_metric(f);
        auto pruned = tradeoff_metric(f, n - 1);
        for (std::size_t i = 0; i < n; ++i) CHECK(full.mu[i] == pruned.mu[i]);
        CHECK(full.best == pruned.best);
    }
}

TEST_CASE("k-nearest restriction can only raise mu") {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 5 + rng.index(20);
        auto f = random_front(rng, n);
        auto full = tradeoff_metric(f);
        auto pruned = tradeoff_metric(f, 2);
        for (std::size_t i = 0; i < n; ++i) CHECK(pruned.mu[i] >= full.mu[i] - 1e-15);
    }
}

TEST_CASE("tradeoff rejections and duplicates") {
    CHECK_THROWS_AS((void)tradeoff_metric(Matrix{{1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS((void)tradeoff_metric(Matrix{{0, 0}, {1, 1}}), std::invalid_argument);
    // duplicates collapse but keep per-row values
    auto r = tradeoff_metric(Matrix{{0, 1}, {0, 1}, {1, 0}});
    CHECK(r.mu[0] == r.mu[1]);
}

TEST_CASE("compromise pinned examples") {
    SUBCASE("pure f1 preference picks the f1-minimal row") {
        CHECK(compromise(Matrix{{0, 1}, {1, 0}}, DecompMethod::weighted_sum,
                         std::vector<double>{1, 0}) == 0);
    }
    SUBCASE("tchebysheff hand evaluation") {
        CHECK(compromise(Matrix{{0.2, 0.6}, {0.4, 0.4}}, DecompMethod::tchebysheff,
                         std::vector<double>{0.5, 0.5}, std::vector<double>{0, 0}) == 1);
    }
    SUBCASE("single row selects index zero") {
        CHECK(compromise(Matrix{{3, 4}}, DecompMethod::weighted_sum,
                         std::vector<double>{0.5, 0.5}) == 0);
    }
}

TEST_CASE("compromise is stable under permutation up to the tie-break") {
    Rng rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        auto f = random_front(rng, 8);
        const std::vector<double> w{0.3, 0.7};
        const std::size_t best = compromise(f, DecompMethod::tchebysheff, w);
        std::vector<std::size_t> perm{7, 2, 5, 0, 3, 6, 1, 4};
        const Matrix g = f.take_rows(perm);
        const std::size_t best_perm = compromise(g, DecompMethod::tchebysheff, w);
        CHECK(perm[best_perm] == best);
    }
}
