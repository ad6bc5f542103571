#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moo/rng.hpp"

using moo::Rng;

TEST_CASE("same seed reproduces the stream") {
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) CHECK(a.uniform() == b.uniform());
}

TEST_CASE("different seeds diverge") {
    Rng a(1), b(2);
    int same = 0;
    for (int i = 0; i < 100; ++i)
        if (a.uniform() == b.uniform()) ++same;
    CHECK(same < 5);
}

TEST_CASE("uniform stays in [0,1)") {
    Rng rng(7);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("uniform_int covers both ends") {
    Rng rng(3);
    bool saw_lo = false, saw_hi = false;
    for (int i = 0; i < 10000; ++i) {
        const auto v = rng.uniform_int(-2, 3);
        CHECK(v >= -2);
        CHECK(v <= 3);
        saw_lo |= v == -2;
        saw_hi |= v == 3;
    }
    CHECK(saw_lo);
    CHECK(saw_hi);
}

TEST_CASE("shuffle is a permutation") {
    Rng rng(11);
    std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7};
    auto w = v;
    rng.shuffle(w);
    std::sort(w.begin(), w.end());
    CHECK(w == v);
}
