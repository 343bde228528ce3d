#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "pcg/rng.hpp"

using namespace pcg;

TEST_CASE("identical seeds give identical streams") {
    Rng a(123), b(123);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
}

TEST_CASE("different seeds diverge") {
    Rng a(1), b(2);
    int same = 0;
    for (int i = 0; i < 64; ++i) {
        same += (a.next_u64() == b.next_u64());
    }
    CHECK(same == 0);
}

TEST_CASE("derive_seed separates tags and indices") {
    std::set<std::uint64_t> seen;
    seen.insert(derive_seed(7, "a"));
    seen.insert(derive_seed(7, "b"));
    seen.insert(derive_seed(7, "a", {0}));
    seen.insert(derive_seed(7, "a", {1}));
    seen.insert(derive_seed(7, "a", {0, 1}));
    seen.insert(derive_seed(7, "a", {1, 0}));
    seen.insert(derive_seed(8, "a"));
    CHECK(seen.size() == 7);
}

TEST_CASE("next_below stays in range and covers small ranges") {
    Rng rng(99);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 200; ++i) {
        const std::uint64_t v = rng.next_below(7);
        CHECK(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
    for (int i = 0; i < 100; ++i) {
        CHECK(rng.next_below(1) == 0);
    }
}

TEST_CASE("next_double lies in the unit interval") {
    Rng rng(5);
    double sum = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double v = rng.next_double();
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
        sum += v;
    }
    CHECK(sum / 10000.0 == doctest::Approx(0.5).epsilon(0.05));
}
