#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entropylab/hyperspace.hpp"
#include "test_util.hpp"

#include <random>

using namespace entropylab;
using namespace entropylab::testutil;

namespace {

FiniteClosedSet random_set(const Subshift& s, std::mt19937_64& rng, int max_size = 5) {
    std::uniform_int_distribution<int> sz(1, max_size);
    std::vector<Point> pts;
    int n = sz(rng);
    for (int i = 0; i < n; ++i) pts.push_back(random_point(s, rng));
    return FiniteClosedSet(std::move(pts));
}

// Brute-force directed max-min over point pairs.
Rat brute_hausdorff(const FiniteClosedSet& k1, const FiniteClosedSet& k2) {
    Rat best(0);
    for (const auto& x : k1.points()) {
        Rat d = metric(x, k2.points().front());
        for (const auto& y : k2.points()) d = std::min(d, metric(x, y));
        best = std::max(best, d);
    }
    for (const auto& y : k2.points()) {
        Rat d = metric(y, k1.points().front());
        for (const auto& x : k1.points()) d = std::min(d, metric(x, y));
        best = std::max(best, d);
    }
    return best;
}

} // namespace

TEST_CASE("construction invariants") {
    auto fs = full_shift();
    Point zeros(fs, "", "0"), ones(fs, "", "1");
    CHECK_THROWS_AS(FiniteClosedSet({}), std::invalid_argument);
    auto gm = golden_mean();
    CHECK_THROWS_AS(FiniteClosedSet({zeros, Point(gm, "", "0")}), std::invalid_argument);
    // dedup
    FiniteClosedSet k({zeros, ones, Point(fs, "0", "0")});
    CHECK(k.size() == 2);
}

TEST_CASE("hausdorff distance examples") {
    auto fs = full_shift();
    Point zeros(fs, "", "0"), ones(fs, "", "1");
    FiniteClosedSet kz({zeros}), ko({ones}), kb({zeros, ones});
    CHECK(hausdorff_distance(kz, kz) == 0);
    CHECK(hausdorff_distance(kz, ko) == 1);
    CHECK(hausdorff_distance(kb, kz) == 1); // directed distance from (1)^inf
    CHECK(hausdorff_distance(kb, ko) == 1);
    // asymmetric refinement: {0^inf, 01^inf...} close but not equal
    Point near(fs, "0", "01"); // 0(01)^inf differs from 0^inf first at index 2
    CHECK(hausdorff_distance(kz, FiniteClosedSet({zeros, near})) == dyadic(2));

    auto gm = golden_mean();
    CHECK_THROWS_AS(hausdorff_distance(kz, FiniteClosedSet({Point(gm, "", "0")})),
                    std::invalid_argument);
}

TEST_CASE("induced map examples") {
    auto fs = full_shift();
    Point zeros(fs, "", "0"), ones(fs, "", "1");
    CHECK(induce_hyper(FiniteClosedSet({zeros})) == FiniteClosedSet({zeros}));
    // {0.(1)^inf, (1)^inf} -> {(1)^inf}
    FiniteClosedSet pre({Point(fs, "0", "1"), ones});
    CHECK(induce_hyper(pre) == FiniteClosedSet({ones}));
    // shift swaps the two-cycle but fixes the set
    FiniteClosedSet cyc({Point(fs, "", "01"), Point(fs, "", "10")});
    CHECK(induce_hyper(cyc) == cyc);
}

TEST_CASE("metric axioms and oracle agreement on random triples") {
    std::mt19937_64 rng(20240817);
    auto fs = full_shift();
    auto gm = golden_mean();
    for (int trial = 0; trial < 300; ++trial) {
        const Subshift& s = (trial % 2 == 0) ? fs : gm;
        auto a = random_set(s, rng);
        auto b = random_set(s, rng);
        auto c = random_set(s, rng);
        Rat dab = hausdorff_distance(a, b);
        Rat dbc = hausdorff_distance(b, c);
        Rat dac = hausdorff_distance(a, c);
        CHECK(dab == hausdorff_distance(b, a));
        CHECK(dab == brute_hausdorff(a, b));
        CHECK((dab == 0) == (a == b));
        CHECK(dac <= dab + dbc);
        // continuity modulus of the induced map
        CHECK(hausdorff_distance(induce_hyper(a), induce_hyper(b)) <= Rat(2) * dab);
    }
}

TEST_CASE("monotone case: K1 subset of K2") {
    std::mt19937_64 rng(7);
    auto fs = full_shift();
    for (int trial = 0; trial < 100; ++trial) {
        auto k2 = random_set(fs, rng, 6);
        std::vector<Point> sub(k2.points().begin(),
                               k2.points().begin() + 1 + trial % k2.size());
        FiniteClosedSet k1(sub);
        Rat expect(0);
        for (const auto& y : k2.points()) expect = std::max(expect, distance_to_set(y, k1));
        CHECK(hausdorff_distance(k1, k2) == expect);
    }
}
