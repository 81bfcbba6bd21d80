#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entropylab/measures.hpp"
#include "test_util.hpp"

using namespace entropylab;
using namespace entropylab::testutil;

namespace {

// Independent feasibility check of the Prohorov condition at a given delta:
// mu(A) <= nu(A^delta) + delta for all A subset supp(mu), with the open
// neighborhood A^delta = {y : d(y, A) < delta}.
bool prohorov_feasible(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                       const Rat& delta) {
    const auto& mx = mu.atoms();
    const auto& ny = nu.atoms();
    for (std::size_t mask = 1; mask < (std::size_t(1) << mx.size()); ++mask) {
        Rat mu_a(0);
        for (std::size_t i = 0; i < mx.size(); ++i)
            if (mask & (std::size_t(1) << i)) mu_a += mx[i].second;
        Rat nu_nbhd(0);
        for (const auto& [y, m] : ny) {
            Rat dy(-1);
            for (std::size_t i = 0; i < mx.size(); ++i)
                if (mask & (std::size_t(1) << i)) {
                    Rat d = metric(mx[i].first, y);
                    if (dy < 0 || d < dy) dy = d;
                }
            if (dy < delta) nu_nbhd += m;
        }
        if (!(mu_a <= nu_nbhd + delta)) return false;
    }
    return true;
}

} // namespace

TEST_CASE("measure construction merges atoms and validates mass") {
    auto fs = full_shift();
    Point z(fs, "", "0"), o(fs, "", "1");
    DiscreteMeasure m({{z, Rat(1, 2)}, {z, Rat(1, 4)}, {o, Rat(1, 4)}});
    CHECK(m.support_size() == 2);
    CHECK_THROWS_AS(DiscreteMeasure({{z, Rat(1, 2)}}), std::invalid_argument);
    CHECK_THROWS_AS(DiscreteMeasure({{z, Rat(3, 2)}, {o, Rat(-1, 2)}}),
                    std::invalid_argument);
}

TEST_CASE("measure_of examples") {
    auto fs = full_shift();
    Point z(fs, "", "0"), t(fs, "", "10");
    auto A0 = ClopenSet::cylinder(fs, "0");
    auto A1 = ClopenSet::cylinder(fs, "1");
    CHECK(measure_of(DiscreteMeasure::dirac(z), A0) == 1);
    CHECK(measure_of(DiscreteMeasure::dirac(z), A1) == 0);
    DiscreteMeasure mixed({{z, Rat(1, 2)}, {t, Rat(1, 2)}});
    CHECK(measure_of(mixed, A1) == Rat(1, 2));
}

TEST_CASE("pushforward examples") {
    auto fs = full_shift();
    Point z(fs, "", "0"), o(fs, "", "1"), oz(fs, "0", "1");
    CHECK(pushforward(DiscreteMeasure::dirac(z)) == DiscreteMeasure::dirac(z));
    DiscreteMeasure collide({{oz, Rat(1, 2)}, {o, Rat(1, 2)}});
    CHECK(pushforward(collide) == DiscreteMeasure::dirac(o));
    Point ab(fs, "", "01"), ba(fs, "", "10");
    DiscreteMeasure cyc({{ab, Rat(1, 2)}, {ba, Rat(1, 2)}});
    CHECK(pushforward(cyc) == cyc);
}

TEST_CASE("pushforward satisfies (T~mu)(A) = mu(T^{-1}A)") {
    auto gm = golden_mean();
    std::mt19937_64 rng(23);
    auto words2 = gm.words(2);
    for (int it = 0; it < 500; ++it) {
        auto mu = random_measure(gm, rng);
        std::set<std::string> ws;
        for (const auto& w : words2)
            if (rng() & 1) ws.insert(w);
        if (ws.empty()) continue;
        auto A = ClopenSet::from_words(gm, 2, ws);
        CHECK(measure_of(pushforward(mu), A) == measure_of(mu, A.preimage(1)));
    }
}

TEST_CASE("prohorov examples") {
    auto fs = full_shift();
    Point z(fs, "", "0"), o(fs, "", "1");
    auto dz = DiscreteMeasure::dirac(z);
    auto dodd = DiscreteMeasure::dirac(o);
    CHECK(prohorov_subset(dz, dz, true) == 0);
    CHECK(prohorov_flow(dz, dz) == 0);
    CHECK(prohorov_subset(dz, dodd, false) == 1);
    CHECK(prohorov_flow(dz, dodd) == 1);

    Point y(fs, "000", "1"); // d(z, y) = 2^-3
    CHECK(metric(z, y) == Rat(1, 8));
    CHECK(prohorov_subset(dz, DiscreteMeasure::dirac(y), false) == Rat(1, 8));

    DiscreteMeasure half({{z, Rat(1, 2)}, {o, Rat(1, 2)}});
    CHECK(prohorov_subset(dz, half, false) == Rat(1, 2));
    CHECK(prohorov_flow(dz, half) == Rat(1, 2));
}

TEST_CASE("prohorov: flow agrees with subset oracle and the symmetric form") {
    auto gm = golden_mean();
    std::mt19937_64 rng(29);
    for (int it = 0; it < 300; ++it) {
        auto mu = random_measure(gm, rng);
        auto nu = random_measure(gm, rng);
        Rat a = prohorov_subset(mu, nu, false);
        Rat b = prohorov_subset(mu, nu, true);
        Rat c = prohorov_flow(mu, nu);
        CHECK(a == b);
        CHECK(a == c);
        // Independent inf check: feasible just above, infeasible just below.
        CHECK(prohorov_feasible(mu, nu, a + Rat(1, 1000000)));
        if (a > 0)
            CHECK_FALSE(prohorov_feasible(mu, nu, a * Rat(999, 1000)));
    }
}

TEST_CASE("prohorov metric axioms") {
    auto gm = golden_mean();
    std::mt19937_64 rng(31);
    for (int it = 0; it < 150; ++it) {
        auto a = random_measure(gm, rng, 4);
        auto b = random_measure(gm, rng, 4);
        auto c = random_measure(gm, rng, 4);
        Rat ab = prohorov_subset(a, b, true);
        Rat ba = prohorov_subset(b, a, true);
        Rat bc = prohorov_subset(b, c, true);
        Rat ac = prohorov_subset(a, c, true);
        CHECK(ab == ba);
        CHECK(ac <= ab + bc);
        CHECK(ab <= 1);
        CHECK((ab == 0) == (a == b));
    }
}

TEST_CASE("d_P between diracs is min(d, 1)") {
    auto gm = golden_mean();
    std::mt19937_64 rng(37);
    for (int it = 0; it < 200; ++it) {
        Point x = random_point(gm, rng), y = random_point(gm, rng);
        Rat expect = std::min(metric(x, y), Rat(1));
        CHECK(prohorov_subset(DiscreteMeasure::dirac(x), DiscreteMeasure::dirac(y), true) ==
              expect);
    }
}

TEST_CASE("w_contains strictness") {
    auto fs = full_shift();
    Point z(fs, "", "0"), o(fs, "", "1");
    WNeighborhood w({{ClopenSet::cylinder(fs, "0"), Rat(1, 2)}});
    CHECK(w_contains(w, DiscreteMeasure::dirac(z)));
    DiscreteMeasure half({{z, Rat(1, 2)}, {o, Rat(1, 2)}});
    CHECK_FALSE(w_contains(w, half)); // 1/2 > 1/2 fails
    WNeighborhood w2({{ClopenSet::cylinder(fs, "0"), Rat(1, 3)},
                      {ClopenSet::cylinder(fs, "1"), Rat(1, 3)}});
    CHECK(w_contains(w2, half));
    // invariant violations
    CHECK_THROWS_AS(WNeighborhood({{ClopenSet::cylinder(fs, "0"), Rat(2, 3)},
                                   {ClopenSet::cylinder(fs, "1"), Rat(1, 2)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(WNeighborhood({{ClopenSet::cylinder(fs, "0"), Rat(1, 3)},
                                   {ClopenSet::cylinder(fs, "0"), Rat(1, 3)}}),
                    std::invalid_argument);
}

TEST_CASE("w_robustness_radius examples") {
    auto fs = full_shift();
    Point z(fs, "", "0");
    WNeighborhood w({{ClopenSet::cylinder(fs, "0"), Rat(1, 2)}});
    CHECK(w_robustness_radius(w, DiscreteMeasure::dirac(z)) == Rat(1, 2));

    // Deep cylinder part: window 4, slack 1/4 -> radius 2^-4.
    WNeighborhood deep({{ClopenSet::cylinder(fs, "0000"), Rat(3, 4)}});
    CHECK(w_robustness_radius(deep, DiscreteMeasure::dirac(z)) == Rat(1, 16));

    Point o(fs, "", "1");
    DiscreteMeasure half({{z, Rat(1, 2)}, {o, Rat(1, 2)}});
    CHECK_THROWS_AS(w_robustness_radius(w, half), std::invalid_argument);
}

TEST_CASE("w_robustness_radius: sampled perturbations stay inside") {
    auto gm = golden_mean();
    std::mt19937_64 rng(41);
    for (int it = 0; it < 50; ++it) {
        auto mu = random_measure(gm, rng, 4);
        WNeighborhood w = basis_refine(mu, Rat(1, 2));
        REQUIRE(w_contains(w, mu));
        Rat delta = w_robustness_radius(w, mu);
        CHECK(delta > 0);
        for (int s = 0; s < 40; ++s) {
            // Move a mass strictly below delta to a random point: total
            // variation bounds d_P by the moved mass.
            Rat moved = delta * Rat(1 + (int)(rng() % 7), 8);
            if (moved >= delta) continue;
            auto atoms = mu.atoms();
            std::size_t idx = rng() % atoms.size();
            Rat take = std::min(moved, Rat(atoms[idx].second / 2));
            atoms[idx].second -= take;
            atoms.emplace_back(random_point(gm, rng), take);
            DiscreteMeasure nu(atoms);
            CHECK(prohorov_subset(nu, mu, true) < delta);
            CHECK(w_contains(w, nu));
        }
    }
}

TEST_CASE("basis_refine inclusions") {
    auto fs = full_shift();
    Point z(fs, "", "0"), o(fs, "", "1");
    auto w1 = basis_refine(DiscreteMeasure::dirac(z), Rat(1, 2));
    CHECK(w1.parts().size() == 1);
    CHECK(w1.parts().front().first == ClopenSet::cylinder(fs, "00"));
    CHECK(w_contains(w1, DiscreteMeasure::dirac(z)));

    DiscreteMeasure half({{z, Rat(1, 2)}, {o, Rat(1, 2)}});
    auto w2 = basis_refine(half, Rat(1, 4));
    CHECK(w2.parts().size() == 2);
    CHECK(w2.parts().front().first.window() == 3);
    CHECK(w_contains(w2, half));

    CHECK_THROWS_AS(basis_refine(half, Rat(0)), std::invalid_argument);

    // eps = 1: trivially inside the unit ball.
    auto w3 = basis_refine(half, Rat(1));
    CHECK(w_contains(w3, half));
}

TEST_CASE("basis_refine: sampled members lie within eps") {
    auto gm = golden_mean();
    std::mt19937_64 rng(43);
    for (int it = 0; it < 30; ++it) {
        auto mu = random_measure(gm, rng, 3);
        Rat eps(1, 1 + (int)(rng() % 4));
        auto w = basis_refine(mu, eps);
        REQUIRE(w_contains(w, mu));
        for (int s = 0; s < 30; ++s) {
            // Sample nu in W by shaving a small amount off each part mass.
            auto atoms = mu.atoms();
            Rat shave(1, 64 + (int)(rng() % 64));
            std::size_t idx = rng() % atoms.size();
            Rat take = std::min(shave, Rat(atoms[idx].second / 2));
            atoms[idx].second -= take;
            atoms.emplace_back(random_point(gm, rng), take);
            DiscreteMeasure nu(atoms);
            if (!w_contains(w, nu)) continue;
            CHECK(prohorov_subset(nu, mu, true) < eps);
        }
    }
}

TEST_CASE("empirical_round examples") {
    auto fs = full_shift();
    Point z(fs, "", "0"), o(fs, "", "1");
    DiscreteMeasure thirds({{z, Rat(1, 3)}, {o, Rat(2, 3)}});
    CHECK(empirical_round(thirds, 3) == thirds);
    CHECK(in_m_n(thirds, 3));
    CHECK_FALSE(in_m_n(thirds, 2));

    DiscreteMeasure half({{z, Rat(1, 2)}, {o, Rat(1, 2)}});
    auto r = empirical_round(half, 3);
    CHECK(in_m_n(r, 3));
    CHECK(prohorov_subset(half, r, true) <= Rat(1, 6));
    CHECK_THROWS_AS(empirical_round(half, 1), std::invalid_argument);
}

TEST_CASE("empirical_round stays within support/n in d_P") {
    auto gm = golden_mean();
    std::mt19937_64 rng(47);
    for (int it = 0; it < 100; ++it) {
        auto mu = random_measure(gm, rng, 4);
        unsigned n = static_cast<unsigned>(mu.support_size()) + (rng() % 4);
        auto r = empirical_round(mu, n);
        CHECK(in_m_n(r, n));
        CHECK(prohorov_subset(mu, r, true) <=
              Rat(static_cast<unsigned long long>(mu.support_size()), n));
    }
}

TEST_CASE("r_m examples and pushforward identity") {
    auto fs = full_shift();
    Point z(fs, "", "0"), o(fs, "", "1");
    CHECK(r_m({z}) == DiscreteMeasure::dirac(z));
    CHECK(r_m({z, z}) == DiscreteMeasure::dirac(z));
    auto m = r_m({z, o, o});
    CHECK(measure_of(m, ClopenSet::cylinder(fs, "1")) == Rat(2, 3));

    std::mt19937_64 rng(53);
    auto gm = golden_mean();
    for (int it = 0; it < 200; ++it) {
        std::vector<Point> pts;
        int k = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < k; ++i) pts.push_back(random_point(gm, rng));
        // T~ o R_m == R_m o T_m
        std::vector<Point> shifted;
        for (const auto& p : pts) shifted.push_back(p.shifted());
        CHECK(pushforward(r_m(pts)) == r_m(shifted));
    }
}

TEST_CASE("v_contains") {
    auto fs = full_shift();
    Point z(fs, "", "0"), o(fs, "", "1");
    LocallyConstantFn ind0(fs, 1, {{"0", Rat(1)}, {"1", Rat(0)}});
    LocallyConstantFn one(fs, 1, {{"0", Rat(1)}, {"1", Rat(1)}});

    VNeighborhood v(DiscreteMeasure::dirac(z), {ind0}, Rat(1, 2));
    CHECK(v_contains(v, DiscreteMeasure::dirac(z)));
    CHECK_FALSE(v_contains(v, DiscreteMeasure::dirac(o)));

    VNeighborhood vc(DiscreteMeasure::dirac(z), {one}, Rat(1, 100));
    CHECK(v_contains(vc, DiscreteMeasure::dirac(o)));

    CHECK_THROWS_AS(LocallyConstantFn(fs, 1, {{"0", Rat(1)}}), std::invalid_argument);
}
