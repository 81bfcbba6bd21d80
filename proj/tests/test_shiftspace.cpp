#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entropylab/shiftspace.hpp"

#include <random>

using namespace entropylab;

namespace {

Subshift full_shift() { return Subshift(2, {}); }
Subshift golden_mean() { return Subshift(2, {"11"}); }

Point random_point(const Subshift& s, std::mt19937_64& rng) {
    // Random admissible preperiod + greedy least periodic tail for variety.
    std::uniform_int_distribution<int> len(0, 6);
    std::uniform_int_distribution<int> sym(0, s.alphabet_size() - 1);
    for (;;) {
        std::string pre;
        int n = len(rng);
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            pre.push_back(static_cast<char>('0' + sym(rng)));
            if (!s.word_admissible(pre)) { ok = false; break; }
        }
        if (!ok) continue;
        auto [extra, per] = s.least_tail(pre);
        return Point(s, pre + extra, per);
    }
}

// Direct symbol comparison, independent of Point::at bookkeeping.
int first_disagreement(const std::string& u1, const std::string& v1,
                       const std::string& u2, const std::string& v2, int bound) {
    auto at = [](const std::string& u, const std::string& v, int i) {
        return i < (int)u.size() ? u[i] : v[(i - u.size()) % v.size()];
    };
    for (int i = 0; i < bound; ++i)
        if (at(u1, v1, i) != at(u2, v2, i)) return i;
    return -1;
}

} // namespace

TEST_CASE("subshift construction and rejection") {
    CHECK_NOTHROW(full_shift());
    CHECK_NOTHROW(golden_mean());
    // Symbol 1 unreachable after position 0: not surjective.
    CHECK_THROWS_AS(Subshift(2, {"01", "11"}), std::invalid_argument);
    // Everything forbidden: empty subshift.
    CHECK_THROWS_AS(Subshift(2, {"0", "1"}), std::invalid_argument);
    CHECK_THROWS_AS(Subshift(1, {}), std::invalid_argument);
    CHECK(golden_mean().memory() == 1);
    CHECK(full_shift().memory() == 0);
}

TEST_CASE("word admissibility and counting") {
    auto gm = golden_mean();
    CHECK(gm.word_admissible("0101"));
    CHECK_FALSE(gm.word_admissible("0110"));
    CHECK(gm.word_count(1) == 2);
    CHECK(gm.word_count(5) == 13);
    CHECK(full_shift().word_count(5) == 32);

    // Brute-force oracle: enumerate all binary words and filter.
    for (int n = 1; n <= 10; ++n) {
        int count = 0;
        for (int w = 0; w < (1 << n); ++w) {
            bool bad = false;
            for (int i = 0; i + 1 < n; ++i)
                if (((w >> i) & 1) && ((w >> (i + 1)) & 1)) bad = true;
            if (!bad) ++count;
        }
        CHECK(gm.word_count(n) == count);
        CHECK((int)gm.words(n).size() == count);
    }
}

TEST_CASE("point canonicalization") {
    auto fs = full_shift();
    // 0(00)* collapses to (0)*
    Point a(fs, "0", "00");
    CHECK(a.preperiod() == "");
    CHECK(a.period() == "0");
    // different representations of 011010... canonicalize identically
    Point b(fs, "01", "10");
    Point c(fs, "0110", "10");
    CHECK(b == c);
    CHECK(b.prefix(6) == "011010");
    // preperiod "011", period "01": absorbs into 0(11 0...)? stays canonical
    Point d(fs, "011", "01");
    CHECK(d.prefix(7) == "0110101");
    CHECK_THROWS_AS(Point(golden_mean(), "", "11"), std::invalid_argument);
}

TEST_CASE("metric examples") {
    auto fs = full_shift();
    Point zeros(fs, "", "0");
    Point ones(fs, "", "1");
    CHECK(metric(zeros, zeros) == 0);
    CHECK(metric(zeros, Point(fs, "1", "0")) == 1);
    // 0010000... vs 0010001000...: first disagreement at index 6
    Point x(fs, "001", "0");
    Point y(fs, "0010001", "0");
    CHECK(metric(x, y) == Rat(1, 64));
    CHECK_THROWS_AS(metric(zeros, Point(golden_mean(), "", "0")), std::invalid_argument);
}

TEST_CASE("metric agrees with direct comparison oracle") {
    auto gm = golden_mean();
    std::mt19937_64 rng(7);
    for (int it = 0; it < 300; ++it) {
        Point x = random_point(gm, rng), y = random_point(gm, rng);
        int bound = 64;
        int k = first_disagreement(x.preperiod(), x.period(),
                                   y.preperiod(), y.period(), bound);
        Rat d = metric(x, y);
        if (k < 0) {
            CHECK((d == 0 || d < dyadic(bound - 1)));
        } else {
            CHECK(d == dyadic(k));
        }
    }
}

TEST_CASE("metric is an ultrametric and shift has modulus 2") {
    auto gm = golden_mean();
    std::mt19937_64 rng(11);
    for (int it = 0; it < 200; ++it) {
        Point x = random_point(gm, rng), y = random_point(gm, rng),
              z = random_point(gm, rng);
        CHECK(metric(x, z) <= std::max(metric(x, y), metric(y, z)));
        CHECK(metric(x, y) == metric(y, x));
        if (x != y)
            CHECK(metric(x.shifted(), y.shifted()) <= 2 * metric(x, y));
    }
}

TEST_CASE("shift examples and surjectivity witness") {
    auto fs = full_shift();
    Point a(fs, "01", "10");
    CHECK(a.shifted() == Point(fs, "1", "10"));
    Point zeros(fs, "", "0");
    CHECK(zeros.shifted() == zeros);
    Point d(fs, "011", "01");
    CHECK(d.shifted() == Point(fs, "11", "01"));
}

TEST_CASE("clopen set canonicalization") {
    auto gm = golden_mean();
    auto a = ClopenSet::from_words(gm, 2, {"00", "01"});
    auto b = ClopenSet::cylinder(gm, "0");
    CHECK(a == b);
    CHECK(a.window() == 1);
    CHECK_THROWS_AS(ClopenSet::from_words(gm, 2, {"11"}), std::invalid_argument);
}

TEST_CASE("preimage examples") {
    auto fs = full_shift();
    auto A = ClopenSet::cylinder(fs, "0");
    CHECK(A.preimage(0) == A);
    auto B = ClopenSet::cylinder(fs, "1").preimage(1);
    CHECK(B == ClopenSet::from_words(fs, 2, {"01", "11"}));

    auto gm = golden_mean();
    auto C = ClopenSet::cylinder(gm, "1").preimage(1);
    CHECK(C == ClopenSet::from_words(gm, 2, {"01"}));
}

TEST_CASE("preimage membership agrees with shifted points") {
    auto gm = golden_mean();
    std::mt19937_64 rng(13);
    auto A = ClopenSet::from_words(gm, 2, {"01", "10"});
    for (int it = 0; it < 1000; ++it) {
        Point x = random_point(gm, rng);
        int j = static_cast<int>(rng() % 4);
        CHECK(A.preimage(j).contains(x) == A.contains(x.shifted(j)));
    }
}

TEST_CASE("set algebra") {
    auto fs = full_shift();
    auto z = ClopenSet::cylinder(fs, "0");
    auto o = ClopenSet::cylinder(fs, "1");
    CHECK(z.intersect(o).is_empty());
    CHECK(z.disjoint_with(o));
    CHECK(z.unite(o).is_full());
    CHECK(z.unite(o).is_dense());
    CHECK(z.complement() == o);
    CHECK(z.difference(o) == z);
    CHECK_FALSE(z.is_dense());
    CHECK(z.subset_of(z.unite(o)));
}

TEST_CASE("clopen equality is decidable and matches point sampling") {
    auto gm = golden_mean();
    std::mt19937_64 rng(17);
    auto words3 = gm.words(3);
    for (int it = 0; it < 50; ++it) {
        std::set<std::string> ws;
        for (const auto& w : words3)
            if (rng() & 1) ws.insert(w);
        auto A = ClopenSet::from_words(gm, 3, ws);
        auto B = ClopenSet::from_words(gm, 3, ws);
        CHECK(A == B);
        // canonicalization idempotence
        auto C = ClopenSet::from_words(gm, A.window(), A.words());
        CHECK(C == A);
        for (int s = 0; s < 30; ++s) {
            Point x = random_point(gm, rng);
            CHECK(A.contains(x) == (ws.count(x.prefix(3)) > 0));
        }
    }
}

TEST_CASE("least_tail produces admissible canonical tails") {
    auto gm = golden_mean();
    auto [pre, per] = gm.least_tail("1");
    Point p(gm, "1" + pre, per);
    CHECK(p.prefix(4) == "1000");
}
