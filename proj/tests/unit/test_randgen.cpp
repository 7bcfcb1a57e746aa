#include <set>

#include "doctest.h"
#include "sl2factor/randgen.hpp"

using namespace sl2factor;

TEST_CASE("the generator contract is pinned") {
    Lcg64 rng(1);
    // state * 6364136223846793005 + 1442695040888963407 from state 1.
    CHECK(rng.next() == 7806831264735756412ULL);

    Lcg64 a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

    Lcg64 c(7);
    for (std::uint64_t m : {1ULL, 2ULL, 7ULL, 100ULL, 4294967295ULL}) {
        for (int i = 0; i < 50; ++i) CHECK(c.uniform(m) < m);
    }

    Lcg64 d(3);
    std::set<long> seen;
    for (int i = 0; i < 200; ++i) {
        long v = d.range(-2, 2);
        CHECK(v >= -2);
        CHECK(v <= 2);
        seen.insert(v);
    }
    CHECK(seen.size() == 5);
}

TEST_CASE("random elements respect the height box") {
    Ring q = RingSpec::parse("Q");
    Ring s2 = RingSpec::parse("Q(sqrt 2)");
    Lcg64 rng(11);

    for (int i = 0; i < 100; ++i) {
        RingElement e = random_element(rng, q, 5);
        CHECK(e.den() == 1);
        CHECK(e.y() == 0);
        CHECK(abs(e.x()) <= 5);

        RingElement f = random_element(rng, s2, 3);
        CHECK(f.den() == 1);
        CHECK(abs(f.x()) <= 3);
        CHECK(abs(f.y()) <= 3);

        RingElement g = random_nonzero_param(rng, q, 2);
        CHECK_FALSE(g.is_zero());
        CHECK(abs(g.x()) <= 2);
    }
}

TEST_CASE("random words alternate and hit the requested length") {
    Ring q6 = RingSpec::parse("Q[1/6]");
    Lcg64 rng(99);
    bool saw_lower_start = false;
    bool saw_upper_start = false;
    for (int i = 0; i < 60; ++i) {
        ElemWord w = random_word(rng, q6, 5, 3);
        REQUIRE(w.size() == 5);
        for (std::size_t j = 0; j < w.size(); ++j) {
            CHECK_FALSE(w.letters()[j].param.is_zero());
            if (j > 0) CHECK(w.letters()[j].side != w.letters()[j - 1].side);
        }
        (w.letters().front().side == Side::Lower ? saw_lower_start : saw_upper_start) =
            true;
    }
    CHECK(saw_lower_start);
    CHECK(saw_upper_start);

    CHECK(random_word(rng, q6, 0, 3).empty());
}

TEST_CASE("random matrices are reproducible from the seed") {
    Ring q = RingSpec::parse("Q");
    Lcg64 a(2718), b(2718);
    for (int i = 0; i < 10; ++i) {
        CHECK(random_matrix(a, q, 4, 3) == random_matrix(b, q, 4, 3));
    }

    // Different draws give different matrices at least most of the time.
    Lcg64 c(1);
    std::set<std::string> seen;
    for (int i = 0; i < 30; ++i) seen.insert(random_matrix(c, q, 4, 3).to_string());
    CHECK(seen.size() > 20);
}
