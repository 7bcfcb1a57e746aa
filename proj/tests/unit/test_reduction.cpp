#include <vector>

#include "doctest.h"
#include "sl2factor/randgen.hpp"
#include "sl2factor/reduction.hpp"

using namespace sl2factor;

namespace {

std::vector<RingElement> elems(const Ring& r, std::initializer_list<long> vals) {
    std::vector<RingElement> out;
    for (long v : vals) out.push_back(RingElement::integer(r, Integer(v)));
    return out;
}

}  // namespace

TEST_CASE("chains compute remainders from quotients") {
    Ring q = RingSpec::parse("Q");
    auto e = [&](long v) { return RingElement::integer(q, Integer(v)); };

    DivisionChain c = DivisionChain::make(e(8), e(5), elems(q, {1, 1, 1, 2}));
    CHECK(c.length() == 4);
    CHECK(c.remainders() == elems(q, {3, 2, 1, 0}));
    CHECK(c.terminating());

    DivisionChain c2 = DivisionChain::make(e(7), e(5), elems(q, {1, 2, 2}));
    CHECK(c2.remainders() == elems(q, {2, 1, 0}));
    CHECK(c2.terminating());

    // Short of termination the last remainder is nonzero.
    DivisionChain c3 = DivisionChain::make(e(8), e(5), elems(q, {1, 1}));
    CHECK(c3.remainders() == elems(q, {3, 2}));
    CHECK_FALSE(c3.terminating());

    CHECK(DivisionChain::make(e(5), e(0), {}).terminating());
    CHECK_FALSE(DivisionChain::make(e(5), e(3), {}).terminating());
}

TEST_CASE("dropping the first equation shifts the chain") {
    Ring q = RingSpec::parse("Q");
    auto e = [&](long v) { return RingElement::integer(q, Integer(v)); };

    DivisionChain c = DivisionChain::make(e(8), e(5), elems(q, {1, 1, 1, 2}));
    DivisionChain d = c.drop_first();
    CHECK(d.start_a() == e(5));
    CHECK(d.start_b() == e(3));
    CHECK(d.quotients() == elems(q, {1, 1, 2}));
    CHECK(d.remainders() == elems(q, {2, 1, 0}));

    CHECK_THROWS_AS(DivisionChain::make(e(5), e(0), {}).drop_first(), std::domain_error);
}

TEST_CASE("reduction path reaches the tail of the chain") {
    Ring q = RingSpec::parse("Q");
    auto e = [&](long v) { return RingElement::integer(q, Integer(v)); };

    // Odd length: the pair ends up as (r_k, r_{k-1}).
    ReductionPath p = chain_to_reduction(DivisionChain::make(e(7), e(5), elems(q, {1, 2, 2})));
    CHECK(p.move_params == elems(q, {-1, -2, -2}));
    CHECK(p.final_a == e(0));
    CHECK(p.final_b == e(1));

    // Even length: (r_{k-1}, r_k).
    ReductionPath p2 =
        chain_to_reduction(DivisionChain::make(e(8), e(5), elems(q, {1, 1, 1, 2})));
    CHECK(p2.final_a == e(1));
    CHECK(p2.final_b == e(0));

    ReductionPath p3 = chain_to_reduction(DivisionChain::make(e(5), e(3), {}));
    CHECK(p3.move_params.empty());
    CHECK(p3.final_a == e(5));
    CHECK(p3.final_b == e(3));
}

TEST_CASE("moves track right multiplication by elementary matrices") {
    Ring q6 = RingSpec::parse("Q[1/6]");
    Lcg64 rng(2024);
    for (int trial = 0; trial < 25; ++trial) {
        Mat2 m = random_matrix(rng, q6, 4, 3);
        std::vector<RingElement> qs;
        for (int i = 0; i < 3; ++i)
            qs.push_back(random_element(rng, q6, 4));
        DivisionChain chain = DivisionChain::make(m.a(), m.b(), qs);
        ReductionPath path = chain_to_reduction(chain);

        RowPair pair = RowPair::from_matrix(m);
        Mat2 acc = m;
        for (std::size_t i = 0; i < path.move_params.size(); ++i) {
            Side side = (i % 2 == 0) ? Side::Lower : Side::Upper;
            pair = (side == Side::Lower) ? apply_l(pair, path.move_params[i])
                                         : apply_u(pair, path.move_params[i]);
            acc = acc * Mat2::elementary(side, path.move_params[i]);
            CHECK(pair.a() == acc.a());
            CHECK(pair.b() == acc.b());
            // The witness row rides along and keeps the pair unimodular.
            REQUIRE(pair.witness().has_value());
            CHECK(pair.witness()->first == acc.c());
            CHECK(pair.witness()->second == acc.d());
        }
        CHECK(pair.a() == path.final_a);
        CHECK(pair.b() == path.final_b);
    }
}

TEST_CASE("bare pairs carry no witness") {
    Ring q = RingSpec::parse("Q");
    auto e = [&](long v) { return RingElement::integer(q, Integer(v)); };
    RowPair p = RowPair::of(e(8), e(5));
    CHECK_FALSE(p.witness().has_value());
    RowPair moved = apply_l(p, e(-1));
    CHECK(moved.a() == e(3));
    CHECK(moved.b() == e(5));
    CHECK_FALSE(moved.witness().has_value());
    RowPair up = apply_u(p, e(2));
    CHECK(up.a() == e(8));
    CHECK(up.b() == e(21));
    CHECK(RowPair::of(e(3), e(5)) == moved);
}

TEST_CASE("rebuilding from stored parts revalidates the recurrence") {
    Ring q = RingSpec::parse("Q");
    auto e = [&](long v) { return RingElement::integer(q, Integer(v)); };

    DivisionChain c = DivisionChain::make(e(7), e(5), elems(q, {1, 2, 2}));
    DivisionChain same = DivisionChain::from_parts(e(7), e(5), c.quotients(), c.remainders());
    CHECK(same.remainders() == c.remainders());

    CHECK_THROWS_AS(
        DivisionChain::from_parts(e(7), e(5), elems(q, {1, 2, 2}), elems(q, {2, 1, 1})),
        std::invalid_argument);
    CHECK_THROWS_AS(
        DivisionChain::from_parts(e(7), e(5), elems(q, {1, 2, 2}), elems(q, {2, 1})),
        std::invalid_argument);
}

TEST_CASE("chain JSON round trips") {
    Ring q11 = RingSpec::parse("Q[1/11]");
    auto e = [&](const char* t) { return RingElement::parse(q11, t); };

    DivisionChain c = DivisionChain::make(e("4"), e("7"), {e("-1"), e("7/11")});
    CHECK(c.to_json() == R"({"a":"4","b":"7","q":["-1","7/11"],"r":["11","0"]})");

    DivisionChain back = DivisionChain::from_json(q11, c.to_json());
    CHECK(back.start_a() == c.start_a());
    CHECK(back.quotients() == c.quotients());
    CHECK(back.remainders() == c.remainders());
    CHECK(back.terminating());

    CHECK_THROWS_AS(DivisionChain::from_json(q11, "{"), ParseError);
    CHECK_THROWS_AS(DivisionChain::from_json(q11, R"({"a":"4","b":"7","q":[]})"), ParseError);
    // Tampered remainder fails the recurrence check.
    CHECK_THROWS_AS(
        DivisionChain::from_json(q11, R"({"a":"4","b":"7","q":["-1","7/11"],"r":["11","1"]})"),
        ParseError);
}

TEST_CASE("chains work over quadratic rings") {
    Ring s2 = RingSpec::parse("Q(sqrt 2)");
    auto e = [&](const char* t) { return RingElement::parse(s2, t); };
    // r1 = (2+2*w) - 1*(1+2*w) = 1, r2 = (1+2*w) - (1+2*w)*1 = 0.
    DivisionChain c =
        DivisionChain::make(e("2+2*w"), e("1+2*w"), {e("1"), e("1+2*w")});
    CHECK(c.remainders()[0] == e("1"));
    CHECK(c.remainders()[1] == RingElement::zero(s2));
    CHECK(c.terminating());
    DivisionChain back = DivisionChain::from_json(s2, c.to_json());
    CHECK(back.remainders() == c.remainders());
}
