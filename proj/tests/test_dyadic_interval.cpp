#include <catch2/catch_amalgamated.hpp>

#include "support/properties.hpp"

using namespace rootiso;

TEST_CASE("dyadic normalization") {
    SECTION("factors out powers of two") {
        Dyadic d = dy_normalize(4, 0);
        CHECK(d.mantissa() == 1);
        CHECK(d.exponent() == 2);
    }
    SECTION("zero canonicalizes to exponent 0") {
        Dyadic d = dy_normalize(0, 17);
        CHECK(d.mantissa() == 0);
        CHECK(d.exponent() == 0);
    }
    SECTION("odd mantissa is unchanged") {
        Dyadic d = dy_normalize(3, -5);
        CHECK(d.mantissa() == 3);
        CHECK(d.exponent() == -5);
    }
    SECTION("textual form") {
        CHECK(dy_normalize(3, -5).str() == "3*2^-5");
        CHECK(dy_normalize(12, 0).str() == "3*2^2");
        CHECK(Dyadic(7).str() == "7");
    }
}

TEST_CASE("interval arithmetic examples") {
    const Precision rho{63};
    SECTION("exact point addition") {
        Enclosure r = iv_arith(IvOp::Add, Enclosure::point(Dyadic(1)), Enclosure::point(Dyadic(2)), rho);
        CHECK(r.lo() == Dyadic(3));
        CHECK(r.hi() == Dyadic(3));
    }
    SECTION("monotone endpoint products") {
        Enclosure r = iv_arith(IvOp::Mul, Enclosure(Dyadic(-1), Dyadic(2)), Enclosure::point(Dyadic(3)), rho);
        CHECK(r.lo() == Dyadic(-3));
        CHECK(r.hi() == Dyadic(6));
    }
    SECTION("division encloses 1/3 tightly at rho 8") {
        Enclosure r = iv_arith(IvOp::Div, Enclosure::point(Dyadic(1)), Enclosure::point(Dyadic(3)), Precision{8});
        mpq_class third(1, 3);
        CHECK(to_mpq(r.lo()) <= third);
        CHECK(third <= to_mpq(r.hi()));
        CHECK(to_mpq(r.width()) <= mpq_class(1, 128));  // width <= 2^-7
    }
    SECTION("division by an enclosure containing zero") {
        CHECK_THROWS_AS(iv_arith(IvOp::Div, Enclosure::point(Dyadic(1)), Enclosure(Dyadic(-1), Dyadic(1)), rho),
                        IntervalDivisionError);
    }
}

TEST_CASE("interval sign classification") {
    CHECK(iv_sign(Enclosure(Dyadic(1), Dyadic(2))) == IvSign::Positive);
    CHECK(iv_sign(Enclosure::point(Dyadic(0))) == IvSign::Zero);
    CHECK(iv_sign(Enclosure(Dyadic(-1), Dyadic(1))) == IvSign::Unknown);
    CHECK(iv_sign(Enclosure(Dyadic(-2), Dyadic(-1))) == IvSign::Negative);
}

TEST_CASE("exponent overflow is a hard error") {
    Dyadic huge = Dyadic::pow2(int64_t{1} << 55);
    CHECK_THROWS_AS(huge * huge * huge * huge, ExponentOverflowError);
}

TEST_CASE("containment fuzzing") {
    auto res = props::containment_fuzz(100000, 0xc0ffee);
    INFO(res.first_failure);
    CHECK(res.failures == 0);
    CHECK(res.cases == 100000);
}

TEST_CASE("outward rounding monotonicity") {
    auto res = props::rounding_monotonicity(20000, 0xbeef);
    INFO(res.first_failure);
    CHECK(res.failures == 0);
}

TEST_CASE("dyadic round-trip and ordering") {
    auto res = props::dyadic_roundtrip(20000, 0xdead);
    INFO(res.first_failure);
    CHECK(res.failures == 0);
}
