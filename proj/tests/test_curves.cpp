#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arrkit/curves.hpp"

using namespace arrkit;

namespace {

MPoly u() { return MPoly::variable(2, 0); }
MPoly v() { return MPoly::variable(2, 1); }

} // namespace

TEST_CASE("local intersection multiplicity") {
    SUBCASE("transverse crossing") {
        CHECK(local_mult(u(), v(), Rat(0), Rat(0), 4) == 1);
        CHECK(local_mult(u() + v(), u() - v(), Rat(0), Rat(0), 4) == 1);
    }
    SUBCASE("tangency: dim k[[u,v]]/(v, v - u^2) = 2") {
        CHECK(local_mult(v(), v() - u() * u(), Rat(0), Rat(0), 5) == 2);
    }
    SUBCASE("translated point") {
        // curves through (1, 2), transverse
        MPoly c1 = u() - MPoly(2, Rat(1));
        MPoly c2 = v() - MPoly(2, Rat(2));
        CHECK(local_mult(c1, c2, Rat(1), Rat(2), 4) == 1);
    }
    SUBCASE("non-common-zero input rejected") {
        CHECK_THROWS(local_mult(u(), v() - MPoly(2, Rat(1)), Rat(0), Rat(0), 4));
    }
    SUBCASE("shared component fails loudly") {
        CHECK_THROWS(local_mult(u(), u() * v(), Rat(0), Rat(0), 4));
    }
}

TEST_CASE("resultants") {
    CHECK(resultant_v(v() - u() * u(), v()) == UPoly(std::vector<Rat>{Rat(0), Rat(0), Rat(1)}));
    // two generic lines meet once: degree-1 resultant
    UPoly r = resultant_v(u() + v(), u() - v() + MPoly(2, Rat(1)));
    CHECK(r.degree() == 1);
}

TEST_CASE("curve pair for the extended Stanley arrangement") {
    Multiarrangement a = stanley_extended();
    FreenessVerdict fv = freeness_test(a);
    REQUIRE(fv.is_free());
    REQUIRE(fv.certificate.has_value());
    CurvePair pair = curve_pair(a, *fv.certificate, 0);
    CHECK(pair.e1 == 2);
    CHECK(pair.e2 == 5);
    BezoutReport rep = bezout_report(pair);
    CHECK(rep.bezout_sum == 10);
    CHECK(rep.sum_matches);
    CHECK(rep.mult_equals_mu);
    CHECK(rep.zero_set_is_l2);
    SUBCASE("every L_2 point lies on both curves") {
        for (const PlanarPoint& p : pair.points) {
            CHECK(is_zero(pair.c1.eval({p.x, p.y})));
            CHECK(is_zero(pair.c2.eval({p.x, p.y})));
        }
    }
    SUBCASE("a parallel alpha is rejected") {
        // K and H_1 are horizontal in the deconed plane; the corresponding
        // direction must be refused.
        bool threw = false;
        try {
            CurvePair bad = curve_pair(a, *fv.certificate, 0, std::make_pair(0L, 1L));
            (void)bad;
        } catch (const std::invalid_argument&) {
            threw = true;
        } catch (const std::exception&) {
            threw = true;
        }
        CHECK(threw);
    }
}

TEST_CASE("fiber-type instance: curves split into linear forms") {
    // x, y, x-y, z is supersolvable with exponents (1,1,2); with the basis
    // (theta_E, x d_x + y d_y, xy(d_x + d_y)) the two curves factor.
    Multiarrangement a = Multiarrangement::make(3, {{1, 0, 0}, {0, 1, 0}, {1, -1, 0}, {0, 0, 1}});
    FreenessVerdict fv = freeness_test(a);
    REQUIRE(fv.is_free());
    CHECK(fv.exponents == std::vector<int>{1, 1, 2});
    Derivation planar_euler = Derivation::zero(3);
    planar_euler.coeffs[0] = MPoly::variable(3, 0);
    planar_euler.coeffs[1] = MPoly::variable(3, 1);
    Derivation quad = Derivation::zero(3);
    quad.coeffs[0] = MPoly::variable(3, 0) * MPoly::variable(3, 1);
    quad.coeffs[1] = quad.coeffs[0];
    auto res = saito_check(a, {Derivation::euler(3), planar_euler, quad});
    REQUIRE(std::holds_alternative<SaitoCertificate>(res));
    CurvePair pair = curve_pair(a, std::get<SaitoCertificate>(res), 3);
    CHECK(pair.e1 == 1);
    CHECK(pair.e2 == 2);
    // c1 = a1 u + a2 v is a line; c2 = (a1 + a2) uv is a product of the two
    // coordinate lines (alpha = (1,1) is the first non-parallel direction).
    CHECK(pair.c1 == u() + v());
    CHECK(pair.c2 == (u() * v()) * Rat(2));
    BezoutReport rep = bezout_report(pair);
    CHECK(rep.bezout_sum == 2);
    CHECK(rep.sum_matches);
    CHECK(rep.mult_equals_mu);
    SUBCASE("the single L_2 point is the triple point with mu = 2") {
        REQUIRE(pair.points.size() == 1);
        CHECK(pair.points[0].mu == 2);
        CHECK(pair.mult[0] == 2);
    }
}

TEST_CASE("coned free instance: degrees follow the certificate") {
    // braid(4) is rank 3 and free (0,1,2,3); essentialize, then the curve
    // degrees are the certificate exponents (2,3).
    Multiarrangement ess = essentialize(braid(4)).arr;
    FreenessVerdict fv = freeness_test(ess);
    REQUIRE(fv.is_free());
    CHECK(fv.exponents == std::vector<int>{1, 2, 3});
    CurvePair pair = curve_pair(ess, *fv.certificate, 0);
    CHECK(pair.e1 == 2);
    CHECK(pair.e2 == 3);
    BezoutReport rep = bezout_report(pair);
    CHECK(rep.sum_matches);
    CHECK(rep.mult_equals_mu);
    CHECK(rep.zero_set_is_l2);
}

TEST_CASE("refutation mode") {
    SUBCASE("stanley: five points on one line against cubics") {
        RefutationReport rep = curves_refute(stanley(), 0);
        CHECK(rep.refuted);
        CHECK(rep.points_on_line == 5);
        CHECK(rep.hypothetical_exponents == std::vector<int>{1, 3, 3});
    }
    SUBCASE("a genuinely free arrangement is not refuted") {
        RefutationReport rep = curves_refute(stanley_extended(), 0);
        CHECK_FALSE(rep.refuted);
    }
}
