#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arrkit/solomonterao.hpp"

using namespace arrkit;

namespace {

UPoly from_roots(const std::vector<long>& roots) {
    UPoly p = UPoly::constant(Rat(1));
    for (long r : roots) p = p * UPoly(std::vector<Rat>{Rat(-r), Rat(1)});
    return p;
}

} // namespace

TEST_CASE("Hilbert series fitting") {
    SUBCASE("Omega^0 = S has numerator 1") {
        Multiarrangement a = braid(3);
        auto fn = [&](int d) { return omega_graded_dim(a, 0, d); };
        HilbertRational h = fit_module_series(fn, 3, -3, 9);
        REQUIRE(h.numerator.size() == 1);
        CHECK(h.numerator.at(0) == Rat(1));
    }
    SUBCASE("free D(A) has numerator sum x^{e_i}") {
        Multiarrangement a = braid(3);
        auto fn = [&](int d) { return d_graded_dim(a, d); };
        HilbertRational h = fit_module_series(fn, 3, 0, 9);
        std::map<int, Rat> expect = {{0, Rat(1)}, {1, Rat(1)}, {2, Rat(1)}};
        CHECK(h.numerator == expect);
    }
    SUBCASE("Omega^1(braid(3)) numerator: computed and frozen") {
        Multiarrangement a = braid(3);
        auto fn = [&](int d) { return omega_graded_dim(a, 1, d); };
        HilbertRational h = fit_module_series(fn, 3, -3, 9);
        std::map<int, Rat> expect = {{-2, Rat(1)}, {-1, Rat(1)}, {0, Rat(1)}};
        CHECK(h.numerator == expect);
    }
    SUBCASE("fit failure is loud and reports the window") {
        // dims of a polynomial ring fitted against too few variables never
        // stabilize within a short window
        auto fn = [](int d) { return monomial_count(4, d); };
        CHECK_THROWS_WITH_AS(
            {
                HilbertRational h = fit_module_series(fn, 2, 0, 6);
                (void)h;
            },
            doctest::Contains("did not stabilize"), std::runtime_error);
    }
    SUBCASE("fit_hilbert verifies every computed dimension") {
        GradedDims gd;
        gd.tag = "D";
        for (int d = 0; d <= 8; ++d) gd.dims[d] = d_graded_dim(braid(3), d);
        gd.cutoff = 8;
        HilbertRational h = fit_hilbert(gd, 3);
        for (int d = 0; d <= 8; ++d) CHECK(h.dim_at(d) == gd.dims.at(d));
    }
}

TEST_CASE("Solomon-Terao limit") {
    SUBCASE("braid(3) recovers t(t-1)(t-2)") {
        SolomonTeraoResult r = solomon_terao_chi(braid(3));
        CHECK(r.chi == from_roots({0, 1, 2}));
        CHECK(r.chi == IntersectionLattice::build(braid(3)).char_poly());
    }
    SUBCASE("stanley: the non-free case still matches the lattice") {
        SolomonTeraoResult r = solomon_terao_chi(stanley());
        CHECK(r.chi == from_roots({1, 3, 3}));
    }
    SUBCASE("boolean(2) with m = (2,2): multiarrangement chi (t-2)^2") {
        SolomonTeraoResult r = solomon_terao_chi(boolean_arr(2).with_mult({2, 2}));
        CHECK(r.chi == from_roots({2, 2}));
    }
    SUBCASE("certified free multiarrangements factor through their exponents") {
        // catalan(2) is free with exponents (0,1,3)
        SolomonTeraoResult r = solomon_terao_chi(catalan(2));
        CHECK(r.chi == from_roots({0, 1, 3}));
    }
    SUBCASE("extended stanley: free case factors as (t-1)(t-2)(t-5)") {
        SolomonTeraoResult r = solomon_terao_chi(stanley_extended());
        CHECK(r.chi == from_roots({1, 2, 5}));
        CHECK(r.chi == IntersectionLattice::build(stanley_extended()).char_poly());
    }
    SUBCASE("output is monic of degree l") {
        for (const Multiarrangement& a : {boolean_arr(2), braid(3), catalan(2)}) {
            SolomonTeraoResult r = solomon_terao_chi(a);
            CHECK(r.chi.degree() == a.dim());
            CHECK(r.chi.coeff(a.dim()) == Rat(1));
        }
    }
    SUBCASE("Phi reproduces the fitted series coefficientwise") {
        SolomonTeraoResult r = solomon_terao_chi(boolean_arr(2));
        for (int p = 0; p <= 2; ++p)
            for (const auto& [j, c] : r.series[p].numerator) CHECK(r.phi.coeff(j, p) == c);
    }
}

TEST_CASE("Chern check at rank 3") {
    SUBCASE("stanley: 1 - 6t + 9t^2") {
        ChernReport rep = chern_check(stanley());
        CHECK(rep.pass);
        CHECK(rep.rank == Rat(2));
        CHECK(rep.c1 == Rat(-6));
        CHECK(rep.c2 == Rat(9));
    }
    SUBCASE("boolean(3) degenerates to (1-t)^2") {
        ChernReport rep = chern_check(boolean_arr(3));
        CHECK(rep.pass);
        CHECK(rep.c1 == Rat(-2));
        CHECK(rep.c2 == Rat(1));
    }
    SUBCASE("extended stanley degenerates to (1-2t)(1-5t)") {
        ChernReport rep = chern_check(stanley_extended());
        CHECK(rep.pass);
        CHECK(rep.c1 == Rat(-7));
        CHECK(rep.c2 == Rat(10));
    }
    SUBCASE("rank != 3 rejected") {
        CHECK_THROWS(chern_check(braid(3)));
    }
}
