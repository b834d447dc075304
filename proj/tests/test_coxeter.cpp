#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arrkit/coxeter.hpp"

using namespace arrkit;

TEST_CASE("type-A data") {
    SUBCASE("A_2: h = 3, invariant degrees (2,3)") {
        CoxeterData cox = CoxeterData::make_typeA(2);
        CHECK(cox.coxeter_number() == 3);
        CHECK(cox.invariants()[0].total_degree() == 2);
        CHECK(cox.invariants()[1].total_degree() == 3);
        CHECK(cox.group_order() == 6);
        // Delta = -6 (x1-x2)(2x1+x2)(x1+2x2) in this model (computed once,
        // frozen; the sign depends only on the fixed variable order).
        CHECK(cox.delta_scalar() == Rat(-6));
        CHECK(cox.delta() == cox.arrangement().defining_poly() * cox.delta_scalar());
    }
    SUBCASE("A_3: h = 4, degrees (2,3,4), |W| = 24") {
        CoxeterData cox = CoxeterData::make_typeA(3);
        CHECK(cox.coxeter_number() == 4);
        for (int k = 0; k < 3; ++k) CHECK(cox.invariants()[k].total_degree() == k + 2);
        CHECK(cox.group_order() == 24);
        CHECK(cox.arrangement().size() == 6);
    }
}

TEST_CASE("the rational derivation d/dP_i") {
    for (int rank : {2, 3}) {
        CoxeterData cox = CoxeterData::make_typeA(rank);
        SUBCASE(("dP_j/dP_i = delta_ij for A_" + std::to_string(rank)).c_str()) {
            for (int i = 0; i < rank; ++i)
                for (int j = 0; j < rank; ++j) {
                    RatFrac f = cox.dP(cox.invariants()[j], i);
                    CHECK(f.dpow == 0);
                    if (i == j)
                        CHECK(f.num == MPoly(rank, Rat(1)));
                    else
                        CHECK(f.num.is_zero());
                }
        }
    }
    SUBCASE("Leibniz instance: d(P_1^2)/dP_1 = 2 P_1") {
        CoxeterData cox = CoxeterData::make_typeA(2);
        RatFrac f = cox.dP(cox.invariants()[0] * cox.invariants()[0], 0);
        CHECK(f.dpow == 0);
        CHECK(f.num == cox.invariants()[0] * Rat(2));
    }
}

TEST_CASE("nabla") {
    CoxeterData cox = CoxeterData::make_typeA(2);
    SUBCASE("nabla_{d_1}(x_1 dx_1) = dx_1, coefficientwise") {
        Derivation d1 = Derivation::zero(2);
        d1.coeffs[0] = MPoly(2, Rat(1));
        RatFrac coeff{MPoly::variable(2, 0), 0};
        RatFrac out = cox.nabla_deriv(d1, coeff);
        CHECK(out.dpow == 0);
        CHECK(out.num == MPoly(2, Rat(1)));
    }
    SUBCASE("nabla_{theta_E} scales dP_1 coefficients by their degree") {
        // coefficients of dP_1 are linear, so the factor is 1
        for (int j = 0; j < 2; ++j) {
            RatFrac coeff{cox.invariants()[0].derivative(j), 0};
            RatFrac out = cox.nabla_deriv(Derivation::euler(2), coeff);
            CHECK(out.num == coeff.num);
        }
    }
    SUBCASE("nabla_D dP_i coefficients are dP_l applied to the gradient entries") {
        for (int j = 0; j < 2; ++j) {
            RatFrac direct = cox.nabla_D(RatFrac{cox.invariants()[0].derivative(j), 0});
            RatFrac unfold = cox.dP(cox.invariants()[0].derivative(j), 1);
            CHECK(direct.dpow == unfold.dpow);
            CHECK(direct.num == unfold.num);
        }
    }
}

TEST_CASE("Phi_k lands in Omega^1(A, 2k - m)") {
    CoxeterData cox = CoxeterData::make_typeA(2);
    const Multiarrangement& a = cox.arrangement();
    SUBCASE("k = 1 on the simple basis: members of Omega^1(A, 1)") {
        auto gens = minimal_generators(a, 2);
        REQUIRE(gens.size() == 2);
        for (const auto& g : gens) {
            LogForm w = cox.phi_k(g.rep, 1);
            CHECK(in_omega_module(a, std::vector<int>(a.size(), 1), w));
            // degree law: deg phi_k(delta) = deg delta - k h
            CHECK(w.degree() == g.degree - 3);
        }
    }
    SUBCASE("k = 1, m = 0 on a coordinate field: member of Omega^1(A, 2)") {
        Derivation d1 = Derivation::zero(2);
        d1.coeffs[0] = MPoly(2, Rat(1));
        LogForm w = cox.phi_k(d1, 1);
        CHECK(in_omega_module(a, std::vector<int>(a.size(), 2), w));
    }
    SUBCASE("linearity: the zero derivation maps to zero") {
        LogForm w = cox.phi_k(Derivation::zero(2), 1);
        for (const MPoly& n : w.numerators) CHECK(n.is_zero());
    }
}

TEST_CASE("Psi_k: bases of D(A, 2k + m)") {
    CoxeterData cox = CoxeterData::make_typeA(2);
    SUBCASE("m = 1, k = 1: degrees (4,5) basis of D(A,3)") {
        auto im = cox.psi_basis(1, 1);
        auto res = saito_check(cox.arrangement().with_constant_mult(3), im);
        REQUIRE(std::holds_alternative<SaitoCertificate>(res));
        CHECK(std::get<SaitoCertificate>(res).exponents == std::vector<int>{4, 5});
    }
    SUBCASE("m = 0, k = 1: degrees (3,3) basis of D(A,2)") {
        auto im = cox.psi_basis(1, 0);
        auto res = saito_check(cox.arrangement().with_constant_mult(2), im);
        REQUIRE(std::holds_alternative<SaitoCertificate>(res));
        CHECK(std::get<SaitoCertificate>(res).exponents == std::vector<int>{3, 3});
    }
    SUBCASE("degree law and membership for theta_E") {
        Derivation img = cox.psi_k(Derivation::euler(2), 1);
        CHECK(img.degree() == 1 + 3);
        CHECK(in_derivation_module(cox.arrangement().with_constant_mult(3), img));
    }
    SUBCASE("nabla_D inverts the chain step") {
        auto chain = cox.nabla_D_inverse_chain(2);
        REQUIRE(chain.size() == 2);
        CHECK(chain[0].degree() == 1 + 3);
        CHECK(chain[1].degree() == 1 + 6);
        CHECK(cox.nabla_D_poly(chain[0]) == Derivation::euler(2));
        CHECK(cox.nabla_D_poly(chain[1]) == chain[0]);
    }
}

TEST_CASE("invariant modules") {
    CoxeterData cox = CoxeterData::make_typeA(2);
    SUBCASE("m = 1: generators of degrees (1,2)") {
        InvariantBasis ib = invariant_module(cox, 1, 4);
        REQUIRE(ib.generators.size() == 2);
        CHECK(ib.generators[0].degree == 1);
        CHECK(ib.generators[1].degree == 2);
        for (const auto& g : ib.generators) CHECK(cox.is_invariant(g.rep));
    }
    SUBCASE("m = 5: generators of degrees (7,8) = e_i + 2h") {
        InvariantBasis ib = invariant_module(cox, 5, 9);
        REQUIRE(ib.generators.size() == 2);
        CHECK(ib.generators[0].degree == 7);
        CHECK(ib.generators[1].degree == 8);
        // Hodge filtration containment: nabla_D D(A,5)^W into D(A,3)^W.
        Multiarrangement a3 = cox.arrangement().with_constant_mult(3);
        for (const auto& g : ib.generators) {
            Derivation img = cox.nabla_D_poly(g.rep);
            if (img.is_zero()) continue;
            CHECK(in_derivation_module(a3, img));
            CHECK(cox.is_invariant(img));
        }
    }
    SUBCASE("m = 3 generators flow down to D(A,1)^W under nabla_D") {
        InvariantBasis ib = invariant_module(cox, 3, 6);
        REQUIRE(ib.generators.size() == 2);
        CHECK(ib.generators[0].degree == 4);
        CHECK(ib.generators[1].degree == 5);
        Multiarrangement a1 = cox.arrangement();
        for (const auto& g : ib.generators) {
            Derivation img = cox.nabla_D_poly(g.rep);
            if (img.is_zero()) continue;
            CHECK(in_derivation_module(a1, img));
            CHECK(cox.is_invariant(img));
        }
    }
    SUBCASE("even multiplicities are rejected") {
        CHECK_THROWS(invariant_module(cox, 2, 4));
    }
}

TEST_CASE("Reynolds projection") {
    CoxeterData cox = CoxeterData::make_typeA(2);
    CHECK(cox.is_invariant(Derivation::euler(2)));
    CHECK(cox.reynolds(Derivation::euler(2)) == Derivation::euler(2));
    // A non-invariant derivation projects to an invariant one.
    Derivation d = Derivation::zero(2);
    d.coeffs[0] = MPoly::variable(2, 0);
    Derivation proj = cox.reynolds(d);
    CHECK(cox.is_invariant(proj));
}
