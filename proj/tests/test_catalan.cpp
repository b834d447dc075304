#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "arrkit/catalan.hpp"

using namespace arrkit;

TEST_CASE("the F_{p,i} family") {
    SUBCASE("degree and span counting match the symmetric Hilbert series") {
        // #{(p,i) : p + 2i = d} = floor(d/2) + 1 = dim of the degree-d
        // two-variable symmetric polynomials, and the family is independent.
        for (int d = 0; d <= 8; ++d) {
            std::vector<std::vector<Rat>> vecs;
            std::map<Expo, int, GrlexGreater> idx;
            int k = 0;
            for (const Expo& e : monomials_of_degree(2, d)) idx.emplace(e, k++);
            int count = 0;
            for (int i = 0; 2 * i <= d; ++i) {
                int p = d - 2 * i;
                MPoly f = fpi_poly(2, p, i);
                CHECK(f.total_degree() == d);
                std::vector<Rat> v(idx.size(), Rat(0));
                for (const auto& [e, c] : f.terms()) v[idx.at(e)] = c;
                vecs.push_back(std::move(v));
                ++count;
            }
            CHECK(count == d / 2 + 1);
            CHECK(rank_of(vecs, static_cast<int>(idx.size())) == count);
        }
    }
}

TEST_CASE("fpi_decompose") {
    SUBCASE("x1^2 + x2^2 = (2/3) F_{2,0} + (1/3) F_{0,1}") {
        MPoly g = MPoly::variable(2, 0).pow(2) + MPoly::variable(2, 1).pow(2);
        auto terms = fpi_decompose(g);
        REQUIRE(terms.size() == 2);
        // ordered by (p, r) ascending
        CHECK(terms[0].p == 0);
        CHECK(terms[0].r == 1);
        CHECK(terms[0].coeff == MPoly(2, Rat(1, 3)));
        CHECK(terms[1].p == 2);
        CHECK(terms[1].r == 0);
        CHECK(terms[1].coeff == MPoly(2, Rat(2, 3)));
    }
    SUBCASE("x1 + x2 = F_{1,0}") {
        MPoly g = MPoly::variable(2, 0) + MPoly::variable(2, 1);
        auto terms = fpi_decompose(g);
        REQUIRE(terms.size() == 1);
        CHECK(terms[0].p == 1);
        CHECK(terms[0].r == 0);
        CHECK(terms[0].coeff == MPoly(2, Rat(1)));
    }
    SUBCASE("(x1 - x2)^2 = F_{0,1}") {
        MPoly g = (MPoly::variable(2, 0) - MPoly::variable(2, 1)).pow(2);
        auto terms = fpi_decompose(g);
        REQUIRE(terms.size() == 1);
        CHECK(terms[0].p == 0);
        CHECK(terms[0].r == 1);
    }
    SUBCASE("non-symmetric input is rejected") {
        CHECK_THROWS(fpi_decompose(MPoly::variable(2, 0)));
    }
    SUBCASE("round-trips on seeded random symmetric polynomials in 3 variables") {
        std::mt19937 rng(5);
        std::uniform_int_distribution<int> coef(-4, 4);
        int done = 0;
        while (done < 10) {
            MPoly g(3);
            for (const Expo& e : monomials_of_degree(3, 4)) {
                int c = coef(rng);
                if (c != 0) g.add_term(e, Rat(c));
            }
            std::vector<MPoly> swap12 = {MPoly::variable(3, 1), MPoly::variable(3, 0),
                                         MPoly::variable(3, 2)};
            MPoly sym = (g + g.substitute(swap12)) * Rat(1, 2);
            if (sym.is_zero()) continue;
            ++done;
            auto terms = fpi_decompose(sym);
            MPoly recon(3);
            for (const auto& t : terms) recon += t.coeff * fpi_poly(3, t.p, t.r);
            CHECK(recon == sym);
        }
    }
}

TEST_CASE("lift from the essential model") {
    CoxeterData cox = CoxeterData::make_typeA(2);
    auto gens = minimal_generators(cox.arrangement(), 2);
    REQUIRE(gens.size() == 2);
    for (const auto& g : gens) {
        Derivation lifted = lift_to_braid(g.rep, 3);
        CHECK(in_derivation_module(braid(3), lifted));
        CHECK(lifted.degree() == g.degree);
    }
}

TEST_CASE("catalan_basis") {
    SUBCASE("n = 2: exponents (0,1,3), sum = |Cat_2| = 4") {
        CatalanCertificate cert = catalan_basis(2);
        CHECK(cert.saito.exponents == std::vector<int>{0, 1, 3});
        CHECK(catalan(2).mult_total() == 4);
        CHECK(cert.saito.determinant == catalan(2).defining_poly() * cert.saito.scalar);
    }
    SUBCASE("n = 3: exponents (0,1,4,5), sum = |Cat_3| = 10") {
        CatalanCertificate cert = catalan_basis(3);
        CHECK(cert.saito.exponents == std::vector<int>{0, 1, 4, 5});
        CHECK(catalan(3).mult_total() == 10);
    }
    SUBCASE("divisibility spot-checks on the lifted fields") {
        CatalanCertificate cert = catalan_basis(3);
        const int nv = 4;
        MPoly a12 = MPoly::variable(nv, 0) - MPoly::variable(nv, 1);
        MPoly z = MPoly::variable(nv, 3);
        for (const Derivation& et : cert.eta_tilde) {
            // eta~(alpha_12 - z) is divisible by alpha_12 - z, and likewise
            // with the sign flipped; eta~ has no z-component.
            MPoly v = et.apply(a12 - z);
            CHECK(mpoly_divides(a12 - z, v));
            MPoly w = et.apply(a12 + z);
            CHECK(mpoly_divides(a12 + z, w));
            CHECK(et.coeffs[3].is_zero());
        }
    }
    SUBCASE("eta really is an invariant basis of D(braid(n), 3)") {
        CatalanCertificate cert = catalan_basis(3);
        Multiarrangement b3 = braid(3).with_constant_mult(3);
        for (const Derivation& e : cert.eta) CHECK(in_derivation_module(b3, e));
        auto res = saito_check(b3, cert.eta);
        CHECK(std::holds_alternative<SaitoCertificate>(res));
    }
}
