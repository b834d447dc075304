#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "arrkit/arrangement.hpp"

using namespace arrkit;

TEST_CASE("make: canonicalization and merging") {
    SUBCASE("braid covectors") {
        Multiarrangement a = Multiarrangement::make(
            3, {{1, -1, 0}, {1, 0, -1}, {0, 1, -1}});
        CHECK(a.size() == 3);
        CHECK(a.mult_total() == 3);
    }
    SUBCASE("gcd normalization") {
        Multiarrangement a = Multiarrangement::make(3, {{2, -2, 0}});
        CHECK(a.hyperplane(0).coords == std::vector<long>{1, -1, 0});
    }
    SUBCASE("sign normalization") {
        Multiarrangement a = Multiarrangement::make(3, {{0, -3, 6}});
        CHECK(a.hyperplane(0).coords == std::vector<long>{0, 1, -2});
    }
    SUBCASE("duplicates merge by summing multiplicities") {
        Multiarrangement a =
            Multiarrangement::make(3, {{1, -1, 0}, {-1, 1, 0}}, {1, 2});
        CHECK(a.size() == 1);
        CHECK(a.mult(0) == 3);
    }
    SUBCASE("errors") {
        CHECK_THROWS(Multiarrangement::make(2, {{0, 0}}));
        CHECK_THROWS(Multiarrangement::make(2, {{1, 0}}, {-1}));
    }
    SUBCASE("canonicalization is idempotent") {
        Multiarrangement a = Multiarrangement::make(3, {{2, -4, 6}, {0, 5, 0}}, {2, 3});
        std::vector<std::vector<long>> cov;
        for (const Covector& c : a.hyperplanes()) cov.push_back(c.coords);
        CHECK(Multiarrangement::make(3, cov, a.mult()) == a);
    }
}

TEST_CASE("named constructors") {
    CHECK(catalan(2).size() == 4);
    CHECK(catalan(2).mult_total() == 4);
    CHECK(catalan(3).size() == 10);
    CHECK(braid(4).size() == 6);
    CHECK(stanley().size() == 7);
    CHECK(stanley().rank() == 3);
    CHECK(stanley_extended().size() == 8);
    CHECK(boolean_arr(3).size() == 3);
    CHECK(coxeter_typeA(2).size() == 3);
    CHECK(coxeter_typeA(3).size() == 6);
    CHECK_THROWS(braid(1));
    CHECK_THROWS(catalan(1));
}

TEST_CASE("ziegler restriction") {
    SUBCASE("braid(3) onto x1 = x2: one hyperplane of multiplicity 2") {
        RestrictionResult rr = ziegler_restrict(braid(3), 0);
        CHECK(rr.ambient.size() == 1);
        CHECK(rr.ambient.mult(0) == 2);
    }
    SUBCASE("boolean(2): one hyperplane of multiplicity 1") {
        RestrictionResult rr = ziegler_restrict(boolean_arr(2), 0);
        CHECK(rr.ambient.size() == 1);
        CHECK(rr.ambient.mult(0) == 1);
    }
    SUBCASE("multiplicity conservation on the corpus") {
        for (const Multiarrangement& a :
             {braid(3), braid(4), stanley(), stanley_extended(), catalan(2), boolean_arr(3)}) {
            for (int h = 0; h < a.size(); ++h) {
                RestrictionResult rr = ziegler_restrict(a, h);
                CHECK(rr.ambient.mult_total() == a.size() - 1);
            }
        }
    }
    SUBCASE("simple input required") {
        CHECK_THROWS(ziegler_restrict(boolean_arr(2).with_mult({2, 1}), 0));
    }
}

TEST_CASE("localize, delete, decone") {
    SUBCASE("localizing braid(3) at its center keeps everything") {
        Multiarrangement a = braid(3);
        Multiarrangement loc = localize(a, {0, 1, 2});
        CHECK(loc == a);
    }
    SUBCASE("deleting the z-hyperplane of catalan(2) leaves 3 in the support") {
        Multiarrangement d = delete_one(catalan(2), 0);
        CHECK(d.support().size() == 3);
        CHECK(d.size() == 4); // retained with multiplicity zero
    }
    SUBCASE("delete then re-add restores the multiarrangement") {
        Multiarrangement a = catalan(2).with_mult({2, 1, 1, 1});
        Multiarrangement d = delete_one(a, 0);
        std::vector<int> m = d.mult();
        m[0] += 1;
        CHECK(d.with_mult(m) == a);
    }
    SUBCASE("decone produces |A|-1 affine lines") {
        DeconeResult dec = decone(stanley(), 0);
        CHECK(dec.lines.size() == 6);
        CHECK(dec.dim == 2);
    }
}

TEST_CASE("essentialize") {
    EssentialResult e = essentialize(braid(3));
    CHECK(e.arr.dim() == 2);
    CHECK(e.trivial_dims == 1);
    CHECK(e.arr.size() == 3);
    EssentialResult c = essentialize(catalan(2));
    CHECK(c.arr.dim() == 2);
    CHECK(c.arr.size() == 4);
}

TEST_CASE(".arr format") {
    SUBCASE("round-trip on the corpus") {
        for (const Multiarrangement& a :
             {braid(4), stanley(), catalan(2), boolean_arr(2).with_mult({2, 2})}) {
            std::istringstream in(format_arr(a));
            CHECK(parse_arr(in) == a);
        }
    }
    SUBCASE("comments, default multiplicity, explicit multiplicity") {
        std::istringstream in("# a comment\ndim 2\nH 1 0\nH 0 1 m=3 # trailing\n");
        Multiarrangement a = parse_arr(in);
        CHECK(a.size() == 2);
        CHECK(a.mult(1) == 3);
    }
    SUBCASE("rejects non-integer coefficients") {
        std::istringstream in("dim 2\nH 1.5 0\n");
        CHECK_THROWS(parse_arr(in));
    }
    SUBCASE("rejects missing dim") {
        std::istringstream in("H 1 0\n");
        CHECK_THROWS(parse_arr(in));
    }
    SUBCASE("rejects garbage tokens") {
        std::istringstream in("dim 2\nH 1 0 extra\n");
        CHECK_THROWS(parse_arr(in));
    }
}

TEST_CASE("random restriction conservation") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coeff(-3, 3);
    int done = 0;
    while (done < 10) {
        std::vector<std::vector<long>> cov;
        for (int i = 0; i < 5; ++i) {
            std::vector<long> v(3);
            do {
                for (long& x : v) x = coeff(rng);
            } while (v == std::vector<long>{0, 0, 0});
            cov.push_back(v);
        }
        Multiarrangement a = Multiarrangement::make(3, cov);
        if (!a.is_simple() || a.rank() != 3) continue;
        ++done;
        for (int h = 0; h < a.size(); ++h)
            CHECK(ziegler_restrict(a, h).ambient.mult_total() == a.size() - 1);
    }
}
