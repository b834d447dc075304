#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "arrkit/lattice.hpp"

using namespace arrkit;

namespace {

UPoly from_roots(const std::vector<long>& roots) {
    UPoly p = UPoly::constant(Rat(1));
    for (long r : roots) p = p * UPoly(std::vector<Rat>{Rat(-r), Rat(1)});
    return p;
}

// Brute-force lattice oracle: canonical span of every subset of hyperplanes.
std::map<int, int> flats_by_codim_bruteforce(const Multiarrangement& a) {
    std::vector<int> sup = a.support();
    const int n = static_cast<int>(sup.size());
    std::set<std::string> seen;
    std::map<int, int> counts;
    for (long mask = 0; mask < (1L << n); ++mask) {
        std::vector<std::vector<Rat>> rows;
        for (int i = 0; i < n; ++i)
            if (mask & (1L << i)) {
                std::vector<Rat> r(a.dim());
                for (int j = 0; j < a.dim(); ++j) r[j] = Rat(a.hyperplane(sup[i]).coords[j]);
                rows.push_back(std::move(r));
            }
        RatMatrix m(static_cast<int>(rows.size()), a.dim());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (int j = 0; j < a.dim(); ++j) m.at(static_cast<int>(i), j) = rows[i][j];
        RrefResult rr = rref(m);
        std::ostringstream key;
        for (int r = 0; r < rr.rank; ++r)
            for (int j = 0; j < a.dim(); ++j) key << rat_to_string(rr.rref.at(r, j)) << ",";
        if (seen.insert(key.str()).second) counts[rr.rank] += 1;
    }
    return counts;
}

} // namespace

TEST_CASE("lattices of the small corpus") {
    SUBCASE("boolean(2): V, two lines, the origin with mu = 1") {
        IntersectionLattice lat = IntersectionLattice::build(boolean_arr(2));
        CHECK(lat.max_codim() == 2);
        CHECK(lat.flats(1).size() == 2);
        REQUIRE(lat.flats(2).size() == 1);
        CHECK(lat.flats(2)[0].moebius == 1);
    }
    SUBCASE("braid(3): three planes and one codim-2 flat with mu = 2") {
        IntersectionLattice lat = IntersectionLattice::build(braid(3));
        CHECK(lat.flats(1).size() == 3);
        REQUIRE(lat.flats(2).size() == 1);
        CHECK(lat.flats(2)[0].moebius == 2);
        CHECK(lat.flats(2)[0].contains == std::vector<int>{0, 1, 2});
    }
    SUBCASE("braid(4): 6 + 7 + 1 flats, against the all-subsets oracle") {
        IntersectionLattice lat = IntersectionLattice::build(braid(4));
        CHECK(lat.flats(1).size() == 6);
        CHECK(lat.flats(2).size() == 7);
        CHECK(lat.flats(3).size() == 1);
        auto oracle = flats_by_codim_bruteforce(braid(4));
        CHECK(oracle[1] == 6);
        CHECK(oracle[2] == 7);
        CHECK(oracle[3] == 1);
    }
}

TEST_CASE("characteristic polynomials") {
    CHECK(IntersectionLattice::build(braid(3)).char_poly() == from_roots({0, 1, 2}));
    CHECK(IntersectionLattice::build(braid(4)).char_poly() == from_roots({0, 1, 2, 3}));
    CHECK(IntersectionLattice::build(stanley()).char_poly() == from_roots({1, 3, 3}));
    CHECK(IntersectionLattice::build(stanley_extended()).char_poly() == from_roots({1, 2, 5}));
    for (int l : {1, 2, 3, 4})
        CHECK(IntersectionLattice::build(boolean_arr(l)).char_poly() ==
              from_roots(std::vector<long>(l, 1)));
}

TEST_CASE("poincare polynomial, chambers, F_q counts") {
    IntersectionLattice lat = IntersectionLattice::build(braid(3));
    UPoly expect = UPoly(std::vector<Rat>{Rat(1), Rat(1)}) * UPoly(std::vector<Rat>{Rat(1), Rat(2)});
    CHECK(lat.poincare_poly() == expect);
    CHECK(lat.chamber_count() == Int(6));
    CHECK(fq_count_formula(braid(3), 5) == Int(60));
    CHECK(fq_count_enumerate(braid(3), 5) == Int(60));
    SUBCASE("formula mode equals enumeration mode within the budget") {
        for (long q : {2, 3, 5, 7}) {
            CHECK(fq_count_formula(boolean_arr(2), q) == fq_count_enumerate(boolean_arr(2), q));
            CHECK(fq_count_formula(braid(3), q) == fq_count_enumerate(braid(3), q));
        }
    }
    SUBCASE("enumeration rejects oversized inputs") {
        CHECK_THROWS(fq_count_enumerate(braid(3), 5, 100));
        CHECK_THROWS(fq_count_enumerate(braid(3), 4)); // not prime
    }
}

TEST_CASE("(t-1) divides chi of every central arrangement in the corpus") {
    for (const Multiarrangement& a :
         {braid(3), braid(4), stanley(), stanley_extended(), catalan(2), catalan(3)}) {
        UPoly chi = IntersectionLattice::build(a).char_poly();
        auto [q, r] = chi.divmod(UPoly(std::vector<Rat>{Rat(-1), Rat(1)}));
        CHECK(r.is_zero());
    }
}

TEST_CASE("deletion-restriction identity") {
    for (const Multiarrangement& a : {braid(3), braid(4), stanley()}) {
        for (int h = 0; h < a.size(); ++h) {
            std::vector<std::vector<long>> cov;
            for (int i = 0; i < a.size(); ++i)
                if (i != h) cov.push_back(a.hyperplane(i).coords);
            Multiarrangement deleted = Multiarrangement::make(a.dim(), cov);
            Multiarrangement restricted = ziegler_restrict(a, h).ambient.with_constant_mult(1);
            UPoly chi = IntersectionLattice::build(a).char_poly();
            UPoly chi_del = IntersectionLattice::build(deleted).char_poly();
            UPoly chi_res = IntersectionLattice::build(restricted).char_poly();
            CHECK(chi == chi_del - chi_res);
        }
    }
}

TEST_CASE("Moebius recursion agrees with zeta-matrix inversion") {
    for (const Multiarrangement& a : {braid(3), boolean_arr(3), stanley(), catalan(2)}) {
        IntersectionLattice lat = IntersectionLattice::build(a);
        std::vector<long> rec;
        for (const auto& level : lat.all())
            for (const Flat& f : level) rec.push_back(f.moebius);
        CHECK(rec == lat.moebius_by_zeta_inversion());
    }
}

TEST_CASE("sign-vector chamber oracle validates Zaslavsky evaluation") {
    CHECK(chamber_count_sign_vectors(boolean_arr(2)) == Int(4));
    CHECK(chamber_count_sign_vectors(braid(3)) == Int(6));
    CHECK(chamber_count_sign_vectors(braid(3)) == IntersectionLattice::build(braid(3)).chamber_count());
    Multiarrangement generic = Multiarrangement::make(2, {{1, 0}, {0, 1}, {1, 1}, {1, -1}});
    CHECK(chamber_count_sign_vectors(generic) ==
          IntersectionLattice::build(generic).chamber_count());
    CHECK(chamber_count_sign_vectors(stanley()) ==
          IntersectionLattice::build(stanley()).chamber_count());
}

TEST_CASE("planar point data L_2") {
    SUBCASE("rank-2 input is rejected; its decone would be all-parallel lines") {
        // braid(3) has rank 2: deconed at any hyperplane the other two lines
        // share the direction of the center and never meet.
        CHECK_THROWS(l2_points(braid(3), 0));
    }
    SUBCASE("parallel lines are skipped, not an error") {
        // extended Stanley deconed at H_0 has exactly one parallel pair
        // (H_1 and K), so 6 points instead of 7.
        auto pts = l2_points(stanley_extended(), 0);
        CHECK(pts.size() == 6);
        int five_fold = 0;
        for (const auto& p : pts)
            if (p.mu == 5) ++five_fold;
        CHECK(five_fold == 1); // K passes through the quintuple point
    }
    SUBCASE("three generic lines: three simple points") {
        Multiarrangement a = Multiarrangement::make(3, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}, {1, 1, -1}});
        auto pts = l2_points(a, 0);
        CHECK(pts.size() == 3);
        for (const auto& p : pts) CHECK(p.mu == 1);
    }
    SUBCASE("stanley decone: crossing-pair accounting") {
        auto pts = l2_points(stanley(), 0);
        long pairs = 0;
        for (const auto& p : pts) pairs += static_cast<long>(p.mu) * (p.mu + 1) / 2;
        CHECK(pairs == 15); // C(6,2), no parallel pairs among the six lines
        CHECK(pts.size() == 6);
    }
}
