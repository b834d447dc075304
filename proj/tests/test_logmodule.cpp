#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include "arrkit/logmodule.hpp"

using namespace arrkit;

namespace {

MPoly var(int n, int i) { return MPoly::variable(n, i); }

} // namespace

TEST_CASE("graded pieces of D(A, m)") {
    SUBCASE("braid(3) degree 0 is spanned by d1 + d2 + d3") {
        auto basis = d_graded_piece(braid(3), 0);
        REQUIRE(basis.size() == 1);
        Derivation d0 = Derivation::power(3, 0);
        bool proportional = false;
        for (const Rat& c : {Rat(1), Rat(-1)})
            if (basis[0] == d0 * c) proportional = true;
        CHECK(proportional);
    }
    SUBCASE("theta_E is logarithmic for every simple arrangement") {
        for (const Multiarrangement& a : {braid(3), braid(4), stanley(), catalan(2)})
            CHECK(in_derivation_module(a, Derivation::euler(a.dim())));
    }
    SUBCASE("A = {x} with m = 3 in C^2: degree 0 is spanned by d_y") {
        Multiarrangement a = Multiarrangement::make(2, {{1, 0}}, {3});
        auto basis = d_graded_piece(a, 0);
        REQUIRE(basis.size() == 1);
        CHECK(basis[0].coeffs[0].is_zero());
        CHECK_FALSE(basis[0].coeffs[1].is_zero());
    }
}

TEST_CASE("graded pieces of Omega^p(A, m)") {
    SUBCASE("Omega^0 = S") {
        Multiarrangement a = braid(3);
        for (int d = 0; d <= 4; ++d)
            CHECK(omega_graded_dim(a, 0, d) == monomial_count(3, d));
        CHECK(omega_graded_dim(a, 0, -1) == 0);
    }
    SUBCASE("one variable: Omega^1 = S dx/x, dims shifted by -1") {
        Multiarrangement a = Multiarrangement::make(1, {{1}});
        for (int d = -1; d <= 3; ++d) CHECK(omega_graded_dim(a, 1, d) == 1);
        CHECK(omega_graded_dim(a, 1, -2) == 0);
    }
    SUBCASE("braid(3) Omega^1 dims mirror the D(A) exponents") {
        // Free with exponents (0,1,2); the Omega^1 numerator is the
        // reflection x^{-0} + x^{-1} + x^{-2} (computed and frozen).
        Multiarrangement a = braid(3);
        std::map<int, long> dims = {{-3, 0}, {-2, 1}, {-1, 4}, {0, 10}, {1, 19}};
        for (const auto& [d, expect] : dims) CHECK(omega_graded_dim(a, 1, d) == expect);
    }
}

TEST_CASE("Omega^1 pairs polynomially with D and mirrors its dimensions") {
    // The natural pairing <sum g_i dx_i / Q, sum f_i d_i> = sum g_i f_i / Q
    // is polynomial for logarithmic pairs; checked on bases of low degrees.
    Multiarrangement a = braid(3);
    MPoly q = a.defining_poly();
    for (int dw = -2; dw <= 0; ++dw)
        for (int dd = 0; dd <= 2; ++dd)
            for (const LogForm& w : omega_graded_piece(a, 1, dw))
                for (const Derivation& d : d_graded_piece(a, dd)) {
                    MPoly num(3);
                    for (int i = 0; i < 3; ++i) num += w.numerators[i] * d.coeffs[i];
                    CHECK(mpoly_divides(q, num));
                }
}

TEST_CASE("theta_E lies in the degree-1 slice of D(A)") {
    for (const Multiarrangement& a : {braid(3), stanley(), catalan(2)}) {
        auto idx = [&] {
            std::map<Expo, int, GrlexGreater> ix;
            int k = 0;
            for (const Expo& e : monomials_of_degree(a.dim(), 1)) ix.emplace(e, k++);
            return ix;
        }();
        auto to_vec = [&](const Derivation& d) {
            std::vector<Rat> v(a.dim() * idx.size(), Rat(0));
            for (int i = 0; i < a.dim(); ++i)
                for (const auto& [e, c] : d.coeffs[i].terms())
                    v[i * idx.size() + idx.at(e)] = c;
            return v;
        };
        std::vector<std::vector<Rat>> vecs;
        for (const Derivation& b : d_graded_piece(a, 1)) vecs.push_back(to_vec(b));
        int r = rank_of(vecs, static_cast<int>(a.dim() * idx.size()));
        vecs.push_back(to_vec(Derivation::euler(a.dim())));
        CHECK(rank_of(vecs, static_cast<int>(a.dim() * idx.size())) == r);
    }
}

TEST_CASE("Free verdicts satisfy the free graded-dimension law") {
    FreenessVerdict v = freeness_test(stanley_extended());
    REQUIRE(v.is_free());
    for (int d = 0; d <= 6; ++d) {
        long expect = 0;
        for (int e : v.exponents) expect += monomial_count(3, d - e);
        CHECK(d_graded_dim(stanley_extended(), d) == expect);
    }
}

TEST_CASE("Saito's criterion") {
    SUBCASE("braid(3) with the power fields") {
        std::vector<Derivation> cand;
        for (int p = 0; p < 3; ++p) cand.push_back(Derivation::power(3, p));
        auto res = saito_check(braid(3), cand);
        REQUIRE(std::holds_alternative<SaitoCertificate>(res));
        const auto& cert = std::get<SaitoCertificate>(res);
        CHECK(cert.exponents == std::vector<int>{0, 1, 2});
        MPoly vdm = (var(3, 1) - var(3, 0)) * (var(3, 2) - var(3, 0)) * (var(3, 2) - var(3, 1));
        CHECK(cert.determinant == vdm);
    }
    SUBCASE("boolean(2) with x dx, y dy") {
        Derivation d1 = Derivation::zero(2), d2 = Derivation::zero(2);
        d1.coeffs[0] = var(2, 0);
        d2.coeffs[1] = var(2, 1);
        auto res = saito_check(boolean_arr(2), {d1, d2});
        REQUIRE(std::holds_alternative<SaitoCertificate>(res));
        CHECK(std::get<SaitoCertificate>(res).exponents == std::vector<int>{1, 1});
    }
    SUBCASE("a dependent set fails with a zero determinant") {
        Derivation d0 = Derivation::power(3, 0);
        Derivation d1 = Derivation::power(3, 1);
        auto res = saito_check(braid(3), {d0, d1, d0 * var(3, 0)});
        REQUIRE(std::holds_alternative<SaitoFailure>(res));
        CHECK(std::get<SaitoFailure>(res).reason.find("zero") != std::string::npos);
    }
    SUBCASE("a non-member candidate is reported distinctly") {
        Derivation bad = Derivation::zero(3);
        bad.coeffs[0] = MPoly(3, Rat(1));
        auto res = saito_check(braid(3), {Derivation::power(3, 0), Derivation::power(3, 1), bad});
        REQUIRE(std::holds_alternative<SaitoFailure>(res));
        CHECK(std::get<SaitoFailure>(res).offending_index == 2);
    }
}

TEST_CASE("minimal generators") {
    SUBCASE("braid(3): degrees {0,1,2}") {
        auto gens = minimal_generators(braid(3), 3);
        std::vector<int> degs;
        for (const auto& g : gens) degs.push_back(g.degree);
        CHECK(degs == std::vector<int>{0, 1, 2});
    }
    SUBCASE("boolean(l): degrees {1,...,1}") {
        for (int l : {2, 3}) {
            auto gens = minimal_generators(boolean_arr(l), l);
            REQUIRE(static_cast<int>(gens.size()) == l);
            for (const auto& g : gens) CHECK(g.degree == 1);
        }
    }
    SUBCASE("three lines in C^2: degrees {1,2}") {
        Multiarrangement a = Multiarrangement::make(2, {{1, 0}, {0, 1}, {1, -1}});
        auto gens = minimal_generators(a, 3);
        std::vector<int> degs;
        for (const auto& g : gens) degs.push_back(g.degree);
        CHECK(degs == std::vector<int>{1, 2});
    }
}

TEST_CASE("rank-2 exponents") {
    CHECK(rank2_exponents(boolean_arr(2)) == std::pair<int, int>(1, 1));
    CHECK(rank2_exponents(ziegler_restrict(stanley(), 0).ambient) == std::pair<int, int>(1, 5));
    SUBCASE("three generic lines with m = 2: balanced (3,3)") {
        Multiarrangement a = Multiarrangement::make(2, {{1, 0}, {0, 1}, {1, -1}}).with_constant_mult(2);
        CHECK(rank2_exponents(a) == std::pair<int, int>(3, 3));
    }
}

TEST_CASE("Euler decomposition") {
    Multiarrangement a = braid(3);
    SUBCASE("theta_E splits as (theta_E, 0)") {
        auto [e, rest] = euler_decompose(a, 0, Derivation::euler(3));
        CHECK(e == Derivation::euler(3));
        CHECK(rest.is_zero());
    }
    SUBCASE("a field killing alpha splits as (0, itself)") {
        // delta = (x1-x2)^{-}... use the degree-2 complement from the basis
        Derivation d1 = Derivation::power(3, 1);
        auto [e, rest] = euler_decompose(a, 0, d1);
        // resummation restores the input
        CHECK((e + rest) == d1);
        CHECK(rest.apply_linear(a.hyperplane(0)).is_zero());
        auto [e2, rest2] = euler_decompose(a, 0, rest);
        CHECK(e2.is_zero());
        CHECK(rest2 == rest);
    }
    SUBCASE("dims: D_d = (S theta_E)_d + (D_0^H)_d, Lemma-zie splitting") {
        for (const Multiarrangement& arr : {braid(3), stanley()})
            for (int d = 0; d <= 4; ++d) {
                long full = d_graded_dim(arr, d);
                long kill = static_cast<long>(d_graded_piece(arr, d, 0).size());
                CHECK(full == monomial_count(arr.dim(), d - 1) + kill);
            }
    }
}

TEST_CASE("Ziegler cokernel") {
    SUBCASE("stanley at H_0: dimension 4 = 9 - 5") {
        ZieglerCokerReport rep = ziegler_coker_dim(stanley(), 0);
        CHECK(rep.coker_dim == 4);
        CHECK(rep.b3 == 9);
        CHECK(rep.restriction_exponents == std::pair<int, int>(1, 5));
    }
    SUBCASE("free rank-3 arrangements have surjective restriction") {
        CHECK(ziegler_coker_dim(stanley_extended(), 0).coker_dim == 0);
        CHECK(ziegler_coker_dim(braid(4), 0).coker_dim == 0);
    }
}

TEST_CASE("freeness verdicts") {
    SUBCASE("stanley: NotFree via restriction exponents") {
        FreenessVerdict v = freeness_test(stanley());
        CHECK(v.kind == FreenessVerdict::Kind::NotFree);
        CHECK(v.witness.find("(1,5)") != std::string::npos);
        CHECK(v.witness.find("(3,3)") != std::string::npos);
    }
    SUBCASE("extended stanley: Free (1,2,5) with certificate") {
        FreenessVerdict v = freeness_test(stanley_extended());
        REQUIRE(v.is_free());
        CHECK(v.exponents == std::vector<int>{1, 2, 5});
        REQUIRE(v.certificate.has_value());
        CHECK(v.certificate->exponents == v.exponents);
    }
    SUBCASE("braid(4): Free (0,1,2,3)") {
        FreenessVerdict v = freeness_test(braid(4));
        REQUIRE(v.is_free());
        CHECK(v.exponents == std::vector<int>{0, 1, 2, 3});
    }
    SUBCASE("multiarrangement via Saito search") {
        FreenessVerdict v = freeness_test(boolean_arr(2).with_mult({2, 2}));
        REQUIRE(v.is_free());
        CHECK(v.exponents == std::vector<int>{2, 2});
    }
    SUBCASE("braid(5): rank-4 path through the restriction criterion") {
        FreenessVerdict v = freeness_test(braid(5));
        REQUIRE(v.is_free());
        CHECK(v.exponents == std::vector<int>{0, 1, 2, 3, 4});
        CHECK(v.method == "thmchar");
    }
    SUBCASE("zero-multiplicity hyperplanes are carried but ignored") {
        FreenessVerdict v = freeness_test(delete_one(stanley(), 0));
        REQUIRE(v.is_free());
        CHECK(v.exponents == std::vector<int>{1, 1, 4});
    }
    SUBCASE("generic rank-4: NotFree via the factorization filter") {
        Multiarrangement g = Multiarrangement::make(
            4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 1, 1}});
        FreenessVerdict v = freeness_test(g);
        CHECK(v.kind == FreenessVerdict::Kind::NotFree);
        CHECK(v.witness.find("does not factor") != std::string::npos);
    }
    SUBCASE("inconclusive multiarrangement search is an honest Unknown") {
        Multiarrangement g =
            Multiarrangement::make(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}})
                .with_constant_mult(2);
        FreenessVerdict v = freeness_test(g);
        CHECK(v.kind == FreenessVerdict::Kind::Unknown);
        CHECK_FALSE(v.reason.empty());
    }
}

TEST_CASE("addition-deletion") {
    SUBCASE("boolean l=2 with m=(2,1)") {
        Multiarrangement a = boolean_arr(2).with_mult({2, 1});
        AddelRecord rec = addition_deletion(a, 0);
        REQUIRE(rec.exp_full.has_value());
        REQUIRE(rec.exp_deleted.has_value());
        REQUIRE(rec.exp_restricted.has_value());
        CHECK(*rec.exp_full == std::vector<int>{1, 2});
        CHECK(*rec.exp_deleted == std::vector<int>{1, 1});
        CHECK(*rec.exp_restricted == std::vector<int>{1});
        CHECK(rec.all_consistent);
    }
    SUBCASE("m* of the rank-2 localization is the lesser exponent here") {
        Multiarrangement a = boolean_arr(2).with_mult({2, 1});
        CHECK(m_star(a, 0, {0, 1}) == 1);
    }
    SUBCASE("an inconsistent fabricated triple throws") {
        CHECK_THROWS_AS(check_addel_triple({1, 2}, {1, 1}, {2}), std::domain_error);
        CHECK_THROWS_AS(check_addel_triple({1, 3}, {1, 1}, {1}), std::domain_error);
        CHECK_NOTHROW(check_addel_triple({1, 2}, {1, 1}, {1}));
    }
    SUBCASE("catalan(2) chain endpoint") {
        Multiarrangement cat2 = catalan(2);
        std::vector<int> m(cat2.size(), 0);
        m[0] = 1;
        std::vector<int> exps;
        for (int h = 1; h < cat2.size(); ++h) {
            m[h] = 1;
            AddelRecord rec = addition_deletion(cat2.with_mult(m), h);
            REQUIRE(rec.exp_full.has_value());
            exps = *rec.exp_full;
        }
        CHECK(exps == std::vector<int>{0, 1, 3});
    }
}

TEST_CASE("exponent fitting matches certified routes") {
    CHECK(*exponents_by_fitting(braid(3)) == std::vector<int>({0, 1, 2}));
    CHECK(*exponents_by_fitting(boolean_arr(2).with_mult({2, 2})) == std::vector<int>({2, 2}));
    CHECK(*exponents_by_fitting(catalan(2)) == std::vector<int>({0, 1, 3}));
}

TEST_CASE("JSON certificates re-verify after parsing") {
    FreenessVerdict v = freeness_test(braid(3));
    REQUIRE(v.certificate.has_value());
    auto j = nlohmann::json::parse(v.certificate->to_json());
    std::vector<Derivation> parsed;
    for (const auto& row : j["basis"]) {
        Derivation d = Derivation::zero(3);
        for (int i = 0; i < 3; ++i) d.coeffs[i] = mpoly_from_string(row[i].get<std::string>(), 3);
        parsed.push_back(std::move(d));
    }
    auto res = saito_check(braid(3), parsed);
    REQUIRE(std::holds_alternative<SaitoCertificate>(res));
    CHECK(std::get<SaitoCertificate>(res).determinant ==
          mpoly_from_string(j["determinant"].get<std::string>(), 3));
    CHECK(rat_to_string(std::get<SaitoCertificate>(res).scalar) == j["scalar"].get<std::string>());
}
