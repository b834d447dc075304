#include "arrkit/corpus.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "arrkit/catalan.hpp"
#include "arrkit/coxeter.hpp"
#include "arrkit/curves.hpp"
#include "arrkit/solomonterao.hpp"

namespace arrkit::corpus {

namespace {

struct Checker {
    std::ostringstream log;
    bool ok = true;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            log << what << "; ";
        }
    }
};

UPoly falling_chi(int n) {
    // t(t-1)...(t-n+1)
    UPoly p = UPoly::constant(Rat(1));
    for (int k = 0; k < n; ++k) p = p * UPoly(std::vector<Rat>{Rat(-k), Rat(1)});
    return p;
}

UPoly from_roots(const std::vector<long>& roots) {
    UPoly p = UPoly::constant(Rat(1));
    for (long r : roots) p = p * UPoly(std::vector<Rat>{Rat(-r), Rat(1)});
    return p;
}

void braid_suite(Checker& c) {
    for (int n : {3, 4}) {
        Multiarrangement a = braid(n);
        IntersectionLattice lat = IntersectionLattice::build(a);
        c.require(lat.char_poly() == falling_chi(n), "chi(braid " + std::to_string(n) + ")");
        UPoly expected_pi = UPoly::constant(Rat(1));
        for (int k = 1; k < n; ++k) expected_pi = expected_pi * UPoly(std::vector<Rat>{Rat(1), Rat(k)});
        c.require(lat.poincare_poly() == expected_pi, "poincare(braid " + std::to_string(n) + ")");
        long fact = 1;
        for (int k = 2; k <= n; ++k) fact *= k;
        c.require(lat.chamber_count() == Int(fact), "chambers(braid " + std::to_string(n) + ")");
        // Saito basis delta_0..delta_{n-1}: determinant is the Vandermonde.
        std::vector<Derivation> cand;
        for (int p = 0; p < n; ++p) cand.push_back(Derivation::power(n, p));
        auto res = saito_check(a, cand);
        c.require(std::holds_alternative<SaitoCertificate>(res),
                  "saito(braid " + std::to_string(n) + ")");
        if (std::holds_alternative<SaitoCertificate>(res)) {
            const auto& cert = std::get<SaitoCertificate>(res);
            MPoly vdm(n, Rat(1));
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    vdm = vdm * (MPoly::variable(n, j) - MPoly::variable(n, i));
            c.require(cert.determinant == vdm, "vandermonde(braid " + std::to_string(n) + ")");
            std::vector<int> exps;
            for (int p = 0; p < n; ++p) exps.push_back(p);
            c.require(cert.exponents == exps, "exponents(braid " + std::to_string(n) + ")");
        }
    }
    c.require(fq_count_formula(braid(3), 5) == Int(60), "F_5 formula count");
    c.require(fq_count_enumerate(braid(3), 5) == Int(60), "F_5 brute-force count");
    c.require(fq_count_formula(braid(4), 5) == Int(120), "F_5 formula count (n=4)");
}

void stanley_three_ways(Checker& c) {
    Multiarrangement a = stanley();
    c.require(IntersectionLattice::build(a).char_poly() == from_roots({1, 3, 3}),
              "chi(stanley) = (t-1)(t-3)^2");
    FreenessVerdict v = freeness_test(a);
    c.require(v.kind == FreenessVerdict::Kind::NotFree, "stanley not free");
    c.require(v.witness.find("(1,5)") != std::string::npos, "witness mentions (1,5)");
    ZieglerCokerReport rep = ziegler_coker_dim(a, 0);
    c.require(rep.coker_dim == 4, "coker dimension 4");
    c.require(rep.b3 == 9 && rep.predicted == 4, "b3 - e1 e2 = 9 - 5");
    c.require(rep.restriction_exponents == std::make_pair(1, 5), "restriction exponents (1,5)");
    RefutationReport ref = curves_refute(a, 0);
    c.require(ref.refuted, "Bezout refutation fires");
    c.require(ref.points_on_line == 5, "five L_2 points on one line");
    c.require(ref.hypothetical_exponents == std::vector<int>({1, 3, 3}), "hypothetical (1,3,3)");
}

void extended_stanley(Checker& c) {
    Multiarrangement a = stanley_extended();
    FreenessVerdict v = freeness_test(a);
    c.require(v.is_free(), "extended stanley free");
    c.require(v.exponents == std::vector<int>({1, 2, 5}), "exponents (1,2,5)");
    c.require(v.certificate.has_value(), "Saito certificate attached");
    if (!v.certificate) return;
    CurvePair pair = curve_pair(a, *v.certificate, 0);
    c.require(pair.e1 == 2 && pair.e2 == 5, "curve degrees (2,5)");
    BezoutReport rep = bezout_report(pair);
    c.require(rep.bezout_sum == 10, "sum of multiplicities 10");
    c.require(rep.sum_matches && rep.mult_equals_mu, "mult_p = mu(p) everywhere");
    c.require(rep.zero_set_is_l2, "common zeros = L_2");
}

void catalan_criterion(Checker& c) {
    CatalanCertificate c2 = catalan_basis(2);
    c.require(c2.saito.exponents == std::vector<int>({0, 1, 3}), "Cat_2 exponents (0,1,3)");
    CatalanCertificate c3 = catalan_basis(3);
    c.require(c3.saito.exponents == std::vector<int>({0, 1, 4, 5}), "Cat_3 exponents (0,1,4,5)");
    // determinant = scalar * Q exactly is part of the certificate; cross-check
    // the Cat_3 determinant degree and scalar.
    c.require(!is_zero(c3.saito.scalar), "Cat_3 Saito scalar nonzero");
    c.require(c3.saito.determinant == catalan(3).defining_poly() * c3.saito.scalar,
              "Cat_3 determinant = c Q");
    // Independent addition-deletion chain on Cat_2.
    Multiarrangement cat2 = catalan(2);
    std::vector<int> m(cat2.size(), 0);
    m[0] = 1;
    std::vector<int> exps{1, 0, 0};
    for (int h = 1; h < cat2.size(); ++h) {
        m[h] = 1;
        AddelRecord rec = addition_deletion(cat2.with_mult(m), h);
        c.require(rec.exp_full && rec.exp_deleted && rec.exp_restricted && rec.all_consistent,
                  "chain step " + std::to_string(h) + " resolvable and consistent");
        if (rec.exp_full) exps = *rec.exp_full;
    }
    c.require(exps == std::vector<int>({0, 1, 3}), "chain reaches (0,1,3)");
}

void coxeter_multiplicities(Checker& c) {
    struct Case {
        int rank, k, m01;
        std::vector<int> expected;
    };
    const std::vector<Case> cases = {
        {2, 1, 0, {3, 3}},    // A_2, m = 2
        {2, 1, 1, {4, 5}},    // A_2, m = 3
        {3, 1, 0, {4, 4, 4}}, // A_3, m = 2
        {3, 1, 1, {5, 6, 7}}, // A_3, m = 3
    };
    for (const Case& cs : cases) {
        CoxeterData cox = CoxeterData::make_typeA(cs.rank);
        const int mult = 2 * cs.k + cs.m01;
        std::string tag = "A_" + std::to_string(cs.rank) + " m=" + std::to_string(mult);
        auto im = cox.psi_basis(cs.k, cs.m01);
        auto chk = saito_check(cox.arrangement().with_constant_mult(mult), im);
        c.require(std::holds_alternative<SaitoCertificate>(chk), tag + " psi Saito");
        std::vector<int> psi_exps;
        if (std::holds_alternative<SaitoCertificate>(chk))
            psi_exps = std::get<SaitoCertificate>(chk).exponents;
        c.require(psi_exps == cs.expected, tag + " psi exponents");
        auto fit = exponents_by_fitting(cox.arrangement().with_constant_mult(mult));
        c.require(fit.has_value(), tag + " fitting resolves");
        if (fit) c.require(*fit == cs.expected && *fit == psi_exps, tag + " fit == psi");
    }
}

void adjqt_endpoint(Checker& c) {
    for (int rank : {2, 3}) {
        CoxeterData cox = CoxeterData::make_typeA(rank);
        const int h = cox.coxeter_number();
        const int window = rank + 2 * h + 1;
        InvariantBasis ib = invariant_module(cox, 5, window);
        std::string tag = "A_" + std::to_string(rank) + " m=5";
        c.require(static_cast<int>(ib.generators.size()) == rank,
                  tag + " has rank-many S^W generators");
        std::vector<int> degs, expect;
        for (const auto& g : ib.generators) degs.push_back(g.degree);
        for (int e = 1; e <= rank; ++e) expect.push_back(e + 2 * h);
        c.require(degs == expect, tag + " generator degrees e_i + 2h");
        Multiarrangement a3 = cox.arrangement().with_constant_mult(3);
        for (const auto& g : ib.generators) {
            Derivation img = cox.nabla_D_poly(g.rep);
            bool good = img.is_zero() || (in_derivation_module(a3, img) && cox.is_invariant(img));
            c.require(good, tag + " nabla_D lands in D(A,3)^W");
        }
    }
}

void solomon_terao_criterion(Checker& c) {
    struct Case {
        std::string name;
        Multiarrangement a;
    };
    const std::vector<Case> cases = {
        {"braid(3)", braid(3)},
        {"braid(4)", braid(4)},
        {"boolean(3)", boolean_arr(3)},
        {"stanley", stanley()},
    };
    for (const Case& cs : cases) {
        SolomonTeraoResult r = solomon_terao_chi(cs.a);
        UPoly lattice_chi = IntersectionLattice::build(cs.a).char_poly();
        c.require(r.chi == lattice_chi, "Solomon-Terao chi == lattice chi for " + cs.name);
    }
}

void chern_criterion(Checker& c) {
    ChernReport st = chern_check(stanley());
    c.require(st.pass, "chern(stanley)");
    c.require(st.c1 == Rat(-6) && st.c2 == Rat(9), "chern(stanley) = 1 - 6t + 9t^2");
    ChernReport b3 = chern_check(boolean_arr(3));
    c.require(b3.pass && b3.c1 == Rat(-2) && b3.c2 == Rat(1), "chern(boolean(3)) = (1-t)^2");
    ChernReport ext = chern_check(stanley_extended());
    c.require(ext.pass && ext.c1 == Rat(-7) && ext.c2 == Rat(10),
              "chern(extended) = (1-2t)(1-5t)");
}

void property_suites(Checker& c) {
    std::mt19937 rng(20260810);
    // Ziegler multiplicity conservation on 20 random rank-3 arrangements.
    std::uniform_int_distribution<int> coeff(-3, 3);
    int done = 0;
    while (done < 20) {
        std::vector<std::vector<long>> cov;
        std::uniform_int_distribution<int> count(3, 7);
        int n = count(rng);
        for (int i = 0; i < n; ++i) {
            std::vector<long> v(3);
            do {
                for (long& x : v) x = coeff(rng);
            } while (v[0] == 0 && v[1] == 0 && v[2] == 0);
            cov.push_back(v);
        }
        Multiarrangement a = Multiarrangement::make(3, cov);
        if (a.rank() != 3 || !a.is_simple()) continue; // duplicates merge into multiplicities
        ++done;
        for (int h = 0; h < a.size(); ++h) {
            RestrictionResult rr = ziegler_restrict(a, h);
            c.require(rr.ambient.mult_total() == a.size() - 1,
                      "Ziegler conservation on random arrangement");
        }
    }
    // Moebius recursion vs zeta inversion on the corpus lattices.
    std::vector<Multiarrangement> corpus = {braid(3),  braid(4),         boolean_arr(2),
                                            boolean_arr(3), stanley(),   stanley_extended(),
                                            catalan(2), catalan(3)};
    for (const auto& a : corpus) {
        IntersectionLattice lat = IntersectionLattice::build(a);
        std::vector<long> recursive;
        for (const auto& level : lat.all())
            for (const Flat& f : level) recursive.push_back(f.moebius);
        c.require(recursive == lat.moebius_by_zeta_inversion(), "Moebius dual route");
    }
    // Every Free verdict satisfies Terao factorization and |m| = sum e_i;
    // the library asserts both internally, so surviving these calls plus an
    // external recheck covers the criterion.
    std::vector<Multiarrangement> free_cases = {braid(3), braid(4), boolean_arr(3),
                                                stanley_extended(), catalan(2)};
    for (const auto& a : free_cases) {
        FreenessVerdict v = freeness_test(a);
        c.require(v.is_free(), "corpus free case is Free");
        long sum = 0;
        for (int e : v.exponents) sum += e;
        c.require(sum == a.mult_total(), "|m| = sum of exponents");
        UPoly prod = UPoly::constant(Rat(1));
        for (int e : v.exponents) prod = prod * UPoly(std::vector<Rat>{Rat(-e), Rat(1)});
        c.require(IntersectionLattice::build(a).char_poly() == prod, "Terao factorization");
    }
    // fpi_decompose round-trips 50 random symmetric polynomials.
    int trials = 0;
    std::uniform_int_distribution<int> nvar_pick(2, 4);
    std::uniform_int_distribution<int> deg_pick(1, 5);
    std::uniform_int_distribution<int> coef_pick(-4, 4);
    while (trials < 50) {
        int n = nvar_pick(rng);
        int deg = deg_pick(rng);
        // Random polynomial symmetrized over S_2 x S_{n-2}.
        MPoly g(n);
        for (const Expo& e : monomials_of_degree(n, deg)) {
            int cc = coef_pick(rng);
            if (cc != 0) g.add_term(e, Rat(cc));
        }
        // Symmetrize: swap x1,x2 and average; then average over permutations
        // of the tail variables.
        auto swap12 = [&](const MPoly& f) {
            std::vector<MPoly> vals;
            vals.push_back(MPoly::variable(n, 1));
            vals.push_back(MPoly::variable(n, 0));
            for (int i = 2; i < n; ++i) vals.push_back(MPoly::variable(n, i));
            return f.substitute(vals);
        };
        MPoly sym = (g + swap12(g)) * Rat(1, 2);
        if (n == 4) {
            std::vector<MPoly> vals;
            vals.push_back(MPoly::variable(n, 0));
            vals.push_back(MPoly::variable(n, 1));
            vals.push_back(MPoly::variable(n, 3));
            vals.push_back(MPoly::variable(n, 2));
            sym = (sym + sym.substitute(vals)) * Rat(1, 2);
        }
        if (sym.is_zero()) continue;
        ++trials;
        auto terms = fpi_decompose(sym);
        MPoly recon(n);
        for (const auto& t : terms) recon += t.coeff * fpi_poly(n, t.p, t.r);
        c.require(recon == sym, "fpi round-trip");
    }
}

} // namespace

std::vector<CheckResult> run_all(const std::function<void(const CheckResult&)>& on_result) {
    struct Entry {
        std::string name;
        void (*fn)(Checker&);
    };
    const std::vector<Entry> entries = {
        {"1 braid suite (chi, poincare, chambers, F_q, Saito/Vandermonde)", braid_suite},
        {"2 Stanley non-freeness three ways", stanley_three_ways},
        {"3 extended Stanley: free (1,2,5) and curve pair", extended_stanley},
        {"4 Catalan basis for n=2,3 with addition-deletion cross-check", catalan_criterion},
        {"5 Coxeter multiplicities via psi and via fitting", coxeter_multiplicities},
        {"6 invariant modules D(A,5)^W and nabla_D containment", adjqt_endpoint},
        {"7 Solomon-Terao chi == lattice chi (incl. non-free)", solomon_terao_criterion},
        {"8 Chern polynomial check at rank 3", chern_criterion},
        {"9 property suites (Ziegler, Moebius, factorization, fpi)", property_suites},
    };
    std::vector<CheckResult> results;
    for (const Entry& e : entries) {
        Checker ck;
        auto start = std::chrono::steady_clock::now();
        try {
            e.fn(ck);
        } catch (const std::exception& ex) {
            ck.ok = false;
            ck.log << "exception: " << ex.what();
        }
        auto stop = std::chrono::steady_clock::now();
        CheckResult r;
        r.name = e.name;
        r.pass = ck.ok;
        r.seconds = std::chrono::duration<double>(stop - start).count();
        r.detail = ck.log.str();
        if (on_result) on_result(r);
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace arrkit::corpus
