// arrkit: exact-arithmetic computations on hyperplane multiarrangements.

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "arrkit/catalan.hpp"
#include "arrkit/corpus.hpp"
#include "arrkit/coxeter.hpp"
#include "arrkit/curves.hpp"
#include "arrkit/solomonterao.hpp"

using namespace arrkit;
using nlohmann::json;

namespace {

struct RunConfig {
    bool json_out = false;
    long enum_budget = 1 << 21;
    std::optional<int> max_degree; // ARRKIT_MAX_DEGREE or --max-degree
};

std::vector<long> int_coeffs(const UPoly& p) {
    std::vector<long> v;
    for (int k = 0; k <= p.degree(); ++k) v.push_back(rat_to_long(p.coeff(k)));
    return v;
}

json lattice_json(const Multiarrangement& a) {
    return json::parse(IntersectionLattice::build(a).report_json());
}

void emit(const RunConfig& cfg, const json& j, const std::string& text) {
    if (cfg.json_out)
        std::cout << j.dump() << "\n";
    else
        std::cout << text;
}

int cmd_info(const RunConfig& cfg, const Multiarrangement& a) {
    json j;
    j["dim"] = a.dim();
    j["hyperplanes"] = a.size();
    j["m_total"] = a.mult_total();
    j["rank"] = a.rank();
    j["simple"] = a.is_simple();
    std::ostringstream os;
    os << a.to_string() << "rank " << a.rank() << (a.is_simple() ? ", simple" : ", multi") << "\n";
    emit(cfg, j, os.str());
    return 0;
}

int cmd_charpoly(const RunConfig& cfg, const Multiarrangement& a) {
    // JSON mode carries the whole lattice report (flats by codimension, the
    // Moebius table and the chi coefficients as integers).
    json j = lattice_json(a);
    UPoly chi = IntersectionLattice::build(a).char_poly();
    emit(cfg, j, chi.to_string() + "\n");
    return 0;
}

int cmd_poincare(const RunConfig& cfg, const Multiarrangement& a) {
    UPoly pi = IntersectionLattice::build(a).poincare_poly();
    json j;
    j["poincare"] = int_coeffs(pi);
    emit(cfg, j, pi.to_string() + "\n");
    return 0;
}

int cmd_chambers(const RunConfig& cfg, const Multiarrangement& a) {
    Int n = IntersectionLattice::build(a).chamber_count();
    json j;
    j["chambers"] = n.get_str();
    emit(cfg, j, n.get_str() + "\n");
    return 0;
}

int cmd_fqcount(const RunConfig& cfg, const Multiarrangement& a, long q, bool enumerate) {
    json j;
    std::ostringstream os;
    Int formula = fq_count_formula(a, q);
    j["q"] = q;
    j["formula"] = formula.get_str();
    os << "chi(" << q << ") = " << formula.get_str() << "\n";
    if (enumerate) {
        Int brute = fq_count_enumerate(a, q, cfg.enum_budget);
        j["enumeration"] = brute.get_str();
        j["agree"] = (brute == formula);
        os << "enumeration over F_" << q << "^" << a.dim() << " = " << brute.get_str()
           << (brute == formula ? " (agree)" : " (DISAGREE)") << "\n";
    }
    emit(cfg, j, os.str());
    return 0;
}

int cmd_hilbert(const RunConfig& cfg, const Multiarrangement& a, const std::string& module) {
    const int l = a.dim();
    int dmin = 0;
    std::function<long(int)> fn;
    if (module == "D") {
        fn = [&a](int d) { return d_graded_dim(a, d); };
    } else if (module.rfind("omega", 0) == 0) {
        int p = std::stoi(module.substr(5));
        if (p < 0 || p > l) throw std::invalid_argument("hilbert: omega index out of range");
        dmin = -static_cast<int>(a.mult_total());
        fn = [&a, p](int d) { return omega_graded_dim(a, p, d); };
    } else {
        throw std::invalid_argument("hilbert: unknown module '" + module + "'");
    }
    int cutoff = cfg.max_degree.value_or(static_cast<int>(a.mult_total()) + l + 3);
    GradedDims dims;
    json j;
    j["module"] = module;
    std::ostringstream os;
    try {
        HilbertRational h = fit_module_series(fn, l, dmin, cutoff, 3, &dims);
        json num = json::array();
        for (const auto& [deg, c] : h.numerator) num.push_back({deg, rat_to_string(c)});
        j["numerator"] = num;
        j["denominator_power"] = h.denom_pow;
        os << "H = " << h.to_string() << "\n";
    } catch (const std::runtime_error& e) {
        j["error"] = e.what();
        os << e.what() << "\n";
        json dd = json::array();
        for (const auto& [deg, v] : dims.dims) dd.push_back({deg, v});
        j["dims"] = dd;
        emit(cfg, j, os.str());
        return 1;
    }
    json dd = json::array();
    os << "dims:";
    for (const auto& [deg, v] : dims.dims) {
        dd.push_back({deg, v});
        os << " " << deg << ":" << v;
    }
    os << "\n";
    j["dims"] = dd;
    emit(cfg, j, os.str());
    return 0;
}

int cmd_saito(const RunConfig& cfg, const Multiarrangement& a) {
    int cutoff = cfg.max_degree.value_or(static_cast<int>(a.mult_total()));
    auto gens = minimal_generators(a, cutoff);
    json j;
    std::ostringstream os;
    if (static_cast<int>(gens.size()) != a.dim()) {
        j["verdict"] = "unknown";
        j["reason"] = "generator search found " + std::to_string(gens.size()) +
                      " generators up to degree " + std::to_string(cutoff);
        os << "no basis found up to degree " << cutoff << "\n";
        emit(cfg, j, os.str());
        return 1;
    }
    std::vector<Derivation> cand;
    for (const auto& g : gens) cand.push_back(g.rep);
    auto res = saito_check(a, cand);
    if (std::holds_alternative<SaitoFailure>(res)) {
        j["verdict"] = "failure";
        j["reason"] = std::get<SaitoFailure>(res).reason;
        os << "Saito check failed: " << std::get<SaitoFailure>(res).reason << "\n";
        emit(cfg, j, os.str());
        return 1;
    }
    const auto& cert = std::get<SaitoCertificate>(res);
    j = json::parse(cert.to_json());
    os << "free, exponents (";
    for (std::size_t i = 0; i < cert.exponents.size(); ++i)
        os << (i ? "," : "") << cert.exponents[i];
    os << "), det = " << cert.determinant.to_string() << " = " << rat_to_string(cert.scalar)
       << " * Q(A,m)\n";
    for (const Derivation& b : cert.basis) os << "  " << b.to_string() << "\n";
    emit(cfg, j, os.str());
    return 0;
}

int cmd_freeness(const RunConfig& cfg, const Multiarrangement& a) {
    FreenessVerdict v = freeness_test(a);
    json j = json::parse(v.to_json());
    std::ostringstream os;
    switch (v.kind) {
        case FreenessVerdict::Kind::Free: {
            os << "free, exponents (";
            for (std::size_t i = 0; i < v.exponents.size(); ++i)
                os << (i ? "," : "") << v.exponents[i];
            os << ") via " << v.method << "\n";
            break;
        }
        case FreenessVerdict::Kind::NotFree:
            os << "not free: " << v.witness << "\n";
            break;
        case FreenessVerdict::Kind::Unknown:
            os << "unknown: " << v.reason << "\n";
            break;
    }
    emit(cfg, j, os.str());
    return 0;
}

int cmd_restrict(const RunConfig& cfg, const Multiarrangement& a, int pivot) {
    RestrictionResult rr =
        a.is_simple() ? ziegler_restrict(a, pivot) : plain_restrict(a, pivot);
    json j;
    j["arr"] = format_arr(rr.ambient);
    j["m_total"] = rr.ambient.mult_total();
    std::ostringstream os;
    os << format_arr(rr.ambient);
    if (rr.ambient.rank() == 2) {
        auto [e1, e2] = rank2_exponents(rr.ambient);
        j["exponents"] = {e1, e2};
        os << "exponents (" << e1 << "," << e2 << ")\n";
    }
    emit(cfg, j, os.str());
    return 0;
}

int cmd_addel(const RunConfig& cfg, const Multiarrangement& a, int pivot) {
    AddelRecord rec = addition_deletion(a, pivot);
    json j;
    auto put = [&](const char* key, const std::optional<std::vector<int>>& e, bool inferred) {
        if (e) {
            j[key] = *e;
            j[std::string(key) + "_inferred"] = inferred;
        }
    };
    put("full", rec.exp_full, rec.inferred_full);
    put("deleted", rec.exp_deleted, rec.inferred_deleted);
    put("restricted", rec.exp_restricted, rec.inferred_restricted);
    j["used_pair"] = rec.used_pair;
    std::ostringstream os;
    auto show = [&](const char* name, const std::optional<std::vector<int>>& e, bool inf) {
        os << name << ": ";
        if (!e) {
            os << "unresolved\n";
            return;
        }
        os << "(";
        for (std::size_t i = 0; i < e->size(); ++i) os << (i ? "," : "") << (*e)[i];
        os << ")" << (inf ? " [inferred]" : "") << "\n";
    };
    show("(A, m)   ", rec.exp_full, rec.inferred_full);
    show("(A', m') ", rec.exp_deleted, rec.inferred_deleted);
    show("(A'', m*)", rec.exp_restricted, rec.inferred_restricted);
    int have = int(rec.exp_full.has_value()) + int(rec.exp_deleted.has_value()) +
               int(rec.exp_restricted.has_value());
    if (have < 2) {
        os << "fewer than two of the three were resolvable\n";
        emit(cfg, j, os.str());
        return 1;
    }
    emit(cfg, j, os.str());
    return 0;
}

int cmd_solomon_terao(const RunConfig& cfg, const Multiarrangement& a) {
    std::string js = solomon_terao_json(a);
    if (cfg.json_out) {
        std::cout << js << "\n";
        return 0;
    }
    SolomonTeraoResult r = solomon_terao_chi(a);
    std::cout << "chi = " << r.chi.to_string() << "\n";
    for (std::size_t p = 0; p < r.series.size(); ++p)
        std::cout << "H(Omega^" << p << ") = " << r.series[p].to_string() << "\n";
    if (a.is_simple()) {
        bool agree = (r.chi == IntersectionLattice::build(a).char_poly());
        std::cout << (agree ? "agrees with the lattice chi" : "DISAGREES with the lattice chi")
                  << "\n";
        if (!agree) return 1;
    }
    return 0;
}

int cmd_chern(const RunConfig& cfg, const Multiarrangement& a) {
    ChernReport rep = chern_check(a);
    json j = json::parse(rep.to_json());
    std::ostringstream os;
    os << "c_t = 1 + (" << rat_to_string(rep.c1) << ")t + (" << rat_to_string(rep.c2)
       << ")t^2, expected from chi_0: 1 + (" << rat_to_string(rep.expected[1]) << ")t + ("
       << rat_to_string(rep.expected[2]) << ")t^2 -> " << (rep.pass ? "match" : "MISMATCH")
       << "\n";
    emit(cfg, j, os.str());
    return rep.pass ? 0 : 1;
}

int cmd_coxeter(const RunConfig& cfg, int rank, int mult, int window) {
    CoxeterData cox = CoxeterData::make_typeA(rank);
    json j;
    j["rank"] = rank;
    j["coxeter_number"] = cox.coxeter_number();
    json inv = json::array();
    for (const MPoly& p : cox.invariants()) inv.push_back(p.to_string());
    j["invariants"] = inv;
    j["delta_scalar"] = rat_to_string(cox.delta_scalar());
    std::ostringstream os;
    os << "A_" << rank << ", h = " << cox.coxeter_number() << "\n";
    for (std::size_t i = 0; i < cox.invariants().size(); ++i)
        os << "P_" << (i + 1) << " = " << cox.invariants()[i].to_string() << "\n";
    os << "Delta = " << rat_to_string(cox.delta_scalar()) << " * prod(alpha_H)\n";
    if (mult > 0) {
        // Basis certificate for D(A, m): psi_k images for m >= 2, the plain
        // generator search for m = 1.
        std::vector<Derivation> basis;
        if (mult == 1) {
            for (const auto& g : minimal_generators(cox.arrangement(), rank)) basis.push_back(g.rep);
        } else {
            basis = cox.psi_basis(mult / 2, mult % 2);
        }
        auto chk = saito_check(cox.arrangement().with_constant_mult(mult), basis);
        if (std::holds_alternative<SaitoFailure>(chk))
            throw std::runtime_error("coxeter: Saito check failed: " +
                                     std::get<SaitoFailure>(chk).reason);
        const auto& cert = std::get<SaitoCertificate>(chk);
        j["certificate"] = json::parse(cert.to_json());
        os << "D(A," << mult << ") free, exponents:";
        for (int e : cert.exponents) os << " " << e;
        os << "\n";
        auto fit = exponents_by_fitting(cox.arrangement().with_constant_mult(mult));
        if (fit) {
            j["exponents_by_fitting"] = *fit;
            os << "graded-dimension fit agrees: " << (*fit == cert.exponents ? "yes" : "NO") << "\n";
        }
        if (mult % 2 == 1 && window > 0) {
            InvariantBasis ib = invariant_module(cox, mult, window);
            json gens = json::array();
            os << "D(A," << mult << ")^W generator degrees:";
            for (const auto& g : ib.generators) {
                json gj;
                gj["degree"] = g.degree;
                json cs = json::array();
                for (const MPoly& cpoly : g.rep.coeffs) cs.push_back(cpoly.to_string());
                gj["coeffs"] = cs;
                gens.push_back(gj);
                os << " " << g.degree;
            }
            os << " (window 0.." << window << ")\n";
            j["invariant_generators"] = gens;
            j["window"] = window;
        }
    }
    emit(cfg, j, os.str());
    return 0;
}

int cmd_catalan(const RunConfig& cfg, int n, bool allow_large) {
    CatalanCertificate cert = catalan_basis(n, allow_large);
    json j = json::parse(cert.to_json());
    std::ostringstream os;
    os << "Cat_" << n << " free, exponents (";
    for (std::size_t i = 0; i < cert.saito.exponents.size(); ++i)
        os << (i ? "," : "") << cert.saito.exponents[i];
    os << "), Saito scalar " << rat_to_string(cert.saito.scalar) << "\n";
    for (const Derivation& e : cert.eta_tilde) os << "  " << e.to_string() << "\n";
    emit(cfg, j, os.str());
    return 0;
}

int cmd_curves(const RunConfig& cfg, const Multiarrangement& a, int pivot, bool refute,
               std::optional<std::pair<long, long>> alpha) {
    json j;
    std::ostringstream os;
    if (refute) {
        RefutationReport rep = curves_refute(a, pivot);
        j["hypothetical_exponents"] = rep.hypothetical_exponents;
        j["line"] = rep.line;
        j["points_on_line"] = rep.points_on_line;
        j["refuted"] = rep.refuted;
        j["detail"] = rep.detail;
        os << rep.detail << "\n";
        emit(cfg, j, os.str());
        return 0;
    }
    FreenessVerdict v = freeness_test(a);
    if (!v.is_free() || !v.certificate)
        throw std::runtime_error("curves: arrangement is not certified free (try --refute)");
    CurvePair pair = curve_pair(a, *v.certificate, pivot, alpha);
    BezoutReport rep = bezout_report(pair);
    j = json::parse(pair.to_json());
    j["sum_matches"] = rep.sum_matches;
    j["mult_equals_mu"] = rep.mult_equals_mu;
    j["zero_set_is_l2"] = rep.zero_set_is_l2;
    os << "C1 = " << pair.c1.to_string() << " (deg " << pair.e1 << ")\n";
    os << "C2 = " << pair.c2.to_string() << " (deg " << pair.e2 << ")\n";
    for (std::size_t i = 0; i < pair.points.size(); ++i)
        os << "  p=(" << rat_to_string(pair.points[i].x) << "," << rat_to_string(pair.points[i].y)
           << ") mu=" << pair.points[i].mu << " mult=" << pair.mult[i] << "\n";
    os << "sum mult = " << rep.bezout_sum << " (e1*e2 = " << pair.e1 * pair.e2 << ")"
       << (rep.sum_matches && rep.mult_equals_mu && rep.zero_set_is_l2 ? "" : " PROBLEM: " + rep.detail)
       << "\n";
    emit(cfg, j, os.str());
    return rep.sum_matches && rep.mult_equals_mu && rep.zero_set_is_l2 ? 0 : 1;
}

int cmd_corpus(const RunConfig& cfg) {
    bool all_pass = true;
    json results = json::array();
    corpus::run_all([&](const corpus::CheckResult& r) {
        all_pass = all_pass && r.pass;
        if (cfg.json_out) {
            results.push_back({{"name", r.name},
                               {"pass", r.pass},
                               {"seconds", r.seconds},
                               {"detail", r.detail}});
        } else {
            std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  ["
                      << static_cast<long>(r.seconds * 1000) / 1000.0 << "s]";
            if (!r.pass) std::cout << "  " << r.detail;
            std::cout << std::endl;
        }
    });
    if (cfg.json_out) std::cout << results.dump() << "\n";
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"arrkit: exact invariants of hyperplane multiarrangements"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_flag("--json", cfg.json_out, "machine-readable JSON output");
    if (const char* env = std::getenv("ARRKIT_MAX_DEGREE")) cfg.max_degree = std::atoi(env);

    std::string file, module = "D";
    long q = 5;
    bool enumerate = false, refute = false;
    int pivot = 0, rank = 2, mult = 0, window = 0, cat_n = 2;
    int max_degree_flag = -1;
    std::string alpha_str;
    std::string verify_token;

    auto add_file = [&](CLI::App* sub) {
        sub->add_option("file", file, ".arr input file")->required()->check(CLI::ExistingFile);
    };
    auto* s_info = app.add_subcommand("info", "arrangement summary");
    add_file(s_info);
    auto* s_char = app.add_subcommand("charpoly", "characteristic polynomial chi(A,t)");
    add_file(s_char);
    auto* s_poin = app.add_subcommand("poincare", "Poincare polynomial of the complement");
    add_file(s_poin);
    auto* s_cham = app.add_subcommand("chambers", "number of chambers |chi(-1)|");
    add_file(s_cham);
    auto* s_fq = app.add_subcommand("fqcount", "points of the complement over F_q");
    add_file(s_fq);
    s_fq->add_option("--q", q, "prime (power) to count over")->required();
    s_fq->add_flag("--enumerate", enumerate, "also brute-force enumerate F_q^l");
    s_fq->add_option("--budget", cfg.enum_budget, "enumeration budget for q^l");
    auto* s_hil = app.add_subcommand("hilbert", "graded dimensions and fitted Hilbert series");
    add_file(s_hil);
    s_hil->add_option("--module", module, "D (default) or omega<p>");
    s_hil->add_option("--max-degree", max_degree_flag, "degree cutoff override");
    auto* s_sai = app.add_subcommand("saito", "search a basis and run Saito's criterion");
    add_file(s_sai);
    auto* s_free = app.add_subcommand("freeness", "freeness test with certificate or witness");
    add_file(s_free);
    auto* s_rest = app.add_subcommand("restrict", "Ziegler restriction to a hyperplane");
    add_file(s_rest);
    s_rest->add_option("--pivot", pivot, "hyperplane index")->required();
    auto* s_addel = app.add_subcommand("addel", "Addition-Deletion exponents at a hyperplane");
    add_file(s_addel);
    s_addel->add_option("--pivot", pivot, "hyperplane index H0")->required();
    auto* s_st = app.add_subcommand("solomon-terao", "chi via the Solomon-Terao limit");
    add_file(s_st);
    auto* s_chern = app.add_subcommand("chern", "rank-3 Chern polynomial check");
    add_file(s_chern);
    auto* s_cox = app.add_subcommand("coxeter", "type-A Coxeter invariants and modules");
    s_cox->add_option("--rank", rank, "rank l of A_l")->required();
    s_cox->add_option("--mult", mult, "constant multiplicity to analyze");
    s_cox->add_option("--window", window, "degree window for invariant generators");
    auto* s_cat = app.add_subcommand("catalan", "Catalan arrangement basis certificate");
    s_cat->add_option("--n", cat_n, "number of x coordinates")->required();
    s_cat->add_option("action", verify_token, "optional 'verify' (the default action)");
    bool allow_large = false;
    s_cat->add_flag("--allow-large", allow_large, "permit n > 3 (slow; prints a warning)");
    auto* s_cur = app.add_subcommand("curves", "plane curves through L_2 with multiplicities");
    add_file(s_cur);
    s_cur->add_option("--pivot", pivot, "hyperplane to decone at")->required();
    s_cur->add_flag("--refute", refute, "run the Bezout refutation instead");
    s_cur->add_option("--alpha", alpha_str, "direction a1,a2 for the auxiliary form");
    auto* s_corp = app.add_subcommand("corpus", "run the bundled verification corpus");
    (void)s_corp;

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (max_degree_flag >= 0) cfg.max_degree = max_degree_flag;
    if (!verify_token.empty() && verify_token != "verify") {
        std::cerr << "unknown catalan action '" << verify_token << "'\n";
        return 2;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "corpus") return cmd_corpus(cfg);
        if (name == "coxeter") return cmd_coxeter(cfg, rank, mult, window);
        if (name == "catalan") {
            if (cat_n > 3 && allow_large)
                std::cerr << "warning: n = " << cat_n
                          << " is beyond the default budget; this may take a while\n";
            return cmd_catalan(cfg, cat_n, allow_large);
        }
        Multiarrangement a = parse_arr_file(file);
        if (name == "info") return cmd_info(cfg, a);
        if (name == "charpoly") return cmd_charpoly(cfg, a);
        if (name == "poincare") return cmd_poincare(cfg, a);
        if (name == "chambers") return cmd_chambers(cfg, a);
        if (name == "fqcount") return cmd_fqcount(cfg, a, q, enumerate);
        if (name == "hilbert") return cmd_hilbert(cfg, a, module);
        if (name == "saito") return cmd_saito(cfg, a);
        if (name == "freeness") return cmd_freeness(cfg, a);
        if (name == "restrict") return cmd_restrict(cfg, a, pivot);
        if (name == "addel") return cmd_addel(cfg, a, pivot);
        if (name == "solomon-terao") return cmd_solomon_terao(cfg, a);
        if (name == "chern") return cmd_chern(cfg, a);
        if (name == "curves") {
            std::optional<std::pair<long, long>> alpha;
            if (!alpha_str.empty()) {
                auto comma = alpha_str.find(',');
                if (comma == std::string::npos)
                    throw std::invalid_argument("curves: --alpha expects a1,a2");
                alpha = {std::stol(alpha_str.substr(0, comma)), std::stol(alpha_str.substr(comma + 1))};
            }
            return cmd_curves(cfg, a, pivot, refute, alpha);
        }
        std::cerr << "unknown verb '" << name << "'\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
