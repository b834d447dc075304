#include "arrkit/catalan.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "json.hpp"

namespace arrkit {

MPoly fpi_poly(int nvars, int p, int i) {
    if (nvars < 2) throw std::invalid_argument("fpi_poly: need at least two variables");
    // (x1^{p+1} - x2^{p+1})/(x1 - x2) = sum_{k=0..p} x1^k x2^{p-k}
    MPoly q(nvars);
    for (int k = 0; k <= p; ++k) {
        Expo e(nvars, 0);
        e[0] = k;
        e[1] = p - k;
        q.add_term(e, Rat(1));
    }
    MPoly d = MPoly::variable(nvars, 0) - MPoly::variable(nvars, 1);
    return q * d.pow(2 * i);
}

namespace {

// Power sum p_k of all variables.
MPoly power_sum(int nvars, int k) {
    MPoly s(nvars);
    for (int i = 0; i < nvars; ++i) s += MPoly::variable(nvars, i, k);
    return s;
}

// Monomials in the power sums p_1..p_n of weighted degree d (partitions of
// d into parts <= n), as polynomials.
std::vector<MPoly> symmetric_basis(int nvars, int d) {
    std::vector<MPoly> out;
    std::vector<int> a(nvars, 0);
    std::function<void(int, int)> rec = [&](int pos, int rem) {
        if (pos == nvars) {
            if (rem == 0) {
                MPoly m(nvars, Rat(1));
                for (int k = 0; k < nvars; ++k)
                    if (a[k] > 0) m = m * power_sum(nvars, k + 1).pow(a[k]);
                out.push_back(m);
            }
            return;
        }
        int w = pos + 1;
        for (int cnt = 0; cnt * w <= rem; ++cnt) {
            a[pos] = cnt;
            rec(pos + 1, rem - cnt * w);
        }
        a[pos] = 0;
    };
    rec(0, d);
    return out;
}

bool swap_invariant_12(const MPoly& g) {
    const int n = g.nvars();
    std::vector<MPoly> vals;
    vals.push_back(MPoly::variable(n, 1));
    vals.push_back(MPoly::variable(n, 0));
    for (int i = 2; i < n; ++i) vals.push_back(MPoly::variable(n, i));
    return g.substitute(vals) == g;
}

} // namespace

std::vector<FpiTerm> fpi_decompose(const MPoly& g) {
    const int n = g.nvars();
    if (g.is_zero()) return {};
    if (!g.is_homogeneous()) throw std::invalid_argument("fpi_decompose: input not homogeneous");
    if (!swap_invariant_12(g))
        throw std::invalid_argument("fpi_decompose: input not symmetric in x1, x2");
    const int deg = g.total_degree();
    // Unknown columns (p, r, basis element of S^{S_n} in degree deg-p-2r),
    // ordered with constant B first so that the two-variable constant
    // decomposition is preferred when it exists.
    struct Col {
        int p, r;
        MPoly b;
        MPoly prod;
    };
    std::vector<Col> cols;
    for (int bdeg = 0; bdeg <= deg; ++bdeg) {
        for (int p = deg - bdeg; p >= 0; --p) {
            int rest = deg - bdeg - p;
            if (rest % 2 != 0) continue;
            int r = rest / 2;
            for (const MPoly& b : symmetric_basis(n, bdeg)) {
                MPoly prod = b * fpi_poly(n, p, r);
                cols.push_back({p, r, b, std::move(prod)});
            }
        }
    }
    // Row space: all monomials of the degree.
    std::map<Expo, int, GrlexGreater> ridx;
    {
        int k = 0;
        for (const Expo& e : monomials_of_degree(n, deg)) ridx.emplace(e, k++);
    }
    const long rows = static_cast<long>(ridx.size());
    RatMatrix m(static_cast<int>(rows), static_cast<int>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& [e, cc] : cols[c].prod.terms())
            m.at(ridx.at(e), static_cast<int>(c)) = cc;
    std::vector<Rat> rhs(rows, Rat(0));
    for (const auto& [e, cc] : g.terms()) rhs[ridx.at(e)] = cc;
    auto sol = solve_particular(m, rhs);
    if (!sol)
        throw std::logic_error("fpi_decompose: inconsistent system (would falsify the F-basis "
                               "spanning property)");
    // Collect by (p, r).
    std::map<std::pair<int, int>, MPoly> by_pr;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (is_zero((*sol)[c])) continue;
        auto key = std::make_pair(cols[c].p, cols[c].r);
        auto [it, inserted] = by_pr.emplace(key, cols[c].b * (*sol)[c]);
        if (!inserted) it->second += cols[c].b * (*sol)[c];
    }
    std::vector<FpiTerm> out;
    MPoly recon(n);
    for (auto& [key, b] : by_pr) {
        recon += b * fpi_poly(n, key.first, key.second);
        out.push_back({key.first, key.second, std::move(b)});
    }
    if (!(recon == g)) throw std::logic_error("fpi_decompose: reconstruction mismatch");
    return out;
}

Derivation lift_to_braid(const Derivation& essential, int n) {
    // Essential model: u_i = y_i (i < n-1), u_n = -(y_1+...+y_{n-1}).
    // Lift through the projection y_k = x_k - s, s = (x_1+...+x_n)/n, with
    // d/dy_k mapping to d/dx_k - d/dx_n.
    const int l = n - 1;
    if (essential.nvars() != l) throw std::invalid_argument("lift_to_braid: wrong rank");
    std::vector<MPoly> proj; // y_k as polynomials in x_1..x_n
    for (int k = 0; k < l; ++k) {
        std::vector<Rat> row(n, Rat(-1, n));
        row[k] += 1;
        MPoly lin = MPoly::linear_form(row);
        proj.push_back(lin);
    }
    Derivation out = Derivation::zero(n);
    for (int k = 0; k < l; ++k) {
        if (essential.coeffs[k].is_zero()) continue;
        MPoly g = essential.coeffs[k].substitute(proj);
        out.coeffs[k] += g;
        out.coeffs[n - 1] -= g;
    }
    return out;
}

CatalanCertificate catalan_basis(int n, bool allow_large) {
    if (n < 2) throw std::invalid_argument("catalan_basis: need n >= 2");
    if (n > 3 && !allow_large)
        throw std::invalid_argument(
            "catalan_basis: n > 3 exceeds the default budget; opt in with allow_large");
    CatalanCertificate cert;
    cert.n = n;
    const int nv = n + 1; // x_1..x_n, z
    Multiarrangement cat = catalan(n);
    Multiarrangement braid_n = braid(n);

    // Invariant basis of D(braid(n), 3): the constant field delta_0 plus the
    // Psi_1 images of the invariant simple basis, lifted from the essential
    // A_{n-1} model.
    std::vector<Derivation> eta;
    eta.push_back(Derivation::power(n, 0));
    if (n >= 3) {
        CoxeterData cox = CoxeterData::make_typeA(n - 1);
        auto inv1 = invariant_module(cox, 1, n - 1);
        if (static_cast<int>(inv1.generators.size()) != n - 1)
            throw std::logic_error("catalan_basis: invariant simple basis not found");
        std::vector<Derivation> base;
        for (const auto& g : inv1.generators) base.push_back(g.rep);
        {
            auto chk = saito_check(cox.arrangement(), base);
            if (std::holds_alternative<SaitoFailure>(chk))
                throw std::logic_error("catalan_basis: invariant simple basis failed Saito");
        }
        auto chain = cox.nabla_D_inverse_chain(1);
        for (const Derivation& b : base) {
            Derivation img = Derivation::zero(n - 1);
            for (int i = 0; i < n - 1; ++i) img.coeffs[i] = b.apply(chain[0].coeffs[i]);
            eta.push_back(lift_to_braid(img, n));
        }
    } else {
        // n = 2: D(A_1, 3) has the single positive-degree generator
        // ((x1-x2)^3/2)(d_1 - d_2) alongside delta_0.
        MPoly a12 = MPoly::variable(2, 0) - MPoly::variable(2, 1);
        Derivation d = Derivation::zero(2);
        d.coeffs[0] = a12.pow(3) * Rat(1, 2);
        d.coeffs[1] = d.coeffs[0] * Rat(-1);
        eta.push_back(d);
    }
    {
        auto chk = saito_check(braid_n.with_constant_mult(3), eta);
        if (std::holds_alternative<SaitoFailure>(chk))
            throw std::logic_error("catalan_basis: eta basis failed Saito for (braid(n), 3): " +
                                   std::get<SaitoFailure>(chk).reason);
    }
    cert.eta = eta;

    // eta_i(x1 - x2) = (x1 - x2)^3 G_i; decompose G_i over the F basis.
    MPoly a12 = MPoly::variable(n, 0) - MPoly::variable(n, 1);
    for (const Derivation& e : eta) {
        MPoly val = e.coeffs[0] - e.coeffs[1]; // eta(x1 - x2)
        std::vector<FpiTerm> terms;
        if (!val.is_zero()) {
            auto g = mpoly_divide_exact(val, a12.pow(3));
            if (!g) throw std::logic_error("catalan_basis: eta(x1-x2) not divisible by (x1-x2)^3");
            terms = fpi_decompose(*g);
        }
        cert.b_coeffs.push_back(std::move(terms));
    }

    // eta~_i = eta_i - sum z^{2r+2} B^{p,r} delta_{p+1} in n+1 variables.
    for (std::size_t i = 0; i < eta.size(); ++i) {
        Derivation lift = Derivation::zero(nv);
        for (int j = 0; j < n; ++j) lift.coeffs[j] = eta[i].coeffs[j].extend_vars(nv);
        for (const FpiTerm& t : cert.b_coeffs[i]) {
            MPoly zpow = MPoly::variable(nv, n, 2 * t.r + 2);
            MPoly factor = zpow * t.coeff.extend_vars(nv);
            Derivation dp = Derivation::power(nv, t.p + 1, n);
            lift = lift - dp * factor;
        }
        cert.eta_tilde.push_back(std::move(lift));
    }

    // theta_E with the z-term, then Saito's criterion on Cat_n.
    std::vector<Derivation> basis;
    basis.push_back(Derivation::euler(nv));
    for (const Derivation& e : cert.eta_tilde) basis.push_back(e);
    auto chk = saito_check(cat, basis);
    if (std::holds_alternative<SaitoFailure>(chk))
        throw std::logic_error("catalan_basis: Saito check failed on Cat_n: " +
                               std::get<SaitoFailure>(chk).reason);
    cert.saito = std::get<SaitoCertificate>(chk);
    return cert;
}

std::string CatalanCertificate::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["exponents"] = saito.exponents;
    nlohmann::json bs = nlohmann::json::array();
    for (const auto& terms : b_coeffs) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& t : terms)
            row.push_back({{"p", t.p}, {"r", t.r}, {"B", t.coeff.to_string()}});
        bs.push_back(row);
    }
    j["B"] = bs;
    nlohmann::json etas = nlohmann::json::array();
    for (const auto& e : eta_tilde) {
        nlohmann::json row = nlohmann::json::array();
        for (const MPoly& c : e.coeffs) row.push_back(c.to_string());
        etas.push_back(row);
    }
    j["eta_tilde"] = etas;
    j["saito_scalar"] = rat_to_string(saito.scalar);
    j["determinant"] = saito.determinant.to_string();
    return j.dump();
}

} // namespace arrkit
