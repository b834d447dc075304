#include "arrkit/solomonterao.hpp"

#include <sstream>

#include "json.hpp"

namespace arrkit {

long HilbertRational::dim_at(int d) const {
    Rat sum(0);
    for (const auto& [j, c] : numerator)
        if (j <= d) sum += c * Rat(binom(d - j + denom_pow - 1, denom_pow - 1));
    return rat_to_long(sum);
}

std::string HilbertRational::to_string() const {
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (const auto& [j, c] : numerator) {
        if (!first) os << " + ";
        first = false;
        os << rat_to_string(c) << "*x^" << j;
    }
    if (first) os << "0";
    os << ") / (1-x)^" << denom_pow;
    return os.str();
}

HilbertRational fit_hilbert(const GradedDims& dims, int denom_pow, int window) {
    if (dims.dims.empty()) throw std::invalid_argument("fit_hilbert: no dims");
    const int dmin = dims.dims.begin()->first;
    const int dmax = dims.dims.rbegin()->first;
    auto dim_at = [&](int d) -> long {
        if (d < dmin) return 0;
        auto it = dims.dims.find(d);
        if (it == dims.dims.end()) throw std::invalid_argument("fit_hilbert: dims not contiguous");
        return it->second;
    };
    HilbertRational h;
    h.denom_pow = denom_pow;
    // numerator = dims * (1-x)^denom_pow
    std::map<int, Rat> n;
    for (int j = dmin; j <= dmax; ++j) {
        Rat v(0);
        for (int k = 0; k <= denom_pow; ++k) {
            Rat b(binom(denom_pow, k));
            if (k % 2 != 0) b = -b;
            v += b * Rat(dim_at(j - k));
        }
        if (!is_zero(v)) n[j] = v;
    }
    // The top `window` coefficients must have come out zero.
    int last_nonzero = n.empty() ? dmin - 1 : n.rbegin()->first;
    if (dmax - last_nonzero < window)
        throw std::runtime_error("fit_hilbert: numerator did not stabilize in the computed window [" +
                                 std::to_string(dmin) + "," + std::to_string(dmax) + "]");
    h.numerator = std::move(n);
    // Re-verify every computed dimension against the fitted series.
    for (const auto& [d, v] : dims.dims)
        if (h.dim_at(d) != v) throw std::logic_error("fit_hilbert: fitted series mismatch");
    return h;
}

HilbertRational fit_module_series(const std::function<long(int)>& dim_fn, int denom_pow, int dmin,
                                  int cutoff, int window, GradedDims* out_dims) {
    GradedDims gd;
    gd.tag = "";
    int zero_run_top = 0;
    bool seen_nonzero = false; // leading zeros (below the first module element) do not count
    std::map<int, Rat> n;
    auto dim_at = [&](int d) -> long {
        if (d < dmin) return 0;
        return gd.dims.at(d);
    };
    for (int d = dmin; d <= cutoff; ++d) {
        gd.dims[d] = dim_fn(d);
        gd.cutoff = d;
        Rat v(0);
        for (int k = 0; k <= denom_pow; ++k) {
            Rat b(binom(denom_pow, k));
            if (k % 2 != 0) b = -b;
            v += b * Rat(dim_at(d - k));
        }
        if (is_zero(v)) {
            ++zero_run_top;
        } else {
            n[d] = v;
            zero_run_top = 0;
            seen_nonzero = true;
        }
        if (seen_nonzero && zero_run_top >= window && d >= dmin + denom_pow) {
            HilbertRational h;
            h.denom_pow = denom_pow;
            h.numerator = std::move(n);
            for (const auto& [dd, vv] : gd.dims)
                if (h.dim_at(dd) != vv) throw std::logic_error("fit_module_series: fit mismatch");
            if (out_dims) *out_dims = gd;
            return h;
        }
    }
    throw std::runtime_error("fit_module_series: numerator did not stabilize before degree " +
                             std::to_string(cutoff));
}

namespace {

// Coefficients of (1-s)^j modulo s^{order+1}; j may be negative.
std::vector<Rat> one_minus_s_pow(int j, int order) {
    std::vector<Rat> c(order + 1, Rat(0));
    if (j >= 0) {
        for (int i = 0; i <= std::min(j, order); ++i) {
            Rat b(binom(j, i));
            if (i % 2 != 0) b = -b;
            c[i] = b;
        }
    } else {
        // (1-s)^j = sum_i C(-j-1+i, i) s^i
        for (int i = 0; i <= order; ++i) c[i] = Rat(binom(-j - 1 + i, i));
    }
    return c;
}

} // namespace

SolomonTeraoResult solomon_terao_chi(const Multiarrangement& a) {
    const int l = a.dim();
    const int mm = static_cast<int>(a.mult_total());
    SolomonTeraoResult res;
    for (int p = 0; p <= l; ++p) {
        auto fn = [&, p](int d) { return omega_graded_dim(a, p, d); };
        res.series.push_back(fit_module_series(fn, l, -mm, mm + l + 3));
    }
    // Phi(A; x, y).
    for (int p = 0; p <= l; ++p)
        for (const auto& [j, c] : res.series[p].numerator) res.phi.add_term(j, p, c);
    // chi(t) = [s^l] sum_p N_p(1-s) (ts-1)^p, where the division by (1-x)^l
    // became s^{-l}; the lower coefficients must cancel exactly.
    std::vector<UPoly> acc(l + 1); // accumulated coefficient of s^i, a poly in t
    for (int p = 0; p <= l; ++p) {
        // N_p(1-s) mod s^{l+1}
        std::vector<Rat> np(l + 1, Rat(0));
        for (const auto& [j, c] : res.series[p].numerator) {
            auto pw = one_minus_s_pow(j, l);
            for (int i = 0; i <= l; ++i) np[i] += c * pw[i];
        }
        // (ts - 1)^p = sum_q C(p,q) (-1)^{p-q} t^q s^q
        for (int q = 0; q <= p; ++q) {
            Rat b(binom(p, q));
            if ((p - q) % 2 != 0) b = -b;
            for (int i = 0; i + q <= l; ++i)
                acc[i + q] = acc[i + q] + UPoly::monomial(np[i] * b, q);
        }
    }
    for (int i = 0; i < l; ++i)
        if (!acc[i].is_zero())
            throw std::logic_error("solomon_terao_chi: pole did not cancel (bug in the pipeline)");
    res.chi = acc[l];
    if (res.chi.degree() != l || res.chi.coeff(l) != Rat(1))
        throw std::logic_error("solomon_terao_chi: limit is not a degree-l monic polynomial");
    return res;
}

ChernReport chern_check(const Multiarrangement& a) {
    if (a.rank() != 3 || !a.is_simple())
        throw std::invalid_argument("chern_check: need a rank-3 simple arrangement");
    ChernReport rep;
    UPoly chi = IntersectionLattice::build(a).char_poly();
    // Work with the essential chi: divide out t^{dim-3}, then (t-1).
    std::vector<Rat> cs(chi.coeffs());
    int shift = a.dim() - 3;
    for (int i = 0; i < shift; ++i) {
        if (!is_zero(cs.front())) throw std::logic_error("chern_check: chi not divisible by t");
        cs.erase(cs.begin());
    }
    UPoly chi_ess{std::vector<Rat>(cs)};
    auto [chi0, rem] = chi_ess.divmod(UPoly(std::vector<Rat>{Rat(-1), Rat(1)}));
    if (!rem.is_zero()) throw std::logic_error("chern_check: (t-1) does not divide chi");
    rep.chi0 = chi0;

    // Hilbert series of D_0(A) = D(A)/S.theta_E over the essential model.
    EssentialResult ess = essentialize(a);
    const int l = 3;
    auto fn = [&](int d) {
        long full = d_graded_dim(ess.arr, d);
        long euler = monomial_count(l, d - 1);
        return full - euler;
    };
    HilbertRational h =
        fit_module_series(fn, l, 0, static_cast<int>(a.mult_total()) + l + 3);
    // Hilbert polynomial P(d) = sum_j n_j C(d-j+2, 2) as an exact polynomial
    // a2 d^2 + a1 d + a0.
    Rat a2(0), a1(0), a0(0);
    for (const auto& [j, c] : h.numerator) {
        // C(d-j+2,2) = ((d-j+2)(d-j+1))/2 = (d^2 + (3-2j)d + (j^2-3j+2))/2
        a2 += c / 2;
        a1 += c * Rat(3 - 2 * j) / 2;
        a0 += c * Rat(static_cast<long>(j) * j - 3 * j + 2) / 2;
    }
    // Riemann-Roch on P^2: chi(E(d)) = r(d^2+3d+2)/2 + c1(d+3/2) + (c1^2-2c2)/2.
    rep.rank = a2 * 2;
    rep.c1 = a1 - Rat(3) * rep.rank / 2;
    rep.c2 = (rep.c1 * rep.c1 - (a0 * 2 - Rat(2) * rep.rank - Rat(3) * rep.c1)) / 2;
    // Expected: 1 + b1 t + b0 t^2 from t^2 chi0(1/t).
    rep.expected = {Rat(1), chi0.coeff(1), chi0.coeff(0)};
    rep.pass = (rep.rank == Rat(2)) && (rep.c1 == rep.expected[1]) && (rep.c2 == rep.expected[2]);
    return rep;
}

std::string ChernReport::to_json() const {
    nlohmann::json j;
    j["rank"] = rat_to_string(rank);
    j["c1"] = rat_to_string(c1);
    j["c2"] = rat_to_string(c2);
    j["chi0"] = chi0.to_string();
    j["pass"] = pass;
    return j.dump();
}

std::string solomon_terao_json(const Multiarrangement& a) {
    SolomonTeraoResult res = solomon_terao_chi(a);
    nlohmann::json j;
    nlohmann::json phi = nlohmann::json::array();
    for (const auto& [k, c] : res.phi.terms())
        phi.push_back({k.first, k.second, rat_to_string(c)});
    j["phi"] = phi;
    std::vector<std::string> chi;
    for (int k = 0; k <= res.chi.degree(); ++k) chi.push_back(rat_to_string(res.chi.coeff(k)));
    j["chi"] = chi;
    bool agrees = false;
    if (a.is_simple()) agrees = (res.chi == IntersectionLattice::build(a).char_poly());
    j["agrees_with_lattice"] = agrees;
    return j.dump();
}

} // namespace arrkit
