#include "arrkit/curves.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace arrkit {

namespace {

// 2-variable view of a 3-variable polynomial after setting the last
// coordinate to 1.
MPoly project_plane(const MPoly& f) {
    MPoly g = f.eval_var(2, Rat(1));
    MPoly out(2);
    for (const auto& [e, c] : g.terms()) out.add_term({e[0], e[1]}, c);
    return out;
}

// Determinant of a matrix of univariate polynomials (Laplace over column
// subsets, division-free).
UPoly det_upoly(const std::vector<std::vector<UPoly>>& m) {
    const int n = static_cast<int>(m.size());
    std::vector<UPoly> dp(std::size_t(1) << n);
    dp[0] = UPoly::constant(Rat(1));
    for (unsigned s = 1; s < dp.size(); ++s) {
        int row = __builtin_popcount(s) - 1;
        UPoly acc;
        int pos = 0;
        for (int c = 0; c < n; ++c) {
            if (!(s & (1u << c))) continue;
            if (!m[row][c].is_zero() && !dp[s & ~(1u << c)].is_zero()) {
                UPoly part = m[row][c] * dp[s & ~(1u << c)];
                acc = ((row + pos) % 2 != 0) ? acc - part : acc + part;
            }
            ++pos;
        }
        dp[s] = std::move(acc);
    }
    return dp.back();
}

// Coefficients of f as a polynomial in v (the second variable), each an
// UPoly in u.
std::vector<UPoly> v_coefficients(const MPoly& f) {
    int dv = 0;
    for (const auto& [e, c] : f.terms()) dv = std::max(dv, e[1]);
    std::vector<std::vector<Rat>> cs(dv + 1);
    for (const auto& [e, c] : f.terms()) {
        auto& row = cs[e[1]];
        if (static_cast<int>(row.size()) <= e[0]) row.resize(e[0] + 1, Rat(0));
        row[e[0]] = c;
    }
    std::vector<UPoly> out;
    for (auto& row : cs) out.push_back(UPoly(std::move(row)));
    return out;
}

MPoly shear_u(const MPoly& f, long lambda) {
    // u -> u + lambda v
    std::vector<MPoly> vals = {MPoly::variable(2, 0) + MPoly::variable(2, 1) * Rat(lambda),
                               MPoly::variable(2, 1)};
    return f.substitute(vals);
}

} // namespace

UPoly resultant_v(const MPoly& c1, const MPoly& c2) {
    auto a = v_coefficients(c1);
    auto b = v_coefficients(c2);
    const int da = static_cast<int>(a.size()) - 1;
    const int db = static_cast<int>(b.size()) - 1;
    if (da < 0 || db < 0) throw std::invalid_argument("resultant_v: zero polynomial");
    const int n = da + db;
    std::vector<std::vector<UPoly>> syl(n, std::vector<UPoly>(n));
    for (int i = 0; i < db; ++i)
        for (int k = 0; k <= da; ++k) syl[i][i + k] = a[da - k];
    for (int i = 0; i < da; ++i)
        for (int k = 0; k <= db; ++k) syl[db + i][i + k] = b[db - k];
    return det_upoly(syl);
}

int local_mult(const MPoly& c1, const MPoly& c2, const Rat& px, const Rat& py, int budget) {
    // Translate the point to the origin.
    std::vector<MPoly> shift = {MPoly::variable(2, 0) + MPoly(2, px),
                                MPoly::variable(2, 1) + MPoly(2, py)};
    MPoly f = c1.substitute(shift);
    MPoly g = c2.substitute(shift);
    if (!is_zero(f.eval({Rat(0), Rat(0)})) || !is_zero(g.eval({Rat(0), Rat(0)})))
        throw std::invalid_argument("local_mult: point is not a common zero");
    long prev = -1;
    for (int order = 1; order <= budget + 1; ++order) {
        // Monomials of degree < order.
        std::map<Expo, int, GrlexGreater> idx;
        int k = 0;
        for (int d = 0; d < order; ++d)
            for (const Expo& e : monomials_of_degree(2, d)) idx.emplace(e, k++);
        std::vector<std::vector<Rat>> rows;
        for (const MPoly* h : {&f, &g}) {
            for (int d = 0; d <= order; ++d)
                for (const Expo& e : monomials_of_degree(2, d)) {
                    MPoly mult_h(2);
                    mult_h.add_term(e, Rat(1));
                    MPoly prod = mult_h * (*h);
                    std::vector<Rat> row(idx.size(), Rat(0));
                    bool any = false;
                    for (const auto& [ee, cc] : prod.terms()) {
                        auto it = idx.find(ee);
                        if (it != idx.end()) {
                            row[it->second] = cc;
                            any = true;
                        }
                    }
                    if (any) rows.push_back(std::move(row));
                }
        }
        long q = static_cast<long>(idx.size()) -
                 (rows.empty() ? 0 : rank_of(rows, static_cast<int>(idx.size())));
        if (q == prev) return static_cast<int>(q);
        prev = q;
    }
    throw std::runtime_error(
        "local_mult: corank did not stabilize within the Bezout budget (shared component?)");
}

CurvePair curve_pair(const Multiarrangement& a, const SaitoCertificate& cert, int h0,
                     std::optional<std::pair<long, long>> alpha_opt) {
    if (a.dim() != 3 || a.rank() != 3 || !a.is_simple())
        throw std::invalid_argument("curve_pair: need an essential rank-3 simple arrangement");
    std::vector<int> exps = cert.exponents;
    if (exps.size() != 3 || exps[0] != 1)
        throw std::invalid_argument("curve_pair: certificate exponents must be (1, e1, e2)");
    const int e1 = exps[1], e2 = exps[2];

    // Rebase: theta_E plus two Euler complements with degrees (e1, e2).
    std::vector<Derivation> comps;
    for (const Derivation& b : cert.basis) {
        Derivation rest = euler_decompose(a, h0, b).second;
        if (!rest.is_zero()) comps.push_back(rest);
    }
    Derivation theta = Derivation::euler(3);
    std::optional<std::pair<Derivation, Derivation>> chosen;
    for (std::size_t i = 0; i < comps.size() && !chosen; ++i)
        for (std::size_t j = 0; j < comps.size() && !chosen; ++j) {
            if (i == j) continue;
            if (comps[i].degree() != e1 || comps[j].degree() != e2) continue;
            auto chk = saito_check(a, {theta, comps[i], comps[j]});
            if (std::holds_alternative<SaitoCertificate>(chk))
                chosen = std::make_pair(comps[i], comps[j]);
        }
    if (!chosen) throw std::logic_error("curve_pair: could not rebase the basis along H0");

    // Move to the decone coordinates: y = T x with last row alpha_{H0}.
    DeconeResult dec = decone(a, h0);
    RatMatrix t(3, 3), tinv(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t.at(i, j) = Rat(dec.transform[i][j]);
    tinv = inverse(t);
    auto to_y = [&](const Derivation& d) {
        std::vector<MPoly> vals; // x_j as linear forms in y
        for (int j = 0; j < 3; ++j) {
            std::vector<Rat> row(3);
            for (int k = 0; k < 3; ++k) row[k] = tinv.at(j, k);
            vals.push_back(MPoly::linear_form(row));
        }
        Derivation r = Derivation::zero(3);
        for (int i = 0; i < 3; ++i) {
            MPoly acc(3);
            for (int j = 0; j < 3; ++j)
                if (!is_zero(t.at(i, j))) acc += d.coeffs[j].substitute(vals) * t.at(i, j);
            r.coeffs[i] = std::move(acc);
        }
        return r;
    };
    Derivation d1 = to_y(chosen->first), d2 = to_y(chosen->second);
    if (!d1.coeffs[2].is_zero() || !d2.coeffs[2].is_zero())
        throw std::logic_error("curve_pair: rebased fields do not kill z0");

    // Pick alpha not parallel to any deconed line.
    auto parallel_free = [&](long a1, long a2) {
        for (const auto& line : dec.lines)
            if (is_zero(Rat(a1) * line[1] - Rat(a2) * line[0])) return false;
        return true;
    };
    std::optional<std::pair<long, long>> alpha;
    if (alpha_opt) {
        if (!parallel_free(alpha_opt->first, alpha_opt->second))
            throw std::invalid_argument("curve_pair: given alpha is parallel to a deconed line");
        alpha = alpha_opt;
    } else {
        for (long s = 1; s <= 12 && !alpha; ++s)
            for (long a1 = 0; a1 <= s && !alpha; ++a1) {
                long a2 = s - a1;
                if (parallel_free(a1, a2))
                    alpha = {a1, a2};
                else if (parallel_free(a1, -a2))
                    alpha = {a1, -a2};
            }
        if (!alpha) throw std::runtime_error("curve_pair: no suitable alpha direction found");
    }

    CurvePair pair;
    pair.alpha = {Rat(alpha->first), Rat(alpha->second)};
    MPoly av1 = d1.coeffs[0] * pair.alpha[0] + d1.coeffs[1] * pair.alpha[1];
    MPoly av2 = d2.coeffs[0] * pair.alpha[0] + d2.coeffs[1] * pair.alpha[1];
    pair.c1 = project_plane(av1);
    pair.c2 = project_plane(av2);
    pair.e1 = e1;
    pair.e2 = e2;
    if (pair.c1.total_degree() != e1 || pair.c2.total_degree() != e2)
        throw std::logic_error("curve_pair: curve degrees differ from the exponents");
    pair.points = l2_points(a, h0);
    for (const PlanarPoint& p : pair.points)
        pair.mult.push_back(local_mult(pair.c1, pair.c2, p.x, p.y, e1 * e2 + 1));
    return pair;
}

BezoutReport bezout_report(const CurvePair& pair) {
    BezoutReport rep;
    std::ostringstream detail;
    rep.mult_equals_mu = true;
    bool zero_ok = true;
    for (std::size_t i = 0; i < pair.points.size(); ++i) {
        rep.bezout_sum += pair.mult[i];
        if (pair.mult[i] != pair.points[i].mu) {
            rep.mult_equals_mu = false;
            detail << "mult != mu at point " << i << "; ";
        }
        if (!is_zero(pair.c1.eval({pair.points[i].x, pair.points[i].y})) ||
            !is_zero(pair.c2.eval({pair.points[i].x, pair.points[i].y}))) {
            zero_ok = false;
            detail << "L2 point " << i << " off a curve; ";
        }
    }
    rep.sum_matches = (rep.bezout_sum == static_cast<long>(pair.e1) * pair.e2);
    if (!rep.sum_matches) detail << "sum of multiplicities != e1*e2; ";

    // Resultant accounting: shear until both leading v-coefficients are
    // constants, so every projective intersection shows up in the resultant.
    long lambda = 0;
    for (long trial = 0; trial <= 40; ++trial) {
        lambda = (trial % 2 == 0) ? trial / 2 : -(trial / 2 + 1);
        auto top_ok = [&](const MPoly& c, int e) {
            MPoly top = c.homogeneous_part(e);
            return !is_zero(top.eval({Rat(lambda), Rat(1)}));
        };
        if (top_ok(pair.c1, pair.e1) && top_ok(pair.c2, pair.e2)) break;
    }
    UPoly res = resultant_v(shear_u(pair.c1, lambda), shear_u(pair.c2, lambda));
    rep.resultant_degree = res.degree();
    if (res.is_zero()) {
        zero_ok = false;
        detail << "resultant vanished (shared component); ";
    } else {
        if (res.degree() != pair.e1 * pair.e2) {
            zero_ok = false;
            detail << "resultant degree " << res.degree()
                   << " != e1*e2 (intersections at infinity); ";
        }
        auto roots = res.rational_roots();
        // Expected u-coordinates after the shear: u - lambda v.
        std::map<Rat, long> expected;
        for (std::size_t i = 0; i < pair.points.size(); ++i)
            expected[pair.points[i].x - Rat(lambda) * pair.points[i].y] += pair.mult[i];
        long covered = 0;
        for (const auto& [root, mult] : roots) {
            auto it = expected.find(root);
            if (it == expected.end() || it->second != mult) {
                zero_ok = false;
                detail << "resultant root off L_2 or with wrong multiplicity; ";
            } else {
                covered += mult;
            }
        }
        long expected_total = 0;
        for (const auto& [u, m] : expected) expected_total += m;
        if (covered != expected_total || covered != res.degree()) {
            zero_ok = false;
            detail << "irrational or extra common zeros detected; ";
        }
    }
    rep.zero_set_is_l2 = zero_ok;
    rep.detail = detail.str();
    return rep;
}

RefutationReport curves_refute(const Multiarrangement& a, int h0) {
    if (a.rank() != 3) throw std::invalid_argument("curves_refute: rank must be 3");
    UPoly chi = IntersectionLattice::build(a).char_poly();
    for (int i = 0; i < a.dim() - 3; ++i) {
        auto [q, r] = chi.divmod(UPoly(std::vector<Rat>{Rat(0), Rat(1)}));
        if (!r.is_zero()) throw std::logic_error("curves_refute: chi not divisible by t");
        chi = q;
    }
    auto [q1, r1] = chi.divmod(UPoly(std::vector<Rat>{Rat(-1), Rat(1)}));
    if (!r1.is_zero()) throw std::logic_error("curves_refute: (t-1) does not divide chi");
    RefutationReport rep;
    auto roots = q1.rational_roots();
    std::vector<int> es;
    for (const auto& [root, mult] : roots) {
        if (!is_integer(root) || sgn(root) < 0)
            throw std::invalid_argument("curves_refute: chi does not factor over Z>=0");
        for (int i = 0; i < mult; ++i) es.push_back(static_cast<int>(rat_to_long(root)));
    }
    if (es.size() != 2) throw std::invalid_argument("curves_refute: chi does not factor over Z>=0");
    std::sort(es.begin(), es.end());
    rep.hypothetical_exponents = {1, es[0], es[1]};

    DeconeResult dec = decone(a, h0);
    std::vector<PlanarPoint> pts = l2_points(a, h0);
    for (std::size_t li = 0; li < dec.lines.size(); ++li) {
        int count = 0;
        for (const PlanarPoint& p : pts)
            if (is_zero(dec.lines[li][0] * p.x + dec.lines[li][1] * p.y + dec.lines[li][2]))
                ++count;
        if (count > rep.points_on_line) {
            rep.points_on_line = count;
            rep.line = static_cast<int>(li);
        }
    }
    rep.refuted = rep.points_on_line > es[0] && rep.points_on_line > es[1];
    std::ostringstream os;
    os << "line " << rep.line << " carries " << rep.points_on_line
       << " points of L_2; curves of degrees (" << es[0] << "," << es[1] << ") through L_2 ";
    if (rep.refuted)
        os << "would both contain it, so their intersection could not be finite";
    else
        os << "are not excluded by the line count";
    rep.detail = os.str();
    return rep;
}

std::string CurvePair::to_json() const {
    nlohmann::json j;
    j["alpha"] = {rat_to_string(alpha[0]), rat_to_string(alpha[1])};
    j["c1"] = c1.to_string();
    j["c2"] = c2.to_string();
    nlohmann::json pts = nlohmann::json::array();
    for (std::size_t i = 0; i < points.size(); ++i)
        pts.push_back({{"p", {rat_to_string(points[i].x), rat_to_string(points[i].y)}},
                       {"mu", points[i].mu},
                       {"mult", mult[i]}});
    j["points"] = pts;
    long sum = 0;
    for (int m : mult) sum += m;
    j["bezout_sum"] = sum;
    return j.dump();
}

} // namespace arrkit
