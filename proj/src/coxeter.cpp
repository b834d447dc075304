#include "arrkit/coxeter.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace arrkit {

namespace {

std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(idx);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

void reduce(RatFrac& f, const MPoly& delta) {
    while (f.dpow > 0) {
        auto q = mpoly_divide_exact(f.num, delta);
        if (!q) break;
        f.num = *q;
        --f.dpow;
    }
    if (f.num.is_zero()) f.dpow = 0;
}

} // namespace

CoxeterData CoxeterData::make_typeA(int l) {
    if (l < 2) throw std::invalid_argument("make_typeA: need rank >= 2");
    CoxeterData c;
    c.rank_ = l;
    c.arr_ = coxeter_typeA(l);
    // u_i as linear forms in x_1..x_l.
    std::vector<MPoly> u;
    for (int i = 0; i < l; ++i) u.push_back(MPoly::variable(l, i));
    {
        std::vector<Rat> m(l, Rat(-1));
        u.push_back(MPoly::linear_form(m));
    }
    // P_k = sum_i u_i^{k+1}, k = 1..l.
    for (int k = 1; k <= l; ++k) {
        MPoly p(l);
        for (const MPoly& ui : u) p += ui.pow(k + 1);
        c.p_.push_back(std::move(p));
    }
    c.jac_.assign(l, std::vector<MPoly>(l, MPoly(l)));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) c.jac_[i][j] = c.p_[i].derivative(j);
    // Columns of the Jacobian are indexed by the invariant: entry (j, i) in
    // the determinant below is dP_{i+1}/dx_{j+1}.
    {
        std::vector<std::vector<MPoly>> m(l, std::vector<MPoly>(l, MPoly(l)));
        for (int j = 0; j < l; ++j)
            for (int i = 0; i < l; ++i) m[j][i] = c.jac_[i][j];
        c.delta_ = det_poly(m);
    }
    if (c.delta_.is_zero()) throw std::logic_error("make_typeA: Jacobian vanished");
    auto q = mpoly_divide_exact(c.delta_, c.arr_.defining_poly());
    if (!q || !q->is_constant())
        throw std::logic_error("make_typeA: Jacobian is not a scalar multiple of prod alpha");
    c.delta_scalar_ = q->coeff(Expo(l, 0));
    // Group matrices: permutations of the l+1 ambient symbols.
    for (const auto& perm : all_permutations(l + 1)) {
        std::vector<int> inv(l + 1);
        for (int i = 0; i <= l; ++i) inv[perm[i]] = i;
        RatMatrix a(l, l);
        for (int i = 0; i < l; ++i) {
            if (inv[i] < l)
                a.at(i, inv[i]) = 1;
            else
                for (int j = 0; j < l; ++j) a.at(i, j) = -1;
        }
        c.group_.push_back(a);
        c.group_inv_.push_back(inverse(a));
    }
    // Numerators of D(x_j) = dP_l(x_j).
    for (int j = 0; j < l; ++j) {
        std::vector<MPoly> col(l, MPoly(l));
        col[j] = MPoly(l, Rat(1)); // gradient of x_j
        c.d_num_.push_back(c.det_col_replaced(l - 1, col));
    }
    return c;
}

MPoly CoxeterData::det_col_replaced(int i, const std::vector<MPoly>& col) const {
    const int l = rank_;
    std::vector<std::vector<MPoly>> m(l, std::vector<MPoly>(l, MPoly(l)));
    for (int r = 0; r < l; ++r)
        for (int cidx = 0; cidx < l; ++cidx)
            m[r][cidx] = (cidx == i) ? col[r] : jac_[cidx][r];
    return det_poly(m);
}

RatFrac CoxeterData::dP(const MPoly& f, int i) const {
    std::vector<MPoly> grad;
    for (int j = 0; j < rank_; ++j) grad.push_back(f.derivative(j));
    RatFrac r{det_col_replaced(i, grad), 1};
    reduce(r, delta_);
    return r;
}

RatFrac CoxeterData::dP(const RatFrac& f, int i) const {
    // d/dP_i (N / Delta^k) = (det_i(N) Delta - k N det_i(Delta)) / Delta^{k+2}
    std::vector<MPoly> gn, gd;
    for (int j = 0; j < rank_; ++j) {
        gn.push_back(f.num.derivative(j));
        gd.push_back(delta_.derivative(j));
    }
    MPoly dn = det_col_replaced(i, gn);
    RatFrac r;
    if (f.dpow == 0) {
        r = RatFrac{dn, 1};
    } else {
        MPoly dd = det_col_replaced(i, gd);
        r.num = dn * delta_ - f.num * dd * Rat(f.dpow);
        r.dpow = f.dpow + 2;
    }
    reduce(r, delta_);
    return r;
}

RatFrac CoxeterData::nabla_deriv(const Derivation& d, const RatFrac& f) const {
    // delta(N/Delta^k) = (delta(N) Delta - k N delta(Delta)) / Delta^{k+1}
    RatFrac r;
    if (f.dpow == 0) {
        r = RatFrac{d.apply(f.num), 0};
    } else {
        r.num = d.apply(f.num) * delta_ - f.num * d.apply(delta_) * Rat(f.dpow);
        r.dpow = f.dpow + 1;
    }
    reduce(r, delta_);
    return r;
}

MPoly CoxeterData::act_poly(int g, const MPoly& f) const {
    const RatMatrix& ainv = group_inv_[g];
    std::vector<MPoly> vals;
    for (int j = 0; j < rank_; ++j) {
        std::vector<Rat> row(rank_);
        for (int k = 0; k < rank_; ++k) row[k] = ainv.at(j, k);
        vals.push_back(MPoly::linear_form(row));
    }
    return f.substitute(vals);
}

Derivation CoxeterData::act_deriv(int g, const Derivation& d) const {
    const RatMatrix& a = group_[g];
    Derivation r = Derivation::zero(rank_);
    std::vector<MPoly> moved;
    for (int j = 0; j < rank_; ++j) moved.push_back(act_poly(g, d.coeffs[j]));
    for (int i = 0; i < rank_; ++i) {
        MPoly acc(rank_);
        for (int j = 0; j < rank_; ++j)
            if (!is_zero(a.at(i, j))) acc += moved[j] * a.at(i, j);
        r.coeffs[i] = std::move(acc);
    }
    return r;
}

bool CoxeterData::is_invariant(const Derivation& d) const {
    for (int g = 0; g < group_order(); ++g)
        if (!(act_deriv(g, d) == d)) return false;
    return true;
}

Derivation CoxeterData::reynolds(const Derivation& d) const {
    Derivation acc = Derivation::zero(rank_);
    for (int g = 0; g < group_order(); ++g) acc = acc + act_deriv(g, d);
    Rat inv = Rat(1) / Rat(group_order());
    return acc * inv;
}

std::vector<Derivation> CoxeterData::invariant_subspace(const std::vector<Derivation>& basis) const {
    if (basis.empty()) return {};
    const int l = rank_;
    int deg = -1;
    for (const Derivation& b : basis)
        if (!b.is_zero()) deg = b.degree();
    if (deg < 0) return {};
    auto monos = monomials_of_degree(l, deg);
    std::map<Expo, int, GrlexGreater> idx;
    int k = 0;
    for (const Expo& e : monos) idx.emplace(e, k++);
    const long n = static_cast<long>(monos.size());
    std::vector<std::vector<Rat>> rows;
    for (const Derivation& b : basis) {
        Derivation pr = reynolds(b);
        if (pr.is_zero()) continue;
        std::vector<Rat> v(l * n, Rat(0));
        for (int i = 0; i < l; ++i)
            for (const auto& [e, c] : pr.coeffs[i].terms()) v[i * n + idx.at(e)] = c;
        rows.push_back(std::move(v));
    }
    if (rows.empty()) return {};
    RatMatrix m = RatMatrix::from_rows(rows);
    RrefResult rr = rref(m);
    std::vector<Derivation> out;
    for (int r = 0; r < rr.rank; ++r) {
        Derivation d = Derivation::zero(l);
        for (int i = 0; i < l; ++i) {
            MPoly f(l);
            for (long b = 0; b < n; ++b)
                if (!is_zero(rr.rref.at(r, static_cast<int>(i * n + b)))) {
                    auto it = monos[b];
                    f.add_term(it, rr.rref.at(r, static_cast<int>(i * n + b)));
                }
            d.coeffs[i] = std::move(f);
        }
        if (!is_invariant(d)) throw std::logic_error("invariant_subspace: projection not invariant");
        out.push_back(std::move(d));
    }
    return out;
}

LogForm CoxeterData::phi_k(const Derivation& d, int k) const {
    if (k < 1) throw std::invalid_argument("phi_k: k must be positive");
    const int l = rank_;
    std::vector<RatFrac> w;
    for (int j = 0; j < l; ++j) w.push_back(RatFrac{p_[0].derivative(j), 0});
    for (int step = 0; step < k; ++step)
        for (int j = 0; j < l; ++j) w[j] = nabla_D(w[j]);
    for (int j = 0; j < l; ++j) w[j] = nabla_deriv(d, w[j]);
    // Common Delta power, then rewrite over prod alpha^e.
    int e = 0;
    for (const auto& f : w) e = std::max(e, f.dpow);
    LogForm form;
    form.nvars = l;
    form.p = 1;
    form.subsets = p_subsets(l, 1);
    form.denom_exp.assign(arr_.size(), e);
    Rat scale = Rat(1);
    for (int i = 0; i < e; ++i) scale /= delta_scalar_;
    for (int j = 0; j < l; ++j) {
        MPoly num = w[j].num;
        for (int i = w[j].dpow; i < e; ++i) num = num * delta_;
        form.numerators.push_back(num * scale);
    }
    return form;
}

std::vector<Derivation> CoxeterData::nabla_D_inverse_chain(int k) const {
    const int l = rank_;
    const int h = coxeter_number();
    std::vector<Derivation> chain;
    Derivation prev = Derivation::euler(l);
    for (int j = 1; j <= k; ++j) {
        const int deg = 1 + j * h;
        // Invariant derivations of the target degree.
        std::vector<Derivation> full;
        {
            auto monos = monomials_of_degree(l, deg);
            for (int i = 0; i < l; ++i)
                for (const Expo& e : monos) {
                    Derivation d = Derivation::zero(l);
                    MPoly f(l);
                    f.add_term(e, Rat(1));
                    d.coeffs[i] = std::move(f);
                    full.push_back(std::move(d));
                }
        }
        std::vector<Derivation> inv = invariant_subspace(full);
        if (inv.empty())
            throw std::runtime_error("nabla_D_inverse_chain: no invariant derivations at degree " +
                                     std::to_string(deg));
        // Solve nabla_D Y = prev inside the invariant span: for each
        // component i, Dhat(Y_i) = Delta * prev_i.
        const int rows_deg = deg - 1 + delta_.total_degree() - coxeter_number() + 1;
        auto row_monos = monomials_of_degree(l, rows_deg);
        std::map<Expo, int, GrlexGreater> ridx;
        int rk = 0;
        for (const Expo& e : row_monos) ridx.emplace(e, rk++);
        const long rn = static_cast<long>(row_monos.size());
        RatMatrix m(static_cast<int>(l * rn), static_cast<int>(inv.size()));
        std::vector<Rat> rhs(l * rn, Rat(0));
        for (std::size_t a = 0; a < inv.size(); ++a) {
            for (int i = 0; i < l; ++i) {
                MPoly dhat(l);
                for (int j2 = 0; j2 < l; ++j2)
                    if (!d_num_[j2].is_zero()) dhat += d_num_[j2] * inv[a].coeffs[i].derivative(j2);
                for (const auto& [e, c] : dhat.terms())
                    m.at(static_cast<int>(i * rn + ridx.at(e)), static_cast<int>(a)) = c;
            }
        }
        for (int i = 0; i < l; ++i) {
            MPoly target = delta_ * prev.coeffs[i];
            for (const auto& [e, c] : target.terms()) rhs[i * rn + ridx.at(e)] = c;
        }
        auto sol = solve_particular(m, rhs);
        if (!sol)
            throw std::runtime_error(
                "nabla_D_inverse_chain: no invariant solution at degree " + std::to_string(deg) +
                " (contradicts the expected bijectivity of nabla_D on invariants)");
        if (!kernel_basis(m).empty())
            throw std::runtime_error(
                "nabla_D_inverse_chain: solution not unique at degree " + std::to_string(deg) +
                " (contradicts the expected bijectivity of nabla_D on invariants)");
        Derivation y = Derivation::zero(l);
        for (std::size_t a = 0; a < inv.size(); ++a)
            if (!is_zero((*sol)[a])) y = y + inv[a] * (*sol)[a];
        chain.push_back(y);
        prev = chain.back();
    }
    return chain;
}

Derivation CoxeterData::psi_k(const Derivation& d, int k) const {
    std::vector<Derivation> chain = nabla_D_inverse_chain(k);
    const Derivation& y = chain.back();
    Derivation r = Derivation::zero(rank_);
    for (int i = 0; i < rank_; ++i) r.coeffs[i] = d.apply(y.coeffs[i]);
    return r;
}

std::vector<Derivation> CoxeterData::psi_basis(int k, int m01) const {
    if (m01 != 0 && m01 != 1) throw std::invalid_argument("psi_basis: m must be 0 or 1");
    const int l = rank_;
    std::vector<Derivation> base;
    if (m01 == 0) {
        for (int i = 0; i < l; ++i) {
            Derivation d = Derivation::zero(l);
            d.coeffs[i] = MPoly(l, Rat(1));
            base.push_back(std::move(d));
        }
    } else {
        auto gens = minimal_generators(arr_, l);
        if (static_cast<int>(gens.size()) != l)
            throw std::logic_error("psi_basis: simple Coxeter basis not found");
        for (const auto& g : gens) base.push_back(g.rep);
    }
    std::vector<Derivation> chain = nabla_D_inverse_chain(k);
    const Derivation& y = chain.back();
    std::vector<Derivation> out;
    for (const Derivation& d : base) {
        Derivation r = Derivation::zero(l);
        for (int i = 0; i < l; ++i) r.coeffs[i] = d.apply(y.coeffs[i]);
        out.push_back(std::move(r));
    }
    return out;
}

Derivation CoxeterData::nabla_D_poly(const Derivation& d) const {
    Derivation out = Derivation::zero(rank_);
    for (int i = 0; i < rank_; ++i) {
        MPoly dhat(rank_);
        for (int j = 0; j < rank_; ++j)
            if (!d_num_[j].is_zero()) dhat += d_num_[j] * d.coeffs[i].derivative(j);
        if (dhat.is_zero()) continue;
        auto q = mpoly_divide_exact(dhat, delta_);
        if (!q)
            throw std::domain_error("nabla_D_poly: result is not polynomial (input not in the "
                                    "invariant Hodge filtration?)");
        out.coeffs[i] = *q;
    }
    return out;
}

std::vector<MPoly> invariant_monomials(const CoxeterData& cox, int d) {
    const int l = cox.rank();
    std::vector<MPoly> out;
    // exponents a_1..a_l with sum a_k (k+1) = d
    std::vector<int> a(l, 0);
    std::function<void(int, int)> rec = [&](int pos, int rem) {
        if (pos == l) {
            if (rem == 0) {
                MPoly m(l, Rat(1));
                for (int k = 0; k < l; ++k)
                    if (a[k] > 0) m = m * cox.invariants()[k].pow(a[k]);
                out.push_back(m);
            }
            return;
        }
        int w = pos + 2; // deg P_{pos+1}
        for (int cnt = 0; cnt * w <= rem; ++cnt) {
            a[pos] = cnt;
            rec(pos + 1, rem - cnt * w);
        }
        a[pos] = 0;
    };
    rec(0, d);
    return out;
}

InvariantBasis invariant_module(const CoxeterData& cox, int m, int window) {
    if (m < 0 || m % 2 == 0) throw std::invalid_argument("invariant_module: m must be odd");
    const int l = cox.rank();
    Multiarrangement am = cox.arrangement().with_constant_mult(m);
    InvariantBasis result;
    result.window = window;
    for (int d = 0; d <= window; ++d) {
        std::vector<Derivation> inv = cox.invariant_subspace(d_graded_piece(am, d));
        result.invariant_dims[d] = static_cast<long>(inv.size());
        if (inv.empty()) continue;
        auto idx = [&] {
            std::map<Expo, int, GrlexGreater> ix;
            int k = 0;
            for (const Expo& e : monomials_of_degree(l, d)) ix.emplace(e, k++);
            return ix;
        }();
        const long n = static_cast<long>(idx.size());
        auto to_vec = [&](const Derivation& dd) {
            std::vector<Rat> v(l * n, Rat(0));
            for (int i = 0; i < l; ++i)
                for (const auto& [e, c] : dd.coeffs[i].terms()) v[i * n + idx.at(e)] = c;
            return v;
        };
        // Span of S^W-multiples of previously found generators, then the
        // invariant basis; new pivots in the second block are generators.
        std::vector<std::vector<Rat>> cols;
        for (const auto& g : result.generators)
            for (const MPoly& mono : invariant_monomials(cox, d - g.degree)) {
                Derivation prod = g.rep * mono;
                cols.push_back(to_vec(prod));
            }
        const std::size_t span_count = cols.size();
        for (const Derivation& b : inv) cols.push_back(to_vec(b));
        RatMatrix mat(static_cast<int>(l * n), static_cast<int>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (long r = 0; r < l * n; ++r)
                mat.at(static_cast<int>(r), static_cast<int>(c)) = cols[c][r];
        RrefResult rr = rref(mat);
        for (int piv : rr.pivots)
            if (piv >= static_cast<int>(span_count))
                result.generators.push_back({d, inv[piv - span_count]});
    }
    return result;
}

} // namespace arrkit
