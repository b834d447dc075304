#include "arrkit/logmodule.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace arrkit {

Derivation Derivation::zero(int nvars, int) {
    Derivation d;
    d.coeffs.assign(nvars, MPoly(nvars));
    return d;
}

Derivation Derivation::euler(int nvars) {
    Derivation d;
    for (int i = 0; i < nvars; ++i) d.coeffs.push_back(MPoly::variable(nvars, i));
    return d;
}

Derivation Derivation::power(int nvars, int p, int n_active) {
    if (n_active < 0) n_active = nvars;
    Derivation d = zero(nvars);
    for (int i = 0; i < n_active; ++i) d.coeffs[i] = MPoly::variable(nvars, i, p);
    if (p == 0)
        for (int i = 0; i < n_active; ++i) d.coeffs[i] = MPoly(nvars, Rat(1));
    return d;
}

bool Derivation::is_zero() const {
    for (const MPoly& c : coeffs)
        if (!c.is_zero()) return false;
    return true;
}

int Derivation::degree() const {
    int d = -1;
    for (const MPoly& c : coeffs) {
        if (c.is_zero()) continue;
        if (!c.is_homogeneous()) throw std::domain_error("Derivation::degree: inhomogeneous coefficient");
        if (d == -1)
            d = c.total_degree();
        else if (d != c.total_degree())
            throw std::domain_error("Derivation::degree: mixed coefficient degrees");
    }
    if (d == -1) throw std::domain_error("Derivation::degree: zero derivation");
    return d;
}

MPoly Derivation::apply(const MPoly& f) const {
    MPoly r(f.nvars());
    for (int i = 0; i < nvars(); ++i)
        if (!coeffs[i].is_zero()) r += coeffs[i] * f.derivative(i);
    return r;
}

MPoly Derivation::apply_linear(const Covector& a) const {
    MPoly r(nvars());
    for (int i = 0; i < nvars(); ++i)
        if (a.coords[i] != 0) r += coeffs[i] * Rat(a.coords[i]);
    return r;
}

Derivation Derivation::operator+(const Derivation& o) const {
    Derivation r = *this;
    for (int i = 0; i < nvars(); ++i) r.coeffs[i] += o.coeffs[i];
    return r;
}

Derivation Derivation::operator-(const Derivation& o) const {
    Derivation r = *this;
    for (int i = 0; i < nvars(); ++i) r.coeffs[i] -= o.coeffs[i];
    return r;
}

Derivation Derivation::operator*(const MPoly& f) const {
    Derivation r = *this;
    for (int i = 0; i < nvars(); ++i) r.coeffs[i] = r.coeffs[i] * f;
    return r;
}

Derivation Derivation::operator*(const Rat& c) const {
    Derivation r = *this;
    for (int i = 0; i < nvars(); ++i) r.coeffs[i] = r.coeffs[i] * c;
    return r;
}

std::string Derivation::to_string(const std::vector<std::string>& names) const {
    std::vector<std::string> vn = names.empty() ? default_var_names(nvars()) : names;
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < nvars(); ++i) {
        if (coeffs[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << coeffs[i].to_string(vn) << ")*d/d" << vn[i];
    }
    if (first) os << "0";
    return os.str();
}

bool in_derivation_module(const Multiarrangement& a, const Derivation& d) {
    for (int i = 0; i < a.size(); ++i) {
        if (a.mult(i) < 1) continue;
        MPoly val = d.apply_linear(a.hyperplane(i));
        if (val.is_zero()) continue;
        MPoly divisor = a.hyperplane(i).to_poly().pow(a.mult(i));
        if (!mpoly_divides(divisor, val)) return false;
    }
    return true;
}

std::vector<std::vector<int>> p_subsets(int n, int p) {
    std::vector<std::vector<int>> out;
    if (p < 0 || p > n) return out;
    std::vector<int> cur(p);
    for (int i = 0; i < p; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = p - 1;
        while (i >= 0 && cur[i] == n - p + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < p; ++j) cur[j] = cur[j - 1] + 1;
    }
    if (p == 0) out = {std::vector<int>{}};
    return out;
}

int LogForm::degree() const {
    int num_deg = -1;
    for (const MPoly& n : numerators)
        if (!n.is_zero()) {
            num_deg = n.total_degree();
            break;
        }
    if (num_deg < 0) throw std::domain_error("LogForm::degree: zero form");
    int den = 0;
    for (std::size_t i = 0; i < denom_exp.size(); ++i) den += denom_exp[i];
    return num_deg - den;
}

std::string LogForm::to_string() const {
    std::ostringstream os;
    auto vn = default_var_names(nvars);
    bool first = true;
    for (std::size_t s = 0; s < subsets.size(); ++s) {
        if (numerators[s].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << numerators[s].to_string() << ")";
        for (int i : subsets[s]) os << "^dx" << (i + 1);
    }
    if (first) os << "0";
    return os.str();
}

namespace {

// Wedge of d(alpha) with the numerator p-form: C_J = sum_{i in J}
// (-1)^{pos_J(i)} a_i eta_{J minus i}.
std::vector<MPoly> wedge_coeffs(const Covector& alpha, int nvars,
                                const std::vector<MPoly>& numerators,
                                const std::vector<std::vector<int>>& qsubs,
                                const std::map<std::vector<int>, int>& psub_index) {
    std::vector<MPoly> out(qsubs.size(), MPoly(nvars));
    for (std::size_t jidx = 0; jidx < qsubs.size(); ++jidx) {
        const auto& J = qsubs[jidx];
        MPoly acc(nvars);
        for (std::size_t pos = 0; pos < J.size(); ++pos) {
            int i = J[pos];
            if (alpha.coords[i] == 0) continue;
            std::vector<int> rest;
            for (int v : J)
                if (v != i) rest.push_back(v);
            const MPoly& eta = numerators[psub_index.at(rest)];
            if (eta.is_zero()) continue;
            Rat c = Rat(alpha.coords[i]);
            if (pos % 2 != 0) c = -c;
            acc += eta * c;
        }
        out[jidx] = std::move(acc);
    }
    return out;
}

// Per-hyperplane linearization frame: the expansion of every degree-D
// x-monomial in unimodular coordinates whose last coordinate is alpha_H.
struct HyperplaneFrame {
    // column (per x-monomial) of sparse (restricted-row-index, coeff) pairs
    std::vector<std::vector<std::pair<int, Rat>>> columns;
    int row_count = 0;
};

HyperplaneFrame build_frame(const Covector& alpha, int degree, int order) {
    const int l = alpha.dim();
    HyperplaneFrame fr;
    if (degree < 0) return fr;
    auto t = unimodular_completion(alpha.coords);
    // x = T^{-1} y; integral because T is unimodular.
    RatMatrix tm(l, l);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) tm.at(i, j) = Rat(t[i][j]);
    RatMatrix tinv = inverse(tm);
    std::vector<MPoly> lf(l); // x_j as a linear form in y
    for (int j = 0; j < l; ++j) {
        std::vector<Rat> row(l);
        for (int k = 0; k < l; ++k) row[k] = tinv.at(j, k);
        lf[j] = MPoly::linear_form(row);
    }
    // Row indexing: y-monomials of total degree `degree` with last exponent
    // < order, in descending grlex.
    std::map<Expo, int, GrlexGreater> row_index;
    {
        int idx = 0;
        for (const Expo& g : monomials_of_degree(l, degree))
            if (g[l - 1] < order) row_index.emplace(g, idx++);
        fr.row_count = idx;
    }
    // Monomial images built degree by degree: X_beta = X_beta' * lf[j].
    std::map<Expo, MPoly, GrlexGreater> images;
    images.emplace(Expo(l, 0), MPoly(l, Rat(1)));
    for (int d = 1; d <= degree; ++d) {
        for (const Expo& b : monomials_of_degree(l, d)) {
            int j = 0;
            while (b[j] == 0) ++j;
            Expo prev = b;
            prev[j] -= 1;
            images.emplace(b, images.at(prev) * lf[j]);
        }
    }
    for (const Expo& b : monomials_of_degree(l, degree)) {
        std::vector<std::pair<int, Rat>> col;
        for (const auto& [g, c] : images.at(b).terms()) {
            auto it = row_index.find(g);
            if (it != row_index.end()) col.emplace_back(it->second, c);
        }
        fr.columns.push_back(std::move(col));
    }
    return fr;
}

std::map<Expo, int, GrlexGreater> monomial_index(int nvars, int d) {
    std::map<Expo, int, GrlexGreater> idx;
    int k = 0;
    for (const Expo& e : monomials_of_degree(nvars, d)) idx.emplace(e, k++);
    return idx;
}

} // namespace

std::vector<Derivation> d_graded_piece(const Multiarrangement& a, int d, int kill_h) {
    const int l = a.dim();
    std::vector<Derivation> basis;
    if (d < 0) return basis;
    const auto monos = monomials_of_degree(l, d);
    const long n = static_cast<long>(monos.size());
    const long cols = l * n;

    // Count rows first.
    std::vector<int> active;
    for (int h = 0; h < a.size(); ++h)
        if (a.mult(h) >= 1) active.push_back(h);
    std::vector<HyperplaneFrame> frames(active.size());
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < static_cast<long>(active.size()); ++k) {
        int h = active[k];
        int order = std::min(a.mult(h), d + 1);
        frames[k] = build_frame(a.hyperplane(h), d, order);
    }
    long rows = 0;
    for (const auto& fr : frames) rows += fr.row_count;
    if (kill_h >= 0) rows += n;

    RatMatrix m(static_cast<int>(rows), static_cast<int>(cols));
    long row0 = 0;
    for (std::size_t k = 0; k < active.size(); ++k) {
        const Covector& alpha = a.hyperplane(active[k]);
        const HyperplaneFrame& fr = frames[k];
        for (int i = 0; i < l; ++i) {
            if (alpha.coords[i] == 0) continue;
            Rat ai(alpha.coords[i]);
            for (long b = 0; b < n; ++b)
                for (const auto& [r, c] : fr.columns[b])
                    m.at(static_cast<int>(row0 + r), static_cast<int>(i * n + b)) += ai * c;
        }
        row0 += fr.row_count;
    }
    if (kill_h >= 0) {
        const Covector& alpha = a.hyperplane(kill_h);
        for (long b = 0; b < n; ++b)
            for (int i = 0; i < l; ++i)
                if (alpha.coords[i] != 0)
                    m.at(static_cast<int>(row0 + b), static_cast<int>(i * n + b)) = Rat(alpha.coords[i]);
    }

    for (const auto& v : kernel_basis(m)) {
        Derivation der = Derivation::zero(l);
        for (int i = 0; i < l; ++i) {
            MPoly f(l);
            for (long b = 0; b < n; ++b)
                if (!is_zero(v[i * n + b])) f.add_term(monos[b], v[i * n + b]);
            der.coeffs[i] = std::move(f);
        }
        // Membership soundness: re-verify the divisibility definition
        // directly, independent of the linearized solve.
        if (!in_derivation_module(a, der))
            throw std::logic_error("d_graded_piece: solver produced a non-member");
        if (kill_h >= 0 && !der.apply_linear(a.hyperplane(kill_h)).is_zero())
            throw std::logic_error("d_graded_piece: kill condition violated");
        basis.push_back(std::move(der));
    }
    return basis;
}

long d_graded_dim(const Multiarrangement& a, int d) {
    return static_cast<long>(d_graded_piece(a, d).size());
}

std::vector<LogForm> omega_graded_piece(const Multiarrangement& a, int p, int d) {
    const int l = a.dim();
    if (p < 0 || p > l) throw std::invalid_argument("omega_graded_piece: p out of range");
    std::vector<LogForm> basis;
    const long mm = a.mult_total();
    const int D = d + static_cast<int>(mm); // numerator degree
    if (D < 0) return basis;
    const auto monos = monomials_of_degree(l, D);
    const long n = static_cast<long>(monos.size());
    const auto psubs = p_subsets(l, p);
    const auto qsubs = p_subsets(l, p + 1);
    std::map<std::vector<int>, int> psub_index;
    for (std::size_t i = 0; i < psubs.size(); ++i) psub_index[psubs[i]] = static_cast<int>(i);
    const long cols = static_cast<long>(psubs.size()) * n;

    std::vector<int> active;
    for (int h = 0; h < a.size(); ++h)
        if (a.mult(h) >= 1) active.push_back(h);
    std::vector<HyperplaneFrame> frames(active.size());
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < static_cast<long>(active.size()); ++k) {
        int h = active[k];
        int order = std::min(a.mult(h), D + 1);
        frames[k] = build_frame(a.hyperplane(h), D, order);
    }
    long rows = 0;
    for (const auto& fr : frames) rows += fr.row_count * static_cast<long>(qsubs.size());

    RatMatrix m(static_cast<int>(rows), static_cast<int>(cols));
    long row0 = 0;
    for (std::size_t k = 0; k < active.size(); ++k) {
        const Covector& alpha = a.hyperplane(active[k]);
        const HyperplaneFrame& fr = frames[k];
        for (std::size_t jidx = 0; jidx < qsubs.size(); ++jidx) {
            const auto& J = qsubs[jidx];
            for (std::size_t pos = 0; pos < J.size(); ++pos) {
                int i = J[pos];
                if (alpha.coords[i] == 0) continue;
                Rat c = Rat(alpha.coords[i]);
                if (pos % 2 != 0) c = -c;
                std::vector<int> rest;
                for (int v : J)
                    if (v != i) rest.push_back(v);
                long icol0 = static_cast<long>(psub_index.at(rest)) * n;
                for (long b = 0; b < n; ++b)
                    for (const auto& [r, cc] : fr.columns[b])
                        m.at(static_cast<int>(row0 + jidx * fr.row_count + r),
                             static_cast<int>(icol0 + b)) += c * cc;
            }
        }
        row0 += fr.row_count * static_cast<long>(qsubs.size());
    }

    std::vector<int> denom(a.size(), 0);
    for (int h = 0; h < a.size(); ++h) denom[h] = a.mult(h);
    for (const auto& v : kernel_basis(m)) {
        LogForm w;
        w.nvars = l;
        w.p = p;
        w.subsets = psubs;
        w.denom_exp = denom;
        for (std::size_t s = 0; s < psubs.size(); ++s) {
            MPoly f(l);
            for (long b = 0; b < n; ++b)
                if (!is_zero(v[s * n + b])) f.add_term(monos[b], v[s * n + b]);
            w.numerators.push_back(std::move(f));
        }
        if (!in_omega_module(a, a.mult(), w))
            throw std::logic_error("omega_graded_piece: solver produced a non-member");
        basis.push_back(std::move(w));
    }
    return basis;
}

long omega_graded_dim(const Multiarrangement& a, int p, int d) {
    return static_cast<long>(omega_graded_piece(a, p, d).size());
}

bool in_omega_module(const Multiarrangement& a, const std::vector<int>& m, const LogForm& w) {
    const int l = a.dim();
    // Clear denominators: omega = eta / Drho with Drho = prod alpha^denom.
    MPoly drho(l, Rat(1));
    for (int h = 0; h < a.size(); ++h)
        if (w.denom_exp[h] > 0) drho = drho * a.hyperplane(h).to_poly().pow(w.denom_exp[h]);
    MPoly qm(l, Rat(1));
    for (int h = 0; h < a.size(); ++h)
        if (m[h] > 0) qm = qm * a.hyperplane(h).to_poly().pow(m[h]);
    // Q_m * omega must be a polynomial form.
    for (const MPoly& eta : w.numerators)
        if (!eta.is_zero() && !mpoly_divides(drho, qm * eta)) return false;
    const auto qsubs = p_subsets(l, w.p + 1);
    std::map<std::vector<int>, int> psub_index;
    for (std::size_t i = 0; i < w.subsets.size(); ++i) psub_index[w.subsets[i]] = static_cast<int>(i);
    for (int h = 0; h < a.size(); ++h) {
        if (m[h] < 1) continue;
        std::vector<MPoly> cj =
            wedge_coeffs(a.hyperplane(h), l, w.numerators, qsubs, psub_index);
        MPoly divisor = a.hyperplane(h).to_poly().pow(m[h]);
        for (const MPoly& c : cj) {
            if (c.is_zero()) continue;
            auto cleared = mpoly_divide_exact(qm * c, drho);
            if (!cleared) return false;
            if (!mpoly_divides(divisor, *cleared)) return false;
        }
    }
    return true;
}

std::string SaitoCertificate::to_json() const {
    nlohmann::json j;
    j["verdict"] = "free";
    j["method"] = "saito";
    j["exponents"] = exponents;
    nlohmann::json basis_j = nlohmann::json::array();
    for (const Derivation& d : basis) {
        nlohmann::json row = nlohmann::json::array();
        for (const MPoly& c : d.coeffs) row.push_back(c.to_string());
        basis_j.push_back(row);
    }
    j["basis"] = basis_j;
    j["determinant"] = determinant.to_string();
    j["scalar"] = rat_to_string(scalar);
    return j.dump();
}

std::variant<SaitoCertificate, SaitoFailure> saito_check(const Multiarrangement& a,
                                                         const std::vector<Derivation>& candidates) {
    const int l = a.dim();
    if (static_cast<int>(candidates.size()) != l)
        return SaitoFailure{"need exactly dim-many candidates", -1};
    for (int i = 0; i < l; ++i)
        if (!in_derivation_module(a, candidates[i]))
            return SaitoFailure{"candidate " + std::to_string(i) + " is not in D(A,m)", i};
    std::vector<std::vector<MPoly>> m(l, std::vector<MPoly>(l, MPoly(l)));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) m[i][j] = candidates[i].coeffs[j];
    MPoly dt = det_poly(m);
    if (dt.is_zero()) return SaitoFailure{"determinant is zero (dependent candidates)", -1};
    MPoly q = a.defining_poly();
    auto ratio = mpoly_divide_exact(dt, q);
    if (!ratio || !ratio->is_constant())
        return SaitoFailure{"determinant is not a constant multiple of Q(A,m)", -1};
    SaitoCertificate cert;
    cert.basis = candidates;
    cert.determinant = dt;
    cert.scalar = ratio->coeff(Expo(l, 0));
    for (const Derivation& d : candidates) cert.exponents.push_back(d.is_zero() ? 0 : d.degree());
    std::sort(cert.exponents.begin(), cert.exponents.end());
    long esum = std::accumulate(cert.exponents.begin(), cert.exponents.end(), 0L);
    if (esum != a.mult_total())
        throw std::logic_error("saito_check: exponent sum differs from |m|");
    return cert;
}

namespace {

std::vector<Rat> derivation_to_vec(const Derivation& d,
                                   const std::map<Expo, int, GrlexGreater>& idx) {
    const long n = static_cast<long>(idx.size());
    std::vector<Rat> v(d.nvars() * n, Rat(0));
    for (int i = 0; i < d.nvars(); ++i)
        for (const auto& [e, c] : d.coeffs[i].terms()) v[i * n + idx.at(e)] = c;
    return v;
}

} // namespace

std::vector<GeneratorInfo> minimal_generators(const Multiarrangement& a, int cutoff) {
    const int l = a.dim();
    std::vector<GeneratorInfo> gens;
    std::vector<Derivation> prev;
    for (int d = 0; d <= cutoff; ++d) {
        auto idx = monomial_index(l, d);
        std::vector<Derivation> bd = d_graded_piece(a, d);
        // Columns: products x_j * (degree d-1 basis), then the new basis.
        std::vector<std::vector<Rat>> cols;
        for (const Derivation& p : prev)
            for (int j = 0; j < l; ++j) {
                Derivation q = p * MPoly::variable(l, j);
                cols.push_back(derivation_to_vec(q, idx));
            }
        const std::size_t span_count = cols.size();
        for (const Derivation& b : bd) cols.push_back(derivation_to_vec(b, idx));
        if (cols.empty()) {
            prev = std::move(bd);
            continue;
        }
        RatMatrix m(static_cast<int>(cols.front().size()), static_cast<int>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (std::size_t r = 0; r < cols[c].size(); ++r)
                m.at(static_cast<int>(r), static_cast<int>(c)) = cols[c][r];
        RrefResult rr = rref(m);
        for (int piv : rr.pivots)
            if (piv >= static_cast<int>(span_count))
                gens.push_back({d, bd[piv - span_count]});
        prev = std::move(bd);
    }
    return gens;
}

std::pair<int, int> rank2_exponents(const Multiarrangement& a) {
    EssentialResult ess = essentialize(a);
    if (ess.arr.dim() != 2) throw std::invalid_argument("rank2_exponents: rank must be 2");
    const long mm = ess.arr.mult_total();
    std::vector<long> dims(mm + 1, 0);
    int e1 = -1;
    for (int d = 0; d <= mm; ++d) {
        dims[d] = d_graded_dim(ess.arr, d);
        if (e1 < 0 && dims[d] > 0) e1 = d;
    }
    if (e1 < 0) throw std::logic_error("rank2_exponents: no derivations up to |m|");
    int e2 = static_cast<int>(mm) - e1;
    for (int d = 0; d <= mm; ++d) {
        long expect = std::max(0, d - e1 + 1) + std::max(0, d - e2 + 1);
        if (dims[d] != expect)
            throw std::logic_error(
                "rank2_exponents: graded dimensions do not fit a free rank-2 profile (would "
                "falsify rank-2 freeness) at degree " +
                std::to_string(d));
    }
    if (e1 > e2) std::swap(e1, e2);
    return {e1, e2};
}

std::pair<Derivation, Derivation> euler_decompose(const Multiarrangement& a, int h,
                                                  const Derivation& d) {
    const MPoly alpha = a.hyperplane(h).to_poly();
    auto q = mpoly_divide_exact(d.apply(alpha), alpha);
    if (!q) throw std::invalid_argument("euler_decompose: derivation is not logarithmic along H");
    Derivation euler_part = Derivation::euler(a.dim()) * (*q);
    Derivation rest = d - euler_part;
    if (!rest.is_zero() && !rest.apply(alpha).is_zero())
        throw std::logic_error("euler_decompose: complement does not kill alpha_H");
    return {euler_part, rest};
}

namespace {

// Restriction of a derivation killing alpha_h to the hyperplane, in the
// coordinates that drop the pivot coordinate of alpha_h.
Derivation restrict_derivation(const Multiarrangement& a, int h, int pivot, const Derivation& d) {
    const int l = a.dim();
    const Covector& alpha = a.hyperplane(h);
    std::vector<MPoly> vals(l, MPoly(l - 1));
    int pos = 0;
    std::vector<int> coord_of(l, -1);
    for (int k = 0; k < l; ++k)
        if (k != pivot) coord_of[k] = pos++;
    for (int k = 0; k < l; ++k) {
        if (k == pivot) {
            std::vector<Rat> coeffs(l - 1, Rat(0));
            for (int j = 0; j < l; ++j)
                if (j != pivot)
                    coeffs[coord_of[j]] = Rat(-alpha.coords[j]) / Rat(alpha.coords[pivot]);
            vals[k] = MPoly::linear_form(coeffs);
        } else {
            vals[k] = MPoly::variable(l - 1, coord_of[k]);
        }
    }
    Derivation r = Derivation::zero(l - 1);
    for (int k = 0; k < l; ++k) {
        if (k == pivot) continue;
        r.coeffs[coord_of[k]] = d.coeffs[k].substitute(vals);
    }
    return r;
}

} // namespace

ZieglerCokerReport ziegler_coker_dim(const Multiarrangement& a, int h) {
    if (a.rank() != 3) throw std::invalid_argument("ziegler_coker_dim: rank must be 3");
    RestrictionResult rr = ziegler_restrict(a, h);
    ZieglerCokerReport rep;
    rep.restriction_exponents = rank2_exponents(rr.ambient);
    auto [e1, e2] = rep.restriction_exponents;
    UPoly pi = IntersectionLattice::build(a).poincare_poly();
    rep.b3 = static_cast<int>(rat_to_long(pi.coeff(3)));
    rep.predicted = rep.b3 - e1 * e2;

    const int window = 3;
    const int cutoff = e1 + e2 + window + 2;
    int zeros_run = 0;
    bool stabilized = false;
    for (int d = 0; d <= cutoff; ++d) {
        std::vector<Derivation> src = d_graded_piece(a, d, h);
        auto idx = monomial_index(a.dim() - 1, d);
        std::vector<std::vector<Rat>> images;
        for (const Derivation& s : src) {
            Derivation restr = restrict_derivation(a, h, rr.pivot_coord, s);
            // Ziegler's containment: restrictions land in D(A^H, m^H).
            if (!in_derivation_module(rr.ambient, restr))
                throw std::logic_error("ziegler_coker_dim: restriction left D(A^H, m^H)");
            images.push_back(derivation_to_vec(restr, idx));
        }
        long target = d_graded_dim(rr.ambient, d);
        long rank = images.empty() ? 0 : rank_of(images, static_cast<int>((a.dim() - 1) * idx.size()));
        long ck = target - rank;
        rep.coker_by_degree.push_back(ck);
        rep.coker_dim += static_cast<int>(ck);
        if (d >= std::max(e1, e2)) {
            zeros_run = (ck == 0) ? zeros_run + 1 : 0;
            if (zeros_run >= window) {
                stabilized = true;
                break;
            }
        }
    }
    if (!stabilized)
        throw std::runtime_error("ziegler_coker_dim: cokernel did not stabilize before cutoff");
    if (rep.coker_dim != rep.predicted)
        throw std::logic_error("ziegler_coker_dim: computed " + std::to_string(rep.coker_dim) +
                               " but b3 - e1*e2 = " + std::to_string(rep.predicted));
    return rep;
}

int m_star(const Multiarrangement& a, int h0, const std::vector<int>& flat_hyperplanes) {
    Multiarrangement loc = localize(a, flat_hyperplanes);
    EssentialResult ess = essentialize(loc);
    if (ess.arr.dim() != 2) throw std::invalid_argument("m_star: localization must have rank 2");
    // Position of h0 inside the localization.
    int pos = -1;
    for (std::size_t i = 0; i < flat_hyperplanes.size(); ++i)
        if (flat_hyperplanes[i] == h0) pos = static_cast<int>(i);
    if (pos < 0) throw std::invalid_argument("m_star: h0 not in the flat");
    MPoly alpha0 = ess.arr.hyperplane(pos).to_poly();
    const long mm = ess.arr.mult_total();
    for (int d = 0; d <= mm; ++d) {
        for (const Derivation& b : d_graded_piece(ess.arr, d))
            for (const MPoly& c : b.coeffs)
                if (!c.is_zero() && !mpoly_divides(alpha0, c)) return d;
    }
    throw std::logic_error("m_star: no element outside alpha0*Der up to |m|");
}

namespace {

std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// Multiset difference a minus b; throws if b is not contained in a.
std::vector<int> multiset_diff(std::vector<int> a, const std::vector<int>& b) {
    for (int x : b) {
        auto it = std::find(a.begin(), a.end(), x);
        if (it == a.end()) throw std::domain_error("multiset_diff: not contained");
        a.erase(it);
    }
    return a;
}

} // namespace

void check_addel_triple(std::vector<int> full, std::vector<int> deleted,
                        std::vector<int> restricted) {
    full = sorted(std::move(full));
    deleted = sorted(std::move(deleted));
    restricted = sorted(std::move(restricted));
    std::string msg = "addition-deletion triple is inconsistent";
    if (full.size() != deleted.size() || restricted.size() + 1 != full.size())
        throw std::domain_error(msg + " (sizes)");
    std::vector<int> df, dd;
    try {
        df = multiset_diff(full, restricted);
        dd = multiset_diff(deleted, restricted);
    } catch (const std::domain_error&) {
        throw std::domain_error(msg + " (shared exponents)");
    }
    if (df.size() != 1 || dd.size() != 1 || df[0] != dd[0] + 1)
        throw std::domain_error(msg + " (exponent step)");
}

std::optional<std::vector<int>> try_exponents(const Multiarrangement& a) {
    const int l = a.dim();
    std::vector<int> sup = a.support();
    if (sup.empty()) return std::vector<int>(l, 0);
    int r = a.rank();
    if (r == 1) {
        std::vector<int> e(l, 0);
        int total = 0;
        for (int i : sup) total += a.mult(i);
        e[l - 1] = total;
        return sorted(e);
    }
    if (r == 2) {
        auto [e1, e2] = rank2_exponents(a);
        std::vector<int> e(l - 2, 0);
        e.push_back(e1);
        e.push_back(e2);
        return sorted(e);
    }
    // Saito search up to |m|.
    auto gens = minimal_generators(a, static_cast<int>(a.mult_total()));
    if (static_cast<int>(gens.size()) != l) return std::nullopt;
    std::vector<Derivation> cand;
    for (const auto& g : gens) cand.push_back(g.rep);
    auto res = saito_check(a, cand);
    if (std::holds_alternative<SaitoFailure>(res)) return std::nullopt;
    return std::get<SaitoCertificate>(res).exponents;
}

std::optional<std::vector<int>> exponents_by_fitting(const Multiarrangement& a, int window) {
    const int l = a.dim();
    const long mm = a.mult_total();
    std::vector<GeneratorInfo> gens;
    std::vector<Derivation> prev;
    long degree_sum = 0;
    for (int d = 0; d <= mm + window; ++d) {
        auto idx = monomial_index(l, d);
        std::vector<Derivation> bd = d_graded_piece(a, d);
        if (degree_sum == mm && static_cast<int>(gens.size()) == l) {
            // Verification phase: dims must follow the free prediction.
            long expect = 0;
            for (const auto& g : gens) expect += monomial_count(l, d - g.degree);
            if (static_cast<long>(bd.size()) != expect) return std::nullopt;
            if (d == static_cast<int>(gens.back().degree) + window) break;
            prev = std::move(bd);
            continue;
        }
        std::vector<std::vector<Rat>> cols;
        for (const Derivation& p : prev)
            for (int j = 0; j < l; ++j) cols.push_back(derivation_to_vec(p * MPoly::variable(l, j), idx));
        const std::size_t span_count = cols.size();
        for (const Derivation& b : bd) cols.push_back(derivation_to_vec(b, idx));
        if (!cols.empty()) {
            RatMatrix m(static_cast<int>(cols.front().size()), static_cast<int>(cols.size()));
            for (std::size_t c = 0; c < cols.size(); ++c)
                for (std::size_t r = 0; r < cols[c].size(); ++r)
                    m.at(static_cast<int>(r), static_cast<int>(c)) = cols[c][r];
            RrefResult rr = rref(m);
            for (int piv : rr.pivots)
                if (piv >= static_cast<int>(span_count)) {
                    gens.push_back({d, bd[piv - span_count]});
                    degree_sum += d;
                }
        }
        if (degree_sum > mm || static_cast<int>(gens.size()) > l) return std::nullopt;
        prev = std::move(bd);
    }
    if (degree_sum != mm || static_cast<int>(gens.size()) != l) return std::nullopt;
    std::vector<int> es;
    for (const auto& g : gens) es.push_back(g.degree);
    std::sort(es.begin(), es.end());
    return es;
}

AddelRecord addition_deletion(const Multiarrangement& a, int h0) {
    if (h0 < 0 || h0 >= a.size() || a.mult(h0) < 1)
        throw std::invalid_argument("addition_deletion: need m(H0) > 0");
    AddelRecord rec;
    rec.exp_full = try_exponents(a);
    rec.exp_deleted = try_exponents(delete_one(a, h0));
    // A'' with the m* multiplicity.
    RestrictionResult rest = plain_restrict(a, h0);
    {
        std::vector<int> mstar;
        for (const auto& orig : rest.origin) {
            std::vector<int> flat = orig;
            flat.push_back(h0);
            mstar.push_back(m_star(a, h0, flat));
        }
        rec.exp_restricted = try_exponents(rest.ambient.with_mult(mstar));
    }

    int have = int(rec.exp_full.has_value()) + int(rec.exp_deleted.has_value()) +
               int(rec.exp_restricted.has_value());
    if (have < 2) return rec; // fewer than two resolvable: nothing to infer

    if (have == 3) {
        check_addel_triple(*rec.exp_full, *rec.exp_deleted, *rec.exp_restricted);
        rec.all_consistent = true;
        rec.used_pair = "all";
        return rec;
    }
    if (!rec.exp_full) {
        auto extra = multiset_diff(*rec.exp_deleted, *rec.exp_restricted);
        if (extra.size() != 1)
            throw std::domain_error("addition_deletion: deleted/restricted do not fit the pattern");
        std::vector<int> full = *rec.exp_restricted;
        full.push_back(extra[0] + 1);
        rec.exp_full = sorted(full);
        rec.inferred_full = true;
        rec.used_pair = "deleted+restricted";
    } else if (!rec.exp_deleted) {
        auto extra = multiset_diff(*rec.exp_full, *rec.exp_restricted);
        if (extra.size() != 1)
            throw std::domain_error("addition_deletion: full/restricted do not fit the pattern");
        std::vector<int> del = *rec.exp_restricted;
        del.push_back(extra[0] - 1);
        rec.exp_deleted = sorted(del);
        rec.inferred_deleted = true;
        rec.used_pair = "full+restricted";
    } else {
        // full and deleted known; shared part is the restriction.
        std::vector<int> full = sorted(*rec.exp_full), del = sorted(*rec.exp_deleted);
        std::vector<int> shared;
        std::vector<int> d2 = del;
        for (int x : full) {
            auto it = std::find(d2.begin(), d2.end(), x);
            if (it != d2.end()) {
                shared.push_back(x);
                d2.erase(it);
            }
        }
        if (shared.size() + 1 != full.size())
            throw std::domain_error("addition_deletion: full/deleted do not fit the pattern");
        auto fx = multiset_diff(full, shared);
        auto dx = multiset_diff(del, shared);
        if (fx.size() != 1 || dx.size() != 1 || fx[0] != dx[0] + 1)
            throw std::domain_error("addition_deletion: full/deleted do not fit the pattern");
        rec.exp_restricted = sorted(shared);
        rec.inferred_restricted = true;
        rec.used_pair = "full+deleted";
    }
    return rec;
}

namespace {

using VerdictCache = std::map<std::string, FreenessVerdict>;

FreenessVerdict freeness_impl(const Multiarrangement& a, VerdictCache& cache);

FreenessVerdict make_free(const Multiarrangement& a, std::vector<int> exps, std::string method,
                          std::optional<SaitoCertificate> cert) {
    FreenessVerdict v;
    v.kind = FreenessVerdict::Kind::Free;
    v.exponents = sorted(std::move(exps));
    v.method = std::move(method);
    v.certificate = std::move(cert);
    long esum = std::accumulate(v.exponents.begin(), v.exponents.end(), 0L);
    if (esum != a.mult_total())
        throw std::logic_error("freeness_test: exponent sum violates |m| = sum e_i");
    // Terao factorization is asserted for every simple Free verdict.
    if (a.is_simple()) {
        UPoly chi = IntersectionLattice::build(a).char_poly();
        UPoly prod = UPoly::constant(Rat(1));
        for (int e : v.exponents) prod = prod * UPoly(std::vector<Rat>{Rat(-e), Rat(1)});
        if (chi != prod)
            throw std::logic_error("freeness_test: Free verdict violates Terao factorization");
    }
    return v;
}

std::optional<SaitoCertificate> search_certificate(const Multiarrangement& a, int cutoff) {
    auto gens = minimal_generators(a, cutoff);
    if (static_cast<int>(gens.size()) != a.dim()) return std::nullopt;
    std::vector<Derivation> cand;
    for (const auto& g : gens) cand.push_back(g.rep);
    auto res = saito_check(a, cand);
    if (std::holds_alternative<SaitoFailure>(res)) return std::nullopt;
    return std::get<SaitoCertificate>(res);
}

FreenessVerdict freeness_rank3_simple(const Multiarrangement& a) {
    EssentialResult ess = essentialize(a);
    UPoly chi = IntersectionLattice::build(ess.arr).char_poly();
    // chi must factor as (t-1)(t-e2)(t-e3) over nonnegative integers.
    auto [q, rem] = chi.divmod(UPoly(std::vector<Rat>{Rat(-1), Rat(1)}));
    if (!rem.is_zero()) throw std::logic_error("freeness: (t-1) does not divide chi");
    auto roots = q.rational_roots();
    int total = 0;
    bool ok = true;
    std::vector<int> es;
    for (const auto& [root, mult] : roots) {
        if (!is_integer(root) || sgn(root) < 0) {
            ok = false;
            break;
        }
        for (int i = 0; i < mult; ++i) es.push_back(static_cast<int>(rat_to_long(root)));
        total += mult;
    }
    if (!ok || total != 2) {
        FreenessVerdict v;
        v.kind = FreenessVerdict::Kind::NotFree;
        v.method = "cor3dim";
        v.witness = "characteristic polynomial " + chi.to_string() +
                    " does not factor as (t-1)(t-e2)(t-e3) over nonnegative integers";
        return v;
    }
    std::sort(es.begin(), es.end());
    std::pair<int, int> first_seen{-1, -1};
    for (int h = 0; h < ess.arr.size(); ++h) {
        auto exps = rank2_exponents(ziegler_restrict(ess.arr, h).ambient);
        if (h == 0) first_seen = exps;
        if (exps.first == es[0] && exps.second == es[1]) {
            std::vector<int> full(a.dim() - 3, 0);
            full.push_back(1);
            full.push_back(es[0]);
            full.push_back(es[1]);
            auto cert = search_certificate(a, std::max(es[1], 1));
            if (!cert)
                throw std::logic_error("freeness: cor3dim held but no Saito basis was found");
            return make_free(a, full, "cor3dim", cert);
        }
    }
    FreenessVerdict v;
    v.kind = FreenessVerdict::Kind::NotFree;
    v.method = "cor3dim";
    std::ostringstream w;
    w << "restriction exponents (" << first_seen.first << "," << first_seen.second << ") != ("
      << es[0] << "," << es[1] << ")";
    v.witness = w.str();
    return v;
}

FreenessVerdict freeness_high_rank_simple(const Multiarrangement& a, VerdictCache& cache) {
    EssentialResult ess = essentialize(a);
    const int r = ess.arr.dim();
    UPoly chi = IntersectionLattice::build(ess.arr).char_poly();
    // Terao factorization filter first.
    auto roots = chi.rational_roots();
    std::vector<int> es;
    int total = 0;
    for (const auto& [root, mult] : roots) {
        if (!is_integer(root) || sgn(root) < 0) break;
        for (int i = 0; i < mult; ++i) es.push_back(static_cast<int>(rat_to_long(root)));
        total += mult;
    }
    if (total != r) {
        FreenessVerdict v;
        v.kind = FreenessVerdict::Kind::NotFree;
        v.method = "thmchar";
        v.witness = "characteristic polynomial " + chi.to_string() +
                    " does not factor over nonnegative integers";
        return v;
    }
    IntersectionLattice lat = IntersectionLattice::build(ess.arr);
    bool any_unknown = false;
    for (int h = 0; h < ess.arr.size(); ++h) {
        RestrictionResult rr = ziegler_restrict(ess.arr, h);
        FreenessVerdict sub = freeness_impl(rr.ambient, cache);
        if (sub.kind == FreenessVerdict::Kind::NotFree) {
            FreenessVerdict v;
            v.kind = FreenessVerdict::Kind::NotFree;
            v.method = "thmchar";
            v.witness = "Ziegler restriction to hyperplane " + std::to_string(h) +
                        " is not free: " + sub.witness;
            return v;
        }
        if (sub.kind == FreenessVerdict::Kind::Unknown) {
            any_unknown = true;
            continue;
        }
        // Localizations at proper flats contained in H must all be free.
        bool loc_ok = true;
        for (int c = 1; c < r && loc_ok; ++c) {
            for (const Flat& f : lat.flats(c)) {
                if (!std::binary_search(f.contains.begin(), f.contains.end(), h)) continue;
                if (static_cast<int>(f.contains.size()) <= 1) continue;
                FreenessVerdict lv = freeness_impl(localize(ess.arr, f.contains), cache);
                if (lv.kind == FreenessVerdict::Kind::NotFree) {
                    FreenessVerdict v;
                    v.kind = FreenessVerdict::Kind::NotFree;
                    v.method = "thmchar";
                    v.witness = "localization at a flat in hyperplane " + std::to_string(h) +
                                " is not free: " + lv.witness;
                    return v;
                }
                if (lv.kind == FreenessVerdict::Kind::Unknown) {
                    loc_ok = false;
                    any_unknown = true;
                    break;
                }
            }
        }
        if (!loc_ok) continue;
        // Conditions (a) and (b) hold for this hyperplane.
        std::vector<int> full(a.dim() - r, 0);
        full.push_back(1);
        for (int e : sub.exponents)
            if (e != 0) full.push_back(e);
        // Essential restrictions have no zero exponents; pad only if one
        // slipped through the filter above.
        while (static_cast<int>(full.size()) < a.dim()) full.push_back(0);
        int cutoff = *std::max_element(full.begin(), full.end());
        auto cert = search_certificate(a, std::max(cutoff, 1));
        if (!cert) throw std::logic_error("freeness: thmchar held but no Saito basis was found");
        return make_free(a, full, "thmchar", cert);
    }
    FreenessVerdict v;
    v.kind = FreenessVerdict::Kind::Unknown;
    v.reason = any_unknown ? "some restriction or localization verdicts were inconclusive"
                           : "no hyperplane satisfied the restriction criterion";
    return v;
}

FreenessVerdict freeness_multi(const Multiarrangement& a, VerdictCache& cache) {
    // Saito search first.
    auto cert = search_certificate(a, static_cast<int>(a.mult_total()));
    if (cert) return make_free(a, cert->exponents, "saito", cert);
    // Addition-deletion: recurse on a deletion and combine with the m*
    // restriction; the cache keeps the chain exploration polynomial.
    for (int h0 : a.support()) {
        FreenessVerdict del = freeness_impl(delete_one(a, h0), cache);
        if (!del.is_free()) continue;
        RestrictionResult rest = plain_restrict(a, h0);
        std::vector<int> mstar;
        for (const auto& orig : rest.origin) {
            std::vector<int> flat = orig;
            flat.push_back(h0);
            mstar.push_back(m_star(a, h0, flat));
        }
        auto restricted_opt = try_exponents(rest.ambient.with_mult(mstar));
        if (!restricted_opt) continue;
        std::vector<int> restricted = *restricted_opt;
        // pad restriction exponents to dim-1 with zeros
        while (static_cast<int>(restricted.size()) < a.dim() - 1) restricted.push_back(0);
        try {
            auto extra = multiset_diff(del.exponents, sorted(restricted));
            if (extra.size() != 1) continue;
            std::vector<int> full = sorted(restricted);
            full.push_back(extra[0] + 1);
            return make_free(a, full, "addel", std::nullopt);
        } catch (const std::domain_error&) {
            continue;
        }
    }
    FreenessVerdict v;
    v.kind = FreenessVerdict::Kind::Unknown;
    v.reason = "Saito search up to |m| and addition-deletion chains were inconclusive";
    return v;
}

FreenessVerdict freeness_impl(const Multiarrangement& a, VerdictCache& cache) {
    std::string key = format_arr(a);
    auto hit = cache.find(key);
    if (hit != cache.end()) return hit->second;
    FreenessVerdict v;
    const int l = a.dim();
    std::vector<int> sup = a.support();
    bool eff_simple = true;
    for (int i : sup)
        if (a.mult(i) != 1) eff_simple = false;
    const int r = a.rank();
    if (sup.empty()) {
        v = make_free(a, std::vector<int>(l, 0), "rank2", std::nullopt);
    } else if (r <= 2) {
        std::vector<int> exps(l, 0);
        if (r == 1) {
            int total = 0;
            for (int i : sup) total += a.mult(i);
            exps[l - 1] = total;
        } else {
            auto [e1, e2] = rank2_exponents(a);
            exps[l - 2] = e1;
            exps[l - 1] = e2;
        }
        auto cert = search_certificate(a, static_cast<int>(a.mult_total()));
        v = make_free(a, exps, "rank2", cert);
    } else if (eff_simple) {
        Multiarrangement simple = localize(a, sup); // drops multiplicity-0 hyperplanes
        v = (r == 3) ? freeness_rank3_simple(simple) : freeness_high_rank_simple(simple, cache);
    } else {
        v = freeness_multi(a, cache);
    }
    cache.emplace(std::move(key), v);
    return v;
}

} // namespace

FreenessVerdict freeness_test(const Multiarrangement& a) {
    VerdictCache cache;
    return freeness_impl(a, cache);
}

std::string FreenessVerdict::to_json() const {
    nlohmann::json j;
    switch (kind) {
        case Kind::Free: j["verdict"] = "free"; break;
        case Kind::NotFree: j["verdict"] = "not_free"; break;
        case Kind::Unknown: j["verdict"] = "unknown"; break;
    }
    if (kind == Kind::Free) {
        j["exponents"] = exponents;
        j["method"] = method;
        if (certificate) {
            nlohmann::json basis_j = nlohmann::json::array();
            for (const Derivation& d : certificate->basis) {
                nlohmann::json row = nlohmann::json::array();
                for (const MPoly& c : d.coeffs) row.push_back(c.to_string());
                basis_j.push_back(row);
            }
            j["basis"] = basis_j;
            j["determinant"] = certificate->determinant.to_string();
            j["scalar"] = rat_to_string(certificate->scalar);
        }
    }
    if (kind == Kind::NotFree) {
        j["method"] = method;
        j["witness"] = witness;
    }
    if (kind == Kind::Unknown) j["reason"] = reason;
    return j.dump();
}

} // namespace arrkit
