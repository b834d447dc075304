#include "arrkit/lattice.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"

namespace arrkit {

bool Flat::contains_flat(const Flat& other) const {
    // For intersection-lattice flats, subspace containment is equivalent to
    // inclusion of the hyperplane sets (a flat is the intersection of the
    // hyperplanes containing it).
    return std::includes(other.contains.begin(), other.contains.end(), contains.begin(),
                         contains.end());
}

namespace {

// Canonical RREF rows of the span of the given covectors.
std::vector<std::vector<Rat>> canonical_span(const Multiarrangement& a,
                                             const std::vector<int>& hyps) {
    RatMatrix m(static_cast<int>(hyps.size()), a.dim());
    for (std::size_t i = 0; i < hyps.size(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            m.at(static_cast<int>(i), j) = Rat(a.hyperplane(hyps[i]).coords[j]);
    RrefResult rr = rref(m);
    std::vector<std::vector<Rat>> rows;
    for (int r = 0; r < rr.rank; ++r) {
        std::vector<Rat> row(a.dim());
        for (int j = 0; j < a.dim(); ++j) row[j] = rr.rref.at(r, j);
        rows.push_back(std::move(row));
    }
    return rows;
}

// Hyperplanes whose covector lies in the span.
std::vector<int> span_members(const Multiarrangement& a, const std::vector<std::vector<Rat>>& span,
                              const std::vector<int>& support) {
    std::vector<int> mem;
    for (int i : support) {
        std::vector<std::vector<Rat>> rows = span;
        std::vector<Rat> v(a.dim());
        for (int j = 0; j < a.dim(); ++j) v[j] = Rat(a.hyperplane(i).coords[j]);
        rows.push_back(v);
        if (rank_of(rows, a.dim()) == static_cast<int>(span.size())) mem.push_back(i);
    }
    return mem;
}

} // namespace

IntersectionLattice IntersectionLattice::build(const Multiarrangement& a) {
    std::vector<int> sup = a.support();
    if (sup.empty()) throw std::invalid_argument("build_lattice: no hyperplane with m >= 1");
    IntersectionLattice lat;
    lat.dim_ = a.dim();

    Flat top;
    top.codim = 0;
    top.moebius = 1;
    lat.by_codim_.push_back({top});

    // Incremental closure: intersect flats of codimension c with hyperplanes
    // to produce codimension c+1, deduplicating by the contains-set.
    while (true) {
        const auto& prev = lat.by_codim_.back();
        int codim = static_cast<int>(lat.by_codim_.size() - 1);
        std::set<std::vector<int>> seen;
        std::vector<Flat> next;
        for (const Flat& f : prev) {
            for (int h : sup) {
                if (std::binary_search(f.contains.begin(), f.contains.end(), h)) continue;
                std::vector<int> gens = f.contains;
                gens.push_back(h);
                std::vector<std::vector<Rat>> span = canonical_span(a, gens);
                if (static_cast<int>(span.size()) != codim + 1) continue; // h did not cut down
                std::vector<int> mem = span_members(a, span, sup);
                if (!seen.insert(mem).second) continue;
                Flat nf;
                nf.span = std::move(span);
                nf.contains = std::move(mem);
                nf.codim = codim + 1;
                next.push_back(std::move(nf));
            }
        }
        if (next.empty()) break;
        lat.by_codim_.push_back(std::move(next));
    }

    // Moebius recursion: sum over flats above (strictly containing) X.
    for (int c = 1; c <= lat.max_codim(); ++c) {
        for (Flat& x : lat.by_codim_[c]) {
            long sum = 0;
            for (int c2 = 0; c2 < c; ++c2)
                for (const Flat& y : lat.by_codim_[c2])
                    if (y.contains_flat(x)) sum += y.moebius;
            x.moebius = -sum;
        }
    }
    return lat;
}

UPoly IntersectionLattice::char_poly() const {
    std::vector<Rat> coeffs(dim_ + 1, Rat(0));
    for (const auto& level : by_codim_)
        for (const Flat& f : level) coeffs[dim_ - f.codim] += Rat(f.moebius);
    return UPoly(std::move(coeffs));
}

UPoly IntersectionLattice::poincare_poly() const {
    UPoly chi = char_poly();
    std::vector<Rat> coeffs(dim_ + 1, Rat(0));
    // (-t)^l chi(-1/t): coefficient of t^{l-k} is c_k (-1)^{l-k}.
    for (int k = 0; k <= dim_; ++k) {
        Rat c = chi.coeff(k);
        if ((dim_ - k) % 2 != 0) c = -c;
        coeffs[dim_ - k] = c;
    }
    return UPoly(std::move(coeffs));
}

Int IntersectionLattice::chamber_count() const {
    Rat v = char_poly().eval(Rat(-1));
    return abs(v.get_num());
}

std::vector<long> IntersectionLattice::moebius_by_zeta_inversion() const {
    // Order flats V, then by codimension; zeta(i,j) = 1 iff flat_i >= flat_j
    // (i contains j as subspaces). mu = zeta^{-1}; read off the top row.
    std::vector<const Flat*> flats;
    for (const auto& level : by_codim_)
        for (const Flat& f : level) flats.push_back(&f);
    const int n = static_cast<int>(flats.size());
    RatMatrix zeta(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            zeta.at(i, j) = (flats[i]->contains_flat(*flats[j])) ? 1 : 0;
    RatMatrix inv = inverse(zeta);
    std::vector<long> mu(n);
    for (int j = 0; j < n; ++j) mu[j] = rat_to_long(inv.at(0, j));
    return mu;
}

std::string IntersectionLattice::report_json() const {
    nlohmann::json j;
    j["dim"] = dim_;
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& level : by_codim_) {
        nlohmann::json lv = nlohmann::json::array();
        for (const Flat& f : level) {
            nlohmann::json fj;
            fj["contains"] = f.contains;
            fj["mu"] = f.moebius;
            lv.push_back(fj);
        }
        levels.push_back(lv);
    }
    j["flats_by_codim"] = levels;
    std::vector<long> chi;
    UPoly cp = char_poly();
    for (int k = 0; k <= cp.degree(); ++k) chi.push_back(rat_to_long(cp.coeff(k)));
    j["chi"] = chi;
    return j.dump();
}

Int fq_count_formula(const Multiarrangement& a, long q) {
    UPoly chi = IntersectionLattice::build(a).char_poly();
    Rat v = chi.eval(Rat(q));
    return v.get_num();
}

Int fq_count_enumerate(const Multiarrangement& a, long q, long budget) {
    auto is_prime = [](long n) {
        if (n < 2) return false;
        for (long d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    };
    if (!is_prime(q))
        throw std::invalid_argument("fq_count_enumerate: enumeration needs a prime q");
    double total = 1;
    for (int i = 0; i < a.dim(); ++i) total *= static_cast<double>(q);
    if (total > static_cast<double>(budget))
        throw std::invalid_argument("fq_count_enumerate: q^l exceeds the enumeration budget");
    std::vector<int> sup = a.support();
    std::vector<long> x(a.dim(), 0);
    long count = 0;
    while (true) {
        bool off_union = true;
        for (int i : sup) {
            long s = 0;
            for (int j = 0; j < a.dim(); ++j) s += a.hyperplane(i).coords[j] * x[j];
            if (((s % q) + q) % q == 0) {
                off_union = false;
                break;
            }
        }
        if (off_union) ++count;
        int k = 0;
        while (k < a.dim() && ++x[k] == q) x[k++] = 0;
        if (k == a.dim()) break;
    }
    return Int(count);
}

namespace {

// One strict inequality sum c_i x_i + c_0 > 0 over the rationals.
struct Ineq {
    std::vector<Rat> c; // coefficients, constant term last
};

// Fourier-Motzkin elimination on strict inequalities; returns feasibility.
// Row layout: variable coefficients first, the constant term last.
bool fm_feasible(std::vector<Ineq> sys, int nvars) {
    for (int v = nvars - 1; v >= 0; --v) {
        std::vector<Ineq> pos, neg, next;
        for (auto& q : sys) {
            int s = sgn(q.c[v]);
            if (s > 0)
                pos.push_back(std::move(q));
            else if (s < 0)
                neg.push_back(std::move(q));
            else {
                q.c.erase(q.c.begin() + v);
                next.push_back(std::move(q));
            }
        }
        for (const Ineq& p : pos)
            for (const Ineq& n : neg) {
                // p: a x_v + P > 0 and n: -b x_v + N > 0 combine to bP + aN > 0.
                Rat a = p.c[v], b = -n.c[v];
                Ineq comb;
                comb.c.reserve(p.c.size() - 1);
                for (std::size_t i = 0; i < p.c.size(); ++i) {
                    if (static_cast<int>(i) == v) continue;
                    comb.c.push_back(b * p.c[i] + a * n.c[i]);
                }
                next.push_back(std::move(comb));
            }
        sys = std::move(next);
    }
    for (const Ineq& q : sys)
        if (sgn(q.c.back()) <= 0) return false; // leftover constant must be positive
    return true;
}

} // namespace

Int chamber_count_sign_vectors(const Multiarrangement& a) {
    std::vector<int> sup = a.support();
    const int n = static_cast<int>(sup.size());
    if (n > 20) throw std::invalid_argument("chamber_count_sign_vectors: too many hyperplanes");
    long count = 0;
    for (long mask = 0; mask < (1L << n); ++mask) {
        std::vector<Ineq> sys;
        for (int i = 0; i < n; ++i) {
            Ineq q;
            q.c.assign(a.dim() + 1, Rat(0));
            long s = (mask & (1L << i)) ? 1 : -1;
            for (int j = 0; j < a.dim(); ++j) q.c[j] = Rat(s * a.hyperplane(sup[i]).coords[j]);
            sys.push_back(std::move(q));
        }
        if (fm_feasible(std::move(sys), a.dim())) ++count;
    }
    return Int(count);
}

std::vector<PlanarPoint> l2_points(const Multiarrangement& arr, int h) {
    if (arr.rank() != 3)
        throw std::invalid_argument("l2_points: arrangement must have rank 3");
    // Hyperplane indices survive essentialization, so a non-essential
    // rank-3 input is fine.
    Multiarrangement a = arr.dim() == 3 ? arr : essentialize(arr).arr;
    DeconeResult dec = decone(a, h);
    std::vector<PlanarPoint> pts;
    const auto& ls = dec.lines;
    auto on_line = [&](const std::vector<Rat>& line, const Rat& x, const Rat& y) {
        return is_zero(line[0] * x + line[1] * y + line[2]);
    };
    for (std::size_t i = 0; i < ls.size(); ++i)
        for (std::size_t j = i + 1; j < ls.size(); ++j) {
            Rat det = ls[i][0] * ls[j][1] - ls[i][1] * ls[j][0];
            if (is_zero(det)) continue; // parallel lines, no affine point
            Rat x = (-ls[i][2] * ls[j][1] + ls[j][2] * ls[i][1]) / det;
            Rat y = (-ls[i][0] * ls[j][2] + ls[j][0] * ls[i][2]) / det;
            bool known = false;
            for (const PlanarPoint& p : pts)
                if (p.x == x && p.y == y) {
                    known = true;
                    break;
                }
            if (known) continue;
            PlanarPoint p;
            p.x = x;
            p.y = y;
            int through = 0;
            for (const auto& line : ls)
                if (on_line(line, x, y)) ++through;
            p.mu = through - 1;
            pts.push_back(std::move(p));
        }
    return pts;
}

} // namespace arrkit
