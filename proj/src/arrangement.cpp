#include "arrkit/arrangement.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace arrkit {

Covector Covector::canonical(std::vector<long> raw) {
    long g = 0;
    for (long v : raw) g = std::gcd(g, v);
    if (g == 0) throw std::invalid_argument("Covector: zero covector");
    for (long& v : raw) v /= g;
    for (long v : raw) {
        if (v > 0) break;
        if (v < 0) {
            for (long& w : raw) w = -w;
            break;
        }
    }
    return Covector{std::move(raw)};
}

std::string Covector::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
    os << ")";
    return os.str();
}

Multiarrangement Multiarrangement::make(int dim, const std::vector<std::vector<long>>& covectors,
                                        const std::vector<int>& mult) {
    if (!mult.empty() && mult.size() != covectors.size())
        throw std::invalid_argument("Multiarrangement::make: covector/multiplicity length mismatch");
    std::map<Covector, int> merged;
    std::vector<Covector> order; // first-seen order of distinct hyperplanes
    for (std::size_t i = 0; i < covectors.size(); ++i) {
        if (static_cast<int>(covectors[i].size()) != dim)
            throw std::invalid_argument("Multiarrangement::make: covector dimension mismatch");
        int m = mult.empty() ? 1 : mult[i];
        if (m < 0) throw std::invalid_argument("Multiarrangement::make: negative multiplicity");
        Covector c = Covector::canonical(covectors[i]);
        auto [it, inserted] = merged.emplace(c, 0);
        if (inserted) order.push_back(c);
        it->second += m;
    }
    Multiarrangement a;
    a.dim_ = dim;
    for (const Covector& c : order) {
        a.hyperplanes_.push_back(c);
        a.mult_.push_back(merged.at(c));
    }
    return a;
}

long Multiarrangement::mult_total() const {
    return std::accumulate(mult_.begin(), mult_.end(), 0L);
}

bool Multiarrangement::is_simple() const {
    for (int m : mult_)
        if (m != 1) return false;
    return true;
}

std::vector<int> Multiarrangement::support() const {
    std::vector<int> s;
    for (int i = 0; i < size(); ++i)
        if (mult_[i] >= 1) s.push_back(i);
    return s;
}

int Multiarrangement::rank() const {
    std::vector<std::vector<Rat>> rows;
    for (int i : support()) {
        std::vector<Rat> r(dim_);
        for (int j = 0; j < dim_; ++j) r[j] = Rat(hyperplanes_[i].coords[j]);
        rows.push_back(std::move(r));
    }
    return rank_of(rows, dim_);
}

Multiarrangement Multiarrangement::with_mult(const std::vector<int>& m) const {
    if (m.size() != mult_.size())
        throw std::invalid_argument("with_mult: wrong multiplicity count");
    for (int v : m)
        if (v < 0) throw std::invalid_argument("with_mult: negative multiplicity");
    Multiarrangement a = *this;
    a.mult_ = m;
    return a;
}

Multiarrangement Multiarrangement::with_constant_mult(int m) const {
    return with_mult(std::vector<int>(mult_.size(), m));
}

MPoly Multiarrangement::defining_poly() const {
    MPoly q(dim_, Rat(1));
    for (int i = 0; i < size(); ++i)
        if (mult_[i] > 0) q = q * hyperplanes_[i].to_poly().pow(mult_[i]);
    return q;
}

bool Multiarrangement::operator==(const Multiarrangement& o) const {
    if (dim_ != o.dim_) return false;
    std::map<Covector, int> a, b;
    for (int i = 0; i < size(); ++i) a[hyperplanes_[i]] = mult_[i];
    for (int i = 0; i < o.size(); ++i) b[o.hyperplanes_[i]] = o.mult_[i];
    return a == b;
}

std::string Multiarrangement::to_string() const {
    std::ostringstream os;
    os << "dim " << dim_ << ", " << size() << " hyperplanes, |m|=" << mult_total() << "\n";
    for (int i = 0; i < size(); ++i)
        os << "  " << hyperplanes_[i].to_string() << " m=" << mult_[i] << "\n";
    return os.str();
}

Multiarrangement braid(int n) {
    if (n < 2) throw std::invalid_argument("braid: need n >= 2");
    std::vector<std::vector<long>> cov;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<long> c(n, 0);
            c[i] = 1;
            c[j] = -1;
            cov.push_back(std::move(c));
        }
    return Multiarrangement::make(n, cov);
}

Multiarrangement boolean_arr(int l) {
    if (l < 1) throw std::invalid_argument("boolean_arr: need l >= 1");
    std::vector<std::vector<long>> cov;
    for (int i = 0; i < l; ++i) {
        std::vector<long> c(l, 0);
        c[i] = 1;
        cov.push_back(std::move(c));
    }
    return Multiarrangement::make(l, cov);
}

Multiarrangement catalan(int n) {
    if (n < 2) throw std::invalid_argument("catalan: need n >= 2");
    const int l = n + 1; // coordinates x_1..x_n, z
    std::vector<std::vector<long>> cov;
    std::vector<long> z(l, 0);
    z[n] = 1;
    cov.push_back(z);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (long s : {0L, -1L, 1L}) {
                std::vector<long> c(l, 0);
                c[i] = 1;
                c[j] = -1;
                c[n] = s;
                cov.push_back(std::move(c));
            }
    return Multiarrangement::make(l, cov);
}

// Fixed realization of Stanley's 7-plane example: five planes through the
// z-axis, the plane y=z, and the plane z=0. The lattice gives
// chi = (t-1)(t-3)^2 while the Ziegler restriction to H_0 = {z=0} has
// exponents (1,5); both facts are pinned by tests.
Multiarrangement stanley() {
    std::vector<std::vector<long>> cov = {
        {0, 0, 1},  // H_0
        {0, 1, -1}, // H_1
        {1, 0, 0},  // H_2
        {1, -1, 0}, // H_3
        {2, -1, 0}, // H_4
        {1, 1, 0},  // H_5
        {2, 1, 0},  // H_6
    };
    return Multiarrangement::make(3, cov);
}

Multiarrangement stanley_extended() {
    std::vector<std::vector<long>> cov = {
        {0, 0, 1}, {0, 1, -1}, {1, 0, 0}, {1, -1, 0}, {2, -1, 0}, {1, 1, 0}, {2, 1, 0},
        {0, 1, 0}, // K
    };
    return Multiarrangement::make(3, cov);
}

Multiarrangement coxeter_typeA(int l) {
    if (l < 1) throw std::invalid_argument("coxeter_typeA: need l >= 1");
    // V = {sum u = 0} in C^{l+1}, realized by u_i = x_i (i <= l),
    // u_{l+1} = -(x_1+...+x_l). Hyperplanes u_i = u_j.
    std::vector<std::vector<long>> cov;
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j) {
            std::vector<long> c(l, 0);
            c[i] = 1;
            c[j] = -1;
            cov.push_back(std::move(c));
        }
    for (int i = 0; i < l; ++i) {
        std::vector<long> c(l, 1); // u_i - u_{l+1} = x_i + sum x
        c[i] = 2;
        cov.push_back(std::move(c));
    }
    return Multiarrangement::make(l, cov);
}

namespace {

// Restriction of hyperplane h' to h, in the coordinates of h obtained by
// eliminating the lowest coordinate with nonzero coefficient in alpha_h.
// Returns an empty vector when h' restricts to zero (only possible h' = h).
std::vector<Rat> restrict_covector(const Covector& alpha_h, const Covector& alpha, int pivot) {
    const int l = alpha_h.dim();
    std::vector<Rat> out; // length l-1, coordinates x_k for k != pivot
    Rat ap(alpha_h.coords[pivot]);
    bool nonzero = false;
    for (int k = 0; k < l; ++k) {
        if (k == pivot) continue;
        // substitute x_pivot = -(sum_{k != pivot} a_k x_k)/a_pivot
        Rat c = Rat(alpha.coords[k]) - Rat(alpha.coords[pivot]) * Rat(alpha_h.coords[k]) / ap;
        if (!is_zero(c)) nonzero = true;
        out.push_back(c);
    }
    if (!nonzero) out.clear();
    return out;
}

Covector rational_to_primitive(const std::vector<Rat>& v) {
    Int lcm(1);
    for (const Rat& c : v) lcm = lcm / ::gcd(lcm, Int(c.get_den())) * Int(c.get_den());
    std::vector<long> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rat t = v[i] * Rat(lcm);
        if (!t.get_num().fits_slong_p())
            throw std::overflow_error("restriction covector entry out of range");
        w[i] = t.get_num().get_si();
    }
    return Covector::canonical(std::move(w));
}

RestrictionResult restrict_impl(const Multiarrangement& a, int h, bool count_as_ziegler) {
    if (h < 0 || h >= a.size()) throw std::out_of_range("restrict: hyperplane index");
    if (a.dim() < 2) throw std::invalid_argument("restrict: need dimension >= 2");
    const Covector& ah = a.hyperplane(h);
    int pivot = 0;
    while (ah.coords[pivot] == 0) ++pivot;
    std::map<Covector, std::vector<int>> groups;
    std::vector<Covector> order;
    for (int i = 0; i < a.size(); ++i) {
        if (i == h || a.mult(i) < 1) continue;
        std::vector<Rat> r = restrict_covector(ah, a.hyperplane(i), pivot);
        if (r.empty()) throw std::logic_error("restrict: duplicate hyperplane");
        Covector c = rational_to_primitive(r);
        auto [it, inserted] = groups.emplace(c, std::vector<int>{});
        if (inserted) order.push_back(c);
        it->second.push_back(i);
    }
    RestrictionResult res;
    res.pivot_coord = pivot;
    std::vector<std::vector<long>> cov;
    std::vector<int> mult;
    for (const Covector& c : order) {
        cov.push_back(c.coords);
        int m = 0;
        if (count_as_ziegler)
            m = static_cast<int>(groups.at(c).size());
        else
            for (int i : groups.at(c)) m += a.mult(i);
        mult.push_back(m);
        res.origin.push_back(groups.at(c));
    }
    res.ambient = Multiarrangement::make(a.dim() - 1, cov, mult);
    return res;
}

} // namespace

RestrictionResult ziegler_restrict(const Multiarrangement& a, int h) {
    if (!a.is_simple())
        throw std::invalid_argument("ziegler_restrict: arrangement must be simple");
    return restrict_impl(a, h, true);
}

RestrictionResult plain_restrict(const Multiarrangement& a, int h) {
    return restrict_impl(a, h, false);
}

Multiarrangement localize(const Multiarrangement& a, const std::vector<int>& flat_hyperplanes) {
    std::vector<std::vector<long>> cov;
    std::vector<int> mult;
    for (int i : flat_hyperplanes) {
        cov.push_back(a.hyperplane(i).coords);
        mult.push_back(a.mult(i));
    }
    return Multiarrangement::make(a.dim(), cov, mult);
}

Multiarrangement delete_one(const Multiarrangement& a, int h) {
    if (h < 0 || h >= a.size()) throw std::out_of_range("delete_one: hyperplane index");
    if (a.mult(h) < 1) throw std::invalid_argument("delete_one: multiplicity already zero");
    std::vector<int> m = a.mult();
    m[h] -= 1;
    return a.with_mult(m);
}

DeconeResult decone(const Multiarrangement& a, int h) {
    if (h < 0 || h >= a.size()) throw std::out_of_range("decone: hyperplane index");
    const int l = a.dim();
    DeconeResult res;
    res.dim = l - 1;
    res.transform = unimodular_completion(a.hyperplane(h).coords);
    // x = T^{-1} y; line i is alpha_i composed with T^{-1}, at y_l = 1.
    RatMatrix t(l, l);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) t.at(i, j) = Rat(res.transform[i][j]);
    RatMatrix tinv = inverse(t);
    for (int i = 0; i < a.size(); ++i) {
        if (i == h || a.mult(i) < 1) continue;
        // alpha_i(T^{-1} y) = sum_j (alpha_i . col_j(T^{-1})) y_j
        std::vector<Rat> row(l, Rat(0));
        for (int j = 0; j < l; ++j)
            for (int k = 0; k < l; ++k) row[j] += Rat(a.hyperplane(i).coords[k]) * tinv.at(k, j);
        // affine line: coefficients y_1..y_{l-1}, constant = coefficient of y_l
        std::vector<Rat> line(row.begin(), row.end());
        res.lines.push_back(std::move(line));
        res.origin.push_back(i);
    }
    return res;
}

EssentialResult essentialize(const Multiarrangement& a) {
    // Row-reduce the covectors of the support; the pivot rows give a basis
    // of the covector span, and every covector is rewritten in that basis.
    std::vector<int> sup = a.support();
    RatMatrix m(static_cast<int>(sup.size()), a.dim());
    for (std::size_t i = 0; i < sup.size(); ++i)
        for (int j = 0; j < a.dim(); ++j) m.at(static_cast<int>(i), j) = Rat(a.hyperplane(sup[i]).coords[j]);
    RrefResult rr = rref(m);
    const int r = rr.rank;
    // Coordinates of each covector in the basis of rref pivot rows: since
    // the rref rows have identity on pivot columns, the coefficients are
    // just the covector entries at the pivot columns.
    std::vector<std::vector<long>> cov;
    std::vector<int> mult;
    for (int i = 0; i < a.size(); ++i) {
        std::vector<Rat> coords(r);
        for (int k = 0; k < r; ++k) coords[k] = Rat(a.hyperplane(i).coords[rr.pivots[k]]);
        // Verify the expansion reproduces the covector exactly.
        for (int j = 0; j < a.dim(); ++j) {
            Rat s(0);
            for (int k = 0; k < r; ++k) s += coords[k] * rr.rref.at(k, j);
            if (s != Rat(a.hyperplane(i).coords[j]))
                throw std::logic_error("essentialize: covector outside span");
        }
        cov.push_back(rational_to_primitive(coords).coords);
        mult.push_back(a.mult(i));
    }
    EssentialResult res;
    res.arr = Multiarrangement::make(r, cov, mult);
    if (res.arr.size() != a.size())
        throw std::logic_error("essentialize: hyperplanes collapsed");
    res.trivial_dims = a.dim() - r;
    return res;
}

Multiarrangement parse_arr(std::istream& in) {
    std::string line;
    int dim = -1;
    std::vector<std::vector<long>> cov;
    std::vector<int> mult;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::runtime_error(".arr parse error at line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "dim") {
            if (dim != -1) fail("duplicate dim line");
            if (!(ls >> dim) || dim < 1) fail("bad dimension");
        } else if (tok == "H") {
            if (dim == -1) fail("hyperplane before dim line");
            std::vector<long> c(dim);
            for (int i = 0; i < dim; ++i) {
                std::string num;
                if (!(ls >> num)) fail("expected " + std::to_string(dim) + " coefficients");
                std::size_t used = 0;
                long v = 0;
                try {
                    v = std::stol(num, &used);
                } catch (...) {
                    fail("non-integer coefficient '" + num + "'");
                }
                if (used != num.size()) fail("non-integer coefficient '" + num + "'");
                c[i] = v;
            }
            int m = 1;
            std::string rest;
            if (ls >> rest) {
                if (rest.rfind("m=", 0) != 0) fail("unexpected token '" + rest + "'");
                try {
                    m = std::stoi(rest.substr(2));
                } catch (...) {
                    fail("bad multiplicity '" + rest + "'");
                }
                if (m < 0) fail("negative multiplicity");
                std::string extra;
                if (ls >> extra) fail("unexpected token '" + extra + "'");
            }
            cov.push_back(std::move(c));
            mult.push_back(m);
        } else {
            fail("unknown directive '" + tok + "'");
        }
    }
    if (dim == -1) throw std::runtime_error(".arr parse error: missing dim line");
    if (cov.empty()) throw std::runtime_error(".arr parse error: no hyperplanes");
    return Multiarrangement::make(dim, cov, mult);
}

Multiarrangement parse_arr_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return parse_arr(in);
}

std::string format_arr(const Multiarrangement& a) {
    std::ostringstream os;
    os << "dim " << a.dim() << "\n";
    for (int i = 0; i < a.size(); ++i) {
        os << "H";
        for (long c : a.hyperplane(i).coords) os << " " << c;
        if (a.mult(i) != 1) os << " m=" << a.mult(i);
        os << "\n";
    }
    return os.str();
}

} // namespace arrkit
